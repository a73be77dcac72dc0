//! Command-line driver: reads an arrangement, intersection-lattice,
//! monodromy or presentation file, runs the requested invariant pipeline and
//! prints a deterministic report (optionally mirrored as JSON).

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use serde::Serialize;

use arralex::alexinv::{
    presentation_completed_reduced, presentation_general, presentation_real, Presentation,
};
use arralex::braid::ConjugatedTwist;
use arralex::chen::{chen_ranks, chen_ranks_oracle};
use arralex::geom::{
    decone, generic_frame, lattice2_central, monodromy_real, wiring_diagram, ArrangementFile,
};
use arralex::localcc::{block_offsets, decomposes, psi3_bar, theta3, Lattice2};
use arralex::subsets::ksubsets;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Pipeline {
    /// Block-triangular presentation from a wiring diagram of a real
    /// arrangement (smallest matrices).
    Real,
    /// Presentation from an arbitrary basis-conjugating braid monodromy.
    General,
    /// Reduced presentation of the I-adic completion over the truncated
    /// power-series ring.
    Reduced,
}

/// Exact Chen ranks and Alexander-invariant data of arrangement groups.
#[derive(Parser, Debug)]
#[command(name = "arralex", version, about)]
struct Args {
    /// Real line arrangement file (`a b c` per line for ax+by=c; a leading
    /// `central` line marks three-column central coordinates).
    #[arg(long, value_name = "FILE")]
    arrangement: Option<PathBuf>,

    /// Rank-two intersection lattice file (`n N` then one `{i,j,..}` set per
    /// line).
    #[arg(long, value_name = "FILE")]
    lattice: Option<PathBuf>,

    /// Braid monodromy file (`n N` then one conjugated twist per line, e.g.
    /// `T{1,2,5} ^ (A[3,5] A[4,5])`).
    #[arg(long, value_name = "FILE")]
    monodromy: Option<PathBuf>,

    /// Serialized presentation file (as produced by the library renderer).
    #[arg(long, value_name = "FILE")]
    presentation: Option<PathBuf>,

    /// Require the arrangement file to be central (three coordinates per
    /// plane through the origin).
    #[arg(long)]
    central: bool,

    /// Send the given plane (1-based) of a central arrangement to infinity
    /// before the wiring-diagram pipeline.
    #[arg(long, value_name = "I")]
    decone: Option<usize>,

    /// Largest k for which the Chen rank is computed.
    #[arg(short = 'K', default_value_t = 8, value_name = "INT")]
    kmax: usize,

    /// Standard-basis truncation degree (default K-2; larger values recompute
    /// the same ranks with extra slack as a stability check).
    #[arg(long, value_name = "D")]
    truncate: Option<usize>,

    /// Which presentation pipeline feeds the Chen-rank computation.
    #[arg(long, value_enum)]
    pipeline: Option<Pipeline>,

    /// Cross-check every rank against the independent elimination oracle and
    /// against the alternate presentation where one exists.
    #[arg(long)]
    verify: bool,

    /// Also write the report as a JSON document to this path.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Serialize, Default)]
struct LatticeReport {
    n: usize,
    vertex_sets: Vec<Vec<usize>>,
    b2: usize,
    theta2: usize,
    theta_cc: Vec<[usize; 2]>,
    psi3bar_rows: usize,
    psi3bar_cols: usize,
    psi3bar_rank: usize,
    coker_rank: usize,
    coker_basis: Vec<Vec<String>>,
    theta3: usize,
    decomposable: bool,
}

#[derive(Serialize, Default)]
struct Report {
    input: String,
    kind: String,
    pipeline: Option<String>,
    lines: Option<usize>,
    deconed_at: Option<usize>,
    theta1: Option<usize>,
    lattice: Option<LatticeReport>,
    wiring: Option<Vec<String>>,
    monodromy: Option<Vec<String>>,
    presentation_relations: Option<usize>,
    presentation_generators: Option<usize>,
    theta: Option<Vec<[usize; 2]>>,
    stabilized_slope: Option<usize>,
    verify: Option<Vec<String>>,
    verify_ok: Option<bool>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(report) => {
            print!("{}", render_human(&report));
            if let Some(path) = &args.json {
                let doc = serde_json::to_string_pretty(&report).expect("serializable report");
                if let Err(e) = std::fs::write(path, doc + "\n") {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            }
            if report.verify_ok == Some(false) {
                eprintln!("error: verification found a mismatch");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn run(args: &Args) -> Result<Report> {
    let inputs = [
        args.arrangement.is_some(),
        args.lattice.is_some(),
        args.monodromy.is_some(),
        args.presentation.is_some(),
    ];
    if inputs.iter().filter(|&&b| b).count() != 1 {
        bail!("exactly one of --arrangement, --lattice, --monodromy, --presentation is required");
    }
    if args.kmax < 2 {
        bail!("-K must be at least 2");
    }
    if let Some(d) = args.truncate {
        if d + 2 < args.kmax {
            bail!(
                "--truncate {} is too small for K = {} (need at least K-2)",
                d,
                args.kmax
            );
        }
    }

    if let Some(path) = &args.arrangement {
        run_arrangement(args, path)
    } else if let Some(path) = &args.lattice {
        run_lattice(args, path)
    } else if let Some(path) = &args.monodromy {
        run_monodromy(args, path)
    } else {
        run_presentation(args, args.presentation.as_ref().unwrap())
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn lattice_report(lat: &Lattice2, kmax: usize) -> LatticeReport {
    let psi = psi3_bar(lat);
    let rank = psi.rank();
    LatticeReport {
        n: lat.n,
        vertex_sets: lat.vertex_sets.clone(),
        b2: lat.b2(),
        theta2: lat.theta2(),
        theta_cc: (2..=kmax).map(|k| [k, lat.theta_cc(k)]).collect(),
        psi3bar_rows: psi.rows,
        psi3bar_cols: psi.cols,
        psi3bar_rank: rank,
        coker_rank: psi.coker_rank(),
        coker_basis: psi
            .coker_basis()
            .iter()
            .map(|v| coker_vector_terms(lat, v))
            .collect(),
        theta3: theta3(lat),
        decomposable: decomposes(lat),
    }
}

/// Nonzero entries of a stacked-basis vector as `c * V{..}:e{a,b,c}` labels.
fn coker_vector_terms(lat: &Lattice2, v: &[arralex::intmat::BigInt]) -> Vec<String> {
    let offs = block_offsets(lat);
    let triples = ksubsets(lat.n, 3);
    let mut out = Vec::new();
    for (bi, vset) in lat.vertex_sets.iter().enumerate() {
        if vset.len() < 3 {
            continue;
        }
        let idx = arralex::koszul::wedge_submodule_indices(lat.n, &vset[1..], 3);
        for (local, &tri) in idx.iter().enumerate() {
            let c = &v[offs[bi] + local];
            if *c != arralex::intmat::BigInt::from(0) {
                let t: Vec<String> = triples[tri].iter().map(|x| x.to_string()).collect();
                let vs: Vec<String> = vset.iter().map(|x| x.to_string()).collect();
                out.push(format!("{} * V{{{}}}:e{{{}}}", c, vs.join(","), t.join(",")));
            }
        }
    }
    out
}

fn run_lattice(args: &Args, path: &PathBuf) -> Result<Report> {
    if args.central || args.decone.is_some() || args.pipeline.is_some() {
        bail!("--central, --decone and --pipeline do not apply to lattice input");
    }
    let lat = Lattice2::parse(&read(path)?)?;
    let lrep = lattice_report(&lat, args.kmax);
    let theta = if lrep.decomposable {
        // local data determines every rank: theta_k equals the combinatorial
        // lower bound for k >= 3, and theta_2 is C(n,2) - b_2
        let mut t = vec![[2usize, lat.theta2()]];
        t.extend((3..=args.kmax).map(|k| [k, lat.theta_cc(k)]));
        Some(t)
    } else {
        None
    };
    Ok(Report {
        input: path.display().to_string(),
        kind: "lattice".into(),
        lines: Some(lat.n),
        theta1: Some(lat.n),
        lattice: Some(lrep),
        theta,
        ..Report::default()
    })
}

fn run_presentation(args: &Args, path: &PathBuf) -> Result<Report> {
    if args.central || args.decone.is_some() || args.pipeline.is_some() {
        bail!("--central, --decone and --pipeline do not apply to presentation input");
    }
    let pres = Presentation::parse(&read(path)?)?;
    let mut report = Report {
        input: path.display().to_string(),
        kind: "presentation".into(),
        presentation_relations: Some(pres.relations()),
        presentation_generators: Some(pres.generators()),
        ..Report::default()
    };
    attach_theta(args, &mut report, &pres, None)?;
    Ok(report)
}

fn parse_monodromy_file(text: &str) -> Result<(usize, Vec<ConjugatedTwist>)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().context("empty monodromy file")?;
    let n: usize = header
        .trim()
        .strip_prefix("n ")
        .and_then(|s| s.trim().parse().ok())
        .with_context(|| format!("bad monodromy header '{}' (want `n <int>`)", header.trim()))?;
    let mut mono = Vec::new();
    for (i, line) in lines.enumerate() {
        let tw = ConjugatedTwist::parse(line)
            .with_context(|| format!("monodromy generator {} ('{}')", i + 1, line.trim()))?;
        if tw.v_set.iter().any(|&x| x < 1 || x > n) {
            bail!("generator {} uses a strand outside 1..={}", i + 1, n);
        }
        mono.push(tw);
    }
    Ok((n, mono))
}

fn run_monodromy(args: &Args, path: &PathBuf) -> Result<Report> {
    if args.central || args.decone.is_some() {
        bail!("--central and --decone do not apply to monodromy input");
    }
    let (n, mono) = parse_monodromy_file(&read(path)?)?;
    let pipeline = args.pipeline.unwrap_or(Pipeline::General);
    if pipeline == Pipeline::Real {
        bail!("the real pipeline needs a wiring diagram; use --arrangement or --pipeline general");
    }
    let pres = build_presentation(args, pipeline, n, &mono)?;
    let mut report = Report {
        input: path.display().to_string(),
        kind: "monodromy".into(),
        pipeline: Some(format!("{:?}", pipeline).to_lowercase()),
        lines: Some(n),
        theta1: Some(n),
        monodromy: Some(mono.iter().map(|t| t.to_string()).collect()),
        presentation_relations: Some(pres.relations()),
        presentation_generators: Some(pres.generators()),
        ..Report::default()
    };
    attach_theta(args, &mut report, &pres, None)?;
    Ok(report)
}

fn build_presentation(
    args: &Args,
    pipeline: Pipeline,
    n: usize,
    mono: &[ConjugatedTwist],
) -> Result<Presentation> {
    Ok(match pipeline {
        Pipeline::General => presentation_general(n, mono),
        Pipeline::Reduced => {
            let d = args.truncate.unwrap_or(args.kmax.max(3) - 2).max(1) as i32;
            presentation_completed_reduced(n, mono, d)?
        }
        Pipeline::Real => unreachable!("callers route the real pipeline through a wiring diagram"),
    })
}

fn run_arrangement(args: &Args, path: &PathBuf) -> Result<Report> {
    let file = ArrangementFile::parse(&read(path)?)?;
    let mut report = Report {
        input: path.display().to_string(),
        kind: String::new(),
        ..Report::default()
    };
    let affine = match &file {
        ArrangementFile::Central(c) => {
            report.kind = "central arrangement".into();
            report.lines = Some(c.n());
            report.theta1 = Some(c.n());
            report.lattice = Some(lattice_report(&lattice2_central(c)?, args.kmax));
            match args.decone {
                Some(i) => {
                    report.deconed_at = Some(i);
                    Some(decone(c, i)?)
                }
                // lattice-level data only: the Chen ranks of the cone agree
                // with those of any decone, so a plane to send to infinity
                // must be chosen for the wiring-diagram stage
                None => None,
            }
        }
        ArrangementFile::Affine(a) => {
            if args.central {
                bail!("--central was given but {} is an affine file", path.display());
            }
            if args.decone.is_some() {
                bail!("--decone applies only to central arrangement files");
            }
            report.kind = "affine arrangement".into();
            report.lines = Some(a.n());
            report.theta1 = Some(a.n());
            report.lattice = Some(lattice_report(
                &arralex::geom::lattice2_affine(a)?,
                args.kmax,
            ));
            Some(a.clone())
        }
    };
    let Some(affine) = affine else {
        return Ok(report);
    };

    let (framed, cert) = generic_frame(&affine);
    let _ = cert;
    let w = wiring_diagram(&framed)?;
    let vertices = w.vertex_data();
    report.wiring = Some(
        vertices
            .iter()
            .map(|v| {
                let vs: Vec<String> = v.v_set.iter().map(|x| x.to_string()).collect();
                let js: Vec<String> = v.j_set.iter().map(|x| x.to_string()).collect();
                format!("V{{{}}} J{{{}}}", vs.join(","), js.join(","))
            })
            .collect(),
    );
    let mono = monodromy_real(&w);
    report.monodromy = Some(mono.iter().map(|t| t.to_string()).collect());

    let pipeline = args.pipeline.unwrap_or(Pipeline::Real);
    report.pipeline = Some(format!("{:?}", pipeline).to_lowercase());
    let pres = match pipeline {
        Pipeline::Real => presentation_real(framed.n(), &vertices)?,
        _ => build_presentation(args, pipeline, framed.n(), &mono)?,
    };
    report.presentation_relations = Some(pres.relations());
    report.presentation_generators = Some(pres.generators());

    // the alternate presentation backs the --verify cross-check
    let alt = match pipeline {
        Pipeline::Real => Some(presentation_general(framed.n(), &mono)),
        _ => Some(presentation_real(framed.n(), &vertices)?),
    };
    attach_theta(args, &mut report, &pres, alt.as_ref())?;
    Ok(report)
}

/// Compute the Chen ranks, attach the table, and in verify mode cross-check
/// against the elimination oracle (and an alternate presentation if given).
fn attach_theta(
    args: &Args,
    report: &mut Report,
    pres: &Presentation,
    alt: Option<&Presentation>,
) -> Result<()> {
    let deep = args.truncate.map(|d| d + 2).unwrap_or(args.kmax);
    let ranks = chen_ranks(pres, deep)?;
    let theta: Vec<[usize; 2]> = (2..=args.kmax).map(|k| [k, ranks[k - 2]]).collect();
    report.theta = Some(theta);
    // flag apparent linearity theta_k = s*(k-1) across the whole table
    if args.kmax >= 4 {
        let s = ranks[args.kmax - 2] as i64 - ranks[args.kmax - 3] as i64;
        if s >= 0 && (2..=args.kmax).all(|k| ranks[k - 2] as i64 == s * (k as i64 - 1)) {
            report.stabilized_slope = Some(s as usize);
        }
    }

    if args.verify {
        let mut lines = Vec::new();
        let mut ok = true;
        let oracle_kmax = args.kmax.min(7);
        let oracle = chen_ranks_oracle(pres, oracle_kmax)?;
        for k in 2..=oracle_kmax {
            let agree = oracle[k - 2] == ranks[k - 2];
            ok &= agree;
            lines.push(format!(
                "k={}: basis {} oracle {} {}",
                k,
                ranks[k - 2],
                oracle[k - 2],
                if agree { "AGREE" } else { "MISMATCH" }
            ));
        }
        if let Some(alt) = alt {
            let alt_ranks = chen_ranks(alt, args.kmax)?;
            for k in 2..=args.kmax {
                let agree = alt_ranks[k - 2] == ranks[k - 2];
                ok &= agree;
                lines.push(format!(
                    "k={}: primary {} alternate {} {}",
                    k,
                    ranks[k - 2],
                    alt_ranks[k - 2],
                    if agree { "AGREE" } else { "MISMATCH" }
                ));
            }
        }
        report.verify = Some(lines);
        report.verify_ok = Some(ok);
    }
    Ok(())
}

fn render_human(r: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("input: {} ({})", r.input, r.kind));
    if let Some(p) = &r.pipeline {
        line(format!("pipeline: {}", p));
    }
    match (r.lines, r.deconed_at) {
        (Some(n), Some(i)) => line(format!("lines: {} (deconed at plane {})", n, i)),
        (Some(n), None) => line(format!("lines: {}", n)),
        _ => {}
    }
    if let Some(l) = &r.lattice {
        let sets: Vec<String> = l
            .vertex_sets
            .iter()
            .map(|v| {
                let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("{{{}}}", s.join(","))
            })
            .collect();
        line(format!("L2 vertex sets ({}): {}", sets.len(), sets.join(" ")));
        line(format!("b2 = {}, theta2 = {}", l.b2, l.theta2));
        line(format!(
            "psi3bar: {} x {}, rank {}, coker rank {}",
            l.psi3bar_rows, l.psi3bar_cols, l.psi3bar_rank, l.coker_rank
        ));
        for (i, v) in l.coker_basis.iter().enumerate() {
            line(format!("coker[{}]: {}", i + 1, v.join("  +  ")));
        }
        line(format!("theta3 = {}", l.theta3));
        line(format!(
            "decomposable: {}",
            if l.decomposable { "yes" } else { "no" }
        ));
        let cc: Vec<String> = l
            .theta_cc
            .iter()
            .map(|[k, v]| format!("k={}: {}", k, v))
            .collect();
        line(format!("theta_cc (local lower bound): {}", cc.join("  ")));
    }
    if let Some(w) = &r.wiring {
        line(format!("wiring: {}", w.join("  ")));
    }
    if let Some(m) = &r.monodromy {
        line(format!("monodromy: {}", m.join("  ")));
    }
    if let (Some(rel), Some(gen)) = (r.presentation_relations, r.presentation_generators) {
        line(format!("presentation: {} relations x {} generators", rel, gen));
    }
    if let Some(t1) = r.theta1 {
        line(format!("theta1 = {}", t1));
    }
    if let Some(t) = &r.theta {
        let cells: Vec<String> = t.iter().map(|[k, v]| format!("k={}: {}", k, v)).collect();
        line(format!("theta: {}", cells.join("  ")));
        if let Some(s) = r.stabilized_slope {
            line(format!(
                "note: table matches theta_k = {}*(k-1) throughout (not asserted beyond it)",
                s
            ));
        }
    }
    if let Some(v) = &r.verify {
        for l in v {
            line(format!("verify {}", l));
        }
        line(format!(
            "verify: {}",
            if r.verify_ok == Some(true) {
                "all checks agree"
            } else {
                "MISMATCH"
            }
        ));
    }
    out
}
