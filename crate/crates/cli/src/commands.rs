use std::fmt::Write as _;
use std::path::Path;

use knotgap::diophantine::{
    baker_wustholz_constant, best_baker_bound, convergents_of, gouillon_constant, mahler_measure, torsion_growth_rate,
    torsion_order, BakerBound,
};
use knotgap::knotdb::{self, IngestReport, KnotRecord};
use knotgap::polyring::LaurentPoly;
use knotgap::report::ReportEnvelope;
use knotgap::shrinkage::{classify, ShrinkageReport, Verdict};
use knotgap::sigma::{
    exponent_scan, generic_median, sigma_matrix, spike_probe, SigmaPoint,
};
use knotgap::smith::{alexander_polynomials, reduced_from_pair, smith_normal_form, MatrixFile};
use knotgap::unitcircle::unit_circle_roots;
use knotgap::Error;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Command, FamilyKind, Method};

/// Largest `n` a single σ̂ scan will reach; beyond it the output is truncated.
pub const MAX_SCAN_N: u64 = 10_000_000;

pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Lib(Error::Parse { .. } | Error::Input(_)) => 1,
            Failure::Lib(Error::Domain(_) | Error::EndpointRoot(_) | Error::Precision(_)) => 2,
            Failure::Lib(Error::Resource(_)) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// A finished command: the JSON envelope plus its text and CSV renderings.
pub struct Output {
    pub envelope: ReportEnvelope,
    pub text: String,
    /// Header row first.
    pub csv: Vec<Vec<String>>,
    pub notices: Vec<String>,
    pub exit: u8,
}

impl Output {
    fn new<T: Serialize>(cli: &Cli, command: &str, inputs: Value, result: &T) -> Res<Self> {
        let result = serde_json::to_value(result).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(Output {
            envelope: ReportEnvelope::new(command, inputs, result, cli.precision_bits),
            text: String::new(),
            csv: Vec::new(),
            notices: Vec::new(),
            exit: 0,
        })
    }
}

/// Parses a polynomial argument, pointing at the offending byte on failure.
fn parse_poly(flag: &str, s: &str) -> Res<LaurentPoly> {
    s.parse::<LaurentPoly>().map_err(|e| match e {
        Error::Parse { position, message } => {
            let caret = " ".repeat(s[..position.min(s.len())].chars().count());
            Failure::Usage(format!("--{flag}: parse error at byte {position}: {message}\n  {s}\n  {caret}^"))
        }
        other => Failure::Lib(other),
    })
}

fn read_matrix(path: &Path) -> Res<MatrixFile> {
    Ok(MatrixFile::read(path)?)
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::Classify { poly, delta1, delta2, matrix } => {
            cmd_classify(cli, poly.as_deref(), delta1.as_deref(), delta2.as_deref(), matrix.as_deref())
        }
        Command::Table { dataset } => cmd_table(cli, dataset),
        Command::Sigma { poly, matrix, nmax, nmin, spikes, tolerance } => {
            cmd_sigma(cli, poly.as_deref(), matrix.as_deref(), *nmin, *nmax, *spikes, *tolerance)
        }
        Command::Baker { poly, method } => cmd_baker(cli, poly, *method),
        Command::Mahler { poly, torsion_n } => cmd_mahler(cli, poly, *torsion_n),
        Command::Smith { matrix } => cmd_smith(cli, matrix),
        Command::Levine { chain } => cmd_levine(cli, chain),
        Command::Family { kind } => cmd_family(cli, kind),
    }
}

fn fmt_upper(r: &ShrinkageReport) -> String {
    match r.mu_upper_upper_bound {
        Some(u) if u == r.mu_upper_lower_bound as f64 => format!("= {}", r.mu_upper_lower_bound),
        Some(u) => format!("∈ [{}, {}]", r.mu_upper_lower_bound, u),
        None => format!("∈ [{}, unbounded)", r.mu_upper_lower_bound),
    }
}

fn report_text(r: &ShrinkageReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Λ = {}", r.lambda);
    let _ = writeln!(s, "type: {}", r.verdict.label());
    let _ = writeln!(s, "lower rate μ̲ = {}", r.mu_lower);
    let _ = writeln!(s, "upper rate μ̄ {}", fmt_upper(r));
    let _ = writeln!(s, "Novikov–Shubin α₂ = {}", r.novikov_shubin);
    if let Verdict::Undecided { reason, .. } = &r.verdict {
        let _ = writeln!(s, "undecided: {reason}");
    }
    if !r.clusters.is_empty() {
        let _ = writeln!(s, "unit-circle roots (upper half):");
    }
    for c in &r.clusters {
        let kind = match c.cyclotomic_order {
            Some(n) => format!("root of unity of order {n}"),
            None => "not a root of unity".into(),
        };
        let _ = write!(s, "  t ≈ {:.15}  multiplicity {}  {}", c.t, c.multiplicity, kind);
        match &c.baker {
            Some(b) => {
                let _ = writeln!(
                    s,
                    "  ν ∈ [2, {}]  ({:?} constant C ≈ {:.4}{})",
                    b.nu_upper,
                    b.method,
                    b.c,
                    if b.asymptotic { ", asymptotic" } else { "" }
                );
            }
            None => {
                let _ = writeln!(s, "  ν = 1");
            }
        }
    }
    s
}

const CLASSIFY_HEADER: [&str; 7] =
    ["name", "lambda", "type", "mu_lower", "mu_upper_lower", "mu_upper_upper", "novikov_shubin"];

fn classify_row(name: &str, r: &ShrinkageReport) -> Vec<String> {
    vec![
        name.to_string(),
        r.lambda.to_string(),
        r.verdict.label(),
        r.mu_lower.to_string(),
        r.mu_upper_lower_bound.to_string(),
        r.mu_upper_upper_bound.map_or("unbounded".into(), |u| u.to_string()),
        r.novikov_shubin.to_string(),
    ]
}

#[derive(Serialize)]
struct ClassifyResult {
    #[serde(flatten)]
    report: ShrinkageReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

fn knot_invariant_warnings(lambda: &LaurentPoly) -> Vec<String> {
    let mut w = Vec::new();
    if let Ok(v) = lambda.eval_i64(1) {
        if !v.abs().is_one() {
            w.push(format!("Λ(1) = {v}; a knot has Λ(1) = ±1"));
        }
    }
    if !lambda.is_palindromic().unwrap_or(false) {
        w.push("Λ is not palindromic; a knot's Λ is".into());
    }
    w
}

fn cmd_classify(
    cli: &Cli,
    poly: Option<&str>,
    delta1: Option<&str>,
    delta2: Option<&str>,
    matrix: Option<&Path>,
) -> Res<Output> {
    let (lambda, inputs) = match (poly, delta1, delta2, matrix) {
        (Some(p), None, None, None) => (parse_poly("poly", p)?, json!({ "poly": p })),
        (None, Some(d1), Some(d2), None) => {
            let a = parse_poly("delta1", d1)?;
            let b = parse_poly("delta2", d2)?;
            (reduced_from_pair(&a, &b)?, json!({ "delta1": d1, "delta2": d2 }))
        }
        (None, None, None, Some(m)) => {
            let snf = smith_normal_form(&read_matrix(m)?.matrix()?);
            let lambda = snf.nonunit_factors().into_iter().next().unwrap_or_else(LaurentPoly::one);
            (lambda, json!({ "matrix": m.display().to_string() }))
        }
        _ => return Err(Failure::Usage("give exactly one of --poly, --delta1/--delta2, --matrix".into())),
    };
    let warnings = knot_invariant_warnings(&lambda);
    if cli.strict && !warnings.is_empty() {
        return Err(Failure::Lib(Error::Domain(warnings.join("; "))));
    }
    let report = classify(&lambda)?;
    let mut out = Output::new(cli, "classify", inputs, &ClassifyResult { report: report.clone(), warnings: warnings.clone() })?;
    out.text = report_text(&report);
    out.csv = vec![CLASSIFY_HEADER.iter().map(|s| s.to_string()).collect(), classify_row("", &report)];
    out.notices = warnings.into_iter().map(|w| w.to_string()).collect();
    Ok(out)
}

#[derive(Serialize)]
struct TableRow {
    name: String,
    lambda: LaurentPoly,
    expected: Option<String>,
    computed: String,
    matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct TableResult {
    rows: Vec<TableRow>,
    checked: usize,
    matched: usize,
    mismatched: Vec<String>,
    rejections: Vec<knotdb::Rejection>,
    warnings: Vec<String>,
}

fn table_row(r: &KnotRecord) -> TableRow {
    let (computed, error) = match classify(&r.lambda) {
        Ok(rep) => (rep.verdict.label(), None),
        Err(e) => ("error".to_string(), Some(e.to_string())),
    };
    let matches = r.expected_type.map(|e| error.is_none() && e.to_string() == computed);
    TableRow {
        name: r.name.clone(),
        lambda: r.lambda.clone(),
        expected: r.expected_type.map(|e| e.to_string()),
        computed,
        matches,
        error,
    }
}

fn cmd_table(cli: &Cli, dataset: &str) -> Res<Output> {
    let ingest = if dataset == "builtin" {
        IngestReport { records: knotdb::builtin_table().to_vec(), rejections: Vec::new(), warnings: Vec::new() }
    } else {
        knotdb::ingest_csv(Path::new(dataset))?
    };
    let rows: Vec<TableRow> = ingest.records.iter().map(table_row).collect();
    let checked = rows.iter().filter(|r| r.matches.is_some()).count();
    let matched = rows.iter().filter(|r| r.matches == Some(true)).count();
    let mismatched: Vec<String> = rows.iter().filter(|r| r.matches == Some(false)).map(|r| r.name.clone()).collect();
    let result = TableResult {
        rows,
        checked,
        matched,
        mismatched: mismatched.clone(),
        rejections: ingest.rejections.clone(),
        warnings: ingest.warnings.clone(),
    };
    let mut out = Output::new(cli, "table", json!({ "dataset": dataset }), &result)?;
    let mut t = String::new();
    let _ = writeln!(t, "{:<9} {:<40} {:<13} {:<13} ok", "knot", "Λ", "expected", "computed");
    for r in &result.rows {
        let ok = match r.matches {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "-",
        };
        let _ = writeln!(
            t,
            "{:<9} {:<40} {:<13} {:<13} {}",
            r.name,
            r.lambda.to_string(),
            r.expected.as_deref().unwrap_or("-"),
            r.computed,
            ok
        );
    }
    let _ = writeln!(t, "{matched}/{checked} match the expected type");
    if !mismatched.is_empty() {
        let _ = writeln!(t, "mismatches: {}", mismatched.join(", "));
    }
    for rej in &result.rejections {
        let _ = writeln!(t, "rejected line {} ({}): {}", rej.line, rej.name.as_deref().unwrap_or("?"), rej.reason);
    }
    out.text = t;
    out.csv = std::iter::once(["name", "lambda", "expected", "computed", "matches"].map(String::from).to_vec())
        .chain(result.rows.iter().map(|r| {
            vec![
                r.name.clone(),
                r.lambda.to_string(),
                r.expected.clone().unwrap_or_default(),
                r.computed.clone(),
                r.matches.map_or(String::new(), |m| m.to_string()),
            ]
        }))
        .collect();
    out.notices.extend(result.warnings.iter().map(|w| w.to_string()));
    out.notices.extend(result.rejections.iter().map(|r| format!("rejected line {}: {}", r.line, r.reason)));
    if !mismatched.is_empty() {
        out.exit = 3;
    }
    Ok(out)
}

#[derive(Serialize)]
struct SpikeRow {
    p: String,
    q: String,
    cluster_t: f64,
    point: SigmaPoint,
    #[serde(skip_serializing_if = "Option::is_none")]
    generic_median: Option<f64>,
}

#[derive(Serialize)]
struct SigmaResult {
    points: Vec<SigmaPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    running_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    running_max: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    spikes: Vec<SpikeRow>,
    truncated: bool,
}

fn point_row(p: &SigmaPoint) -> Vec<String> {
    vec![
        p.n.to_string(),
        format!("{:e}", p.sigma.lo),
        format!("{:e}", p.sigma.hi),
        format!("{}", p.exponent),
        p.zero_count.to_string(),
    ]
}

#[allow(clippy::too_many_arguments)]
fn cmd_sigma(
    cli: &Cli,
    poly: Option<&str>,
    matrix: Option<&Path>,
    nmin: u64,
    nmax: u64,
    spikes: bool,
    tolerance: f64,
) -> Res<Output> {
    if nmax < 2 || nmin < 1 || nmin > nmax {
        return Err(Failure::Usage("need 1 <= --nmin <= --nmax and --nmax >= 2".into()));
    }
    let mut notices = Vec::new();
    let mut truncated = false;
    let mut spike_rows = Vec::new();
    let (points, inputs) = if let Some(m) = matrix {
        if spikes {
            return Err(Failure::Usage("--spikes needs --poly".into()));
        }
        let a = read_matrix(m)?.matrix()?;
        let mut pts = Vec::new();
        for n in nmin..=nmax {
            match sigma_matrix(&a, n, tolerance) {
                Ok(p) => pts.push(p),
                Err(Error::Resource(msg)) => {
                    notices.push(format!("stopped at n = {n}: {msg}"));
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        (pts, json!({ "matrix": m.display().to_string(), "nmin": nmin, "nmax": nmax, "tolerance": tolerance }))
    } else {
        let text = poly.expect("clap requires --poly without --matrix");
        let lambda = parse_poly("poly", text)?;
        let hi = if nmax > MAX_SCAN_N {
            notices.push(format!("scan truncated at n = {MAX_SCAN_N}, the resource cap"));
            truncated = true;
            MAX_SCAN_N
        } else {
            nmax
        };
        let scan = exponent_scan(std::slice::from_ref(&lambda), nmin..=hi, cli.precision_bits)?;
        if spikes {
            let mut locations = Vec::new();
            let mut probes = Vec::new();
            for c in unit_circle_roots(&lambda)?.iter().filter(|c| !c.is_cyclotomic()) {
                let conv: Vec<_> =
                    convergents_of(c, hi / 2)?.into_iter().filter(|v| v.q > num_bigint::BigInt::from(nmin / 2)).collect();
                let pts = spike_probe(&lambda, c, &conv, cli.precision_bits)?;
                for (v, p) in conv.into_iter().zip(pts) {
                    locations.push(p.n);
                    probes.push((c.t, v, p));
                }
            }
            for (t, v, p) in probes {
                let median = generic_median(&scan.points, p.n, 10, &locations);
                spike_rows.push(SpikeRow { p: v.p.to_string(), q: v.q.to_string(), cluster_t: t, point: p, generic_median: median });
            }
        }
        let inputs = json!({ "poly": text, "nmin": nmin, "nmax": nmax, "spikes": spikes });
        (scan.points, inputs)
    };
    let (lo, hi) = points
        .iter()
        .filter(|p| p.n >= 2)
        .fold((None::<f64>, None::<f64>), |(a, b), p| {
            (Some(a.map_or(p.exponent, |x| x.min(p.exponent))), Some(b.map_or(p.exponent, |x| x.max(p.exponent))))
        });
    let result = SigmaResult { points, running_min: lo, running_max: hi, spikes: spike_rows, truncated };
    let mut out = Output::new(cli, "sigma", inputs, &result)?;
    let mut t = String::new();
    let _ = writeln!(t, "{:>10} {:>24} {:>24} {:>10} {:>6}", "n", "sigma_lo", "sigma_hi", "exponent", "zeros");
    for p in &result.points {
        let _ = writeln!(t, "{:>10} {:>24e} {:>24e} {:>10.6} {:>6}", p.n, p.sigma.lo, p.sigma.hi, p.exponent, p.zero_count);
    }
    if let (Some(a), Some(b)) = (lo, hi) {
        let _ = writeln!(t, "exponent range over n >= 2: [{a:.6}, {b:.6}]");
    }
    if !result.spikes.is_empty() {
        let _ = writeln!(t, "spike probes at n = 2q for convergents p/q of t:");
        for s in &result.spikes {
            let _ = writeln!(
                t,
                "  t ≈ {:.12}  p/q = {}/{}  n = {}  exponent {:.6}  generic median {}",
                s.cluster_t,
                s.p,
                s.q,
                s.point.n,
                s.point.exponent,
                s.generic_median.map_or("-".into(), |m| format!("{m:.6}"))
            );
        }
    }
    out.text = t;
    let mut header: Vec<String> = ["n", "sigma_lo", "sigma_hi", "exponent", "zero_count"].map(String::from).to_vec();
    if spikes {
        header.push("kind".into());
        out.csv.push(header);
        out.csv.extend(result.points.iter().map(|p| {
            let mut r = point_row(p);
            r.push("scan".into());
            r
        }));
        out.csv.extend(result.spikes.iter().map(|s| {
            let mut r = point_row(&s.point);
            r.push("spike".into());
            r
        }));
    } else {
        out.csv.push(header);
        out.csv.extend(result.points.iter().map(point_row));
    }
    out.notices = notices;
    if truncated {
        out.exit = 4;
    }
    Ok(out)
}

fn baker_text(b: &BakerBound) -> String {
    format!(
        "method: {:?}\nC = {:.6}\nC rounded up = {}\nν ≤ {}\ndegree {}, height {}\nlog M ∈ [{:.15}, {:.15}]{}\n",
        b.method,
        b.c,
        b.c_rounded,
        b.nu_upper,
        b.degree,
        b.height,
        b.log_mahler.lo,
        b.log_mahler.hi,
        if b.asymptotic { "\nstated for large covers only (asymptotic)" } else { "" }
    )
}

fn cmd_baker(cli: &Cli, poly: &str, method: Option<Method>) -> Res<Output> {
    let p = parse_poly("poly", poly)?;
    let b = match method {
        Some(Method::Gouillon) => gouillon_constant(&p)?,
        Some(Method::Bw) => baker_wustholz_constant(&p)?,
        None => best_baker_bound(&p)?,
    };
    let m = method.map(|m| format!("{m:?}").to_lowercase());
    let mut out = Output::new(cli, "baker", json!({ "poly": poly, "method": m }), &b)?;
    out.text = baker_text(&b);
    out.csv = vec![
        ["method", "c", "c_rounded", "nu_upper", "degree", "height", "log_mahler_lo", "log_mahler_hi", "asymptotic"]
            .map(String::from)
            .to_vec(),
        vec![
            format!("{:?}", b.method),
            b.c.to_string(),
            b.c_rounded.to_string(),
            b.nu_upper.to_string(),
            b.degree.to_string(),
            b.height.to_string(),
            b.log_mahler.lo.to_string(),
            b.log_mahler.hi.to_string(),
            b.asymptotic.to_string(),
        ],
    ];
    Ok(out)
}

fn cmd_mahler(cli: &Cli, poly: &str, torsion_n: Option<u64>) -> Res<Output> {
    let p = parse_poly("poly", poly)?;
    let m = mahler_measure(&p)?;
    let g = torsion_growth_rate(&p)?;
    let torsion = torsion_n.map(|n| torsion_order(&p, n)).transpose()?;
    let result = json!({
        "polynomial": p,
        "mahler_measure": m,
        "log_mahler_measure": g,
        "torsion_growth_rate": g,
        "torsion": torsion.as_ref().map(|t| json!({ "n": torsion_n, "order": t.to_string() })),
    });
    let mut out = Output::new(cli, "mahler", json!({ "poly": poly, "torsion_n": torsion_n }), &result)?;
    let mut t = format!(
        "M({p}) ∈ [{:.15}, {:.15}]\nm = log M ∈ [{:.15}, {:.15}] (torsion growth rate)\n",
        m.lo, m.hi, g.lo, g.hi
    );
    if let (Some(n), Some(o)) = (torsion_n, &torsion) {
        let _ = writeln!(t, "|τH₁| of the {n}-fold cover = {o}");
    }
    out.text = t;
    out.csv = vec![
        ["mahler_lo", "mahler_hi", "log_mahler_lo", "log_mahler_hi", "torsion_n", "torsion_order"].map(String::from).to_vec(),
        vec![
            m.lo.to_string(),
            m.hi.to_string(),
            g.lo.to_string(),
            g.hi.to_string(),
            torsion_n.map_or(String::new(), |n| n.to_string()),
            torsion.map_or(String::new(), |t| t.to_string()),
        ],
    ];
    Ok(out)
}

fn cmd_smith(cli: &Cli, matrix: &Path) -> Res<Output> {
    let a = read_matrix(matrix)?.matrix()?;
    let snf = smith_normal_form(&a);
    let deltas = alexander_polynomials(&a);
    let result = json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "rank": snf.rank,
        "invariant_factors": snf.invariant_factors,
        "reduced_alexander": snf.nonunit_factors(),
        "alexander": deltas,
    });
    let mut out = Output::new(cli, "smith", json!({ "matrix": matrix.display().to_string() }), &result)?;
    let mut t = format!("{}×{} matrix of rank {}\n", a.rows(), a.cols(), snf.rank);
    for (i, f) in snf.invariant_factors.iter().enumerate() {
        let _ = writeln!(t, "Λ_{} = {}", i + 1, f);
    }
    for (i, d) in deltas.iter().enumerate() {
        let _ = writeln!(t, "Δ_{} = {}", i + 1, d);
    }
    out.text = t;
    out.csv = std::iter::once(vec!["index".to_string(), "invariant_factor".into(), "alexander".into()])
        .chain((0..snf.invariant_factors.len().max(deltas.len())).map(|i| {
            vec![
                (i + 1).to_string(),
                snf.invariant_factors.get(i).map_or(String::new(), |f| f.to_string()),
                deltas.get(i).map_or(String::new(), |d| d.to_string()),
            ]
        }))
        .collect();
    Ok(out)
}

fn cmd_levine(cli: &Cli, chain: &str) -> Res<Output> {
    let polys = chain
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_poly("chain", s))
        .collect::<Res<Vec<_>>>()?;
    if polys.is_empty() {
        return Err(Failure::Usage("--chain needs at least one polynomial".into()));
    }
    let r = knotdb::levine_check(&polys);
    let mut out = Output::new(cli, "levine", json!({ "chain": chain }), &r)?;
    let yn = |b: bool| if b { "pass" } else { "FAIL" };
    let mut t = String::new();
    for e in &r.entries {
        let _ = writeln!(
            t,
            "Λ_{} = {}: (i) Λ(1) = ±1 {}  (ii) palindromic {}  (iii) {}",
            e.index,
            e.polynomial,
            yn(e.unit_at_one),
            yn(e.palindromic),
            e.divides_previous.map_or("-".to_string(), |b| format!("divides Λ_{} {}", e.index - 1, yn(b)))
        );
    }
    let _ = writeln!(t, "{}", if r.passed { "realizable by a knot" } else { "not realizable by a knot" });
    out.text = t;
    out.csv = std::iter::once(["index", "polynomial", "i", "ii", "iii"].map(String::from).to_vec())
        .chain(r.entries.iter().map(|e| {
            vec![
                e.index.to_string(),
                e.polynomial.to_string(),
                e.unit_at_one.to_string(),
                e.palindromic.to_string(),
                e.divides_previous.map_or(String::new(), |b| b.to_string()),
            ]
        }))
        .collect();
    Ok(out)
}

#[derive(Serialize)]
struct FamilyResult {
    family: String,
    #[serde(flatten)]
    report: ShrinkageReport,
    table_matches: Vec<String>,
}

fn cmd_family(cli: &Cli, kind: &FamilyKind) -> Res<Output> {
    let (family, lambda, inputs) = match kind {
        FamilyKind::Torus { p, q } => {
            (format!("T({p},{q})"), knotdb::torus_knot_lambda(*p, *q)?, json!({ "family": "torus", "p": p, "q": q }))
        }
        FamilyKind::Twist { m } => {
            (format!("twist knot with {m} half twists"), knotdb::twist_knot_lambda(*m), json!({ "family": "twist", "m": m }))
        }
    };
    let report = classify(&lambda)?;
    let table_matches: Vec<String> =
        knotdb::builtin_table().iter().filter(|r| r.lambda == lambda).map(|r| r.name.clone()).collect();
    let mut out = Output::new(
        cli,
        "family",
        inputs,
        &FamilyResult { family: family.clone(), report: report.clone(), table_matches: table_matches.clone() },
    )?;
    let mut t = format!("{family}\n");
    t.push_str(&report_text(&report));
    if !table_matches.is_empty() {
        let _ = writeln!(t, "same Λ as table row(s): {}", table_matches.join(", "));
    }
    out.text = t;
    out.csv = vec![CLASSIFY_HEADER.iter().map(|s| s.to_string()).collect(), classify_row(&family, &report)];
    Ok(out)
}
