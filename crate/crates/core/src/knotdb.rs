//! Reference knot data, the torus and twist families, Levine's realizability
//! conditions and ingestion of external knot tables.

use std::io::Read;
use std::path::Path;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::polyring::LaurentPoly;
use crate::shrinkage::ExpectedType;
use crate::smith::reduced_from_pair;

/// Version of the shipped dataset, recorded in reports.
pub const DATASET_VERSION: &str = "1";

const BUILTIN_CSV: &str = include_str!("../data/knots.csv");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnotRecord {
    /// Canonical ASCII name such as `8_18` or `12a_169`.
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias: Option<String>,
    pub crossings: u32,
    /// Normalized primitive, `Λ(1) = ±1`.
    pub lambda: LaurentPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_type: Option<ExpectedType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remark: Option<String>,
}

/// Canonical ASCII form of a knot name: `8₁₈`, `8_{18}` and `8_18` all map
/// to `8_18`, and `12a169` to `12a_169`.
pub fn normalize_knot_name(name: &str) -> String {
    let mut out = String::new();
    let mut in_subscript = false;
    for c in name.trim().chars() {
        match c {
            '{' | '}' | ' ' => {}
            '₀'..='₉' => {
                if !in_subscript && !out.ends_with('_') {
                    out.push('_');
                }
                in_subscript = true;
                out.push(char::from_digit(c as u32 - '₀' as u32, 10).unwrap_or(c));
            }
            'A' | 'N' => out.push(c.to_ascii_lowercase()),
            _ => out.push(c),
        }
    }
    if !out.contains('_') {
        if let Some(pos) = out.find(['a', 'n']) {
            if pos > 0 && pos + 1 < out.len() && out[pos + 1..].chars().all(|c| c.is_ascii_digit()) {
                out.insert(pos + 1, '_');
            }
        }
    }
    out
}

fn leading_crossings(name: &str) -> Option<u32> {
    let digits: String = name.chars().take_while(|c| c.is_ascii_digit()).collect();
    digits.parse().ok()
}

/// One rejected input row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    /// 1-based line in the source, header included.
    pub line: u64,
    pub name: Option<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IngestReport {
    pub records: Vec<KnotRecord>,
    pub rejections: Vec<Rejection>,
    pub warnings: Vec<String>,
}

fn field(row: &csv::StringRecord, idx: Option<usize>) -> Option<&str> {
    idx.and_then(|i| row.get(i)).map(str::trim).filter(|s| !s.is_empty())
}

fn record_from_row(row: &csv::StringRecord, cols: &Columns) -> std::result::Result<KnotRecord, String> {
    let raw_name = field(row, cols.name).ok_or("missing name")?;
    let name = normalize_knot_name(raw_name);
    let lambda = match (field(row, cols.lambda), field(row, cols.delta1), field(row, cols.delta2)) {
        (Some(l), _, _) => l.parse::<LaurentPoly>().map_err(|e| format!("lambda: {e}"))?,
        (None, Some(d1), Some(d2)) => {
            let d1: LaurentPoly = d1.parse().map_err(|e| format!("delta1: {e}"))?;
            let d2: LaurentPoly = d2.parse().map_err(|e| format!("delta2: {e}"))?;
            reduced_from_pair(&d1, &d2).map_err(|e| e.to_string())?
        }
        _ => return Err("neither lambda nor both delta1 and delta2 given".into()),
    };
    let lambda = lambda.normalize_primitive().map_err(|e| e.to_string())?;
    let at_one = lambda.eval_i64(1).map_err(|e| e.to_string())?;
    if !at_one.abs().is_one() {
        return Err(format!("Λ(1) = {at_one}, but a knot has Λ(1) = ±1"));
    }
    let crossings = match field(row, cols.crossings) {
        Some(c) => c.parse().map_err(|_| format!("crossings: not a positive integer: {c}"))?,
        None => leading_crossings(&name).ok_or("crossings missing and not readable from the name")?,
    };
    let expected_type = match field(row, cols.expected) {
        Some(t) => Some(ExpectedType::parse(t).ok_or_else(|| format!("unknown type {t}"))?),
        None => None,
    };
    Ok(KnotRecord {
        name,
        alias: field(row, cols.alias).map(String::from),
        crossings,
        lambda,
        expected_type,
        remark: field(row, cols.remark).map(String::from),
    })
}

#[derive(Default)]
struct Columns {
    name: Option<usize>,
    alias: Option<usize>,
    crossings: Option<usize>,
    lambda: Option<usize>,
    delta1: Option<usize>,
    delta2: Option<usize>,
    expected: Option<usize>,
    remark: Option<usize>,
}

impl Columns {
    fn from_headers(h: &csv::StringRecord) -> Self {
        let find = |names: &[&str]| h.iter().position(|x| names.iter().any(|n| x.trim().eq_ignore_ascii_case(n)));
        Columns {
            name: find(&["name", "knot"]),
            alias: find(&["alias"]),
            crossings: find(&["crossings", "crossing_number"]),
            lambda: find(&["lambda", "reduced_alexander"]),
            delta1: find(&["delta1", "alexander_polynomial"]),
            delta2: find(&["delta2"]),
            expected: find(&["expected_type", "type"]),
            remark: find(&["remark", "remarks"]),
        }
    }
}

/// Reads a knot table from CSV text. Lines starting with `#` are comments.
///
/// The header must name `name` and either `lambda` or both `delta1` and
/// `delta2`. Malformed rows land in the rejection list.
pub fn ingest_reader<R: Read>(source: R) -> Result<IngestReport> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).flexible(true).trim(csv::Trim::All).from_reader(source);
    let headers = match rdr.headers() {
        Ok(h) => h.clone(),
        Err(e) => return Err(Error::Input(e.to_string())),
    };
    let mut report = IngestReport { records: Vec::new(), rejections: Vec::new(), warnings: Vec::new() };
    if headers.is_empty() {
        report.warnings.push("empty source, no records".into());
        return Ok(report);
    }
    let cols = Columns::from_headers(&headers);
    if cols.name.is_none() || (cols.lambda.is_none() && (cols.delta1.is_none() || cols.delta2.is_none())) {
        return Err(Error::Input("header must name `name` and `lambda` or `delta1` and `delta2`".into()));
    }
    for row in rdr.records() {
        let row = row.map_err(|e| Error::Input(e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        match record_from_row(&row, &cols) {
            Ok(r) => report.records.push(r),
            Err(reason) => report.rejections.push(Rejection {
                line,
                name: field(&row, cols.name).map(normalize_knot_name),
                reason,
            }),
        }
    }
    if report.records.is_empty() {
        report.warnings.push("no valid records".into());
    }
    Ok(report)
}

/// Reads a knot table from a file.
pub fn ingest_csv(path: &Path) -> Result<IngestReport> {
    let f = std::fs::File::open(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    ingest_reader(f)
}

/// The shipped records: Table-1 knots up to eight crossings, the three open
/// ten-crossing knots and `12a_169`.
pub fn builtin_table() -> &'static [KnotRecord] {
    static TABLE: OnceLock<Vec<KnotRecord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let report = ingest_reader(BUILTIN_CSV.as_bytes()).expect("shipped dataset parses");
        assert!(report.rejections.is_empty(), "shipped dataset has bad rows: {:?}", report.rejections);
        report.records
    })
}

/// Looks a knot up by any accepted spelling of its name.
pub fn lookup(name: &str) -> Option<&'static KnotRecord> {
    let key = normalize_knot_name(name);
    builtin_table().iter().find(|r| r.name == key)
}

/// `Λ` of the `(p, q)` torus knot: `(z^{pq} − 1)(z − 1) / ((z^p − 1)(z^q − 1))`.
pub fn torus_knot_lambda(p: u32, q: u32) -> Result<LaurentPoly> {
    if p < 2 || q < 2 {
        return domain("torus knot parameters must be at least 2");
    }
    if p.gcd(&q) != 1 {
        return domain(format!("torus knot parameters {p} and {q} are not coprime"));
    }
    let zm1 = |e: u32| LaurentPoly::monomial(crate::polyring::q_int(1), e as i64).sub(&LaurentPoly::one());
    let num = zm1(p * q).mul(&zm1(1));
    let den = zm1(p).mul(&zm1(q));
    num.exact_divide(&den)?.normalize_primitive()
}

/// `Λ` of the twist knot with `m` half twists: `nz² − (2n+1)z + n` for
/// `m = 2n`, `nz² − (2n−1)z + n` for `m = 2n − 1`, and 1 for `m = 0`.
pub fn twist_knot_lambda(m: u32) -> LaurentPoly {
    if m == 0 {
        return LaurentPoly::one();
    }
    let n = (m as i64 + 1) / 2;
    let mid = if m.is_multiple_of(2) { 2 * n + 1 } else { 2 * n - 1 };
    LaurentPoly::from_ints(0, &[n, -mid, n])
}

/// Diagnostics for one member of a chain `Λ_1, Λ_2, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevineEntry {
    pub index: usize,
    pub polynomial: LaurentPoly,
    /// (i) `Λᵢ(1) = ±1`.
    pub unit_at_one: bool,
    /// (ii) `Λᵢ(z) = Λᵢ(z⁻¹)` up to `±z^m`.
    pub palindromic: bool,
    /// (iii) `Λᵢ | Λᵢ₋₁`; absent for the first member.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divides_previous: Option<bool>,
}

impl LevineEntry {
    pub fn passed(&self) -> bool {
        self.unit_at_one && self.palindromic && self.divides_previous.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevineReport {
    pub passed: bool,
    pub entries: Vec<LevineEntry>,
}

impl LevineReport {
    /// Roman numerals of the failed conditions with their 1-based indices.
    pub fn failures(&self) -> Vec<(usize, &'static str)> {
        let mut out = Vec::new();
        for e in &self.entries {
            if !e.unit_at_one {
                out.push((e.index, "i"));
            }
            if !e.palindromic {
                out.push((e.index, "ii"));
            }
            if e.divides_previous == Some(false) {
                out.push((e.index, "iii"));
            }
        }
        out
    }
}

/// Levine's conditions for `Λ_1, ..., Λ_k` to be the reduced Alexander
/// polynomials of a knot. Failures are reported, never raised.
pub fn levine_check(chain: &[LaurentPoly]) -> LevineReport {
    let mut entries = Vec::with_capacity(chain.len());
    for (i, p) in chain.iter().enumerate() {
        let nonzero = !p.is_zero();
        let unit_at_one = nonzero && p.eval_i64(1).map(|v| v.abs().is_one()).unwrap_or(false);
        let palindromic = nonzero && p.is_palindromic().unwrap_or(false);
        let divides_previous = (i > 0).then(|| nonzero && p.divides(&chain[i - 1]));
        entries.push(LevineEntry { index: i + 1, polynomial: p.clone(), unit_at_one, palindromic, divides_previous });
    }
    let passed = !entries.is_empty() && entries.iter().all(LevineEntry::passed);
    LevineReport { passed, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn names() {
        assert_eq!(normalize_knot_name("8₁₈"), "8_18");
        assert_eq!(normalize_knot_name("8_{18}"), "8_18");
        assert_eq!(normalize_knot_name("12a₁₆₉"), "12a_169");
        assert_eq!(normalize_knot_name("12A169"), "12a_169");
        assert_eq!(normalize_knot_name("3_1"), "3_1");
    }

    #[test]
    fn builtin_rows() {
        let t = builtin_table();
        assert_eq!(t.len(), 39);
        let r = lookup("3₁").unwrap();
        assert_eq!(r.lambda, p("z^2-z+1"));
        assert_eq!(r.expected_type, Some(ExpectedType::II(1)));
        assert_eq!(r.remark.as_deref(), Some("torus knot"));
        assert_eq!(lookup("8_18").unwrap().lambda, p("(z^2-z+1)(z^2-3z+1)"));
        assert_eq!(lookup("12a169").unwrap().expected_type, Some(ExpectedType::III(2)));
        assert_eq!(lookup("6_2").unwrap().lambda, p("z^4-3z^3+3z^2-3z+1"));
    }

    #[test]
    fn families() {
        assert_eq!(torus_knot_lambda(2, 3).unwrap(), p("z^2-z+1"));
        assert_eq!(torus_knot_lambda(2, 5).unwrap(), p("z^4-z^3+z^2-z+1"));
        assert_eq!(torus_knot_lambda(3, 4).unwrap(), p("z^6-z^5+z^3-z+1"));
        assert!(torus_knot_lambda(2, 4).is_err());
        assert_eq!(twist_knot_lambda(2), p("z^2-3z+1"));
        assert_eq!(twist_knot_lambda(3), p("2z^2-3z+2"));
        assert_eq!(twist_knot_lambda(5), p("3z^2-5z+3"));
        assert_eq!(twist_knot_lambda(0), p("1"));
    }

    #[test]
    fn levine() {
        for n in 1..=4 {
            assert!(levine_check(&[p("z^2-z+1").pow(n), p("1")]).passed);
        }
        let r = levine_check(&[p("z^2-z+1"), p("2z^2-3z+2")]);
        assert!(!r.passed);
        assert_eq!(r.failures(), vec![(2, "iii")]);
        let r = levine_check(&[p("z-2")]);
        assert_eq!(r.failures(), vec![(1, "ii")]);
    }

    #[test]
    fn ingestion() {
        let text = "name,delta1,delta2\n3_1,z^2-z+1,1\n4_1,z^2-3z+1,1\n5_2,2z^2-3z+2,1\nbad,z^2-z+1,z-3\nthree,z^2+z+1,1\n";
        let r = ingest_reader(text.as_bytes()).unwrap();
        assert_eq!(r.records.len(), 3);
        assert_eq!(r.records[2].lambda, p("2z^2-3z+2"));
        assert_eq!(r.rejections.len(), 2);
        assert_eq!(r.rejections[0].line, 5);
        assert!(r.rejections[1].reason.contains("Λ(1)"));

        let r = ingest_reader("".as_bytes()).unwrap();
        assert!(r.records.is_empty() && !r.warnings.is_empty());
    }
}
