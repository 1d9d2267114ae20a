//! Smith normal form over the Laurent ring and Alexander polynomials of
//! presentation matrices.
//!
//! Invariant factors are reported with the most divisible factor first:
//! `a_{i+1} | a_i`, so `a_1` is the reduced Alexander polynomial `Λ = Δ_1/Δ_2`.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::polyring::{parse_poly, LaurentPoly};

/// A dense matrix of Laurent polynomials acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn new(entries: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let rows = entries.len();
        if rows == 0 {
            return domain("matrix needs at least one row");
        }
        let cols = entries[0].len();
        if cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return domain("matrix rows must be nonempty and of equal length");
        }
        Ok(LaurentMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![vec![LaurentPoly::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = LaurentPoly::one();
        }
        m
    }

    pub fn diagonal(diag: &[LaurentPoly]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.entries[i][i] = d.clone();
        }
        m
    }

    /// Parses a grid of polynomial strings.
    pub fn from_strs(grid: &[&[&str]]) -> Result<Self> {
        let entries = grid
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<LaurentPoly>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != other.rows {
            return domain(format!(
                "shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.entries[i][k].mul(&other.entries[k][j]));
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> LaurentMatrix {
        let entries = (0..self.cols).map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect()).collect();
        LaurentMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.entries {
            row.swap(a, b);
        }
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return domain("determinant of a non-square matrix");
        }
        Ok(bareiss_det(self.entries.clone()))
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }

    /// Submatrix on the given row and column indices.
    pub fn minor_matrix(&self, rows: &[usize], cols: &[usize]) -> LaurentMatrix {
        let entries = rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        LaurentMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// All nonzero `j x j` minors.
    pub fn minors(&self, j: usize) -> Vec<LaurentPoly> {
        let mut out = Vec::new();
        if j == 0 || j > self.rows.min(self.cols) {
            return out;
        }
        for rs in combinations(self.rows, j) {
            for cs in combinations(self.cols, j) {
                let d = bareiss_det(self.minor_matrix(&rs, &cs).entries);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    /// Gcd of all `j x j` minors (zero if they all vanish).
    pub fn minors_gcd(&self, j: usize) -> LaurentPoly {
        self.minors(j).iter().fold(LaurentPoly::zero(), |g, m| g.gcd(m))
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

fn bareiss_det(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_divide(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Invariant factors in normalized primitive form, most divisible first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithResult {
    pub invariant_factors: Vec<LaurentPoly>,
    pub rank: usize,
}

impl SmithResult {
    /// The reduced Alexander polynomials `Λ_1, ..., Λ_k`.
    pub fn reduced_alexander(&self) -> &[LaurentPoly] {
        &self.invariant_factors
    }

    /// The factors that are not units.
    pub fn nonunit_factors(&self) -> Vec<LaurentPoly> {
        self.invariant_factors.iter().filter(|f| !f.is_unit()).cloned().collect()
    }
}

/// Smith normal form over the Laurent ring.
///
/// Each row is first multiplied by the unit `z^{-m}` that makes its entries
/// ordinary polynomials; elimination then runs in the Euclidean ring of
/// rational polynomials, choosing the pivot of least span (degree up to the
/// unit `z`).
pub fn smith_normal_form(a: &LaurentMatrix) -> SmithResult {
    let mut m: Vec<Vec<LaurentPoly>> = a
        .entries
        .iter()
        .map(|row| {
            let shift = row.iter().filter(|e| !e.is_zero()).map(|e| e.min_exp()).min().unwrap_or(0);
            row.iter().map(|e| e.shift(-shift)).collect()
        })
        .collect();
    let (r, s) = (a.rows, a.cols);
    let mut diag = Vec::new();
    for t in 0..r.min(s) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..s).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| (m[i][j].span(), i, j));
            let Some((pi, pj)) = pivot else {
                break;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..r {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, rem) = m[i][t].div_rem(&p).expect("nonzero pivot");
                for j in t..s {
                    let v = m[i][j].sub(&q.mul(&m[t][j]));
                    m[i][j] = v;
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..s {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, rem) = m[t][j].div_rem(&p).expect("nonzero pivot");
                for i in t..r {
                    let v = m[i][j].sub(&q.mul(&m[i][t]));
                    m[i][j] = v;
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..s).any(|j| !p.divides(&m[i][j])));
            match bad {
                Some(i) => {
                    for j in t..s {
                        let v = m[t][j].add(&m[i][j]);
                        m[t][j] = v;
                    }
                }
                None => break,
            }
        }
        if m[t][t].is_zero() {
            break;
        }
        diag.push(m[t][t].normalize_unchecked());
    }
    diag.reverse();
    let rank = diag.len();
    SmithResult { invariant_factors: diag, rank }
}

/// `Δ_i` for `i = 1..=k`: the gcd of the `(k+1-i)`-minors, computed from the
/// minors directly and independently of the Smith form.
pub fn alexander_polynomials(a: &LaurentMatrix) -> Vec<LaurentPoly> {
    let maxj = a.rows.min(a.cols);
    let mut gcds: Vec<LaurentPoly> = Vec::new();
    for j in 1..=maxj {
        let g = a.minors_gcd(j);
        if g.is_zero() {
            break;
        }
        gcds.push(g);
    }
    gcds.reverse();
    gcds
}

/// `Λ = Δ_1 / Δ_2`, normalized.
pub fn reduced_from_pair(delta1: &LaurentPoly, delta2: &LaurentPoly) -> Result<LaurentPoly> {
    if delta2.is_zero() {
        return domain("Δ₂ is zero");
    }
    let (q, r) = delta1.div_rem(delta2)?;
    if !r.is_zero() {
        return Err(Error::Domain(format!(
            "Δ₂ = {delta2} does not divide Δ₁ = {delta1}; remainder {r}"
        )));
    }
    q.normalize_primitive()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyDecomposition {
    pub free_rank: usize,
    pub torsion_factors: Vec<LaurentPoly>,
}

/// Homology at the middle of `C_2 --d2--> C_1 --d1--> C_0`, with both maps
/// acting on row vectors from the right (`x ↦ x·A`). The composite must vanish,
/// i.e. `d2 · d1 = 0` as matrices.
pub fn homology_decomposition(d2: &LaurentMatrix, d1: &LaurentMatrix) -> Result<HomologyDecomposition> {
    let comp = d2.mul(d1)?;
    if !comp.is_zero() {
        return domain("d1 ∘ d2 is not zero");
    }
    let s2 = smith_normal_form(d2);
    let r1 = smith_normal_form(d1).rank;
    let free_rank = d2.cols() - r1 - s2.rank;
    Ok(HomologyDecomposition { free_rank, torsion_factors: s2.nonunit_factors() })
}

/// On-disk matrix document:
/// `{"rows": r, "cols": s, "entries": [["2z^2-3z+2", "0"], ...]}`.
///
/// Fixtures may also carry a `construction` description and a
/// `dilatation_constant`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dilatation_constant: Option<f64>,
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            position: 0,
            message: format!("matrix file line {} column {}: {e}", e.line(), e.column()),
        })
    }

    /// Reads from a path, or from standard input when the path is `-`.
    pub fn read(path: &Path) -> Result<Self> {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Input(e.to_string()))?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?
        };
        Self::parse(&text)
    }

    pub fn from_matrix(m: &LaurentMatrix) -> Self {
        MatrixFile {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect(),
            construction: None,
            dilatation_constant: None,
        }
    }

    pub fn matrix(&self) -> Result<LaurentMatrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::Parse {
                position: 0,
                message: format!("entries do not form a {}x{} grid", self.rows, self.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LaurentMatrix::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn diagonal_input() {
        let a = LaurentMatrix::diagonal(&[p("z^2-z+1"), p("1")]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors, vec![p("z^2-z+1"), p("1")]);
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn upper_triangular() {
        let a = LaurentMatrix::from_strs(&[&["z-1", "2"], &["0", "z-1"]]).unwrap();
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors, vec![p("(z-1)^2"), p("1")]);
    }

    #[test]
    fn unsorted_diagonal_gets_chain_order() {
        let a = LaurentMatrix::diagonal(&[p("z+1"), p("(z+1)(z-2)^2"), p("z-2")]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors, vec![p("(z+1)(z-2)^2"), p("(z+1)(z-2)"), p("1")]);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let s = smith_normal_form(&LaurentMatrix::zeros(2, 3));
        assert_eq!(s.rank, 0);
        assert!(s.invariant_factors.is_empty());
    }

    #[test]
    fn laurent_entries_are_units_up_to_z() {
        let a = LaurentMatrix::from_strs(&[&["z^-3", "0"], &["0", "z^-1-1+z"]]).unwrap();
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors, vec![p("z^2-z+1"), p("1")]);
    }

    #[test]
    fn alexander_from_minors() {
        let a = LaurentMatrix::diagonal(&[p("(z^2-z+1)^2"), p("z^2-z+1")]);
        assert_eq!(alexander_polynomials(&a), vec![p("(z^2-z+1)^3"), p("z^2-z+1")]);
        let b = LaurentMatrix::diagonal(&[p("z^2-z+1"), p("1")]);
        assert_eq!(alexander_polynomials(&b), vec![p("z^2-z+1"), p("1")]);
    }

    #[test]
    fn reduced_pair() {
        assert_eq!(reduced_from_pair(&p("(z^2-z+1)^2"), &p("z^2-z+1")).unwrap(), p("z^2-z+1"));
        assert_eq!(reduced_from_pair(&p("(z^2-z+1)^3"), &p("z^2-z+1")).unwrap(), p("(z^2-z+1)^2"));
        assert!(reduced_from_pair(&p("z^2-3z+1"), &p("z-2")).is_err());
    }

    #[test]
    fn homology_examples() {
        let d2 = LaurentMatrix::from_strs(&[&["z-1"]]).unwrap();
        let d1 = LaurentMatrix::zeros(1, 1);
        let h = homology_decomposition(&d2, &d1).unwrap();
        assert_eq!(h.free_rank, 0);
        assert_eq!(h.torsion_factors, vec![p("z-1")]);

        let h = homology_decomposition(&LaurentMatrix::zeros(1, 1), &LaurentMatrix::zeros(1, 1)).unwrap();
        assert_eq!(h.free_rank, 1);
        assert!(h.torsion_factors.is_empty());

        let bad2 = LaurentMatrix::from_strs(&[&["z-1", "1"]]).unwrap();
        let bad1 = LaurentMatrix::from_strs(&[&["1"], &["0"]]).unwrap();
        assert!(homology_decomposition(&bad2, &bad1).is_err());
    }

    #[test]
    fn determinant_and_combinations() {
        let a = LaurentMatrix::from_strs(&[&["z", "1", "0"], &["1", "z", "1"], &["0", "1", "z"]]).unwrap();
        assert_eq!(a.determinant().unwrap(), p("z^3-2z"));
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn matrix_file_round_trip() {
        let m = LaurentMatrix::from_strs(&[&["2z^2-3z+2", "0"], &["z^-1", "1"]]).unwrap();
        let text = serde_json::to_string(&MatrixFile::from_matrix(&m)).unwrap();
        assert_eq!(MatrixFile::parse(&text).unwrap().matrix().unwrap(), m);
        assert!(MatrixFile::parse(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).unwrap().matrix().is_err());
    }
}
