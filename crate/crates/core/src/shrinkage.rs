//! The shrinkage-type classification.
//!
//! A root `ξ_j = e^{πi t_j}` of `Λ` on the unit circle with multiplicity `μ_j`
//! contributes `μ_j` to the lower shrinkage rate and `ν(t_j) μ_j` to the
//! upper one. `ν = 1` for roots of unity and `2 <= ν <= C + 1` otherwise, with
//! `C` an explicit Baker constant. When no non-cyclotomic root can be shown
//! to push the upper rate past the lower one, the verdict is `Undecided`:
//! that needs the true value of `ν`, which nobody knows how to compute.
//! Whether `ν_j > 2` ever happens for a knot is open as well; reports only
//! carry bounds.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::diophantine::{best_baker_bound, BakerBound};
use crate::error::{domain, Result};
use crate::polyring::{LaurentPoly, Q};
use crate::unitcircle::{unit_circle_roots, RootCluster};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "type")]
pub enum Verdict {
    TypeI,
    TypeII { mu: u32 },
    TypeIII { mu_lower: u32, mu_upper_lower_bound: u32, mu_upper_upper_bound: f64 },
    Undecided { mu_lower: u32, reason: String },
}

impl Verdict {
    /// Short label: `I`, `II_2`, `III_1`, `Undecided(2)`.
    pub fn label(&self) -> String {
        match self {
            Verdict::TypeI => "I".into(),
            Verdict::TypeII { mu } => format!("II_{mu}"),
            Verdict::TypeIII { mu_lower, .. } => format!("III_{mu_lower}"),
            Verdict::Undecided { mu_lower, .. } => format!("Undecided({mu_lower})"),
        }
    }
}

/// An expected verdict as written in a knot table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExpectedType {
    I,
    II(u32),
    III(u32),
    Undecided(u32),
}

impl ExpectedType {
    /// Parses `I`, `II_1`, `II₁`, `III_2`, `Undecided(2)`.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s
            .trim()
            .chars()
            .map(|c| match c {
                '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10).unwrap_or(c),
                _ => c,
            })
            .filter(|c| !c.is_whitespace() && *c != '_')
            .collect();
        if s == "I" {
            return Some(ExpectedType::I);
        }
        if let Some(rest) = s.strip_prefix("Undecided(").and_then(|r| r.strip_suffix(')')) {
            return rest.parse().ok().map(ExpectedType::Undecided);
        }
        if let Some(rest) = s.strip_prefix("III") {
            return rest.parse().ok().map(ExpectedType::III);
        }
        if let Some(rest) = s.strip_prefix("II") {
            return rest.parse().ok().map(ExpectedType::II);
        }
        None
    }

    pub fn matches(&self, v: &Verdict) -> bool {
        match (self, v) {
            (ExpectedType::I, Verdict::TypeI) => true,
            (ExpectedType::II(a), Verdict::TypeII { mu }) => a == mu,
            (ExpectedType::III(a), Verdict::TypeIII { mu_lower, .. }) => a == mu_lower,
            (ExpectedType::Undecided(a), Verdict::Undecided { mu_lower, .. }) => a == mu_lower,
            _ => false,
        }
    }
}

impl fmt::Display for ExpectedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedType::I => write!(f, "I"),
            ExpectedType::II(m) => write!(f, "II_{m}"),
            ExpectedType::III(m) => write!(f, "III_{m}"),
            ExpectedType::Undecided(m) => write!(f, "Undecided({m})"),
        }
    }
}

/// The Novikov–Shubin number `α₂⁽²⁾(X_∞)`: `∞⁺` for type I, else `1/μ̲`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NovikovShubin {
    InfinityPlus,
    Value(Q),
}

impl fmt::Display for NovikovShubin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NovikovShubin::InfinityPlus => write!(f, "∞⁺"),
            NovikovShubin::Value(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for NovikovShubin {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One cluster with its bounds on `ν` and on the total multiplicity `ν μ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClusterReport {
    pub factor: LaurentPoly,
    pub multiplicity: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclotomic_order: Option<u64>,
    pub t: f64,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub t_lo: Q,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub t_hi: Q,
    pub nu_lower: f64,
    pub nu_upper: f64,
    pub total_multiplicity_lower: f64,
    pub total_multiplicity_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baker: Option<BakerBound>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShrinkageReport {
    pub lambda: LaurentPoly,
    pub mu_lower: u32,
    pub mu_upper_lower_bound: u32,
    /// `None` only if some bound could not be formed.
    pub mu_upper_upper_bound: Option<f64>,
    pub verdict: Verdict,
    pub clusters: Vec<ClusterReport>,
    pub novikov_shubin: NovikovShubin,
    #[serde(skip)]
    pub root_clusters: Vec<RootCluster>,
}

/// `μ̲(K)`: the largest multiplicity of a unit-circle root, or 0.
pub fn lower_rate(clusters: &[RootCluster]) -> u32 {
    clusters.iter().map(|c| c.multiplicity).max().unwrap_or(0)
}

/// Bounds `(lower, upper)` on `μ̄(K)` from `ν = 1` at roots of unity and
/// `2 <= ν <= C + 1` elsewhere. `baker[i]` belongs to `clusters[i]`.
pub fn upper_rate_bounds(clusters: &[RootCluster], baker: &[Option<BakerBound>]) -> Result<(u32, f64)> {
    if baker.len() != clusters.len() {
        return domain("one Baker bound slot per cluster is required");
    }
    let mut lo = 0u32;
    let mut hi = 0f64;
    for (c, b) in clusters.iter().zip(baker) {
        if c.is_cyclotomic() {
            lo = lo.max(c.multiplicity);
            hi = hi.max(c.multiplicity as f64);
        } else {
            let Some(b) = b else {
                return domain(format!("missing Baker bound for the root at t ≈ {}", c.t));
            };
            lo = lo.max(2 * c.multiplicity);
            hi = hi.max(b.nu_upper * c.multiplicity as f64);
        }
    }
    Ok((lo, hi))
}

/// Classifies from a precomputed cluster list.
pub fn classify_clusters(lambda: &LaurentPoly, clusters: Vec<RootCluster>) -> Result<ShrinkageReport> {
    let mut cache: HashMap<LaurentPoly, BakerBound> = HashMap::new();
    let mut baker = Vec::with_capacity(clusters.len());
    for c in &clusters {
        if c.is_cyclotomic() {
            baker.push(None);
            continue;
        }
        if !cache.contains_key(&c.root_poly) {
            cache.insert(c.root_poly.clone(), best_baker_bound(&c.root_poly)?);
        }
        baker.push(cache.get(&c.root_poly).cloned());
    }
    let mu_lower = lower_rate(&clusters);
    let (up_lo, up_hi) = upper_rate_bounds(&clusters, &baker)?;

    let verdict = if clusters.is_empty() {
        Verdict::TypeI
    } else if clusters.iter().all(|c| c.is_cyclotomic()) {
        Verdict::TypeII { mu: mu_lower }
    } else if up_lo > mu_lower {
        Verdict::TypeIII { mu_lower, mu_upper_lower_bound: up_lo, mu_upper_upper_bound: up_hi }
    } else {
        let witness = clusters
            .iter()
            .filter(|c| !c.is_cyclotomic())
            .max_by_key(|c| c.multiplicity)
            .expect("a non-cyclotomic cluster exists");
        Verdict::Undecided {
            mu_lower,
            reason: format!(
                "irrationality exponent of the non-cyclotomic root t ≈ {:.12} (multiplicity {}) is unknown; \
                 type III iff ν > {}/{}",
                witness.t, witness.multiplicity, mu_lower, witness.multiplicity
            ),
        }
    };

    let reports = clusters
        .iter()
        .zip(&baker)
        .map(|(c, b)| {
            let (nu_lo, nu_hi) = match b {
                None => (1.0, 1.0),
                Some(b) => (2.0, b.nu_upper),
            };
            ClusterReport {
                factor: c.factor.clone(),
                multiplicity: c.multiplicity,
                cyclotomic_order: c.cyclotomic_order,
                t: c.t,
                t_lo: c.t_lo.clone(),
                t_hi: c.t_hi.clone(),
                nu_lower: nu_lo,
                nu_upper: nu_hi,
                total_multiplicity_lower: nu_lo * c.multiplicity as f64,
                total_multiplicity_upper: nu_hi * c.multiplicity as f64,
                baker: b.clone(),
            }
        })
        .collect();

    let novikov_shubin = if mu_lower == 0 {
        NovikovShubin::InfinityPlus
    } else {
        NovikovShubin::Value(Q::new(BigInt::from(1), BigInt::from(mu_lower)))
    };
    Ok(ShrinkageReport {
        lambda: lambda.clone(),
        mu_lower,
        mu_upper_lower_bound: up_lo.max(mu_lower),
        mu_upper_upper_bound: Some(up_hi.max(mu_lower as f64)),
        verdict,
        clusters: reports,
        novikov_shubin,
        root_clusters: clusters,
    })
}

/// Shrinkage type and rates of a knot with reduced Alexander polynomial `Λ`.
pub fn classify(lambda: &LaurentPoly) -> Result<ShrinkageReport> {
    let lambda = lambda.normalize_primitive()?;
    if lambda.eval_i64(1)?.is_zero() || lambda.eval_i64(-1)?.is_zero() {
        return domain("Λ(1) and Λ(-1) must be nonzero (for a knot Λ(1) = ±1 and Λ(-1) is odd)");
    }
    let clusters = unit_circle_roots(&lambda)?;
    classify_clusters(&lambda, clusters)
}

/// `α₂⁽²⁾(X_∞)` read off a report.
pub fn novikov_shubin(report: &ShrinkageReport) -> NovikovShubin {
    report.novikov_shubin.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&p("z^2-3z+1")).unwrap().verdict, Verdict::TypeI);
        assert_eq!(classify(&p("(z^2-z+1)^3")).unwrap().verdict, Verdict::TypeII { mu: 3 });
        let r = classify(&p("(z^2-z+1)^2(2z^2-3z+2)")).unwrap();
        assert!(matches!(r.verdict, Verdict::Undecided { mu_lower: 2, .. }));
        assert_eq!(r.mu_upper_lower_bound, 2);
    }

    #[test]
    fn five_two_bounds() {
        let r = classify(&p("2z^2-3z+2")).unwrap();
        assert_eq!(r.mu_lower, 1);
        assert_eq!(r.mu_upper_lower_bound, 2);
        assert_eq!(r.mu_upper_upper_bound, Some(452131.0));
        assert_eq!(r.verdict.label(), "III_1");
    }

    #[test]
    fn rate_bounds() {
        let c = unit_circle_roots(&p("z^2-z+1")).unwrap();
        assert_eq!(upper_rate_bounds(&c, &[None]).unwrap(), (1, 1.0));
        let c = unit_circle_roots(&p("(z^2-z+1)^2")).unwrap();
        assert_eq!(upper_rate_bounds(&c, &[None]).unwrap(), (2, 2.0));
        let c = unit_circle_roots(&p("2z^2-3z+2")).unwrap();
        assert!(upper_rate_bounds(&c, &[None]).is_err());
        assert_eq!(lower_rate(&[]), 0);
    }

    #[test]
    fn novikov_shubin_values() {
        assert_eq!(classify(&p("z^2-3z+1")).unwrap().novikov_shubin, NovikovShubin::InfinityPlus);
        let r = classify(&p("(z^2-z+1)^3")).unwrap();
        assert_eq!(novikov_shubin(&r).to_string(), "1/3");
        assert_eq!(classify(&p("2z^2-3z+2")).unwrap().novikov_shubin.to_string(), "1");
    }

    #[test]
    fn unknot_is_type_one() {
        let r = classify(&p("1")).unwrap();
        assert_eq!(r.verdict, Verdict::TypeI);
        assert_eq!(r.mu_lower, 0);
    }

    #[test]
    fn expected_type_labels() {
        assert_eq!(ExpectedType::parse("II₃"), Some(ExpectedType::II(3)));
        assert_eq!(ExpectedType::parse("III_1"), Some(ExpectedType::III(1)));
        assert_eq!(ExpectedType::parse("Undecided(2)"), Some(ExpectedType::Undecided(2)));
        assert_eq!(ExpectedType::parse("I"), Some(ExpectedType::I));
        assert_eq!(ExpectedType::parse("IV"), None);
    }
}
