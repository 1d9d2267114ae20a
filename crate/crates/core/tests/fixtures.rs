use std::path::PathBuf;

use knotgap::diophantine::convergents_of;
use knotgap::shrinkage::{classify, Verdict};
use knotgap::sigma::{exponent_scan, generic_median, spike_probe, DEFAULT_PRECISION_BITS};
use knotgap::smith::{smith_normal_form, MatrixFile};
use knotgap::unitcircle::unit_circle_roots;
use num_bigint::BigInt;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[test]
fn planted_spike_is_found() {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(fixture("planted_spike.json")).unwrap()).unwrap();
    let lambda = doc["lambda"].as_str().unwrap().parse().unwrap();
    let q = doc["convergent"]["q"].as_u64().unwrap();
    let spike_n = doc["spike_n"].as_u64().unwrap();
    let floor = doc["min_spike_exponent"].as_f64().unwrap();

    let rep = classify(&lambda).unwrap();
    assert_eq!(rep.mu_lower as u64, doc["mu"].as_u64().unwrap());
    assert!(matches!(rep.verdict, Verdict::TypeIII { .. }));

    let cluster = unit_circle_roots(&lambda).unwrap().into_iter().find(|c| !c.is_cyclotomic()).unwrap();
    let conv = convergents_of(&cluster, 100).unwrap();
    let planted: Vec<_> = conv.iter().filter(|c| c.q == BigInt::from(q)).cloned().collect();
    assert_eq!(planted.len(), 1, "{conv:?}");

    let probe = spike_probe(&lambda, &cluster, &planted, DEFAULT_PRECISION_BITS).unwrap();
    assert_eq!(probe[0].n, spike_n);
    assert!(probe[0].exponent >= floor, "exponent {}", probe[0].exponent);

    let scan = exponent_scan(&[lambda], 2..=64, DEFAULT_PRECISION_BITS).unwrap();
    let spikes: Vec<u64> = conv.iter().map(|c| 2 * u64::try_from(&c.q).unwrap()).collect();
    let median = generic_median(&scan.points, spike_n, 10, &spikes).unwrap();
    assert!(probe[0].exponent > median + 1.0, "{} vs {median}", probe[0].exponent);
}

#[test]
fn scrambled_matrix_has_the_diagonal_invariants() {
    let file = MatrixFile::read(&fixture("scrambled.mat")).unwrap();
    let a = file.matrix().unwrap();
    let snf = smith_normal_form(&a);
    assert_eq!(snf.rank, 2);
    assert_eq!(snf.nonunit_factors(), vec!["2z^2-3z+2".parse().unwrap()]);
    assert!(file.dilatation_constant.unwrap() > 1.0);
    let rep = classify(&snf.invariant_factors[0]).unwrap();
    assert_eq!(rep.verdict.label(), "III_1");
}
