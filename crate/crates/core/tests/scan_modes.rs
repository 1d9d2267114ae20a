use knotgap::polyring::LaurentPoly;
use knotgap::sigma::{ScanMode, SigmaHat, DEFAULT_PRECISION_BITS};

#[test]
fn sequential_and_parallel_scans_agree() {
    let lambdas: Vec<LaurentPoly> = ["2z^2-3z+2", "(z^2-z+1)^2"].iter().map(|s| s.parse().unwrap()).collect();
    let hat = SigmaHat::new(&lambdas, DEFAULT_PRECISION_BITS).unwrap();
    let seq = hat.scan(1..=600, ScanMode::Sequential).unwrap();
    let par = hat.scan(1..=600, ScanMode::Parallel).unwrap();
    assert_eq!(seq, par);
    assert!(seq.iter().zip(1..).all(|(p, n)| p.n == n));
}

#[test]
fn scan_is_deterministic() {
    let lambdas = vec!["z^4-3z^3+3z^2-3z+1".parse::<LaurentPoly>().unwrap()];
    let hat = SigmaHat::new(&lambdas, 128).unwrap();
    assert_eq!(hat.scan(100..=300, ScanMode::Parallel).unwrap(), hat.scan(100..=300, ScanMode::Parallel).unwrap());
}
