use adhm::hilbert::{self, LaurentPoly};

#[test]
fn oracle_through_degree_six() {
    let series = hilbert::hilbert_rho(8).unwrap();
    let oracle = hilbert::invariants_oracle(6).unwrap();
    assert!(hilbert::oracle_matches(&oracle, &series));
    for deg in &oracle {
        assert_eq!(deg.character(), series.coeff(deg.degree).clone(), "degree {}", deg.degree);
    }
    let total: i64 = oracle.iter().map(|d| d.character().total()).sum();
    assert_eq!(total, 4);
    assert_eq!(oracle[2].character(), LaurentPoly::from_terms(&[(1, 1, 0), (1, 0, 0), (1, -1, 0)]));
}

#[test]
fn every_other_coefficient_vanishes() {
    let s = hilbert::hilbert_rho(8).unwrap();
    for a in 0..=8 {
        if a == 0 {
            assert_eq!(s.coeff(a), &LaurentPoly::one());
        } else if a != 2 {
            assert!(s.coeff(a).is_zero(), "u^{a}");
        }
    }
}
