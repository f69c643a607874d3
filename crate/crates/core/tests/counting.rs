use adhm::adhm::{BilinearForm, SoDatum};
use adhm::counting::{count_homw_fiber, count_mux_fiber, count_so3_fiber};
use adhm::current::{self, CurrentMat, CurrentVec};
use adhm::field::{Field, Fp};
use adhm::matrix::Matrix;

type F3 = Fp<3>;

fn all_vectors<const P: u64>(len: usize) -> Vec<Vec<Fp<P>>> {
    let total = P.pow(len as u32);
    (0..total)
        .map(|mut idx| {
            (0..len)
                .map(|_| {
                    let d = idx % P;
                    idx /= P;
                    Fp::<P>::new(d as i64)
                })
                .collect()
        })
        .collect()
}

/// Direct enumeration of SO(3)-data with `dim V = 2` over `F_3`: every
/// self-adjoint pair and every `i`, checked through the matrix moment map.
fn so3_k2_brute_force() -> u64 {
    let fv = BilinearForm::<F3>::standard_symplectic(2).unwrap();
    let fw = BilinearForm::<F3>::hyperbolic_plus_unit();
    let mut count = 0;
    for i in all_vectors::<3>(6) {
        let i = Matrix::new(2, 3, i).unwrap();
        for b in all_vectors::<3>(2) {
            let b1 = Matrix::scalar(2, &b[0]);
            let b2 = Matrix::scalar(2, &b[1]);
            let y = SoDatum::new(b1, b2, i.clone(), fv.clone(), fw.clone()).unwrap();
            assert!(y.violations().is_empty());
            if y.moment_map().unwrap().is_zero() {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn self_adjoint_endos_of_a_symplectic_plane_are_scalars() {
    let fv = BilinearForm::<F3>::standard_symplectic(2).unwrap();
    let mut n = 0;
    for e in all_vectors::<3>(4) {
        let b = Matrix::new(2, 2, e).unwrap();
        if adhm::adhm::adjoint_endo(&b, &fv).unwrap() == b {
            n += 1;
            assert_eq!(b[(0, 1)], F3::zero());
            assert_eq!(b[(0, 0)], b[(1, 1)]);
        }
    }
    assert_eq!(n, 3);
}

#[test]
fn so3_k2_p3_golden() {
    let r = count_so3_fiber(2, 3, 2, false).unwrap();
    assert_eq!(r.count, 297);
    assert_eq!(so3_k2_brute_force(), 297);
}

/// Triples in `V_d` with `Σ_a (ξ v_a, v_a) = 0` for every basis current.
fn homw_brute_force<const P: u64>(d: usize) -> u64 {
    let basis: Vec<CurrentMat<Fp<P>>> =
        (0..3).flat_map(|s| (0..=d).map(move |m| CurrentMat::basis(d, s, m))).collect();
    let vs: Vec<Vec<Fp<P>>> = all_vectors::<P>(2 * (d + 1))
        .into_iter()
        .map(|c| {
            let v = CurrentVec::from_coords(d, &c).unwrap();
            basis.iter().map(|xi| current::residue_form(&xi.act(&v).unwrap(), &v).unwrap()).collect()
        })
        .collect();
    let mut n = 0;
    for a in &vs {
        for b in &vs {
            for c in &vs {
                if (0..basis.len()).all(|t| a[t].add(&b[t]).add(&c[t]).is_zero()) {
                    n += 1;
                }
            }
        }
    }
    n
}

#[test]
fn homw_small_cases_match_enumeration() {
    assert_eq!(count_homw_fiber(0, 3, 1, false).unwrap().count, 33);
    assert_eq!(homw_brute_force::<3>(0), 33);
    assert_eq!(homw_brute_force::<5>(0), count_homw_fiber(0, 5, 1, false).unwrap().count);
    assert_eq!(homw_brute_force::<3>(1), count_homw_fiber(1, 3, 1, false).unwrap().count);
}

#[test]
fn worker_count_does_not_change_totals() {
    for w in [1, 4, 8] {
        assert_eq!(count_homw_fiber(1, 5, w, false).unwrap().count, 105625);
        assert_eq!(count_so3_fiber(2, 5, w, false).unwrap().count, 3625);
        assert_eq!(count_mux_fiber(2, 1, 3, w).unwrap().report.count, 3u64.pow(count_mux_fiber(2, 1, 3, 1).unwrap().claimed_dim as u32));
    }
}

#[test]
fn mux_fibres_are_the_claimed_subspaces() {
    for d in 0..=2 {
        for n in 0..=d + 1 {
            for p in [3, 5] {
                let m = count_mux_fiber(d, n, p, 2).unwrap();
                assert!(m.set_equal, "d = {d}, n = {n}, p = {p}");
                assert_eq!(m.report.count, m.claimed_size);
            }
        }
    }
    assert_eq!(count_mux_fiber(1, 0, 3, 1).unwrap().report.count, 27);
}

#[test]
fn out_of_range_requests_are_rejected() {
    assert!(count_so3_fiber(4, 3, 1, false).is_err());
    assert!(count_so3_fiber(2, 13, 1, false).is_err());
    assert!(count_homw_fiber(3, 3, 1, false).is_err());
    assert!(count_homw_fiber(1, 4, 1, false).is_err());
    assert!(count_mux_fiber(4, 0, 3, 1).is_err());
}
