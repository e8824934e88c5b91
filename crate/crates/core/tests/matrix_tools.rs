use proptest::prelude::*;
use quiveralg::modtools::{higman_linearize, normalize_augmentation, orthogonal, vnreg_regularize};
use quiveralg::pathalg::{KdMatrix, Poly, PolyMatrix};
use quiveralg::quiver::{a2, loop_quiver, rose};
use quiveralg::random::{random_poly, rng_for};
use quiveralg::Error;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn linearization_identities(seed in any::<u64>()) {
        let q = rose(2);
        let mut rng = rng_for(seed, 0);
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let rows: Vec<Vec<Poly>> = (0..n).map(|_| (0..m).map(|_| random_poly(&q, &mut rng, 2, 3)).collect()).collect();
        let mat = PolyMatrix::from_rows(&q, rows).unwrap();
        let lin = higman_linearize(&mat);
        prop_assert!(lin.l.degree().unwrap_or(0) <= 1);
        prop_assert_eq!(lin.p.mul(&mat.direct_sum_identity(lin.ell)).mul(&lin.q), lin.l.clone());
        prop_assert_eq!(lin.p.mul(&lin.p_inv), PolyMatrix::identity(&q, n + lin.ell));
        prop_assert_eq!(lin.q_inv.mul(&lin.q), PolyMatrix::identity(&q, m + lin.ell));
        let long_terms: usize = mat.entries().iter()
            .flat_map(|x| x.terms().map(|(p, _)| p.len().saturating_sub(1)).collect::<Vec<_>>())
            .sum();
        prop_assert_eq!(lin.ell, long_terms);
    }

    /// Linearize, normalize the augmentation, then regularize whenever the
    /// module passes the consistency checks.
    #[test]
    fn linearize_then_regularize(seed in any::<u64>()) {
        let q = rose(2);
        let mut rng = rng_for(seed, 1);
        let x = random_poly(&q, &mut rng, 2, 2);
        let mat = PolyMatrix::from_rows(&q, vec![vec![x]]).unwrap();
        let lin = higman_linearize(&mat);
        let (u1, _) = normalize_augmentation(&lin.l).unwrap();
        let p = u1.augmentation();
        prop_assert!(p.is_idempotent());
        let d = p.to_poly_matrix().sub(&u1);
        match vnreg_regularize(&p, &d) {
            Ok(r) => {
                prop_assert!(r.verify().unwrap());
                for (i, a) in r.q_list.iter().enumerate() {
                    prop_assert!(a.is_idempotent());
                    for b in &r.q_list[i + 1..] {
                        prop_assert!(orthogonal(a, b));
                    }
                }
            }
            Err(Error::RegularityViolated(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}

#[test]
fn regularization_examples() {
    let q = loop_quiver();
    let r = vnreg_regularize(&KdMatrix::identity(&q, 1), &PolyMatrix::from_rows(&q, vec![vec![Poly::arrow(&q, 0)]]).unwrap()).unwrap();
    assert_eq!(r.u.get(0, 0).render(), "1 - e");
    assert_eq!(r.v[0][0].render(), "inv(1-e)");
    assert_eq!(r.vu().unwrap(), PolyMatrix::identity(&q, 1));
    assert!(r.verify().unwrap());

    let q = a2();
    let p = PolyMatrix::from_rows(&q, vec![vec![Poly::vertex(&q, 1)]]).unwrap();
    let r = vnreg_regularize(&p.augmentation(), &PolyMatrix::from_rows(&q, vec![vec![Poly::arrow(&q, 0)]]).unwrap()).unwrap();
    assert_eq!(r.vu().unwrap(), p);
    assert!(r.verify().unwrap());
}
