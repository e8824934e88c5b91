use proptest::prelude::*;
use quiveralg::pathalg::{Poly, PolyMatrix};
use quiveralg::path::Path;
use quiveralg::quiver::{a2, rose, Quiver};
use quiveralg::random::{random_invertible_poly, random_poly, rng_for};
use quiveralg::series::ts_matrix_invert_poly;
use quiveralg::Scalar;
use std::collections::BTreeMap;

/// Product computed straight from the definition: concatenate composable
/// arrow sequences, including the vertex idempotents.
fn naive_product(q: &Quiver, x: &Poly, y: &Poly) -> BTreeMap<(u32, Vec<u32>), Scalar> {
    let mut out: BTreeMap<(u32, Vec<u32>), Scalar> = BTreeMap::new();
    for (p, a) in x.terms() {
        for (r, b) in y.terms() {
            if p.range() != r.source() {
                continue;
            }
            let mut arrows = p.arrows().to_vec();
            arrows.extend_from_slice(r.arrows());
            let key = (p.source(), arrows);
            *out.entry(key).or_default() += a * b;
        }
    }
    out.retain(|_, c| *c != Scalar::from_integer(0.into()));
    let _ = q;
    out
}

fn as_map(x: &Poly) -> BTreeMap<(u32, Vec<u32>), Scalar> {
    x.terms().map(|(p, c)| ((p.source(), p.arrows().to_vec()), c.clone())).collect()
}

fn quivers() -> Vec<Quiver> {
    vec![rose(2), a2(), Quiver::from_lists(&["u", "w"], &[("f", "u", "w"), ("g", "w", "u"), ("h", "w", "w")]).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_matches_concatenation(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 0);
            let x = random_poly(&q, &mut rng, 4, 3);
            let y = random_poly(&q, &mut rng, 4, 3);
            prop_assert_eq!(as_map(&(&x * &y)), naive_product(&q, &x, &y));
        }
    }

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 1);
            let x = random_poly(&q, &mut rng, 3, 2);
            let y = random_poly(&q, &mut rng, 3, 2);
            let z = random_poly(&q, &mut rng, 3, 2);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert_eq!(&Poly::one(&q) * &x, x.clone());
        }
    }

    #[test]
    fn left_derivation_law(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 2);
            let x = random_poly(&q, &mut rng, 3, 3);
            let y = random_poly(&q, &mut rng, 3, 3);
            for e in q.arrows() {
                let lhs = (&x * &y).delta(e);
                let rhs = &(&x.delta(e) * &y.tau(e).to_poly()) + &(&x * &y.delta(e));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn right_derivation_law(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 3);
            let x = random_poly(&q, &mut rng, 3, 3);
            let y = random_poly(&q, &mut rng, 3, 3);
            for e in q.arrows() {
                let lhs = (&x * &y).delta_tilde(e);
                let rhs = &(&x.delta_tilde(e) * &y) + &(&x.tau(e).to_poly() * &y.delta_tilde(e));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn delta_recovers_the_arrow_decomposition(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 4);
            let x = random_poly(&q, &mut rng, 5, 3);
            let mut rebuilt = x.augmentation().to_poly();
            for e in q.arrows() {
                rebuilt = &rebuilt + &(&x.delta(e) * &Poly::arrow(&q, e));
            }
            prop_assert_eq!(rebuilt, x);
        }
    }

    #[test]
    fn matrix_inverse_to_order(seed in any::<u64>(), n in 1usize..=3) {
        let q = rose(2);
        let mut rng = rng_for(seed, 5);
        let rows: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| {
                if i == j { random_invertible_poly(&q, &mut rng, 2, 3) } else { random_poly(&q, &mut rng, 2, 3) }
            }).collect())
            .collect();
        let m = PolyMatrix::from_rows(&q, rows).unwrap();
        prop_assume!(m.augmentation().is_invertible());
        let inv = ts_matrix_invert_poly(&m, 6).unwrap();
        let id = PolyMatrix::identity(&q, n);
        prop_assert_eq!(m.mul_truncated(&inv, 6), id.clone());
        prop_assert_eq!(inv.mul_truncated(&m, 6), id);
    }
}

#[test]
fn rendering() {
    let q = rose(2);
    let a = Poly::arrow(&q, 0);
    let b = Poly::arrow(&q, 1);
    let x = &(&(&a * &a) * &b) - &Poly::scalar(&q, quiveralg::scalar::frac(3, 4));
    assert_eq!(x.render(), "-3/4 + a^2*b");
    let p = Path::from_arrows(&q, &[0, 0, 1]).unwrap();
    assert_eq!(p.render_bar(&q), "b~*a~^2");
}
