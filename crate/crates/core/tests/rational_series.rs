use proptest::prelude::*;
use quiveralg::pathalg::Poly;
use quiveralg::quiver::{a2, loop_quiver, rose, Quiver};
use quiveralg::random::{random_invertible_poly, random_poly, random_ratrep, rng_for};
use quiveralg::ratseries::{rr_matrix_invert, RatRep};
use quiveralg::series::{ts_matrix_invert_poly, TruncSeries};
use rand::Rng;

/// A rational expression evaluated twice: as a representation and directly
/// in truncated power series.
#[derive(Clone, Debug)]
enum Tree {
    Leaf(Poly),
    Add(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    Inv(Box<Tree>),
}

fn tree<R: Rng>(q: &Quiver, rng: &mut R, depth: usize) -> Tree {
    if depth == 0 {
        return Tree::Leaf(random_poly(q, rng, 3, 2));
    }
    match rng.gen_range(0..4) {
        0 => Tree::Add(Box::new(tree(q, rng, depth - 1)), Box::new(tree(q, rng, depth - 1))),
        1 => Tree::Mul(Box::new(tree(q, rng, depth - 1)), Box::new(tree(q, rng, depth - 1))),
        2 => {
            let unit = Tree::Leaf(random_invertible_poly(q, rng, 0, 0));
            let shift = Tree::Mul(Box::new(tree(q, rng, depth - 1)), Box::new(Tree::Leaf(Poly::arrow(q, rng.gen_range(0..q.num_arrows() as u32)))));
            Tree::Inv(Box::new(Tree::Add(Box::new(unit), Box::new(shift))))
        }
        _ => Tree::Leaf(random_poly(q, rng, 3, 2)),
    }
}

fn as_rat(t: &Tree) -> RatRep {
    match t {
        Tree::Leaf(p) => RatRep::from_poly(p),
        Tree::Add(x, y) => &as_rat(x) + &as_rat(y),
        Tree::Mul(x, y) => &as_rat(x) * &as_rat(y),
        Tree::Inv(x) => as_rat(x).invert().unwrap(),
    }
}

fn as_series(t: &Tree, n: usize) -> TruncSeries {
    match t {
        Tree::Leaf(p) => TruncSeries::from_poly(p, n),
        Tree::Add(x, y) => as_series(x, n).add(&as_series(y, n)).unwrap(),
        Tree::Mul(x, y) => as_series(x, n).mul(&as_series(y, n)).unwrap(),
        Tree::Inv(x) => as_series(x, n).invert().unwrap(),
    }
}

/// `b A⁻¹ c` through a matrix inverse of power series, independent of the
/// degree-wise recursion used by `truncate`.
fn value_by_matrix_inverse(x: &RatRep, n: usize) -> Poly {
    if x.dim() == 0 {
        return Poly::zero(x.quiver());
    }
    let inv = ts_matrix_invert_poly(x.a(), n).unwrap();
    let prod = x.b().mul_truncated(&inv, n).mul_truncated(x.c(), n);
    prod.get(0, 0).clone()
}

fn quivers() -> Vec<Quiver> {
    vec![loop_quiver(), rose(2), a2()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_operations_match_series(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 0);
            let t = tree(&q, &mut rng, 3);
            let x = as_rat(&t);
            for n in [0usize, 3, 6] {
                prop_assert_eq!(x.truncate(n).as_poly().clone(), as_series(&t, n).as_poly().clone());
                prop_assert_eq!(value_by_matrix_inverse(&x, n), as_series(&t, n).as_poly().clone());
            }
        }
    }

    #[test]
    fn delta_matches_series(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 1);
            let x = random_ratrep(&q, &mut rng, 2);
            let full = x.truncate(7);
            for e in q.arrows() {
                prop_assert_eq!(x.delta(e).truncate(6).as_poly().clone(), full.delta(e).unwrap().as_poly().clone());
                prop_assert_eq!(x.delta_tilde(e).truncate(6).as_poly().clone(), full.delta_tilde(e).unwrap().as_poly().clone());
            }
        }
    }

    #[test]
    fn inverse_is_two_sided(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 2);
            let p = random_invertible_poly(&q, &mut rng, 3, 2);
            let x = &RatRep::from_poly(&p) * &random_ratrep(&q, &mut rng, 0);
            if !x.augmentation().is_invertible() {
                continue;
            }
            let y = x.invert().unwrap();
            prop_assert!((&x * &y).equals(&RatRep::one(&q)).unwrap());
            prop_assert!((&y * &x).equals(&RatRep::one(&q)).unwrap());
        }
    }

    #[test]
    fn equality_agrees_with_truncation(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 3);
            let x = random_ratrep(&q, &mut rng, 2);
            let y = if rng.gen_bool(0.5) {
                let z = random_ratrep(&q, &mut rng, 1);
                &(&x + &z) - &z
            } else {
                random_ratrep(&q, &mut rng, 2)
            };
            let bound = 2 * (x.dim() + y.dim());
            prop_assert_eq!(x.equals(&y).unwrap(), x.equals_to_order(&y, bound).unwrap());
        }
    }

    #[test]
    fn minimization_preserves_value(seed in any::<u64>()) {
        for q in quivers() {
            let mut rng = rng_for(seed, 4);
            let x = random_ratrep(&q, &mut rng, 3);
            let m = x.minimize();
            prop_assert!(m.equals(&x).unwrap());
            prop_assert_eq!(m.truncate(6).as_poly().clone(), x.truncate(6).as_poly().clone());
        }
    }
}

#[test]
fn matrix_inverse_over_rational_series() {
    let q = loop_quiver();
    let e = RatRep::from_poly(&Poly::arrow(&q, 0));
    let one = RatRep::one(&q);
    let zero = RatRep::zero(&q);
    let m = vec![vec![&one - &e, e.clone()], vec![zero.clone(), one.clone()]];
    let inv = rr_matrix_invert(&m).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = RatRep::zero(&q);
            for (k, row) in inv.iter().enumerate() {
                acc = &acc + &(&m[i][k] * &row[j]);
            }
            let expected = if i == j { &one } else { &zero };
            assert!(acc.equals(expected).unwrap(), "entry {i},{j}");
        }
    }
}

#[test]
fn printing_of_rational_series() {
    let q = rose(2);
    let a = Poly::arrow(&q, 0);
    let b = Poly::arrow(&q, 1);
    let x = RatRep::from_poly(&(&(&Poly::one(&q) - &a) - &b)).invert().unwrap();
    assert_eq!(x.render(), "inv(1-a-b)");
    assert_eq!((&x + &RatRep::one(&q)).render(), "2 + (a+b)*inv(1-a-b)");
}
