//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//! Every check is exact; seeds are fixed so runs are reproducible.

use quiveralg::leavitt::{l_basis_up_to, l_normal_form, witness_basic_transformation, LElement};
use quiveralg::modtools::{higman_linearize, rat_matrix, rat_matrix_equals, rat_matrix_mul, vnreg_regularize};
use quiveralg::monoid::{equivalent, MonoidElem, MonoidVerdict};
use quiveralg::path::Path;
use quiveralg::pathalg::{KdMatrix, Poly, PolyMatrix};
use quiveralg::quiver::{a2, loop_quiver, rose, Quiver};
use quiveralg::random::{random_invertible_poly, random_poly, random_quiver, random_ratrep, random_word_sum, rng_for};
use quiveralg::ratseries::RatRep;
use quiveralg::regalg::{q_equal, q_idempotent, q_relation_suite, SElement};
use quiveralg::rewrite::rewrite_to_element;
use quiveralg::scalar::frac;
use quiveralg::series::{ts_matrix_invert_poly, TruncSeries};
use quiveralg::Scalar;
use quiveralg_cli::expr::{parse_syntax, print, Expr};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::time::Instant;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn quivers() -> Vec<Quiver> {
    vec![loop_quiver(), rose(2), a2()]
}

type Terms = BTreeMap<(u32, Vec<u32>), Scalar>;

fn as_map(x: &Poly) -> Terms {
    x.terms().map(|(p, c)| ((p.source(), p.arrows().to_vec()), c.clone())).collect()
}

fn clean(mut m: Terms) -> Terms {
    m.retain(|_, c| *c != Scalar::from_integer(0.into()));
    m
}

/// Product by concatenating composable arrow sequences.
fn naive_product(x: &Poly, y: &Poly) -> Terms {
    let mut out = Terms::new();
    for (p, a) in x.terms() {
        for (r, b) in y.terms() {
            if p.range() == r.source() {
                let mut arrows = p.arrows().to_vec();
                arrows.extend_from_slice(r.arrows());
                *out.entry((p.source(), arrows)).or_default() += a * b;
            }
        }
    }
    clean(out)
}

/// Strips a trailing `e` from every term.
fn naive_delta(q: &Quiver, x: &Poly, e: u32) -> Poly {
    Poly::from_terms(
        q,
        x.terms().filter_map(|(p, c)| p.strip_last(q, e).map(|s| (s, c.clone()))),
    )
}

/// Keeps the vertex coefficients, exchanging those at `s(e)` and `r(e)`.
fn naive_tau(q: &Quiver, x: &Poly, e: u32) -> Poly {
    let (s, r) = (q.source(e), q.range(e));
    Poly::from_terms(
        q,
        x.terms().filter(|(p, _)| p.is_trivial()).map(|(p, c)| {
            let v = p.source();
            let w = if v == s { r } else if v == r { s } else { v };
            (Path::trivial(w), c.clone())
        }),
    )
}

fn ring_axioms() -> Check {
    let q = rose(2);
    for k in 0..1000 {
        let mut rng = rng_for(101, k);
        let x = random_poly(&q, &mut rng, 3, 3);
        let y = random_poly(&q, &mut rng, 3, 3);
        let z = random_poly(&q, &mut rng, 3, 3);
        ensure(as_map(&(&x * &y)) == naive_product(&x, &y), || format!("P product oracle, sample {k}"))?;
        ensure((&(&x * &y) * &z) == (&x * &(&y * &z)), || format!("P associativity, sample {k}"))?;
        ensure((&x * &(&y + &z)) == (&(&x * &y) + &(&x * &z)), || format!("P left distributivity, sample {k}"))?;
        ensure((&(&x + &y) * &z) == (&(&x * &z) + &(&y * &z)), || format!("P right distributivity, sample {k}"))?;

        let rx = random_word_sum(&q, &mut rng, 2, 3);
        let ry = random_word_sum(&q, &mut rng, 2, 3);
        let rz = random_word_sum(&q, &mut rng, 2, 3);
        let (lx, ly, lz) = (l_normal_form(&q, &rx), l_normal_form(&q, &ry), l_normal_form(&q, &rz));
        ensure((&(&lx * &ly) * &lz) == (&lx * &(&ly * &lz)), || format!("L associativity, sample {k}"))?;
        ensure((&lx * &(&ly + &lz)) == (&(&lx * &ly) + &(&lx * &lz)), || format!("L left distributivity, sample {k}"))?;
        ensure((&(&lx + &ly) * &lz) == (&(&lx * &lz) + &(&ly * &lz)), || format!("L right distributivity, sample {k}"))?;
        // The product of normal forms must agree with normalizing the
        // concatenated raw words.
        let mut raw = Vec::new();
        for (a, u) in &rx {
            for (b, w) in &ry {
                let mut word = u.clone();
                word.extend_from_slice(w);
                raw.push((a * b, word));
            }
        }
        ensure(l_normal_form(&q, &raw) == &lx * &ly, || format!("L product oracle, sample {k}"))?;
    }
    Ok(())
}

fn derivation_law() -> Check {
    for q in [rose(2), a2()] {
        for k in 0..500 {
            let mut rng = rng_for(202, k);
            let x = random_poly(&q, &mut rng, 4, 3);
            let y = random_poly(&q, &mut rng, 4, 3);
            for e in q.arrows() {
                ensure(x.delta(e) == naive_delta(&q, &x, e), || format!("delta oracle, sample {k}"))?;
                ensure(y.tau(e).to_poly() == naive_tau(&q, &y, e), || format!("tau oracle, sample {k}"))?;
                let lhs = naive_delta(&q, &(&x * &y), e);
                let rhs = &(&naive_delta(&q, &x, e) * &naive_tau(&q, &y, e)) + &(&x * &naive_delta(&q, &y, e));
                ensure(lhs == rhs, || format!("derivation law, arrow {e}, sample {k}"))?;
                ensure((&x * &y).delta(e) == rhs, || format!("library delta of product, sample {k}"))?;
            }
        }
    }
    Ok(())
}

fn inversion() -> Check {
    let q = rose(2);
    let order = 8;
    let mut done = 0;
    let mut k = 0;
    while done < 100 {
        let mut rng = rng_for(303, k);
        k += 1;
        let n = rng.gen_range(1..=3);
        let rows: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            random_invertible_poly(&q, &mut rng, 2, 3)
                        } else {
                            random_poly(&q, &mut rng, 2, 3)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = PolyMatrix::from_rows(&q, rows).map_err(|e| e.to_string())?;
        if !m.augmentation().is_invertible() {
            continue;
        }
        done += 1;
        let inv = ts_matrix_invert_poly(&m, order).map_err(|e| e.to_string())?;
        let id = PolyMatrix::identity(&q, n);
        ensure(m.mul_truncated(&inv, order) == id, || format!("M*inv(M), sample {k}"))?;
        ensure(inv.mul_truncated(&m, order) == id, || format!("inv(M)*M, sample {k}"))?;
    }
    Ok(())
}

#[derive(Clone)]
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
            let e = Poly::arrow(q, rng.gen_range(0..q.num_arrows() as u32));
            let shift = Tree::Mul(Box::new(tree(q, rng, depth - 1)), Box::new(Tree::Leaf(e)));
            Tree::Inv(Box::new(Tree::Add(Box::new(unit), Box::new(shift))))
        }
        _ => Tree::Leaf(random_poly(q, rng, 3, 2)),
    }
}

fn as_rat(t: &Tree) -> Result<RatRep, String> {
    Ok(match t {
        Tree::Leaf(p) => RatRep::from_poly(p),
        Tree::Add(x, y) => &as_rat(x)? + &as_rat(y)?,
        Tree::Mul(x, y) => &as_rat(x)? * &as_rat(y)?,
        Tree::Inv(x) => as_rat(x)?.invert().map_err(|e| e.to_string())?,
    })
}

fn as_series(t: &Tree, n: usize) -> Result<TruncSeries, String> {
    let err = |e: quiveralg::Error| e.to_string();
    Ok(match t {
        Tree::Leaf(p) => TruncSeries::from_poly(p, n),
        Tree::Add(x, y) => as_series(x, n)?.add(&as_series(y, n)?).map_err(err)?,
        Tree::Mul(x, y) => as_series(x, n)?.mul(&as_series(y, n)?).map_err(err)?,
        Tree::Inv(x) => as_series(x, n)?.invert().map_err(err)?,
    })
}

fn rational_closure() -> Check {
    for q in quivers() {
        for k in 0..50 {
            let mut rng = rng_for(404, k);
            let depth = rng.gen_range(1..=4);
            let t = tree(&q, &mut rng, depth);
            let x = as_rat(&t)?;
            for n in [0usize, 2, 5, 8] {
                ensure(x.truncate(n).as_poly() == as_series(&t, n)?.as_poly(), || {
                    format!("truncation at order {n}, depth {depth}, sample {k}")
                })?;
            }
            let full = x.truncate(9);
            for e in q.arrows() {
                let lhs = x.delta(e).truncate(8);
                let rhs = naive_delta(&q, full.as_poly(), e).truncate(8);
                ensure(lhs.as_poly() == &rhs, || format!("delta against order-9 truncation, sample {k}"))?;
            }
        }
    }
    Ok(())
}

fn rational_equality() -> Check {
    let mut engineered = 0;
    for k in 0..200 {
        let q = &quivers()[k as usize % 3];
        let mut rng = rng_for(505, k);
        let x = random_ratrep(q, &mut rng, 2);
        let y = match k % 4 {
            0 => {
                let z = random_ratrep(q, &mut rng, 1);
                &(&x + &z) - &z
            }
            1 => x.minimize(),
            _ => random_ratrep(q, &mut rng, 2),
        };
        if k % 4 < 2 && x.dim() != y.dim() {
            engineered += 1;
        }
        let bound = 2 * (x.dim() + y.dim());
        let by_truncation = x.truncate(bound).as_poly() == y.truncate(bound).as_poly();
        let verdict = x.equals(&y).map_err(|e| e.to_string())?;
        ensure(verdict == by_truncation, || format!("disagreement on pair {k} (bound {bound})"))?;
        if k % 4 < 2 {
            ensure(verdict, || format!("engineered pair {k} reported unequal"))?;
        }
    }
    ensure(engineered >= 50, || format!("only {engineered} engineered pairs differ in dimension"))
}

fn leavitt_relations() -> Check {
    let q = a2();
    let (e, eb) = (LElement::arrow(&q, 0), LElement::bar(&q, 0));
    ensure(&e * &eb == LElement::vertex(&q, 0), || "e*e~ != p_1".into())?;
    ensure(&eb * &e == LElement::vertex(&q, 1), || "e~*e != p_2".into())?;
    let r = rose(2);
    let sum = &(&LElement::bar(&r, 0) * &LElement::arrow(&r, 0)) + &(&LElement::bar(&r, 1) * &LElement::arrow(&r, 1));
    ensure(sum == LElement::one(&r), || "a~*a + b~*b != 1".into())?;
    let count = l_basis_up_to(&q, 1).len();
    ensure(count == 4, || format!("basis count {count}"))?;
    let two = Quiver::from_lists(&["u", "w"], &[("f", "u", "w"), ("g", "u", "w"), ("h", "w", "u")])
        .map_err(|e| e.to_string())?;
    let qs = [a2(), rose(2), two];
    for k in 0..500u64 {
        let q = &qs[k as usize % 3];
        let mut rng = rng_for(606, k);
        let raw = random_word_sum(q, &mut rng, 3, 5);
        let nf = l_normal_form(q, &raw);
        for order in 0..5 {
            let mut order_rng = rng_for(607 + order, k);
            ensure(rewrite_to_element(q, &raw, &mut order_rng).as_ref() == Some(&nf), || {
                format!("rewrite order {order} differs on expression {k}")
            })?;
        }
    }
    Ok(())
}

fn skew_relation() -> Check {
    let q = loop_quiver();
    let g = RatRep::from_poly(&(&Poly::one(&q) - &Poly::arrow(&q, 0)))
        .invert()
        .map_err(|e| e.to_string())?;
    let lhs = &SElement::from_rat(&g) * &SElement::bar(&q, 0);
    let rhs = &SElement::bar(&q, 0) + &SElement::from_rat(&g);
    let paths: BTreeSet<Path> = lhs.terms().chain(rhs.terms()).map(|(p, _)| p.clone()).collect();
    ensure(paths.len() == 2, || format!("{} bar paths", paths.len()))?;
    for p in paths {
        let (a, b) = (lhs.coefficient(&p).ok_or("missing term")?, rhs.coefficient(&p).ok_or("missing term")?);
        ensure(a.equals(&b).map_err(|e| e.to_string())?, || format!("coefficient at {}", p.render_bar(&q)))?;
    }
    Ok(())
}

fn q_suite() -> Check {
    for (i, q) in quivers().iter().enumerate() {
        let report = q_relation_suite(q, 200, 808 + i as u64);
        ensure(report.passed(), || format!("{:?}", report.violations))?;
    }
    Ok(())
}

fn quotient_equality() -> Check {
    let err = |e: quiveralg::Error| e.to_string();
    let mut test_quivers = quivers();
    test_quivers.push(rose(3));
    test_quivers.push(Quiver::from_lists(&["u", "w"], &[("f", "u", "w"), ("g", "w", "u"), ("h", "w", "w")]).map_err(err)?);
    for q in &test_quivers {
        for v in q.receiving_vertices() {
            let qv = q_idempotent(q, v).map_err(err)?;
            ensure(q_equal(&qv, &SElement::zero(q), Some(1)).map_err(err)?.is_equal(), || {
                format!("q_{} not zero at depth 1", q.vertex_name(v))
            })?;
        }
    }
    let q = a2();
    let p2 = SElement::from_poly(&Poly::vertex(&q, 1));
    let ebe = &SElement::bar(&q, 0) * &SElement::from_poly(&Poly::arrow(&q, 0));
    ensure(q_equal(&p2, &ebe, None).map_err(err)?.is_equal(), || "p_2 and e~*e differ".into())?;
    let mut tested = 0;
    let mut k = 0;
    while tested < 100 {
        let q = &quivers()[k as usize % 3];
        let mut rng = rng_for(909, k);
        k += 1;
        let r = random_ratrep(q, &mut rng, 2);
        if r.is_zero() {
            continue;
        }
        tested += 1;
        let s = SElement::from_rat(&r);
        for depth in 1..=6 {
            ensure(!q_equal(&s, &SElement::zero(q), Some(depth)).map_err(err)?.is_equal(), || {
                format!("nonzero series {} vanishes at depth {depth}", r.render())
            })?;
        }
    }
    Ok(())
}

/// Total multiplicity modulo `n − 1` is invariant under `v ↔ n·v`.
fn degree_class(x: &MonoidElem, n: u64) -> u64 {
    x.total() % (n - 1)
}

fn monoid() -> Check {
    let err = |e: quiveralg::Error| e.to_string();
    for n in 2..=4u64 {
        let q = rose(n as usize);
        let v = MonoidElem::vertex("v");
        for k in 1..=3u64 {
            let target = v.scale(k * (n - 1) + 1);
            if n > 2 {
                ensure(degree_class(&v, n) == degree_class(&target, n), || "oracle disagrees".into())?;
            }
            match equivalent(&q, &v, &target, 10).map_err(err)? {
                MonoidVerdict::Equivalent(c) => {
                    ensure(c.replay(&q), || format!("certificate for n={n} k={k} does not replay"))?;
                    ensure(c.states.first() == Some(&v) && c.states.last() == Some(&target), || {
                        format!("certificate endpoints for n={n} k={k}")
                    })?;
                }
                other => return Err(format!("n={n} k={k}: {other:?}")),
            }
        }
    }
    let q = rose(3);
    let v = MonoidElem::vertex("v");
    let two = v.scale(2);
    ensure(degree_class(&v, 3) != degree_class(&two, 3), || "oracle says v ~ 2v".into())?;
    ensure(equivalent(&q, &v, &two, 10).map_err(err)? == MonoidVerdict::NotFoundWithin(10), || {
        "v ~ 2v found in rose3".into()
    })?;
    let q = a2();
    match equivalent(&q, &MonoidElem::vertex("2"), &MonoidElem::vertex("1"), 1).map_err(err)? {
        MonoidVerdict::Equivalent(c) => ensure(c.depth() == 1 && c.replay(&q), || "A2 certificate".into()),
        other => Err(format!("A2: {other:?}")),
    }
}

fn witnesses() -> Check {
    let mut receiving = 0;
    for k in 0..20 {
        let mut rng = rng_for(1111, k);
        let q = random_quiver(&mut rng, 4, 6);
        for v in q.receiving_vertices() {
            receiving += 1;
            let w = witness_basic_transformation(&q, v).map_err(|e| e.to_string())?;
            ensure(w.verify(), || format!("witness at vertex {} of quiver {k}", q.vertex_name(v)))?;
            let incoming = q.incoming(v);
            let mut sum = LElement::zero(&q);
            for &e in incoming {
                sum = &sum + &(&LElement::bar(&q, e) * &LElement::arrow(&q, e));
            }
            ensure(sum == LElement::vertex(&q, v), || format!("sum of e~*e at quiver {k}"))?;
            for &ei in incoming {
                for &ej in incoming {
                    let expected = if ei == ej { LElement::vertex(&q, q.source(ei)) } else { LElement::zero(&q) };
                    ensure(&LElement::arrow(&q, ei) * &LElement::bar(&q, ej) == expected, || {
                        format!("e_i*e_j~ at quiver {k}")
                    })?;
                }
            }
        }
    }
    ensure(receiving > 0, || "no receiving vertices sampled".into())
}

fn higman() -> Check {
    let q = rose(2);
    for k in 0..20 {
        let mut rng = rng_for(1212, k);
        let (n, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let rows: Vec<Vec<Poly>> = (0..n).map(|_| (0..m).map(|_| random_poly(&q, &mut rng, 3, 3)).collect()).collect();
        let mat = PolyMatrix::from_rows(&q, rows).map_err(|e| e.to_string())?;
        let lin = higman_linearize(&mat);
        ensure(lin.l.degree().unwrap_or(0) <= 1, || format!("L not linear, sample {k}"))?;
        ensure(lin.p.mul(&mat.direct_sum_identity(lin.ell)).mul(&lin.q) == lin.l, || {
            format!("P(M+I)Q != L, sample {k}")
        })?;
        ensure(lin.p.mul(&lin.p_inv) == PolyMatrix::identity(&q, n + lin.ell), || format!("P*P_inv, sample {k}"))?;
        ensure(lin.q.mul(&lin.q_inv) == PolyMatrix::identity(&q, m + lin.ell), || format!("Q*Q_inv, sample {k}"))?;
    }
    Ok(())
}

fn regularization() -> Check {
    let err = |e: quiveralg::Error| e.to_string();
    let q = loop_quiver();
    let e = Poly::arrow(&q, 0);
    let d = PolyMatrix::from_rows(&q, vec![vec![e.clone()]]).map_err(err)?;
    let r = vnreg_regularize(&KdMatrix::identity(&q, 1), &d).map_err(err)?;
    let one_minus_e = &Poly::one(&q) - &e;
    ensure(r.u.get(0, 0) == &one_minus_e, || format!("u = {}", r.u.get(0, 0).render()))?;
    let g = RatRep::from_poly(&one_minus_e).invert().map_err(err)?;
    ensure(r.v[0][0].equals(&g).map_err(err)?, || format!("v = {}", r.v[0][0].render()))?;
    let u = rat_matrix(&r.u);
    let vu = rat_matrix_mul(&r.v, &u).map_err(err)?;
    ensure(rat_matrix_equals(&vu, &[vec![RatRep::one(&q)]]).map_err(err)?, || "vu != 1".into())?;
    let uvu = rat_matrix_mul(&u, &vu).map_err(err)?;
    ensure(rat_matrix_equals(&uvu, &u).map_err(err)?, || "uvu != u".into())?;
    let vuv = rat_matrix_mul(&vu, &r.v).map_err(err)?;
    ensure(rat_matrix_equals(&vuv, &r.v).map_err(err)?, || "vuv != v".into())?;

    let q = a2();
    let p = PolyMatrix::from_rows(&q, vec![vec![Poly::vertex(&q, 1)]]).map_err(err)?;
    let d = PolyMatrix::from_rows(&q, vec![vec![Poly::arrow(&q, 0)]]).map_err(err)?;
    let r = vnreg_regularize(&p.augmentation(), &d).map_err(err)?;
    ensure(r.vu().map_err(err)? == p, || "vu != p_2 over A2".into())?;
    ensure(r.verify().map_err(err)?, || "uvu = u or vuv = v fails over A2".into())
}

fn random_expr<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    const VERTICES: [&str; 3] = ["1", "2", "v"];
    const ARROWS: [&str; 5] = ["a", "b", "e", "f1", "x_2"];
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => Expr::Scalar(frac(rng.gen_range(0..20), rng.gen_range(1..5))),
            1 => Expr::Vertex(VERTICES[rng.gen_range(0..3)].into()),
            2 => Expr::Arrow(ARROWS[rng.gen_range(0..5)].into()),
            _ => Expr::Bar(ARROWS[rng.gen_range(0..5)].into()),
        };
    }
    let choice = rng.gen_range(0..6);
    let x = Box::new(random_expr(rng, depth - 1));
    match choice {
        0 => Expr::Sum(x, Box::new(random_expr(rng, depth - 1))),
        1 => Expr::Diff(x, Box::new(random_expr(rng, depth - 1))),
        2 => Expr::Prod(x, Box::new(random_expr(rng, depth - 1))),
        3 => Expr::Neg(x),
        4 => Expr::Pow(x, rng.gen_range(0..4)),
        _ => Expr::Inv(x),
    }
}

fn cli() -> Check {
    for k in 0..500 {
        let mut rng = rng_for(1414, k);
        let e = random_expr(&mut rng, 5);
        let text = print(&e);
        let back = parse_syntax(&text).map_err(|err| format!("`{text}` does not parse: {err}"))?;
        ensure(back == e, || format!("`{text}` parses to a different tree"))?;
    }
    let malformed = [
        "{ not json",
        "[]",
        r#"{"vertices": ["1"]}"#,
        r#"{"vertices": ["1"], "arrows": [{"name": "e", "source": "1", "range": "9"}]}"#,
        r#"{"vertices": ["1", "1"], "arrows": []}"#,
        r#"{"vertices": ["1"], "arrows": [{"name": "e", "source": "1", "range": "1"}, {"name": "e", "source": "1", "range": "1"}]}"#,
        r#"{"vertices": ["1"], "arrows": [], "extra": 1}"#,
    ];
    for text in malformed {
        let mut file = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
        file.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
        let path = file.path().to_str().ok_or("temp path")?.to_string();
        let out = quiveralg_cli::run(["qalg", "check", path.as_str(), "--samples", "1"]);
        ensure(out.code == 2, || format!("exit code {} for {text}", out.code))?;
    }
    let mut file = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    file.write_all(a2().to_json().as_bytes()).map_err(|e| e.to_string())?;
    let path = file.path().to_str().ok_or("temp path")?.to_string();
    let out = quiveralg_cli::run(["qalg", "check", path.as_str(), "--samples", "2"]);
    ensure(out.code == 0, || format!("valid quiver rejected: {out:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 14] = [
        ("ring axioms in P and L of the two-petal rose", ring_axioms),
        ("left derivation law for transduction", derivation_law),
        ("matrix inversion to order 8", inversion),
        ("rational closure against truncated series", rational_closure),
        ("rational equality against truncation", rational_equality),
        ("Leavitt relations, basis count and confluence", leavitt_relations),
        ("skew relation on the loop", skew_relation),
        ("idempotent relation suite", q_suite),
        ("equality in the quotient", quotient_equality),
        ("monoid equivalences", monoid),
        ("basic transformation witnesses", witnesses),
        ("Higman linearization", higman),
        ("regularization examples", regularization),
        ("CLI round trip and quiver validation", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {}: PASS: {name} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL: {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
