//! Evaluation of expressions in the algebras over a quiver.

use crate::error::{CliError, CliResult};
use crate::expr::Expr;
use quiveralg::leavitt::LElement;
use quiveralg::pathalg::{Poly, PolyMatrix};
use quiveralg::quiver::Quiver;
use quiveralg::ratseries::RatRep;
use quiveralg::regalg::SElement;
use quiveralg::series::TruncSeries;
use quiveralg::Scalar;

/// The algebra an expression is evaluated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Context {
    /// Path algebra: polynomials in the arrows.
    Poly,
    /// Power series truncated at `--trunc`.
    Series,
    /// Rational series.
    Rat,
    /// Leavitt path algebra.
    Leavitt,
    /// Rational series extended by the barred arrows.
    Salg,
}

#[derive(Clone, Debug)]
pub enum Value {
    Poly(Poly),
    Series(TruncSeries),
    Rat(RatRep),
    Leavitt(LElement),
    S(SElement),
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Poly(x) => x.render(),
            Value::Series(x) => x.render(),
            Value::Rat(x) => x.render(),
            Value::Leavitt(x) => x.render(),
            Value::S(x) => x.render(),
        }
    }
}

trait Alg {
    type T: Clone;
    fn scalar(&self, s: &Scalar) -> Self::T;
    fn vertex(&self, v: &str) -> CliResult<Self::T>;
    fn arrow(&self, a: &str) -> CliResult<Self::T>;
    fn bar(&self, a: &str) -> CliResult<Self::T>;
    fn add(&self, x: &Self::T, y: &Self::T) -> CliResult<Self::T>;
    fn sub(&self, x: &Self::T, y: &Self::T) -> CliResult<Self::T>;
    fn mul(&self, x: &Self::T, y: &Self::T) -> CliResult<Self::T>;
    fn inv(&self, x: &Self::T) -> CliResult<Self::T>;
}

fn no_bars(ctx: &str) -> CliError {
    CliError::Context(format!("barred arrows are not available in the {ctx} context"))
}

fn no_inverse(ctx: &str) -> CliError {
    CliError::Context(format!("inv is not available in the {ctx} context"))
}

fn eval_in<A: Alg>(alg: &A, e: &Expr) -> CliResult<A::T> {
    match e {
        Expr::Scalar(s) => Ok(alg.scalar(s)),
        Expr::Vertex(v) => alg.vertex(v),
        Expr::Arrow(a) => alg.arrow(a),
        Expr::Bar(a) => alg.bar(a),
        Expr::Sum(x, y) => alg.add(&eval_in(alg, x)?, &eval_in(alg, y)?),
        Expr::Diff(x, y) => alg.sub(&eval_in(alg, x)?, &eval_in(alg, y)?),
        Expr::Neg(x) => alg.sub(&alg.scalar(&Scalar::from_integer(0.into())), &eval_in(alg, x)?),
        Expr::Prod(x, y) => alg.mul(&eval_in(alg, x)?, &eval_in(alg, y)?),
        Expr::Pow(x, k) => {
            let base = eval_in(alg, x)?;
            let mut acc = alg.scalar(&Scalar::from_integer(1.into()));
            for _ in 0..*k {
                acc = alg.mul(&acc, &base)?;
            }
            Ok(acc)
        }
        Expr::Inv(x) => alg.inv(&eval_in(alg, x)?),
    }
}

struct PolyAlg<'a>(&'a Quiver);

impl Alg for PolyAlg<'_> {
    type T = Poly;
    fn scalar(&self, s: &Scalar) -> Poly {
        Poly::scalar(self.0, s.clone())
    }
    fn vertex(&self, v: &str) -> CliResult<Poly> {
        Ok(Poly::vertex(self.0, self.0.vertex(v)?))
    }
    fn arrow(&self, a: &str) -> CliResult<Poly> {
        Ok(Poly::arrow(self.0, self.0.arrow(a)?))
    }
    fn bar(&self, _: &str) -> CliResult<Poly> {
        Err(no_bars("poly"))
    }
    fn add(&self, x: &Poly, y: &Poly) -> CliResult<Poly> {
        Ok(x.checked_add(y)?)
    }
    fn sub(&self, x: &Poly, y: &Poly) -> CliResult<Poly> {
        Ok(x.checked_sub(y)?)
    }
    fn mul(&self, x: &Poly, y: &Poly) -> CliResult<Poly> {
        Ok(x.checked_mul(y)?)
    }
    fn inv(&self, _: &Poly) -> CliResult<Poly> {
        Err(no_inverse("poly"))
    }
}

struct SeriesAlg<'a>(&'a Quiver, usize);

impl Alg for SeriesAlg<'_> {
    type T = TruncSeries;
    fn scalar(&self, s: &Scalar) -> TruncSeries {
        TruncSeries::from_poly(&Poly::scalar(self.0, s.clone()), self.1)
    }
    fn vertex(&self, v: &str) -> CliResult<TruncSeries> {
        Ok(TruncSeries::from_poly(&Poly::vertex(self.0, self.0.vertex(v)?), self.1))
    }
    fn arrow(&self, a: &str) -> CliResult<TruncSeries> {
        Ok(TruncSeries::from_poly(&Poly::arrow(self.0, self.0.arrow(a)?), self.1))
    }
    fn bar(&self, _: &str) -> CliResult<TruncSeries> {
        Err(no_bars("series"))
    }
    fn add(&self, x: &TruncSeries, y: &TruncSeries) -> CliResult<TruncSeries> {
        Ok(x.add(y)?)
    }
    fn sub(&self, x: &TruncSeries, y: &TruncSeries) -> CliResult<TruncSeries> {
        Ok(x.sub(y)?)
    }
    fn mul(&self, x: &TruncSeries, y: &TruncSeries) -> CliResult<TruncSeries> {
        Ok(x.mul(y)?)
    }
    fn inv(&self, x: &TruncSeries) -> CliResult<TruncSeries> {
        Ok(x.invert()?)
    }
}

struct RatAlg<'a>(&'a Quiver);

impl Alg for RatAlg<'_> {
    type T = RatRep;
    fn scalar(&self, s: &Scalar) -> RatRep {
        RatRep::scalar(self.0, s.clone())
    }
    fn vertex(&self, v: &str) -> CliResult<RatRep> {
        Ok(RatRep::from_poly(&Poly::vertex(self.0, self.0.vertex(v)?)))
    }
    fn arrow(&self, a: &str) -> CliResult<RatRep> {
        Ok(RatRep::from_poly(&Poly::arrow(self.0, self.0.arrow(a)?)))
    }
    fn bar(&self, _: &str) -> CliResult<RatRep> {
        Err(no_bars("rat"))
    }
    fn add(&self, x: &RatRep, y: &RatRep) -> CliResult<RatRep> {
        Ok(x.checked_add(y)?)
    }
    fn sub(&self, x: &RatRep, y: &RatRep) -> CliResult<RatRep> {
        Ok(x.checked_sub(y)?)
    }
    fn mul(&self, x: &RatRep, y: &RatRep) -> CliResult<RatRep> {
        Ok(x.checked_mul(y)?.minimize())
    }
    fn inv(&self, x: &RatRep) -> CliResult<RatRep> {
        Ok(x.invert()?.minimize())
    }
}

struct LeavittAlg<'a>(&'a Quiver);

impl Alg for LeavittAlg<'_> {
    type T = LElement;
    fn scalar(&self, s: &Scalar) -> LElement {
        LElement::scalar(self.0, s.clone())
    }
    fn vertex(&self, v: &str) -> CliResult<LElement> {
        Ok(LElement::vertex(self.0, self.0.vertex(v)?))
    }
    fn arrow(&self, a: &str) -> CliResult<LElement> {
        Ok(LElement::arrow(self.0, self.0.arrow(a)?))
    }
    fn bar(&self, a: &str) -> CliResult<LElement> {
        Ok(LElement::bar(self.0, self.0.arrow(a)?))
    }
    fn add(&self, x: &LElement, y: &LElement) -> CliResult<LElement> {
        Ok(x.checked_add(y)?)
    }
    fn sub(&self, x: &LElement, y: &LElement) -> CliResult<LElement> {
        Ok(x.checked_sub(y)?)
    }
    fn mul(&self, x: &LElement, y: &LElement) -> CliResult<LElement> {
        Ok(x.checked_mul(y)?)
    }
    fn inv(&self, _: &LElement) -> CliResult<LElement> {
        Err(no_inverse("leavitt"))
    }
}

struct SAlg<'a>(&'a Quiver);

impl Alg for SAlg<'_> {
    type T = SElement;
    fn scalar(&self, s: &Scalar) -> SElement {
        SElement::scalar(self.0, s.clone())
    }
    fn vertex(&self, v: &str) -> CliResult<SElement> {
        Ok(SElement::from_poly(&Poly::vertex(self.0, self.0.vertex(v)?)))
    }
    fn arrow(&self, a: &str) -> CliResult<SElement> {
        Ok(SElement::from_poly(&Poly::arrow(self.0, self.0.arrow(a)?)))
    }
    fn bar(&self, a: &str) -> CliResult<SElement> {
        Ok(SElement::bar(self.0, self.0.arrow(a)?))
    }
    fn add(&self, x: &SElement, y: &SElement) -> CliResult<SElement> {
        Ok(x.checked_add(y)?)
    }
    fn sub(&self, x: &SElement, y: &SElement) -> CliResult<SElement> {
        Ok(x.checked_sub(y)?)
    }
    fn mul(&self, x: &SElement, y: &SElement) -> CliResult<SElement> {
        Ok(x.checked_mul(y)?)
    }
    fn inv(&self, x: &SElement) -> CliResult<SElement> {
        let mut r = RatRep::zero(self.0);
        for (gamma, a) in x.terms() {
            if !gamma.is_trivial() {
                return Err(CliError::Context(
                    "inv applies only to elements without barred terms".into(),
                ));
            }
            r = r.checked_add(a)?;
        }
        Ok(SElement::from_rat(&r.invert()?))
    }
}

/// Evaluates `e` in `ctx`; `trunc` is the order of the series context.
pub fn eval(e: &Expr, q: &Quiver, ctx: Context, trunc: usize) -> CliResult<Value> {
    Ok(match ctx {
        Context::Poly => Value::Poly(eval_in(&PolyAlg(q), e)?),
        Context::Series => Value::Series(eval_in(&SeriesAlg(q, trunc), e)?),
        Context::Rat => Value::Rat(eval_in(&RatAlg(q), e)?),
        Context::Leavitt => Value::Leavitt(eval_in(&LeavittAlg(q), e)?),
        Context::Salg => Value::S(eval_in(&SAlg(q), e)?),
    })
}

pub fn eval_poly(e: &Expr, q: &Quiver) -> CliResult<Poly> {
    eval_in(&PolyAlg(q), e)
}

pub fn eval_rat(e: &Expr, q: &Quiver) -> CliResult<RatRep> {
    eval_in(&RatAlg(q), e)
}

pub fn eval_s(e: &Expr, q: &Quiver) -> CliResult<SElement> {
    eval_in(&SAlg(q), e)
}

pub fn eval_poly_matrix(rows: &[Vec<Expr>], q: &Quiver) -> CliResult<PolyMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| eval_poly(e, q)).collect::<CliResult<Vec<_>>>())
        .collect::<CliResult<Vec<_>>>()?;
    Ok(PolyMatrix::from_rows(q, rows)?)
}
