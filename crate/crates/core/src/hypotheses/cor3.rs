//! Single-space variant: A, B, S, T self-maps of X with
//!
//! k μ(SAx, TBy, t) ≥ f / h      (admitted when f < h < 1)
//! k μ(BSx, ATy, t) ≥ g / h      (admitted when g < h < 1)
//!
//! f = min{ μ(Sx,Ty)μ(Ax,BSx), μ(Sx,TBy)μ(x,Sx), μ(x,y)μ(SAx,Ty), μ(x,Ty)μ(x,ATy) }
//! g = min{ μ(x,Sx)μ(x,y), μ(y,TBy)μ(y,Ax), μ(SAx,Ty)μ(Ax,By), μ(Ax,ATy)μ(SAx,Sx) }
//! h = min{ μ(Ax,BSx), μ(x,SAx), μ(Sx,TBy), μ(By,ATy) }

use super::report::{HypothesisReport, RatioScan, SampleSet, Tuple};
use super::thm2::QuadTerms;
use crate::error::Result;
use crate::fuzzy::{FuzzyMetric, Point};
use crate::maps::MapQuadruple;

struct Images {
    p: Point,
    a: Point,
    b: Point,
    s: Point,
    t: Point,
    sa: Point,
    tb: Point,
    bs: Point,
    at: Point,
}

fn images(q: &MapQuadruple, mu: &FuzzyMetric, x: &Point) -> Result<Images> {
    mu.carrier().check(x)?;
    let a = q.apply_a(x, mu)?;
    let b = q.apply_b(x, mu)?;
    let s = q.apply_s(x, mu)?;
    let t = q.apply_t(x, mu)?;
    let sa = q.apply_s(&a, mu)?;
    let tb = q.apply_t(&b, mu)?;
    let bs = q.apply_b(&s, mu)?;
    let at = q.apply_a(&t, mu)?;
    Ok(Images { p: x.clone(), a, b, s, t, sa, tb, bs, at })
}

fn terms(mu: &FuzzyMetric, x: &Images, y: &Images, t: f64) -> Result<QuadTerms> {
    let m = |p: &Point, q: &Point| mu.eval(p, q, t);
    let mu_xy = m(&x.p, &y.p)?;
    let mu_x_sx = m(&x.p, &x.s)?;
    let mu_sax_ty = m(&x.sa, &y.t)?;
    let mu_sx_tby = m(&x.s, &y.tb)?;
    let mu_ax_bsx = m(&x.a, &x.bs)?;
    let f = (m(&x.s, &y.t)? * mu_ax_bsx)
        .min(mu_sx_tby * mu_x_sx)
        .min(mu_xy * mu_sax_ty)
        .min(m(&x.p, &y.t)? * m(&x.p, &y.at)?);
    let g = (mu_x_sx * mu_xy)
        .min(m(&y.p, &y.tb)? * m(&y.p, &x.a)?)
        .min(mu_sax_ty * m(&x.a, &y.b)?)
        .min(m(&x.a, &y.at)? * m(&x.sa, &x.s)?);
    let h = mu_ax_bsx
        .min(m(&x.p, &x.sa)?)
        .min(mu_sx_tby)
        .min(m(&y.b, &y.at)?);
    Ok(QuadTerms {
        f,
        g,
        h,
        lhs_x: m(&x.sa, &y.tb)?,
        lhs_y: m(&x.bs, &y.at)?,
    })
}

/// f, g, h and the two left-hand sides μ(SAx, TBy, t), μ(BSx, ATy, t).
pub fn cor3_terms(quad: &MapQuadruple, mu: &FuzzyMetric, x: &Point, y: &Point, t: f64) -> Result<QuadTerms> {
    terms(mu, &images(quad, mu, x)?, &images(quad, mu, y)?, t)
}

pub fn cor3_f(quad: &MapQuadruple, mu: &FuzzyMetric, x: &Point, y: &Point, t: f64) -> Result<f64> {
    Ok(cor3_terms(quad, mu, x, y, t)?.f)
}

pub fn cor3_g(quad: &MapQuadruple, mu: &FuzzyMetric, x: &Point, y: &Point, t: f64) -> Result<f64> {
    Ok(cor3_terms(quad, mu, x, y, t)?.g)
}

pub fn cor3_h(quad: &MapQuadruple, mu: &FuzzyMetric, x: &Point, y: &Point, t: f64) -> Result<f64> {
    Ok(cor3_terms(quad, mu, x, y, t)?.h)
}

/// Scans ordered pairs (x, y) of `samples.points_x` (both points range over
/// the single space) and every grid t.
pub fn estimate_k_cor3(
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    samples: &SampleSet,
) -> (Result<HypothesisReport>, Result<HypothesisReport>) {
    let imgs = match samples
        .points_x
        .iter()
        .map(|x| images(quad, mu, x))
        .collect::<Result<Vec<_>>>()
    {
        Ok(v) => v,
        Err(e) => return (Err(e.clone()), Err(e)),
    };
    let mut sx = RatioScan::new(samples.record_table);
    let mut sy = RatioScan::new(samples.record_table);
    for x in &imgs {
        for y in &imgs {
            for t in samples.grid.iter() {
                let v = match terms(mu, x, y, t) {
                    Ok(v) => v,
                    Err(e) => return (Err(e.clone()), Err(e)),
                };
                let tuple = || Tuple {
                    x: Some(x.p.clone()),
                    x2: None,
                    y: Some(y.p.clone()),
                    y2: None,
                    t,
                };
                if v.admits_x() {
                    sx.push(tuple, v.lhs_x, v.f / v.h);
                } else {
                    sx.skip();
                }
                if v.admits_y() {
                    sy.push(tuple, v.lhs_y, v.g / v.h);
                } else {
                    sy.skip();
                }
            }
        }
    }
    (
        sx.finish("self-quadruple: k mu(SAx,TBy,t) >= f/h", samples, false),
        sy.finish("self-quadruple: k mu(BSx,ATy,t) >= g/h", samples, false),
    )
}
