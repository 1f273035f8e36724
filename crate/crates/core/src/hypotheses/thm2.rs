//! Contraction inequalities for a quadruple A, B : X → Y and S, T : Y → X:
//!
//! k μ(SAx, TBx′, t) ≥ f / h      (admitted when f < h < 1)
//! k ν(BSy, ATy′, t) ≥ g / h      (admitted when g < h < 1)
//!
//! f = min{ μ(x,x′)ν(Ax,Bx′), μ(x,x′)μ(Sy,Ty′), μ(x,Ty′)ν(Ax,ATy′), μ(x′,Sy)ν(Bx′,BSy) }
//! g = min{ ν(y,y′)μ(Sy,Ty′), ν(y,y′)ν(Ax,Bx′), ν(y,Bx′)μ(Sy,TBx′), ν(y′,Ax)μ(Ty′,SAx) }
//! h = min{ ν(Ax,Bx′), μ(SAx,TBx′), μ(Sy,Ty′), ν(BSy,ATy′) }

use serde::{Deserialize, Serialize};

use super::report::{HypothesisReport, RatioScan, SampleSet, Tuple};
use crate::error::Result;
use crate::fuzzy::{FuzzyMetric, Point};
use crate::maps::MapQuadruple;

/// Every value the two inequalities need at one tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadTerms {
    pub f: f64,
    pub g: f64,
    pub h: f64,
    /// μ(SAx, TBx′, t)
    pub lhs_x: f64,
    /// ν(BSy, ATy′, t)
    pub lhs_y: f64,
}

impl QuadTerms {
    /// Admission rule of the X-side inequality: f < h < 1.
    pub fn admits_x(&self) -> bool {
        self.f < self.h && self.h < 1.0
    }

    /// Admission rule of the Y-side inequality: g < h < 1.
    pub fn admits_y(&self) -> bool {
        self.g < self.h && self.h < 1.0
    }

    pub fn ratio_x(&self) -> f64 {
        (self.f / self.h) / self.lhs_x
    }

    pub fn ratio_y(&self) -> f64 {
        (self.g / self.h) / self.lhs_y
    }
}

pub(crate) struct XImages {
    pub p: Point,
    pub a: Point,
    pub b: Point,
    pub sa: Point,
    pub tb: Point,
}

pub(crate) struct YImages {
    pub p: Point,
    pub s: Point,
    pub t: Point,
    pub bs: Point,
    pub at: Point,
}

pub(crate) fn x_images(q: &MapQuadruple, mu: &FuzzyMetric, nu: &FuzzyMetric, x: &Point) -> Result<XImages> {
    mu.carrier().check(x)?;
    let a = q.apply_a(x, nu)?;
    let b = q.apply_b(x, nu)?;
    let sa = q.apply_s(&a, mu)?;
    let tb = q.apply_t(&b, mu)?;
    Ok(XImages { p: x.clone(), a, b, sa, tb })
}

pub(crate) fn y_images(q: &MapQuadruple, mu: &FuzzyMetric, nu: &FuzzyMetric, y: &Point) -> Result<YImages> {
    nu.carrier().check(y)?;
    let s = q.apply_s(y, mu)?;
    let t = q.apply_t(y, mu)?;
    let bs = q.apply_b(&s, nu)?;
    let at = q.apply_a(&t, nu)?;
    Ok(YImages { p: y.clone(), s, t, bs, at })
}

fn terms(
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    x: &XImages,
    x2: &XImages,
    y: &YImages,
    y2: &YImages,
    t: f64,
) -> Result<QuadTerms> {
    let mu_xx = mu.eval(&x.p, &x2.p, t)?;
    let nu_yy = nu.eval(&y.p, &y2.p, t)?;
    let nu_ax_bx = nu.eval(&x.a, &x2.b, t)?;
    let mu_sy_ty = mu.eval(&y.s, &y2.t, t)?;
    let lhs_x = mu.eval(&x.sa, &x2.tb, t)?;
    let lhs_y = nu.eval(&y.bs, &y2.at, t)?;

    let f = (mu_xx * nu_ax_bx)
        .min(mu_xx * mu_sy_ty)
        .min(mu.eval(&x.p, &y2.t, t)? * nu.eval(&x.a, &y2.at, t)?)
        .min(mu.eval(&x2.p, &y.s, t)? * nu.eval(&x2.b, &y.bs, t)?);
    let g = (nu_yy * mu_sy_ty)
        .min(nu_yy * nu_ax_bx)
        .min(nu.eval(&y.p, &x2.b, t)? * mu.eval(&y.s, &x2.tb, t)?)
        .min(nu.eval(&y2.p, &x.a, t)? * mu.eval(&y2.t, &x.sa, t)?);
    let h = nu_ax_bx.min(lhs_x).min(mu_sy_ty).min(lhs_y);
    Ok(QuadTerms { f, g, h, lhs_x, lhs_y })
}

/// All of f, g, h and both left-hand sides at one tuple.
#[allow(clippy::too_many_arguments)]
pub fn thm2_terms(
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    x: &Point,
    x2: &Point,
    y: &Point,
    y2: &Point,
    t: f64,
) -> Result<QuadTerms> {
    let xi = x_images(quad, mu, nu, x)?;
    let xi2 = x_images(quad, mu, nu, x2)?;
    let yi = y_images(quad, mu, nu, y)?;
    let yi2 = y_images(quad, mu, nu, y2)?;
    terms(mu, nu, &xi, &xi2, &yi, &yi2, t)
}

#[allow(clippy::too_many_arguments)]
pub fn thm2_f(quad: &MapQuadruple, mu: &FuzzyMetric, nu: &FuzzyMetric, x: &Point, x2: &Point, y: &Point, y2: &Point, t: f64) -> Result<f64> {
    Ok(thm2_terms(quad, mu, nu, x, x2, y, y2, t)?.f)
}

#[allow(clippy::too_many_arguments)]
pub fn thm2_g(quad: &MapQuadruple, mu: &FuzzyMetric, nu: &FuzzyMetric, x: &Point, x2: &Point, y: &Point, y2: &Point, t: f64) -> Result<f64> {
    Ok(thm2_terms(quad, mu, nu, x, x2, y, y2, t)?.g)
}

#[allow(clippy::too_many_arguments)]
pub fn thm2_h(quad: &MapQuadruple, mu: &FuzzyMetric, nu: &FuzzyMetric, x: &Point, x2: &Point, y: &Point, y2: &Point, t: f64) -> Result<f64> {
    Ok(thm2_terms(quad, mu, nu, x, x2, y, y2, t)?.h)
}

/// Scans every (x, x′, y, y′, t) of the sample (ordered pairs, diagonal
/// included) and returns the reports of the X-side and the Y-side
/// inequality. A tuple enters a report only under that inequality's
/// admission rule; the rest count as skipped.
pub fn estimate_k_thm2(
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    samples: &SampleSet,
) -> (Result<HypothesisReport>, Result<HypothesisReport>) {
    match scan(quad, mu, nu, samples) {
        Ok((sx, sy)) => (
            sx.finish("quadruple/X: k mu(SAx,TBx',t) >= f/h", samples, false),
            sy.finish("quadruple/Y: k nu(BSy,ATy',t) >= g/h", samples, false),
        ),
        Err(e) => (Err(e.clone()), Err(e)),
    }
}

/// Pairwise nearness values over the grid, `[t][i][j]`, flattened.
struct Table {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl Table {
    fn build<A, B>(
        grid: &crate::fuzzy::TGrid,
        left: &[A],
        right: &[B],
        value: impl Fn(&A, &B, f64) -> Result<f64>,
    ) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len() * left.len() * right.len());
        for t in grid.iter() {
            for a in left {
                for b in right {
                    values.push(value(a, b, t)?);
                }
            }
        }
        Ok(Self { rows: left.len(), cols: right.len(), values })
    }

    fn at(&self, k: usize, i: usize, j: usize) -> f64 {
        self.values[(k * self.rows + i) * self.cols + j]
    }
}

fn scan(
    quad: &MapQuadruple,
    mu: &FuzzyMetric,
    nu: &FuzzyMetric,
    samples: &SampleSet,
) -> Result<(RatioScan, RatioScan)> {
    let xs = samples
        .points_x
        .iter()
        .map(|x| x_images(quad, mu, nu, x))
        .collect::<Result<Vec<_>>>()?;
    let ys = samples
        .points_y
        .iter()
        .map(|y| y_images(quad, mu, nu, y))
        .collect::<Result<Vec<_>>>()?;
    let grid = &samples.grid;

    // Every term of f, g and h involves only two of the four points.
    let mu_xx = Table::build(grid, &xs, &xs, |a, b, t| mu.eval(&a.p, &b.p, t))?;
    let nu_ab = Table::build(grid, &xs, &xs, |a, b, t| nu.eval(&a.a, &b.b, t))?;
    let lhs_x = Table::build(grid, &xs, &xs, |a, b, t| mu.eval(&a.sa, &b.tb, t))?;
    let nu_yy = Table::build(grid, &ys, &ys, |a, b, t| nu.eval(&a.p, &b.p, t))?;
    let mu_st = Table::build(grid, &ys, &ys, |a, b, t| mu.eval(&a.s, &b.t, t))?;
    let lhs_y = Table::build(grid, &ys, &ys, |a, b, t| nu.eval(&a.bs, &b.at, t))?;
    // μ(x,Ty′)ν(Ax,ATy′) indexed [x][y′] and μ(x′,Sy)ν(Bx′,BSy) indexed [x′][y]
    let f3 = Table::build(grid, &xs, &ys, |x, y, t| Ok(mu.eval(&x.p, &y.t, t)? * nu.eval(&x.a, &y.at, t)?))?;
    let f4 = Table::build(grid, &xs, &ys, |x, y, t| Ok(mu.eval(&x.p, &y.s, t)? * nu.eval(&x.b, &y.bs, t)?))?;
    // ν(y,Bx′)μ(Sy,TBx′) indexed [y][x′] and ν(y′,Ax)μ(Ty′,SAx) indexed [y′][x]
    let g3 = Table::build(grid, &ys, &xs, |y, x, t| Ok(nu.eval(&y.p, &x.b, t)? * mu.eval(&y.s, &x.tb, t)?))?;
    let g4 = Table::build(grid, &ys, &xs, |y, x, t| Ok(nu.eval(&y.p, &x.a, t)? * mu.eval(&y.t, &x.sa, t)?))?;

    let mut sx = RatioScan::new(samples.record_table);
    let mut sy = RatioScan::new(samples.record_table);
    for (i, x) in xs.iter().enumerate() {
        for (j, x2) in xs.iter().enumerate() {
            for (k, y) in ys.iter().enumerate() {
                for (l, y2) in ys.iter().enumerate() {
                    for (ti, t) in grid.iter().enumerate() {
                        let m_xx = mu_xx.at(ti, i, j);
                        let n_ab = nu_ab.at(ti, i, j);
                        let n_yy = nu_yy.at(ti, k, l);
                        let m_st = mu_st.at(ti, k, l);
                        let v = QuadTerms {
                            f: (m_xx * n_ab).min(m_xx * m_st).min(f3.at(ti, i, l)).min(f4.at(ti, j, k)),
                            g: (n_yy * m_st).min(n_yy * n_ab).min(g3.at(ti, k, j)).min(g4.at(ti, l, i)),
                            h: n_ab.min(lhs_x.at(ti, i, j)).min(m_st).min(lhs_y.at(ti, k, l)),
                            lhs_x: lhs_x.at(ti, i, j),
                            lhs_y: lhs_y.at(ti, k, l),
                        };
                        let tuple = || Tuple {
                            x: Some(x.p.clone()),
                            x2: Some(x2.p.clone()),
                            y: Some(y.p.clone()),
                            y2: Some(y2.p.clone()),
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
        }
    }
    Ok((sx, sy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fuzzy::{CarrierSpace, TGrid};
    use crate::maps::Mapping;

    fn fm() -> FuzzyMetric {
        FuzzyMetric::induced_standard(CarrierSpace::real_line())
    }

    fn p(v: f64) -> Point {
        Point::scalar(v)
    }

    #[test]
    fn table_scan_matches_direct_terms() {
        let q = MapQuadruple::new(
            Mapping::scalar_affine(0.5, 1.5),
            Mapping::scalar_affine(-0.3, 2.3),
            Mapping::scalar_affine(0.25, 0.5),
            Mapping::scalar_affine(0.6, -0.2),
        )
        .unwrap();
        let pts: Vec<Point> = [0.0, 1.0, 2.5, -3.0].into_iter().map(p).collect();
        let grid = TGrid::new(vec![0.1, 1.0, 10.0]).unwrap();
        let samples = SampleSet::new(pts.clone(), pts.clone(), grid.clone()).with_table();
        let (rx, _) = estimate_k_thm2(&q, &fm(), &fm(), &samples);
        let rx = rx.unwrap();
        let mut best = 0.0f64;
        for x in &pts {
            for x2 in &pts {
                for y in &pts {
                    for y2 in &pts {
                        for t in grid.iter() {
                            let v = thm2_terms(&q, &fm(), &fm(), x, x2, y, y2, t).unwrap();
                            if v.admits_x() {
                                best = best.max(v.ratio_x());
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(rx.k_hat, best);
    }

    #[test]
    fn common_fixed_point_gives_h_one() {
        // Az = Bz = w, Sw = Tw = z for z = 0, w = 0
        let lin = |a: f64| Mapping::scalar_affine(a, 0.0);
        let q = MapQuadruple::new(lin(0.5), lin(0.5), lin(0.5), lin(0.5)).unwrap();
        let h = thm2_h(&q, &fm(), &fm(), &p(0.0), &p(0.0), &p(0.0), &p(0.0), 1.0).unwrap();
        assert_eq!(h, 1.0);
        let (r5, r6) = estimate_k_thm2(&q, &fm(), &fm(), &SampleSet::new(vec![p(0.0)], vec![p(0.0)], TGrid::default()));
        assert!(matches!(r5, Err(Error::EmptySample { skipped: 17 })));
        assert!(matches!(r6, Err(Error::EmptySample { .. })));
    }

    #[test]
    fn coincident_images_bound_f_by_mu_factor() {
        // A = B constant, so ν(Ax, Bx′) = 1 and the first product of f is μ(x, x′).
        let q = MapQuadruple::new(
            Mapping::constant(3.0),
            Mapping::constant(3.0),
            Mapping::scalar_affine(0.25, 0.0),
            Mapping::scalar_affine(0.2, 0.0),
        )
        .unwrap();
        let (x, x2, y, y2) = (p(1.0), p(2.0), p(1.0), p(2.0));
        let f = thm2_f(&q, &fm(), &fm(), &x, &x2, &y, &y2, 1.0).unwrap();
        assert!(f <= fm().eval(&x, &x2, 1.0).unwrap());
    }

    #[test]
    fn skipped_tuples_never_enter_the_report() {
        let q = MapQuadruple::new(
            Mapping::scalar_affine(0.5, 0.0),
            Mapping::scalar_affine(1.0 / 3.0, 0.0),
            Mapping::scalar_affine(0.25, 0.0),
            Mapping::scalar_affine(0.2, 0.0),
        )
        .unwrap();
        let pts: Vec<Point> = [0.0, 1.0, 2.0].into_iter().map(p).collect();
        let samples = SampleSet::new(pts.clone(), pts, TGrid::new(vec![0.5, 1.0, 2.0]).unwrap()).with_table();
        let (r5, r6) = estimate_k_thm2(&q, &fm(), &fm(), &samples);
        for rep in [r5.unwrap(), r6.unwrap()] {
            assert_eq!(rep.evaluated_count + rep.skipped_count, 81 * 3);
            for row in rep.table.as_ref().unwrap() {
                let tp = &row.tuple;
                let v = thm2_terms(&q, &fm(), &fm(), tp.x.as_ref().unwrap(), tp.x2.as_ref().unwrap(), tp.y.as_ref().unwrap(), tp.y2.as_ref().unwrap(), tp.t).unwrap();
                assert!(v.h < 1.0);
                if rep.inequality.starts_with("quadruple/X") {
                    assert!(v.f < v.h);
                } else {
                    assert!(v.g < v.h);
                }
            }
        }
    }
}
