use proptest::prelude::*;

use fuzzy_fixpoint::defaults::FLOAT_SLACK;
use fuzzy_fixpoint::fuzzy::{chained_lower_bound, CarrierSpace, CrispMetric, FuzzyMetric, Point, SequenceTrace, TGrid, TNorm, TriangularNorm};
use fuzzy_fixpoint::harness::{gen_instance, InstanceSpec};
use fuzzy_fixpoint::hypotheses::{check_recurrence_thm1, estimate_k_thm1, estimate_k_thm1_dual, SampleSet};
use fuzzy_fixpoint::maps::{MapPair, Mapping};
use fuzzy_fixpoint::rng::DetRng;
use fuzzy_fixpoint::solver::{iterate_pair, SolveConfig, SolveStatus};

fn tnorm() -> impl Strategy<Value = TNorm> {
    prop::sample::select(TNorm::ALL.to_vec())
}

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

fn induced(exponential: bool) -> FuzzyMetric {
    let c = CarrierSpace::real(2, CrispMetric::Euclidean).unwrap();
    if exponential {
        FuzzyMetric::induced_exponential(c)
    } else {
        FuzzyMetric::induced_standard(c)
    }
}

fn point() -> impl Strategy<Value = Point> {
    prop::collection::vec(-50.0..50.0f64, 2).prop_map(Point::Vector)
}

fn positive_t() -> impl Strategy<Value = f64> {
    (-3.0..3.0f64).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn tnorm_laws(op in tnorm(), a in unit(), b in unit(), c in unit(), d in unit()) {
        let v = op.apply(a, b).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
        prop_assert_eq!(v, op.apply(b, a).unwrap());
        prop_assert_eq!(op.apply(a, 1.0).unwrap(), a);
        let lhs = op.combine(op.combine(a, b), c);
        let rhs = op.combine(a, op.combine(b, c));
        prop_assert!((lhs - rhs).abs() <= FLOAT_SLACK);
        if a <= c && b <= d {
            prop_assert!(op.combine(a, b) <= op.combine(c, d));
        }
    }

    #[test]
    fn tnorm_rejects_arguments_outside_unit_interval(op in tnorm(), a in 1.0001..10.0f64, b in unit()) {
        prop_assert!(op.apply(a, b).is_err());
        prop_assert!(op.apply(b, -a).is_err());
    }

    #[test]
    fn induced_metrics_satisfy_the_axioms(
        exp in any::<bool>(), op in tnorm(), x in point(), y in point(), z in point(), t in positive_t(), s in positive_t()
    ) {
        let fm = induced(exp);
        let v = fm.eval(&x, &y, t).unwrap();
        prop_assert!(v > 0.0 && v <= 1.0);
        prop_assert_eq!(fm.eval(&x, &x, t).unwrap(), 1.0);
        prop_assert_eq!(v, fm.eval(&y, &x, t).unwrap());
        prop_assert!(fm.eval(&x, &y, t + s).unwrap() >= v);
        let chain = op.combine(fm.eval(&x, &y, t).unwrap(), fm.eval(&y, &z, s).unwrap());
        prop_assert!(fm.eval(&x, &z, t + s).unwrap() >= chain - FLOAT_SLACK);
    }

    #[test]
    fn chained_triangle_bound_holds_on_traces(
        exp in any::<bool>(), op in tnorm(),
        pts in prop::collection::vec(point(), 3..12), t in positive_t(), n_frac in 0.0..1.0f64, p_frac in 0.0..1.0f64,
    ) {
        let fm = induced(exp);
        let trace = SequenceTrace::build(pts, &fm, &TGrid::default()).unwrap();
        let n = ((trace.len() - 2) as f64 * n_frac) as usize;
        let p = 1 + ((trace.len() - 1 - n - 1) as f64 * p_frac) as usize;
        let bound = chained_lower_bound(&trace, &fm, &op, n, p, t).unwrap();
        let actual = fm.eval(&trace.points()[n], &trace.points()[n + p], t).unwrap();
        prop_assert!(actual >= bound - 1e-12, "mu = {actual} < bound {bound}");
    }

    #[test]
    fn extended_grids_are_supersets(t_max in 1.5..1e3f64, scale in 1.5..200.0f64) {
        let base = TGrid::with_t_max(t_max).unwrap();
        let big = base.extend_to(t_max * scale).unwrap();
        prop_assert_eq!(&big.values()[..base.len()], base.values());
        prop_assert_eq!(big.t_max(), t_max * scale);
    }

    #[test]
    fn k_hat_is_nondecreasing_in_t_max(
        a in -0.9..0.9f64, b in -2.0..2.0f64, c in -0.9..0.9f64, d in -2.0..2.0f64,
        xs in prop::collection::vec(-5.0..5.0f64, 2..6),
    ) {
        let pair = MapPair::new(Mapping::scalar_affine(a, b), Mapping::scalar_affine(c, d)).unwrap();
        let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
        let pts: Vec<Point> = xs.into_iter().map(Point::scalar).collect();
        let mut grid = TGrid::default();
        let mut prev = None;
        for scale in [1.0, 10.0, 100.0] {
            if scale > 1.0 {
                grid = grid.extend_to(1e2 * scale).unwrap();
            }
            let s = SampleSet::new(pts.clone(), pts.clone(), grid.clone()).include_diagonal();
            let k = estimate_k_thm1(&pair, &fm, &fm, &s).unwrap().k_hat;
            if let Some(p) = prev {
                prop_assert!(k >= p);
            }
            prev = Some(k);
        }
    }

    #[test]
    fn contractive_scalar_pairs_reach_the_closed_form(
        a in -0.9..0.9f64, b in -5.0..5.0f64, c in -0.9..0.9f64, d in -5.0..5.0f64, x0 in -20.0..20.0f64,
    ) {
        let pair = MapPair::new(Mapping::scalar_affine(a, b), Mapping::scalar_affine(c, d)).unwrap();
        let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
        let r = iterate_pair(&pair, &fm, &fm, &Point::scalar(x0), &SolveConfig::default()).unwrap();
        prop_assert_eq!(r.status, SolveStatus::Converged);
        prop_assert!(r.conclusions.passed);
        let z = (c * b + d) / (1.0 - a * c);
        let w = a * z + b;
        prop_assert!((r.z.coords().unwrap()[0] - z).abs() < 1e-7);
        prop_assert!((r.w.coords().unwrap()[0] - w).abs() < 1e-7);
    }

    #[test]
    fn recurrences_hold_with_the_trace_k_hat(
        a in 0.05..0.9f64, b in -3.0..3.0f64, c in 0.05..0.9f64, d in -3.0..3.0f64, x0 in -10.0..10.0f64,
    ) {
        let pair = MapPair::new(Mapping::scalar_affine(a, b), Mapping::scalar_affine(c, d)).unwrap();
        let fm = FuzzyMetric::induced_standard(CarrierSpace::real_line());
        let grid = TGrid::default();
        let r = iterate_pair(&pair, &fm, &fm, &Point::scalar(x0), &SolveConfig::default()).unwrap();
        prop_assume!(r.trace_x.len() >= 3);
        let s = SampleSet::new(r.trace_x.points().to_vec(), r.trace_y.points().to_vec(), grid.clone()).include_diagonal();
        let k = estimate_k_thm1(&pair, &fm, &fm, &s).unwrap().k_hat
            .max(estimate_k_thm1_dual(&pair, &fm, &fm, &s).unwrap().k_hat);
        let rep = check_recurrence_thm1(&r.trace_x, &r.trace_y, &fm, &fm, k, &grid).unwrap();
        prop_assert!(rep.clean(), "{:?}", rep.first_violation);
    }

    #[test]
    fn generated_instances_contract(seed in any::<u64>(), quad in any::<bool>()) {
        let spec = if quad { InstanceSpec::quadruple(seed) } else { InstanceSpec::pair(seed) };
        let inst = gen_instance(&spec).unwrap();
        for n in &inst.map_norms {
            prop_assert!(*n >= spec.factor[0] - 1e-12 && *n <= spec.factor[1] + 1e-12);
        }
        prop_assert!(inst.composite_bound() < 1.0);
        prop_assert_eq!(gen_instance(&spec).unwrap(), inst);
    }

    #[test]
    fn rng_draws_stay_in_range(seed in any::<u64>(), lo in -100.0..100.0f64, width in 1e-6..100.0f64, n in 1usize..1000) {
        let mut rng = DetRng::new(seed);
        for _ in 0..32 {
            let u = rng.uniform(lo, lo + width);
            prop_assert!(u >= lo && u < lo + width);
            prop_assert!(rng.index(n) < n);
        }
    }
}
