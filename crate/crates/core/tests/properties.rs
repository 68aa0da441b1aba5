use approx::assert_relative_eq;
use proptest::prelude::*;

use jetstress::{
    equilibrated_force_residual, equilibrating_force, exterior_derivative, exterior_jet,
    exterior_jet_residual, divergence_residual, hodge_star, iso_k, iso_k_inv, multi_indices,
    pform_virtual_power, stokes_residual, stress_pairing, traction_extract, weak_strong_consistency,
    wedge, ChartDomain, FdScheme, FlatMetric, GeneratorField, PForm, Polynomial, ProbeGrid,
    QuadratureRule, ScalarField, TractionStressDensity, VariationalStressDensity, VelocityField,
    VelocityJet, JetValue, MixedBlock,
};

/// Fields of per-axis degree ≤ 3 drawn from a coefficient pool.
struct Pool<'a> {
    coeffs: &'a [f64],
    used: usize,
}

impl<'a> Pool<'a> {
    fn new(coeffs: &'a [f64]) -> Self {
        Self { coeffs, used: 0 }
    }

    fn field(&mut self, d: usize) -> ScalarField<f64> {
        let n = 4usize.pow(d as u32);
        let start = self.used % self.coeffs.len();
        let c: Vec<f64> = self.coeffs.iter().cycle().skip(start).take(n).copied().collect();
        self.used += n;
        Polynomial::dense(d, 3, c).to_field()
    }

    fn fields(&mut self, d: usize, n: usize) -> Vec<ScalarField<f64>> {
        (0..n).map(|_| self.field(d)).collect()
    }

    fn form(&mut self, d: usize, p: usize) -> PForm<f64> {
        let n = multi_indices(d, p).len();
        PForm::new(d, p, self.fields(d, n)).unwrap()
    }
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn iso_k_round_trips(d in 1usize..4, m in 1usize..4, pool in prop::collection::vec(-1e3f64..1e3, 48)) {
        let n = d + 2 * m + 2 * m * d;
        let rec: Vec<f64> = pool.iter().cycle().take(n).copied().collect();
        let there = iso_k(d, m, &rec).unwrap();
        prop_assert_eq!(iso_k_inv(d, m, &there).unwrap(), rec.clone());
        prop_assert_eq!(iso_k(d, m, &iso_k_inv(d, m, &rec).unwrap()).unwrap(), rec);
    }

    #[test]
    fn pairing_is_bilinear(c in coeffs(), a in -2.0f64..2.0, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let mut pool = Pool::new(&c);
        let (d, m) = (2, 2);
        let s1 = VariationalStressDensity::new(d, m, pool.fields(d, m), pool.fields(d, m * d)).unwrap();
        let s2 = VariationalStressDensity::new(d, m, pool.fields(d, m), pool.fields(d, m * d)).unwrap();
        let combo = VariationalStressDensity::new(
            d,
            m,
            s1.lower_block().iter().zip(s2.lower_block()).map(|(f, g)| f.plus(&g.scaled(a))).collect(),
            s1.mixed_block().iter().zip(s2.mixed_block()).map(|(f, g)| f.plus(&g.scaled(a))).collect(),
        )
        .unwrap();
        let val = pool.fields(d, m);
        let grad = pool.fields(d, m * d);
        let eta = VelocityJet::new(d, m, move |p| JetValue {
            value: val.iter().map(|f| f.eval(p)).collect(),
            gradient: MixedBlock::from_fn(m, d, |i, a| grad[i * d + a].eval(p)),
        });
        let p = [x, y];
        let lhs = stress_pairing(&combo, &eta, &p).unwrap();
        let rhs = stress_pairing(&s1, &eta, &p).unwrap() + a * stress_pairing(&s2, &eta, &p).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn extraction_inverts_exterior_jet(c in coeffs(), d in 1usize..3, m in 1usize..3) {
        let mut pool = Pool::new(&c);
        let dom = ChartDomain::unit_box(d).unwrap();
        let tau = TractionStressDensity::new(d, m, pool.fields(d, m * d)).unwrap();
        let back = traction_extract(&exterior_jet(&tau, &dom, &FdScheme::default()).unwrap());
        let p = vec![0.37; d];
        prop_assert_eq!(back.eval(&p), tau.eval(&p));
    }

    #[test]
    fn stokes_holds(c in coeffs(), d in 1usize..4) {
        let mut pool = Pool::new(&c);
        let dom = ChartDomain::unit_box(d).unwrap();
        let omega = pool.fields(d, d);
        let r = stokes_residual(&omega, &dom, &QuadratureRule::default(), &FdScheme::default()).unwrap();
        prop_assert!(r <= 1e-6, "{}", r);
    }

    #[test]
    fn exterior_jet_and_divergence_identities(c in coeffs(), d in 1usize..3, m in 1usize..3) {
        let mut pool = Pool::new(&c);
        let dom = ChartDomain::unit_box(d).unwrap();
        let sch = FdScheme::default();
        let grid = ProbeGrid::interior(&dom, 5, &sch);
        let tau = TractionStressDensity::new(d, m, pool.fields(d, m * d)).unwrap();
        let v = VelocityField::new(pool.fields(d, m)).unwrap();
        prop_assert!(exterior_jet_residual(&tau, &v, &dom, &sch, &grid).unwrap() <= 1e-6);
        let s = VariationalStressDensity::new(d, m, pool.fields(d, m), pool.fields(d, m * d)).unwrap();
        prop_assert!(divergence_residual(&s, &v, &dom, &sch, &grid).unwrap() <= 1e-6);
    }

    #[test]
    fn weak_and_strong_forms_agree(c in coeffs()) {
        let mut pool = Pool::new(&c);
        let dom = ChartDomain::unit_box(2).unwrap();
        let s = VariationalStressDensity::new(2, 2, pool.fields(2, 2), pool.fields(2, 4)).unwrap();
        let v = VelocityField::new(pool.fields(2, 2)).unwrap();
        let r = weak_strong_consistency(&s, &v, &dom, &QuadratureRule::default(), &FdScheme::default()).unwrap();
        prop_assert!(r <= 1e-6, "{}", r);
    }

    #[test]
    fn equilibrating_forces_are_equilibrated(c in coeffs()) {
        let mut pool = Pool::new(&c);
        let dom = ChartDomain::unit_box(2).unwrap();
        let s = VariationalStressDensity::new(2, 2, vec![ScalarField::zero(); 2], pool.fields(2, 4)).unwrap();
        let f = equilibrating_force(&s, &dom, &FdScheme::default()).unwrap();
        let r = equilibrated_force_residual(&f, &GeneratorField::translations(2), &dom, &QuadratureRule::default()).unwrap();
        prop_assert!(r.iter().all(|x| *x <= 1e-8), "{:?}", r);
    }

    #[test]
    fn wedge_graded_anticommutative(c in coeffs(), p in 0usize..4, q in 0usize..4, x in prop::array::uniform4(0.0f64..1.0)) {
        prop_assume!(p + q <= 4);
        let mut pool = Pool::new(&c);
        let a = pool.form(4, p);
        let b = pool.form(4, q);
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let ab = wedge(&a, &b).unwrap().eval(&x);
        let ba: Vec<f64> = wedge(&b, &a).unwrap().eval(&x).into_iter().map(|y| sign * y).collect();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn double_star_is_signed_identity(c in coeffs(), p in 0usize..5, lorentz in any::<bool>()) {
        let mut pool = Pool::new(&c);
        let metric = if lorentz { FlatMetric::minkowski(4) } else { FlatMetric::euclidean(4) };
        let a = pool.form(4, p);
        let twice = hodge_star(&hodge_star(&a, &metric).unwrap(), &metric).unwrap();
        let s = if (p * (4 - p)) % 2 == 0 { 1.0 } else { -1.0 } * f64::from(metric.det_sign());
        let x = [0.1, 0.5, 0.7, 0.3];
        let expected: Vec<f64> = a.eval(&x).into_iter().map(|y| s * y).collect();
        prop_assert_eq!(twice.eval(&x), expected);
    }

    #[test]
    fn graded_leibniz_and_d_squared(c in coeffs(), p in 0usize..3, q in 0usize..2) {
        let mut pool = Pool::new(&c);
        let dom = ChartDomain::unit_box(3).unwrap();
        let sch = FdScheme::default();
        let grid = ProbeGrid::interior(&dom, 3, &sch);
        let a = pool.form(3, p);
        let b = pool.form(3, q);
        prop_assume!(p + q < 3);
        let da = exterior_derivative(&a, &dom, &sch).unwrap();
        let db = exterior_derivative(&b, &dom, &sch).unwrap();
        let lhs = exterior_derivative(&wedge(&a, &b).unwrap(), &dom, &sch).unwrap();
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = wedge(&da, &b).unwrap().add(&wedge(&a, &db).unwrap().scaled(sign)).unwrap();
        prop_assert!(lhs.add(&rhs.scaled(-1.0)).unwrap().sup_norm(&grid) <= 1e-6);
        prop_assert!(exterior_derivative(&da, &dom, &sch).unwrap().sup_norm(&grid) <= 1e-6);
    }

    #[test]
    fn pform_power_is_linear(c in coeffs(), k in -3.0f64..3.0) {
        let mut pool = Pool::new(&c);
        let dom = ChartDomain::unit_box(2).unwrap();
        let (rule, sch) = (QuadratureRule::default(), FdScheme::default());
        let g = pool.form(2, 0);
        let v1 = pool.form(2, 1);
        let v2 = pool.form(2, 1);
        let b1 = pool.form(2, 2);
        let b2 = pool.form(2, 2);
        let zero = PForm::zero(2, 2).unwrap();
        let w = |v: &PForm<f64>, b: &PForm<f64>| pform_virtual_power(&g, v, b, &dom, &rule, &sch).unwrap();
        let v12 = v1.add(&v2.scaled(k)).unwrap();
        let b12 = b1.add(&b2.scaled(k)).unwrap();
        assert_relative_eq!(w(&v12, &zero), w(&v1, &zero) + k * w(&v2, &zero), epsilon = 1e-10, max_relative = 1e-10);
        assert_relative_eq!(w(&v1, &b12), w(&v1, &b1) + k * w(&PForm::zero(2, 1).unwrap(), &b2), epsilon = 1e-10, max_relative = 1e-10);
    }
}
