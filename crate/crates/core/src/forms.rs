//! Differential forms on the chart with components on strictly increasing
//! multi-indices: wedge, exterior derivative, flat-metric Hodge star, the
//! power of a form-valued traction, and the vacuum Maxwell check.

use crate::chart::{
    check_scheme, fd_partial, integrate_fn, require, ChartDomain, FdScheme, ProbeGrid,
    QuadratureRule, ScalarField, Smoothness,
};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Strictly increasing multi-indices of length `p` from `0..d`, in
/// lexicographic order.
pub fn multi_indices(d: usize, p: usize) -> Vec<Vec<usize>> {
    fn extend(d: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            extend(d, p, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= d {
        extend(d, p, 0, &mut Vec::with_capacity(p), &mut out);
    }
    out
}

/// Parity of the permutation sorting `seq`: `Some(±1)`, or `None` when an
/// entry repeats.
pub fn permutation_sign(seq: &[usize]) -> Option<i8> {
    let mut inversions = 0usize;
    for (k, a) in seq.iter().enumerate() {
        for b in &seq[k + 1..] {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

fn sign_lit<T: Scalar>(s: i8) -> T {
    if s > 0 {
        T::one()
    } else {
        -T::one()
    }
}

#[derive(Clone, Debug)]
pub struct PForm<T> {
    dim: usize,
    degree: usize,
    components: Vec<ScalarField<T>>,
}

impl<T: Scalar> PForm<T> {
    /// Components in [`multi_indices`] order.
    pub fn new(dim: usize, degree: usize, components: Vec<ScalarField<T>>) -> Result<Self> {
        if degree > dim {
            return Err(Error::DegreeOverflow { p: degree, q: 0, dim });
        }
        let expected = binomial(dim, degree);
        if components.len() != expected {
            return Err(Error::ShapeMismatch {
                what: "form components",
                expected,
                found: components.len(),
            });
        }
        Ok(Self {
            dim,
            degree,
            components,
        })
    }

    pub fn zero(dim: usize, degree: usize) -> Result<Self> {
        Self::new(dim, degree, vec![ScalarField::zero(); binomial(dim, degree.min(dim))])
    }

    pub fn scalar(dim: usize, f: ScalarField<T>) -> Self {
        Self {
            dim,
            degree: 0,
            components: vec![f],
        }
    }

    /// `coeff · dX^{i_1} ∧ … ∧ dX^{i_p}` for indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], coeff: ScalarField<T>) -> Result<Self> {
        if let Some(&axis) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::AxisOutOfRange { axis, dim });
        }
        let sign = permutation_sign(indices).ok_or_else(|| Error::RepeatedIndex(indices.to_vec()))?;
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        let mut form = Self::zero(dim, indices.len())?;
        let k = form.position(&sorted);
        form.components[k] = coeff.scaled(sign_lit(sign));
        Ok(form)
    }

    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        Self::monomial(dim, indices, ScalarField::constant(T::one()))
    }

    /// `dX^0 ∧ … ∧ dX^{d-1}` with coefficient one.
    pub fn volume(dim: usize) -> Self {
        Self {
            dim,
            degree: dim,
            components: vec![ScalarField::constant(T::one())],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[ScalarField<T>] {
        &self.components
    }

    pub fn smoothness(&self) -> Smoothness {
        self.components
            .iter()
            .map(|c| c.smoothness())
            .min()
            .unwrap_or(Smoothness::C2)
    }

    fn position(&self, sorted: &[usize]) -> usize {
        multi_indices(self.dim, self.degree)
            .binary_search_by(|probe| probe.as_slice().cmp(sorted))
            .expect("sorted multi-index of matching length")
    }

    /// Component on a strictly increasing multi-index.
    pub fn component(&self, indices: &[usize]) -> Result<&ScalarField<T>> {
        if indices.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: indices.len(),
            });
        }
        if let Some(&axis) = indices.iter().find(|&&i| i >= self.dim) {
            return Err(Error::AxisOutOfRange { axis, dim: self.dim });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::RepeatedIndex(indices.to_vec()));
        }
        Ok(&self.components[self.position(indices)])
    }

    pub fn eval(&self, p: &[T]) -> Vec<T> {
        self.components.iter().map(|c| c.eval(p)).collect()
    }

    /// `max_I |a_I|` over the probes.
    pub fn sup_norm(&self, grid: &ProbeGrid<T>) -> T {
        grid.sup(|p| {
            self.components
                .iter()
                .fold(T::zero(), |m, c| m.max(c.eval(p).abs()))
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::ShapeMismatch {
                what: "form dimension",
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            dim: self.dim,
            degree: self.degree,
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            dim: self.dim,
            degree: self.degree,
            components: self.components.iter().map(|f| f.scaled(c)).collect(),
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Alternating product with shuffle signs.
pub fn wedge<T: Scalar>(a: &PForm<T>, b: &PForm<T>) -> Result<PForm<T>> {
    if a.dim != b.dim {
        return Err(Error::ShapeMismatch {
            what: "form dimension",
            expected: a.dim,
            found: b.dim,
        });
    }
    let d = a.dim;
    let (p, q) = (a.degree, b.degree);
    if p + q > d {
        return Err(Error::DegreeOverflow { p, q, dim: d });
    }
    let ia = multi_indices(d, p);
    let ib = multi_indices(d, q);
    let out = multi_indices(d, p + q);
    // Terms are grouped by the unordered pair of factor indices and the
    // groups summed in key order, so a∧b and b∧a round identically.
    type Key = (Vec<usize>, Vec<usize>);
    let mut terms: Vec<Vec<(Key, T, usize, usize)>> = vec![Vec::new(); out.len()];
    for (ka, i) in ia.iter().enumerate() {
        for (kb, j) in ib.iter().enumerate() {
            let joined: Vec<usize> = i.iter().chain(j).copied().collect();
            if let Some(s) = permutation_sign(&joined) {
                let mut sorted = joined;
                sorted.sort_unstable();
                let k = out.binary_search(&sorted).expect("sorted multi-index");
                let key = if i <= j { (i.clone(), j.clone()) } else { (j.clone(), i.clone()) };
                terms[k].push((key, sign_lit(s), ka, kb));
            }
        }
    }
    let smooth = a.smoothness().min(b.smoothness());
    let components = terms
        .into_iter()
        .map(|mut list| {
            list.sort_by(|x, y| x.0.cmp(&y.0));
            let mut groups: Vec<Vec<(T, usize, usize)>> = Vec::new();
            let mut last: Option<Key> = None;
            for (key, s, ka, kb) in list {
                if last.as_ref() != Some(&key) {
                    groups.push(Vec::new());
                    last = Some(key);
                }
                groups.last_mut().expect("group pushed").push((s, ka, kb));
            }
            let (fa, fb) = (a.components.clone(), b.components.clone());
            ScalarField::new(smooth, move |x| {
                groups.iter().fold(T::zero(), |acc, g| {
                    let term = |&(s, ka, kb): &(T, usize, usize)| s * (fa[ka].eval(x) * fb[kb].eval(x));
                    acc + match g.as_slice() {
                        [t] => term(t),
                        [t, u] => term(t) + term(u),
                        _ => unreachable!("at most two orderings of a pair"),
                    }
                })
            })
        })
        .collect();
    PForm::new(d, p + q, components)
}

/// `(da)_K = Σ_r (−1)^r ∂_{K_r} a_{K∖K_r}` by finite differences. A form of
/// top degree maps to the zero form of the same degree.
pub fn exterior_derivative<T: Scalar>(
    a: &PForm<T>,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
) -> Result<PForm<T>> {
    if domain.dim() != a.dim {
        return Err(Error::ShapeMismatch {
            what: "form dimension",
            expected: domain.dim(),
            found: a.dim,
        });
    }
    let (d, p) = (a.dim, a.degree);
    if p == d {
        return PForm::zero(d, d);
    }
    require("form component", &a.components, Smoothness::C1)?;
    check_scheme(domain, scheme)?;
    let src = multi_indices(d, p);
    let smooth = a.smoothness().derivative();
    let components = multi_indices(d, p + 1)
        .into_iter()
        .map(|k| {
            let terms: Vec<(T, usize, usize)> = (0..k.len())
                .map(|r| {
                    let mut rest = k.clone();
                    let axis = rest.remove(r);
                    let idx = src.binary_search(&rest).expect("sorted multi-index");
                    let s = if r % 2 == 0 { T::one() } else { -T::one() };
                    (s, axis, idx)
                })
                .collect();
            let (fa, dom, sch) = (a.components.clone(), domain.clone(), *scheme);
            ScalarField::new(smooth, move |x| {
                terms.iter().fold(T::zero(), |acc, &(s, axis, idx)| {
                    let f = &fa[idx];
                    acc + s * fd_partial(&|y: &[T]| f.eval(y), axis, x, &dom, &sch)
                })
            })
        })
        .collect();
    PForm::new(d, p + 1, components)
}

/// Constant diagonal metric with entries `±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatMetric {
    signature: Vec<i8>,
}

impl FlatMetric {
    pub fn new(signature: Vec<i8>) -> Result<Self> {
        if signature.is_empty() || signature.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidMetric);
        }
        Ok(Self { signature })
    }

    pub fn euclidean(dim: usize) -> Self {
        Self {
            signature: vec![1; dim],
        }
    }

    /// Signature `(−, +, …, +)`.
    pub fn minkowski(dim: usize) -> Self {
        let mut signature = vec![1; dim];
        if let Some(t) = signature.first_mut() {
            *t = -1;
        }
        Self { signature }
    }

    pub fn dim(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn det_sign(&self) -> i8 {
        self.signature.iter().product()
    }
}

/// `*dX^I = (Π_{i∈I} g^{ii}) ε(I, J) dX^J` with `J` the complement of `I`.
pub fn hodge_star<T: Scalar>(a: &PForm<T>, metric: &FlatMetric) -> Result<PForm<T>> {
    if metric.dim() != a.dim {
        return Err(Error::ShapeMismatch {
            what: "metric dimension",
            expected: a.dim,
            found: metric.dim(),
        });
    }
    let (d, p) = (a.dim, a.degree);
    let out = multi_indices(d, d - p);
    let mut components = vec![ScalarField::zero(); out.len()];
    for (ka, i) in multi_indices(d, p).iter().enumerate() {
        let j: Vec<usize> = (0..d).filter(|x| !i.contains(x)).collect();
        let joined: Vec<usize> = i.iter().chain(&j).copied().collect();
        let s = permutation_sign(&joined).expect("complementary indices")
            * i.iter().map(|&x| metric.signature[x]).product::<i8>();
        let k = out.binary_search(&j).expect("sorted complement");
        components[k] = a.components[ka].scaled(sign_lit(s));
    }
    PForm::new(d, d - p, components)
}

/// `∫ (dg∧v + (−1)^{d−p−1} g∧dv + b)` for `v` of degree `p`, `g` of degree
/// `d−p−1` and `b` of degree `d`.
pub fn pform_virtual_power<T: Scalar>(
    g: &PForm<T>,
    v: &PForm<T>,
    b: &PForm<T>,
    domain: &ChartDomain<T>,
    rule: &QuadratureRule<T>,
    scheme: &FdScheme<T>,
) -> Result<T> {
    let d = domain.dim();
    for f in [g, v, b] {
        if f.dim != d {
            return Err(Error::ShapeMismatch {
                what: "form dimension",
                expected: d,
                found: f.dim,
            });
        }
    }
    if v.degree >= d {
        return Err(Error::DegreeMismatch {
            expected: d - 1,
            found: v.degree,
        });
    }
    let gdeg = d - v.degree - 1;
    if g.degree != gdeg {
        return Err(Error::DegreeMismatch {
            expected: gdeg,
            found: g.degree,
        });
    }
    if b.degree != d {
        return Err(Error::DegreeMismatch {
            expected: d,
            found: b.degree,
        });
    }
    let current = exterior_derivative(g, domain, scheme)?;
    let sign = if gdeg.is_multiple_of(2) { T::one() } else { -T::one() };
    let top = wedge(&current, v)?
        .add(&wedge(g, &exterior_derivative(v, domain, scheme)?)?.scaled(sign))?
        .add(b)?;
    let c = &top.components[0];
    Ok(integrate_fn(&|p: &[T]| c.eval(p), domain, rule))
}

/// Sup-norms of `d𝔣` and `𝔍 = d*𝔣` for `𝔣 = dA`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxwellResiduals<T> {
    pub faraday: T,
    pub current: T,
}

pub fn maxwell_vacuum_check<T: Scalar>(
    potential: &PForm<T>,
    metric: &FlatMetric,
    domain: &ChartDomain<T>,
    scheme: &FdScheme<T>,
    probes_per_axis: usize,
) -> Result<MaxwellResiduals<T>> {
    if domain.dim() != 4 || potential.dim != 4 {
        return Err(Error::ShapeMismatch {
            what: "spacetime dimension",
            expected: 4,
            found: potential.dim.max(domain.dim()),
        });
    }
    if potential.degree != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: potential.degree,
        });
    }
    let faraday = exterior_derivative(potential, domain, scheme)?;
    let maxwell = hodge_star(&faraday, metric)?;
    let grid = ProbeGrid::interior(domain, probes_per_axis, scheme);
    Ok(MaxwellResiduals {
        faraday: exterior_derivative(&faraday, domain, scheme)?.sup_norm(&grid),
        current: exterior_derivative(&maxwell, domain, scheme)?.sup_norm(&grid),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{PlaneWave, Polynomial};

    fn coord(axis: usize) -> ScalarField<f64> {
        ScalarField::coordinate(axis)
    }

    fn at(f: &PForm<f64>, idx: &[usize], p: &[f64]) -> f64 {
        f.component(idx).unwrap().eval(p)
    }

    fn poly(dim: usize, seed: u64) -> ScalarField<f64> {
        let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let coeffs = std::iter::from_fn(move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Some(((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0)
        });
        Polynomial::dense(dim, 2, coeffs).to_field()
    }

    fn random_form(dim: usize, degree: usize, seed: u64) -> PForm<f64> {
        let n = multi_indices(dim, degree).len();
        PForm::new(dim, degree, (0..n).map(|k| poly(dim, seed * 31 + k as u64)).collect()).unwrap()
    }

    #[test]
    fn permutation_parity_matches_brute_force() {
        // count transpositions of a bubble sort
        fn bubble(seq: &[usize]) -> i8 {
            let mut v = seq.to_vec();
            let mut swaps = 0;
            for i in 0..v.len() {
                for j in 0..v.len() - 1 - i {
                    if v[j] > v[j + 1] {
                        v.swap(j, j + 1);
                        swaps += 1;
                    }
                }
            }
            if swaps % 2 == 0 { 1 } else { -1 }
        }
        let all = [[0, 1, 2, 3], [1, 0, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1], [1, 3, 0, 2]];
        for s in all {
            assert_eq!(permutation_sign(&s), Some(bubble(&s)));
        }
        assert_eq!(permutation_sign(&[0, 2, 0]), None);
        assert_eq!(permutation_sign(&[]), Some(1));
    }

    #[test]
    fn index_layout() {
        assert_eq!(multi_indices(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(multi_indices(4, 0), vec![Vec::<usize>::new()]);
        assert!(multi_indices(2, 3).is_empty());
        assert_eq!(binomial(4, 2), 6);
    }

    #[test]
    fn wedge_examples() {
        let p = [0.3, 0.4];
        let e1 = PForm::<f64>::basis(2, &[0]).unwrap();
        let e2 = PForm::<f64>::basis(2, &[1]).unwrap();
        assert_eq!(at(&wedge(&e1, &e2).unwrap(), &[0, 1], &p), 1.0);
        assert_eq!(at(&wedge(&e2, &e1).unwrap(), &[0, 1], &p), -1.0);
        let f = PForm::scalar(2, coord(0));
        let g = PForm::scalar(2, coord(1));
        assert_eq!(wedge(&f, &g).unwrap().eval(&p), vec![0.3 * 0.4]);
        let sum = e1.add(&e2).unwrap();
        let diff = e1.add(&e2.scaled(-1.0)).unwrap();
        assert_eq!(at(&wedge(&sum, &diff).unwrap(), &[0, 1], &p), -2.0);
        assert!(matches!(
            wedge(&wedge(&e1, &e2).unwrap(), &e1),
            Err(Error::DegreeOverflow { p: 2, q: 1, dim: 2 })
        ));
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let f = PForm::<f64>::basis(3, &[2, 0]).unwrap();
        assert_eq!(at(&f, &[0, 2], &[0.0; 3]), -1.0);
        assert!(matches!(PForm::<f64>::basis(3, &[1, 1]), Err(Error::RepeatedIndex(_))));
        assert!(matches!(PForm::<f64>::basis(3, &[3]), Err(Error::AxisOutOfRange { .. })));
    }

    #[test]
    fn wedge_anticommutes() {
        let p = [0.2, 0.7, 0.4, 0.9];
        for (dp, dq) in [(1, 1), (1, 2), (2, 2), (1, 3), (0, 2)] {
            let a = random_form(4, dp, 3);
            let b = random_form(4, dq, 5);
            let sign = if (dp * dq) % 2 == 0 { 1.0 } else { -1.0 };
            let ab = wedge(&a, &b).unwrap().eval(&p);
            let ba = wedge(&b, &a).unwrap().eval(&p);
            for (x, y) in ab.iter().zip(&ba) {
                assert_eq!(*x, sign * y);
            }
        }
    }

    #[test]
    fn exterior_derivative_examples() {
        let dom = ChartDomain::unit_box(2).unwrap();
        let sch = FdScheme::default();
        let c = PForm::monomial(2, &[1], ScalarField::constant(2.5)).unwrap();
        assert_eq!(exterior_derivative(&c, &dom, &sch).unwrap().eval(&[0.3, 0.6]), vec![0.0]);
        let a = PForm::monomial(2, &[1], coord(0)).unwrap();
        let da = exterior_derivative(&a, &dom, &sch).unwrap();
        for p in [[0.5, 0.5], [0.0, 1.0], [0.999, 0.2]] {
            assert!((at(&da, &[0, 1], &p) - 1.0).abs() < 1e-10);
        }
        let top = exterior_derivative(&da, &dom, &sch).unwrap();
        assert_eq!(top.degree(), 2);
        assert_eq!(top.eval(&[0.5, 0.5]), vec![0.0]);
    }

    #[test]
    fn d_squared_vanishes() {
        let dom = ChartDomain::unit_box(3).unwrap();
        let sch = FdScheme::default();
        let grid = ProbeGrid::interior(&dom, 4, &sch);
        for p in 0..2 {
            let a = random_form(3, p, 11 + p as u64);
            let dd = exterior_derivative(&exterior_derivative(&a, &dom, &sch).unwrap(), &dom, &sch).unwrap();
            assert!(dd.sup_norm(&grid) <= 1e-6);
        }
    }

    #[test]
    fn graded_leibniz() {
        let dom = ChartDomain::unit_box(3).unwrap();
        let sch = FdScheme::default();
        let grid = ProbeGrid::interior(&dom, 4, &sch);
        for (dp, dq) in [(0, 1), (1, 1), (1, 0), (0, 2)] {
            let a = random_form(3, dp, 7);
            let b = random_form(3, dq, 9);
            let lhs = exterior_derivative(&wedge(&a, &b).unwrap(), &dom, &sch).unwrap();
            let da = exterior_derivative(&a, &dom, &sch).unwrap();
            let db = exterior_derivative(&b, &dom, &sch).unwrap();
            let sign = if dp % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = wedge(&da, &b).unwrap().add(&wedge(&a, &db).unwrap().scaled(sign)).unwrap();
            let diff = lhs.add(&rhs.scaled(-1.0)).unwrap();
            assert!(diff.sup_norm(&grid) <= 1e-6);
        }
    }

    #[test]
    fn hodge_examples() {
        let g = FlatMetric::euclidean(2);
        let p = [0.1, 0.2];
        let e1 = PForm::<f64>::basis(2, &[0]).unwrap();
        let e2 = PForm::<f64>::basis(2, &[1]).unwrap();
        assert_eq!(hodge_star(&e1, &g).unwrap().eval(&p), vec![0.0, 1.0]);
        assert_eq!(hodge_star(&e2, &g).unwrap().eval(&p), vec![-1.0, 0.0]);
        let one = PForm::scalar(4, ScalarField::constant(1.0));
        let vol = hodge_star(&one, &FlatMetric::minkowski(4)).unwrap();
        assert_eq!((vol.degree(), vol.eval(&[0.0; 4])), (4, vec![1.0]));
    }

    #[test]
    fn double_star() {
        let p = [0.3, 0.1, 0.8, 0.5];
        for metric in [FlatMetric::euclidean(4), FlatMetric::minkowski(4)] {
            for deg in 0..=4 {
                let a = random_form(4, deg, 17 + deg as u64);
                let twice = hodge_star(&hodge_star(&a, &metric).unwrap(), &metric).unwrap();
                let s = if (deg * (4 - deg)) % 2 == 0 { 1.0 } else { -1.0 } * metric.det_sign() as f64;
                for (x, y) in twice.eval(&p).iter().zip(a.eval(&p)) {
                    assert_eq!(*x, s * y);
                }
            }
        }
        assert_eq!(FlatMetric::new(vec![1, 0]), Err(Error::InvalidMetric));
    }

    fn sine(k: [f64; 2], phase: f64) -> ScalarField<f64> {
        PlaneWave {
            amplitude: 1.0,
            wavevector: k.iter().map(|x| x * std::f64::consts::TAU).collect(),
            phase,
        }
        .to_field()
    }

    #[test]
    fn virtual_power_on_torus() {
        let dom = ChartDomain::unit_torus(2).unwrap();
        let rule = QuadratureRule::gauss_legendre(16).unwrap();
        let sch = FdScheme::default();
        let zero_top = PForm::zero(2, 2).unwrap();
        let v = PForm::new(2, 1, vec![sine([1.0, 0.0], 0.2), sine([1.0, 1.0], 0.5)]).unwrap();
        let g = PForm::scalar(2, sine([0.0, 1.0], 1.0).times(&sine([1.0, 0.0], 0.0)));
        let w = pform_virtual_power(&g, &v, &zero_top, &dom, &rule, &sch).unwrap();
        assert!(w.abs() <= 1e-6, "{w}");
        let g0 = PForm::scalar(2, ScalarField::zero());
        assert_eq!(pform_virtual_power(&g0, &v, &zero_top, &dom, &rule, &sch).unwrap(), 0.0);
        let b = PForm::volume(2);
        assert!((pform_virtual_power(&g0, &v, &b, &dom, &rule, &sch).unwrap() - 1.0).abs() < 1e-14);
        assert!(matches!(
            pform_virtual_power(&v, &v, &b, &dom, &rule, &sch),
            Err(Error::DegreeMismatch { expected: 0, found: 1 })
        ));
    }

    #[test]
    fn maxwell_trivial_and_dimension() {
        let dom = ChartDomain::unit_torus(4).unwrap();
        let sch = FdScheme::default();
        let m = FlatMetric::minkowski(4);
        let a = PForm::zero(4, 1).unwrap();
        let r = maxwell_vacuum_check(&a, &m, &dom, &sch, 3).unwrap();
        assert_eq!((r.faraday, r.current), (0.0, 0.0));
        let dom3 = ChartDomain::unit_torus(3).unwrap();
        assert!(maxwell_vacuum_check(&PForm::zero(3, 1).unwrap(), &m, &dom3, &sch, 3).is_err());
    }
}
