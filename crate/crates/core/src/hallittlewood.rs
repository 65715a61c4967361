//! Hyperoctahedral Hall–Littlewood polynomials `p_λ`.
//!
//! Two exact constructions share one symmetrization kernel:
//!
//! * [`hl_explicit`]: the orbit sum `n_λ⁻¹ Σ_w C_λ(wξ) e^{-i⟨λ,wξ⟩}` with the
//!   `λ`-dependent boundary factor (four `t_r`, only on nonzero parts);
//! * [`macdonald_bc`]: the `λ`-independent factor at `t_3 = t_4 = 0`,
//!   scaled by `N_λ`.
//!
//! Both are evaluated by putting every orbit term over the common
//! denominator `D = Π_{α>0}(1 - x^α)`, summing numerators, and dividing by
//! `D` exactly. Each `w·D` is `±x^ρ·D`, so the sum never leaves the
//! polynomial ring; a nonzero remainder would contradict polynomiality and
//! is surfaced as [`Error::NotDivisible`].
//!
//! [`hl_gram_schmidt`] is the independent numerical route: it solves the
//! triangular orthogonality conditions against quadrature inner products.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::laurent::{merge_maps, Exponent, LaurentPoly};
use crate::partition::{hyperoctahedral_group, Partition, SignedPermutation};
use crate::qkernels::{self, unit_steps, ParamSet, Profile, Step};
use crate::rational::{self, Rational};
use crate::torus::{QuadratureSpec, TorusGrid};

/// `m_λ = Σ_{μ ∈ Wλ} x^μ`.
pub fn monomial_symmetric(lambda: &Partition) -> LaurentPoly {
    let n = lambda.len();
    LaurentPoly::from_terms(n, lambda.orbit().into_iter().map(|e| (e, Rational::one())))
        .expect("orbit exponents have length n")
}

/// Positive roots `e_j - e_k`, `e_j + e_k` (`j < k`) and `2e_j` of type `C_n`,
/// the exponents of the binomial factors of the common denominator.
pub fn positive_roots(n: usize) -> Vec<Vec<i32>> {
    let mut roots = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in j + 1..n {
            let mut minus = vec![0; n];
            minus[j] = 1;
            minus[k] = -1;
            roots.push(minus);
            let mut plus = vec![0; n];
            plus[j] = 1;
            plus[k] = 1;
            roots.push(plus);
        }
    }
    for j in 0..n {
        let mut long = vec![0; n];
        long[j] = 2;
        roots.push(long);
    }
    roots
}

fn is_positive(root: &[i32]) -> bool {
    root.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// Sign and monomial with `w·D = sign · x^shift · D`.
fn denominator_image(w: &SignedPermutation, roots: &[Vec<i32>]) -> (bool, Vec<i32>) {
    let n = w.len();
    let mut negative = false;
    let mut shift = vec![0; n];
    for alpha in roots {
        let img = w.act_exponent(alpha);
        if !is_positive(&img) {
            // 1 - x^{-β} = -x^{-β}(1 - x^β)
            negative = !negative;
            shift.iter_mut().zip(&img).for_each(|(s, g)| *s += g);
        }
    }
    (negative, shift)
}

/// `Σ_w w·(numerator / D)` as an exact Laurent polynomial.
pub fn orbit_sum_over_denominator(numerator: &LaurentPoly, budget: &Budget) -> Result<LaurentPoly> {
    let n = numerator.nvars();
    let roots = positive_roots(n);
    let group = hyperoctahedral_group(n);
    budget.check_terms(group.len() * numerator.len(), "symmetrization")?;

    let terms: Vec<(&[i32], &Rational)> = numerator.terms().collect();
    let acc = group
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Exponent, Rational>, w| {
            // w(N)/w(D) = sign · x^{-shift} · w(N) / D
            let (negative, shift) = denominator_image(w, &roots);
            let mut img = vec![0; n];
            for &(e, c) in &terms {
                w.act_exponent_into(e, &mut img);
                let key: Exponent = img.iter().zip(&shift).map(|(a, s)| a - s).collect();
                let slot = acc.entry(key).or_insert_with(Rational::zero);
                if negative {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
            acc
        })
        .reduce(HashMap::new, merge_maps);
    let mut sum = LaurentPoly::from_accumulator(n, acc);
    for root in &roots {
        sum = sum.div_one_minus(root)?;
    }
    Ok(sum)
}

/// The factor `C_λ` as a numerator over binomial denominator factors.
#[derive(Clone, Debug)]
pub struct CFactorization {
    pub numerator: LaurentPoly,
    pub denominator_factors: Vec<LaurentPoly>,
    denominator_roots: Vec<Vec<i32>>,
}

impl CFactorization {
    /// Exponents `α` of the denominator factors `1 - x^α`.
    pub fn denominator_roots(&self) -> &[Vec<i32>] {
        &self.denominator_roots
    }

    /// Numerical value of `C_λ` at a point of the torus.
    pub fn evaluate_torus(&self, xi: &[f64]) -> Result<Complex64> {
        let num = self.numerator.evaluate_torus(xi)?;
        let den = self
            .denominator_factors
            .iter()
            .map(|f| f.evaluate_torus(xi))
            .product::<Result<Complex64>>()?;
        Ok(num / den)
    }
}

fn bulk_numerator(n: usize, q: &Rational) -> LaurentPoly {
    let mut num = LaurentPoly::one(n);
    for root in positive_roots(n) {
        if root.iter().filter(|&&x| x != 0).count() == 2 {
            num = &num * &LaurentPoly::one_minus(&root, q.clone());
        }
    }
    num
}

fn boundary_numerator(n: usize, j: usize, ts: &[Rational]) -> LaurentPoly {
    let mut e = vec![0; n];
    e[j] = 1;
    ts.iter()
        .filter(|t| !t.is_zero())
        .fold(LaurentPoly::one(n), |acc, t| {
            &acc * &LaurentPoly::one_minus(&e, t.clone())
        })
}

/// `C_λ` with boundary factors `Π_r (1 - t_r x_j) / (1 - x_j²)` on the
/// nonzero parts of `λ` only.
pub fn c_factor(lambda: &Partition, params: &ParamSet) -> CFactorization {
    let n = lambda.len();
    let mut numerator = bulk_numerator(n, params.q());
    let mut roots: Vec<Vec<i32>> = positive_roots(n)
        .into_iter()
        .filter(|r| r.iter().filter(|&&x| x != 0).count() == 2)
        .collect();
    for (j, &part) in lambda.parts().iter().enumerate() {
        if part > 0 {
            numerator = &numerator * &boundary_numerator(n, j, params.t());
            let mut long = vec![0; n];
            long[j] = 2;
            roots.push(long);
        }
    }
    CFactorization {
        numerator,
        denominator_factors: roots
            .iter()
            .map(|r| LaurentPoly::one_minus(r, Rational::one()))
            .collect(),
        denominator_roots: roots,
    }
}

/// A constructed `p_λ` together with its monomial expansion and norm.
#[derive(Clone, Debug)]
pub struct HlPolynomial {
    lambda: Partition,
    poly: LaurentPoly,
    expansion: BTreeMap<Partition, Rational>,
    norm: Rational,
    params: ParamSet,
}

impl HlPolynomial {
    fn from_poly(lambda: &Partition, poly: LaurentPoly, params: &ParamSet) -> Result<Self> {
        let expansion = monomial_expansion(&poly)?;
        if expansion.get(lambda) != Some(&Rational::one()) {
            return Err(Error::Domain(format!(
                "constructed p_{lambda} is not monic: leading coefficient {:?}",
                expansion.get(lambda)
            )));
        }
        if let Some(mu) = expansion
            .keys()
            .find(|mu| !mu.dominated_by(lambda).unwrap_or(false))
        {
            return Err(Error::Domain(format!(
                "constructed p_{lambda} has the term m_{mu} outside the lower set"
            )));
        }
        Ok(HlPolynomial {
            lambda: lambda.clone(),
            poly,
            expansion,
            norm: qkernels::norm(lambda, params)?,
            params: params.clone(),
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn expansion(&self) -> &BTreeMap<Partition, Rational> {
        &self.expansion
    }

    /// `c_{λ,μ}`, zero off the support.
    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.expansion.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn norm(&self) -> &Rational {
        &self.norm
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    /// `Σ_μ c_{λ,μ} m_μ`, rebuilt from the expansion.
    pub fn reconstruct(&self) -> LaurentPoly {
        self.expansion
            .iter()
            .fold(LaurentPoly::zero(self.lambda.len()), |acc, (mu, c)| {
                &acc + &monomial_symmetric(mu).scale(c)
            })
    }

    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            lambda: self.lambda.clone(),
            expansion: self
                .expansion
                .iter()
                .rev()
                .map(|(mu, c)| ExpansionTerm {
                    mu: mu.clone(),
                    coeff: rational::format_rational(c),
                })
                .collect(),
            norm: rational::format_rational(&self.norm),
        }
    }
}

/// JSON shape `{"lambda": [...], "expansion": [{"mu": [...], "coeff": "p/q"}], "norm": "p/q"}`.
#[derive(Clone, Debug, Serialize)]
pub struct PolynomialJson {
    pub lambda: Partition,
    pub expansion: Vec<ExpansionTerm>,
    pub norm: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionTerm {
    pub mu: Partition,
    pub coeff: String,
}

/// Expands a `W`-invariant polynomial in the basis `m_μ`.
///
/// Strips dominance-maximal orbits one at a time. The graded-lex largest
/// dominant exponent left is always dominance-maximal (dominance forces the
/// degree down, and at equal degree it refines lex), so it is taken first.
/// A residual without dominant exponents means the input was not invariant.
pub fn monomial_expansion(poly: &LaurentPoly) -> Result<BTreeMap<Partition, Rational>> {
    let n = poly.nvars();
    let mut rest = poly.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        let top = rest
            .terms()
            .filter_map(|(e, c)| Partition::from_exponent(e).map(|mu| (mu, c.clone())))
            .max_by(|(a, _), (b, _)| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        let Some((mu, c)) = top else {
            return Err(Error::Domain(format!(
                "polynomial in {n} variables is not W-invariant"
            )));
        };
        rest = &rest - &monomial_symmetric(&mu).scale(&c);
        out.insert(mu, c);
    }
    Ok(out)
}

fn check_constructible(lambda: &Partition, budget: &Budget) -> Result<()> {
    budget.check_n(lambda.len())
}

/// `p_λ` from the explicit orbit-sum formula.
pub fn hl_explicit(lambda: &Partition, params: &ParamSet) -> Result<HlPolynomial> {
    hl_explicit_budgeted(lambda, params, &Budget::default())
}

pub fn hl_explicit_budgeted(
    lambda: &Partition,
    params: &ParamSet,
    budget: &Budget,
) -> Result<HlPolynomial> {
    check_constructible(lambda, budget)?;
    let n = lambda.len();
    let cf = c_factor(lambda, params);
    // Top up the (1 - x_j²) factors missing from C_λ so every orbit term
    // shares the full denominator D.
    let mut numerator = cf.numerator;
    for (j, &part) in lambda.parts().iter().enumerate() {
        if part == 0 {
            let mut long = vec![0; n];
            long[j] = 2;
            numerator = &numerator * &LaurentPoly::one_minus(&long, Rational::one());
        }
    }
    let neg_lambda: Vec<i32> = lambda.parts().iter().map(|&p| -(p as i32)).collect();
    let numerator = numerator.shift(&neg_lambda);
    let sum = orbit_sum_over_denominator(&numerator, budget)?;
    let poly = sum.scale(&qkernels::n_monic(lambda, params)?.recip());
    HlPolynomial::from_poly(lambda, poly, params)
}

/// `p_λ = N_λ Σ_w C(wξ) e^{-i⟨λ,wξ⟩}` with the `λ`-independent factor
/// `C(ξ)` carrying `(1 - t_1 x_j)(1 - t_2 x_j)/(1 - x_j²)` for every `j`.
/// Only defined at `t_3 = t_4 = 0`.
pub fn macdonald_bc(lambda: &Partition, params: &ParamSet) -> Result<HlPolynomial> {
    macdonald_bc_budgeted(lambda, params, &Budget::default())
}

pub fn macdonald_bc_budgeted(
    lambda: &Partition,
    params: &ParamSet,
    budget: &Budget,
) -> Result<HlPolynomial> {
    if params.profile() != Profile::Two {
        return Err(Error::Domain(format!(
            "Macdonald's formula needs the two-parameter profile, got {}",
            params.profile()
        )));
    }
    check_constructible(lambda, budget)?;
    let n = lambda.len();
    let mut numerator = bulk_numerator(n, params.q());
    for j in 0..n {
        numerator = &numerator * &boundary_numerator(n, j, &params.t()[..2]);
    }
    let neg_lambda: Vec<i32> = lambda.parts().iter().map(|&p| -(p as i32)).collect();
    let sum = orbit_sum_over_denominator(&numerator.shift(&neg_lambda), budget)?;
    let poly = sum.scale(&qkernels::norm(lambda, params)?);
    HlPolynomial::from_poly(lambda, poly, params)
}

/// `P_λ = c_λ p_λ`.
pub fn normalized_p(hl: &HlPolynomial) -> Result<LaurentPoly> {
    Ok(hl.poly.scale(&qkernels::c_lambda(&hl.lambda, &hl.params)?))
}

/// `p_λ` at `x_j = τ_j = q^{n-j} t_1`, exactly. Equals `1/c_λ`.
pub fn principal_specialization(hl: &HlPolynomial) -> Result<Rational> {
    let tau = hl.params.tau(hl.lambda.len());
    if tau.iter().any(Zero::is_zero) {
        return Err(Error::Evaluation("principal point has a zero coordinate".into()));
    }
    hl.poly.evaluate_exact(&tau)
}

/// How a [`HlFamily`] builds its members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Explicit,
    Macdonald,
}

/// Memoized `p_λ` for one parameter set.
pub struct HlFamily {
    params: ParamSet,
    route: Route,
    budget: Budget,
    cache: Mutex<HashMap<Partition, Arc<HlPolynomial>>>,
}

impl HlFamily {
    pub fn new(params: ParamSet) -> Self {
        Self::with_route(params, Route::Explicit, Budget::default())
    }

    pub fn with_route(params: ParamSet, route: Route, budget: Budget) -> Self {
        HlFamily {
            params,
            route,
            budget,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn get(&self, lambda: &Partition) -> Result<Arc<HlPolynomial>> {
        if let Some(hl) = self.cache.lock().unwrap().get(lambda) {
            return Ok(hl.clone());
        }
        let hl = Arc::new(match self.route {
            Route::Explicit => hl_explicit_budgeted(lambda, &self.params, &self.budget)?,
            Route::Macdonald => macdonald_bc_budgeted(lambda, &self.params, &self.budget)?,
        });
        self.cache
            .lock()
            .unwrap()
            .insert(lambda.clone(), hl.clone());
        Ok(hl)
    }

    /// Builds the given members in parallel.
    pub fn prefetch(&self, lambdas: &[Partition]) -> Result<()> {
        lambdas
            .par_iter()
            .map(|l| self.get(l).map(|_| ()))
            .collect::<Result<Vec<_>>>()?;
        Ok(())
    }
}

/// `λ` together with every valid `λ ± e_j`, deduplicated.
pub fn with_neighbors(lambdas: &[Partition]) -> Vec<Partition> {
    let mut all: Vec<Partition> = lambdas
        .iter()
        .flat_map(|l| {
            std::iter::once(l.clone())
                .chain(unit_steps(l, Step::Up).into_iter().map(|(_, m)| m))
                .chain(unit_steps(l, Step::Down).into_iter().map(|(_, m)| m))
        })
        .collect();
    all.sort();
    all.dedup();
    all
}

/// Left side minus right side of the Pieri recurrence for `P_λ`:
/// `P_λ Σ_j (x_j + x_j⁻¹ - τ_j - τ_j⁻¹) - Σ_± V_j^± (P_{λ±e_j} - P_λ)`.
pub fn pieri_residual(lambda: &Partition, family: &HlFamily) -> Result<LaurentPoly> {
    let params = family.params();
    let n = lambda.len();
    let big_p = |mu: &Partition| -> Result<LaurentPoly> { normalized_p(&*family.get(mu)?) };
    let p_lambda = big_p(lambda)?;

    let mut multiplier = LaurentPoly::zero(n);
    for (j, tau) in params.tau(n).iter().enumerate() {
        let mut e = vec![0; n];
        e[j] = 1;
        multiplier = &multiplier + &LaurentPoly::monomial(&e, Rational::one());
        e[j] = -1;
        multiplier = &multiplier + &LaurentPoly::monomial(&e, Rational::one());
        multiplier = &multiplier - &LaurentPoly::constant(n, tau + tau.recip());
    }
    let mut residual = &p_lambda * &multiplier;
    for dir in [Step::Up, Step::Down] {
        for (j, mu) in unit_steps(lambda, dir) {
            let v = qkernels::pieri_v(lambda, j, dir, params)?;
            residual = &residual - &(&big_p(&mu)? - &p_lambda).scale(&v);
        }
    }
    Ok(residual)
}

/// Expansion coefficients of `p_λ` found numerically from the orthogonality
/// conditions `⟨p_λ, m_ν⟩_Δ = 0`, `ν < λ`.
#[derive(Clone, Debug)]
pub struct GramSchmidtExpansion {
    pub lambda: Partition,
    pub coeffs: BTreeMap<Partition, f64>,
    /// 2-norm condition number of the solved system.
    pub condition: f64,
}

/// Condition numbers beyond this are reported as [`Error::Conditioning`].
pub const MAX_CONDITION: f64 = 1e12;

pub fn hl_gram_schmidt(
    lambda: &Partition,
    params: &ParamSet,
    quad: &QuadratureSpec,
) -> Result<GramSchmidtExpansion> {
    let grid = TorusGrid::new(params, quad, &Budget::default())?;
    hl_gram_schmidt_on(lambda, &grid)
}

/// Same as [`hl_gram_schmidt`] on a prepared grid.
pub fn hl_gram_schmidt_on(lambda: &Partition, grid: &TorusGrid) -> Result<GramSchmidtExpansion> {
    if grid.n() != lambda.len() {
        return Err(Error::Domain(format!(
            "grid of dimension {} for a partition of length {}",
            grid.n(),
            lambda.len()
        )));
    }
    let lower: Vec<Partition> = lambda
        .lower_set()
        .into_iter()
        .filter(|mu| mu != lambda)
        .collect();
    let mut coeffs = BTreeMap::new();
    coeffs.insert(lambda.clone(), 1.0);
    if lower.is_empty() {
        return Ok(GramSchmidtExpansion {
            lambda: lambda.clone(),
            coeffs,
            condition: 1.0,
        });
    }
    let lead = grid.values(&monomial_symmetric(lambda))?;
    let basis: Vec<Vec<Complex64>> = lower
        .iter()
        .map(|mu| grid.values(&monomial_symmetric(mu)))
        .collect::<Result<_>>()?;
    let k = lower.len();
    // Σ_μ c_μ ⟨m_μ, m_ν⟩ = -⟨m_λ, m_ν⟩ for every ν < λ
    let gram = DMatrix::from_fn(k, k, |nu, mu| grid.inner(&basis[mu], &basis[nu]));
    let rhs = DVector::from_fn(k, |nu, _| -grid.inner(&lead, &basis[nu]));

    let sv = gram.clone().singular_values();
    let condition = sv.max() / sv.min();
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::Conditioning(condition));
    }
    let solution = gram
        .lu()
        .solve(&rhs)
        .ok_or(Error::Conditioning(f64::INFINITY))?;
    for (mu, c) in lower.into_iter().zip(solution.iter()) {
        coeffs.insert(mu, c.re);
    }
    Ok(GramSchmidtExpansion {
        lambda: lambda.clone(),
        coeffs,
        condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{enumerate, hyperoctahedral_generators};
    use crate::rational::{int, rat};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn default() -> ParamSet {
        ParamSet::default_for(Profile::Four)
    }

    /// `(e3 - e1)/(1 - e4)` in the four `t_r`.
    fn single_particle_constant(ps: &ParamSet) -> Rational {
        let t = ps.t();
        let e1: Rational = t.iter().sum();
        let mut e3 = Rational::zero();
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    e3 += &t[a] * &t[b] * &t[c];
                }
            }
        }
        (e3 - e1) / (int(1) - ps.t_product())
    }

    #[test]
    fn monomial_symmetric_examples() {
        assert_eq!(monomial_symmetric(&p(&[0, 0])), LaurentPoly::one(2));
        assert_eq!(monomial_symmetric(&p(&[1, 0])).len(), 4);
        let m11 = monomial_symmetric(&p(&[1, 1]));
        for e in [[1, 1], [1, -1], [-1, 1], [-1, -1]] {
            assert_eq!(m11.coeff(&e), int(1));
        }
        assert_eq!(m11.len(), 4);
    }

    #[test]
    fn c_factor_shapes() {
        let ps = default();
        let c0 = c_factor(&p(&[0]), &ps);
        assert_eq!(c0.numerator, LaurentPoly::one(1));
        assert!(c0.denominator_factors.is_empty());

        let c1 = c_factor(&p(&[1]), &ps);
        assert_eq!(c1.numerator.len(), 5);
        assert_eq!(c1.denominator_roots(), &[vec![2]]);

        let c10 = c_factor(&p(&[1, 0]), &ps);
        assert_eq!(
            c10.denominator_roots(),
            &[vec![1, -1], vec![1, 1], vec![2, 0]]
        );
        // two q cross-factors times four t-factors in x_1
        assert_eq!(
            c10.numerator,
            &bulk_numerator(2, ps.q()) * &boundary_numerator(2, 0, ps.t())
        );
    }

    #[test]
    fn zero_partition_gives_one() {
        for n in 0..=3 {
            let hl = hl_explicit(&Partition::zero(n), &default()).unwrap();
            assert_eq!(hl.poly(), &LaurentPoly::one(n));
            assert_eq!(hl.expansion().len(), 1);
        }
    }

    #[test]
    fn single_particle_closed_form() {
        for ps in ParamSet::samples(Profile::Four) {
            let hl = hl_explicit(&p(&[1]), &ps).unwrap();
            let expected = &monomial_symmetric(&p(&[1]))
                + &LaurentPoly::constant(1, single_particle_constant(&ps));
            assert_eq!(hl.poly(), &expected);
        }
    }

    #[test]
    fn normalized_single_particle_at_two() {
        let ps = default();
        let hl = hl_explicit(&p(&[1]), &ps).unwrap();
        let value = normalized_p(&hl).unwrap().evaluate_exact(&[int(2)]).unwrap();
        let c = qkernels::c_lambda(&p(&[1]), &ps).unwrap();
        assert_eq!(value, c * (int(2) + rat(1, 2) + single_particle_constant(&ps)));
    }

    #[test]
    fn constructed_polynomials_are_invariant_and_triangular() {
        let ps = default();
        for lambda in enumerate(2, 3).into_iter().chain(enumerate(3, 2)) {
            let hl = hl_explicit(&lambda, &ps).unwrap();
            assert_eq!(hl.coeff(&lambda), int(1));
            for mu in hl.expansion().keys() {
                assert!(mu.dominated_by(&lambda).unwrap());
            }
            assert_eq!(&hl.reconstruct(), hl.poly());
            for g in hyperoctahedral_generators(lambda.len()) {
                assert_eq!(&hl.poly().apply_w(&g).unwrap(), hl.poly());
            }
        }
    }

    #[test]
    fn principal_specialization_single_particle() {
        let ps = default();
        let hl = hl_explicit(&p(&[1]), &ps).unwrap();
        let t1 = ps.t_r(1);
        let lhs = t1 + t1.recip() + single_particle_constant(&ps);
        let mut rhs = int(1);
        for r in 2..=4 {
            rhs *= int(1) - t1 * ps.t_r(r);
        }
        rhs /= t1 * (int(1) - ps.t_product());
        assert_eq!(principal_specialization(&hl).unwrap(), lhs);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn principal_specialization_is_inverse_c() {
        for ps in ParamSet::samples(Profile::Four) {
            for lambda in [p(&[0]), p(&[2]), p(&[1, 0]), p(&[2, 1])] {
                let hl = hl_explicit(&lambda, &ps).unwrap();
                assert_eq!(
                    principal_specialization(&hl).unwrap() * qkernels::c_lambda(&lambda, &ps).unwrap(),
                    int(1),
                    "{lambda} at {ps}"
                );
            }
        }
    }

    #[test]
    fn pieri_examples_vanish() {
        let family = HlFamily::new(default());
        for lambda in [p(&[0]), p(&[2]), p(&[1, 1])] {
            assert!(pieri_residual(&lambda, &family).unwrap().is_zero(), "{lambda}");
        }
    }

    #[test]
    fn macdonald_formula_examples() {
        let two = ParamSet::default_for(Profile::Two);
        assert_eq!(macdonald_bc(&p(&[0, 0]), &two).unwrap().poly(), &LaurentPoly::one(2));
        for lambda in [p(&[1]), p(&[2, 1])] {
            assert_eq!(
                macdonald_bc(&lambda, &two).unwrap().poly(),
                hl_explicit(&lambda, &two).unwrap().poly()
            );
        }
        assert!(matches!(
            macdonald_bc(&p(&[1]), &default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn expansion_rejects_non_invariant_input() {
        assert!(monomial_expansion(&LaurentPoly::var(2, 0)).is_err());
    }

    #[test]
    fn construction_bound_is_enforced() {
        let budget = Budget {
            max_n: 2,
            ..Budget::default()
        };
        assert!(matches!(
            hl_explicit_budgeted(&p(&[1, 0, 0]), &default(), &budget),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn gram_schmidt_single_particle() {
        let ps = default();
        let quad = QuadratureSpec::new(1, 64).unwrap();
        let gs = hl_gram_schmidt(&p(&[1]), &ps, &quad).unwrap();
        let expected = rational::to_f64(&single_particle_constant(&ps));
        assert!((gs.coeffs[&p(&[0])] - expected).abs() < 1e-10);
        let zero = hl_gram_schmidt(&p(&[0, 0]), &ps, &QuadratureSpec::new(2, 16).unwrap()).unwrap();
        assert_eq!(zero.coeffs.len(), 1);
    }

    #[test]
    fn gram_schmidt_matches_explicit_for_20() {
        let ps = default();
        let lambda = p(&[2, 0]);
        let gs = hl_gram_schmidt(&lambda, &ps, &QuadratureSpec::new(2, 64).unwrap()).unwrap();
        let hl = hl_explicit(&lambda, &ps).unwrap();
        assert_eq!(gs.coeffs.len(), 4);
        for (mu, c) in &gs.coeffs {
            assert!((c - rational::to_f64(&hl.coeff(mu))).abs() < 1e-8, "{mu}");
        }
    }
}
