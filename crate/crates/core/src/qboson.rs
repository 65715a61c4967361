//! Deformed q-boson operators on particle sectors `ℓ²(Λ_n, N)`, the
//! Hamiltonian, Hall–Littlewood wave functions and scattering factors.
//!
//! Functions are finitely supported, so every operator identity is checked
//! without truncation: each operator moves particle number and positions by
//! at most one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hallittlewood::HlFamily;
use crate::partition::{enumerate, Partition};
use crate::qkernels::{self, four, three, two, unit_steps, ParamSet, Profile, Step};
use crate::rational::{self, Rational};
use crate::report::{ExpectedFailure, VerificationReport};

/// Values a lattice function can take: exact rationals for identities,
/// complex floats where a spectral parameter enters.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
    fn conj(&self) -> Self;
    fn magnitude(&self) -> f64;
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn magnitude(&self) -> f64 {
        rational::to_f64(&self.abs())
    }
}

impl Scalar for Complex64 {
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational::to_f64(r), 0.0)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// A finitely supported function on `Λ_n`. Zero values are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFunction<S> {
    n: usize,
    values: BTreeMap<Partition, S>,
}

impl<S: Scalar> LatticeFunction<S> {
    pub fn zero(n: usize) -> Self {
        LatticeFunction {
            n,
            values: BTreeMap::new(),
        }
    }

    /// `δ_μ`.
    pub fn delta(mu: &Partition) -> Self {
        let mut f = Self::zero(mu.len());
        f.add_at(mu.clone(), S::one());
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: &Partition) -> S {
        self.values.get(lambda).cloned().unwrap_or_else(S::zero)
    }

    pub fn values(&self) -> &BTreeMap<Partition, S> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Adds `v` at `λ`; panics if `λ` has the wrong length.
    pub fn add_at(&mut self, lambda: Partition, v: S) {
        assert_eq!(lambda.len(), self.n, "partition length does not match the sector");
        let slot = self.values.entry(lambda).or_insert_with(S::zero);
        *slot = slot.clone() + v;
        if slot.is_zero() {
            self.values.retain(|_, x| !x.is_zero());
        }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        // β_l on Λ_0 is the zero map, whose image carries no sector; a zero
        // function is therefore compatible with every sector.
        if self.n != other.n && !self.is_zero() && !other.is_zero() {
            return Err(Error::Domain(format!(
                "sectors {} and {} differ",
                self.n, other.n
            )));
        }
        let mut out = if self.is_zero() {
            Self::zero(other.n)
        } else {
            self.clone()
        };
        for (lam, v) in &other.values {
            out.add_at(lam.clone(), -v.clone());
        }
        Ok(out)
    }

    /// Largest `|f(λ)|`.
    pub fn max_magnitude(&self) -> f64 {
        self.values.values().map(S::magnitude).fold(0.0, f64::max)
    }

    /// Largest part over the support.
    pub fn max_part(&self) -> u32 {
        self.values.keys().map(Partition::largest).max().unwrap_or(0)
    }
}

impl LatticeFunction<Rational> {
    /// Largest `|f(λ)|`, exactly.
    pub fn max_abs(&self) -> Rational {
        self.values
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Operators of one parameter set, using the formulas of a chosen profile.
#[derive(Clone, Debug)]
pub struct Fock {
    params: ParamSet,
    formulas: Profile,
}

macro_rules! formulas {
    ($self:ident, $f:ident($($arg:expr),*)) => {
        match $self.formulas {
            Profile::Four => four::$f($($arg),*),
            Profile::Three => three::$f($($arg),*),
            Profile::Two => two::$f($($arg),*),
        }
    };
}

impl Fock {
    /// Operators with the formulas of the parameter profile.
    pub fn new(params: ParamSet) -> Self {
        let formulas = params.profile();
        Fock { params, formulas }
    }

    /// Operators with the general four-parameter formulas, whatever zeros
    /// the parameters have.
    pub fn general(params: ParamSet) -> Self {
        Fock {
            params,
            formulas: Profile::Four,
        }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn formulas(&self) -> Profile {
        self.formulas
    }

    pub fn norm(&self, lambda: &Partition) -> Result<Rational> {
        formulas!(self, norm(lambda, &self.params))
    }

    /// `(β_l f)(λ) = f(λ ∪ l) · (annihilation factor at λ)`; zero on `Λ_0`.
    pub fn annihilate<S: Scalar>(&self, l: u32, f: &LatticeFunction<S>) -> Result<LatticeFunction<S>> {
        if f.n == 0 {
            return Ok(LatticeFunction::zero(0));
        }
        let mut out = LatticeFunction::zero(f.n - 1);
        for (mu, v) in &f.values {
            if mu.multiplicity(l) == 0 {
                continue;
            }
            let lam = mu.remove_part(l)?;
            let c = formulas!(self, annihilation(&lam, l, &self.params))?;
            out.add_at(lam, v.clone() * S::from_rational(&c));
        }
        Ok(out)
    }

    /// `(β_l^* f)(λ) = f(λ ∖ l) · (creation factor at λ)` for `m_l(λ) > 0`.
    pub fn create<S: Scalar>(&self, l: u32, f: &LatticeFunction<S>) -> Result<LatticeFunction<S>> {
        let mut out = LatticeFunction::zero(f.n + 1);
        for (mu, v) in &f.values {
            let lam = mu.add_part(l);
            let c = formulas!(self, creation(&lam, l, &self.params))?;
            out.add_at(lam, v.clone() * S::from_rational(&c));
        }
        Ok(out)
    }

    /// `(N_l f)(λ) = q^{m_l(λ)} f(λ)`.
    pub fn number_op<S: Scalar>(&self, l: u32, f: &LatticeFunction<S>) -> LatticeFunction<S> {
        self.diagonal(f, |lam| Ok(self.params.q_pow(lam.multiplicity(l) as i64)))
            .expect("q powers never fail")
    }

    /// Multiplies `f(λ)` by `d(λ)`.
    pub fn diagonal<S: Scalar>(
        &self,
        f: &LatticeFunction<S>,
        d: impl Fn(&Partition) -> Result<Rational>,
    ) -> Result<LatticeFunction<S>> {
        let mut out = LatticeFunction::zero(f.n);
        for (lam, v) in &f.values {
            out.add_at(lam.clone(), v.clone() * S::from_rational(&d(lam)?));
        }
        Ok(out)
    }

    /// `⟨f, g⟩_n = Σ_λ f(λ) conj(g(λ)) N_λ`.
    pub fn inner<S: Scalar>(&self, f: &LatticeFunction<S>, g: &LatticeFunction<S>) -> Result<S> {
        if f.n != g.n {
            return Err(Error::Domain(format!("sectors {} and {} differ", f.n, g.n)));
        }
        let mut acc = S::zero();
        for (lam, v) in &f.values {
            if let Some(w) = g.values.get(lam) {
                acc = acc + v.clone() * w.conj() * S::from_rational(&self.norm(lam)?);
            }
        }
        Ok(acc)
    }

    /// Coefficients of `(H_n f)(λ)`: the potential and the hopping
    /// amplitudes to each neighbour.
    pub fn hamiltonian_row(&self, lambda: &Partition) -> Result<HamiltonianRow> {
        let potential = formulas!(self, boundary_potential(lambda.m0(), lambda.m1(), &self.params))?;
        let mut hops = Vec::new();
        for dir in [Step::Up, Step::Down] {
            for (j, mu) in unit_steps(lambda, dir) {
                hops.push((mu, formulas!(self, hamiltonian_v(lambda, j, dir, &self.params))?));
            }
        }
        Ok(HamiltonianRow { potential, hops })
    }

    /// `H_n f` from the coefficient form `V f(λ) + Σ v_j^± f(λ ± e_j)`.
    pub fn apply_hamiltonian<S: Scalar>(&self, f: &LatticeFunction<S>) -> Result<LatticeFunction<S>> {
        let mut targets = BTreeSet::new();
        for mu in f.values.keys() {
            targets.insert(mu.clone());
            for dir in [Step::Up, Step::Down] {
                targets.extend(unit_steps(mu, dir).into_iter().map(|(_, nu)| nu));
            }
        }
        let mut out = LatticeFunction::zero(f.n);
        for lam in targets {
            let v = self.hamiltonian_row(&lam)?.apply(&lam, |mu| f.get(mu));
            out.add_at(lam, v);
        }
        Ok(out)
    }

    /// `H_n f` assembled as `V(N_0, N_1) + Σ_l (β_l^* β_{l+1} + β_{l+1}^* β_l)`.
    pub fn hamiltonian_from_operators<S: Scalar>(
        &self,
        f: &LatticeFunction<S>,
    ) -> Result<LatticeFunction<S>> {
        let mut out = self.diagonal(f, |lam| {
            formulas!(self, boundary_potential(lam.m0(), lam.m1(), &self.params))
        })?;
        for l in 0..=f.max_part() {
            for (a, b) in [(l, l + 1), (l + 1, l)] {
                let term = self.create(a, &self.annihilate(b, f)?)?;
                for (lam, v) in term.values {
                    out.add_at(lam, v);
                }
            }
        }
        Ok(out)
    }
}

/// One row of the Hamiltonian in the partition basis.
#[derive(Clone, Debug)]
pub struct HamiltonianRow {
    pub potential: Rational,
    pub hops: Vec<(Partition, Rational)>,
}

impl HamiltonianRow {
    pub fn apply<S: Scalar>(&self, lambda: &Partition, f: impl Fn(&Partition) -> S) -> S {
        let mut acc = f(lambda) * S::from_rational(&self.potential);
        for (mu, v) in &self.hops {
            acc = acc + f(mu) * S::from_rational(v);
        }
        acc
    }
}

/// The eight relation families of the boundary q-boson algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `β_l N_k = q^{δ_{lk}} N_k β_l`
    A1,
    /// `β_l^* N_k = q^{-δ_{lk}} N_k β_l^*`
    A2,
    /// `β_l^* β_l` as a function of the number operators
    B,
    /// `β_l β_l^*` as a function of the number operators
    C,
    /// `β_l β_k = T β_k β_l`, `l < k`
    D1,
    /// `β_l^* β_k^* = β_k^* β_l^* T⁻¹`, `l < k`
    D2,
    /// `β_l β_k^* = T β_k^* β_l`, `l < k`
    E1,
    /// `β_l^* β_k = β_k β_l^* T⁻¹`, `l < k`
    E2,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::A1,
        Relation::A2,
        Relation::B,
        Relation::C,
        Relation::D1,
        Relation::D2,
        Relation::E1,
        Relation::E2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::A1 => "a1",
            Relation::A2 => "a2",
            Relation::B => "b",
            Relation::C => "c",
            Relation::D1 => "d1",
            Relation::D2 => "d2",
            Relation::E1 => "e1",
            Relation::E2 => "e2",
        }
    }

    pub fn label(self) -> String {
        format!("com-{}", self.id())
    }

    /// Whether the relation involves a second index `k`.
    pub fn takes_pair(self) -> bool {
        !matches!(self, Relation::B | Relation::C)
    }

    /// Whether the relation needs `l < k`.
    pub fn ordered(self) -> bool {
        matches!(self, Relation::D1 | Relation::D2 | Relation::E1 | Relation::E2)
    }

    /// Parses one relation or a whole family: `a1`, `com-d2`, `com-d`, `e`, `all`.
    pub fn parse_set(s: &str) -> Result<Vec<Relation>> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.strip_prefix("com-").unwrap_or(&key);
        if key == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let hits: Vec<Relation> = Self::ALL
            .iter()
            .copied()
            .filter(|r| r.id() == key || (key.len() == 1 && r.id().starts_with(key)))
            .collect();
        if hits.is_empty() {
            return Err(Error::Parse(format!("unknown relation {s:?}")));
        }
        Ok(hits)
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match Relation::parse_set(s)?.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::Parse(format!("{s:?} names a family, not a single relation"))),
        }
    }
}

/// `(N_0, N_1) = (q^{m_0}, q^{m_1})`.
fn occupation(lambda: &Partition, p: &ParamSet) -> (Rational, Rational) {
    (p.q_pow(lambda.m0() as i64), p.q_pow(lambda.m1() as i64))
}

fn delta(a: u32, b: u32) -> bool {
    a == b
}

/// Twist `(1 - q t N_0² N_1)/(1 - t N_0² N_1)` at `λ`.
fn twist(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
    let (n0, n1) = occupation(lambda, p);
    let x = p.t_product() * &n0 * &n0 * n1;
    let one = Rational::one();
    qkernels::guarded_div(&one - p.q() * &x, one - x, "1 - tN0²N1")
}

fn pair_product(p: &ParamSet, n0: &Rational, qk: &Rational) -> Rational {
    let mut acc = Rational::one();
    for r in 1..=4 {
        for s in r + 1..=4 {
            acc *= Rational::one() - qk * p.t_r(r) * p.t_r(s) * n0;
        }
    }
    acc
}

/// Right side of `β_l^* β_l` at `λ`.
fn b_diagonal(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
    let (n0, n1) = occupation(lambda, p);
    let one = Rational::one();
    let q = p.q();
    let t = p.t_product();
    let qi = |k: i64| p.q_pow(-k);
    let nl = p.q_pow(lambda.multiplicity(l) as i64);
    let mut v = (&one - nl) / (&one - q);
    if l <= 1 {
        v *= &one - qi(1) * &t * &n0 * &n0 * &n1;
    }
    if l == 0 {
        let num = (&one - qi(2) * &t * &n0) * pair_product(p, &n0, &qi(1));
        let sq = &n0 * &n0;
        let den = (&one - qi(3) * &t * &sq)
            * (&one - qi(2) * &t * &sq)
            * (&one - qi(2) * &t * &sq)
            * (&one - qi(1) * &t * &sq)
            * (&one - qi(2) * &t * &sq * &n1);
        v *= qkernels::guarded_div(num, den, "of the β*β bracket")?;
    }
    Ok(v)
}

/// Right side of `β_l β_l^*` at `λ`.
fn c_diagonal(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
    let (n0, n1) = occupation(lambda, p);
    let one = Rational::one();
    let q = p.q();
    let t = p.t_product();
    let nl = p.q_pow(lambda.multiplicity(l) as i64);
    let mut v = (&one - q * nl) / (&one - q);
    let x = &t * &n0 * &n0 * &n1;
    match l {
        0 => v = qkernels::guarded_div(v, &one - &x, "1 - tN0²N1")?,
        1 => v *= &one - &x,
        _ => {}
    }
    if l == 0 {
        let sq = &n0 * &n0;
        let num = (&one - p.q_pow(-1) * &t * &n0)
            * (&one - q * &x)
            * pair_product(p, &n0, &one);
        let den = (&one - p.q_pow(-1) * &t * &sq)
            * (&one - &t * &sq)
            * (&one - &t * &sq)
            * (&one - q * &t * &sq);
        v *= qkernels::guarded_div(num, den, "of the ββ* bracket")?;
    }
    Ok(v)
}

impl Fock {
    /// Both sides of a relation applied to `f`. With `twisted = false` the
    /// exchange relations drop the `T` factor.
    pub fn relation_sides(
        &self,
        rel: Relation,
        l: u32,
        k: u32,
        f: &LatticeFunction<Rational>,
        twisted: bool,
    ) -> Result<(LatticeFunction<Rational>, LatticeFunction<Rational>)> {
        if rel.ordered() && l >= k {
            return Err(Error::Precondition(format!(
                "relation {} needs l < k, got l = {l}, k = {k}",
                rel.label()
            )));
        }
        let p = &self.params;
        let q_delta = |sign: i64| p.q_pow(if delta(l, k) { sign } else { 0 });
        let t_pow = |lam: &Partition, sign: i64| -> Result<Rational> {
            if !twisted || !(l == 0 && k == 1) {
                return Ok(Rational::one());
            }
            let t = twist(lam, p)?;
            Ok(if sign > 0 { t } else { t.recip() })
        };
        Ok(match rel {
            Relation::A1 => (
                self.annihilate(l, &self.number_op(k, f))?,
                self.number_op(k, &self.annihilate(l, f)?).scale_by(&q_delta(1)),
            ),
            Relation::A2 => (
                self.create(l, &self.number_op(k, f))?,
                self.number_op(k, &self.create(l, f)?).scale_by(&q_delta(-1)),
            ),
            Relation::B => (
                self.create(l, &self.annihilate(l, f)?)?,
                self.diagonal(f, |lam| b_diagonal(lam, l, p))?,
            ),
            Relation::C => (
                self.annihilate(l, &self.create(l, f)?)?,
                self.diagonal(f, |lam| c_diagonal(lam, l, p))?,
            ),
            Relation::D1 => (
                self.annihilate(l, &self.annihilate(k, f)?)?,
                self.diagonal(&self.annihilate(k, &self.annihilate(l, f)?)?, |lam| t_pow(lam, 1))?,
            ),
            Relation::D2 => (
                self.create(l, &self.create(k, f)?)?,
                self.create(k, &self.create(l, &self.diagonal(f, |lam| t_pow(lam, -1))?)?)?,
            ),
            Relation::E1 => (
                self.annihilate(l, &self.create(k, f)?)?,
                self.diagonal(&self.create(k, &self.annihilate(l, f)?)?, |lam| t_pow(lam, 1))?,
            ),
            Relation::E2 => (
                self.create(l, &self.annihilate(k, f)?)?,
                self.annihilate(k, &self.create(l, &self.diagonal(f, |lam| t_pow(lam, -1))?)?)?,
            ),
        })
    }

    /// Exact residual `max_λ |LHS - RHS|` of a relation on `δ_μ`.
    pub fn relation_residual(
        &self,
        rel: Relation,
        l: u32,
        k: u32,
        mu: &Partition,
        twisted: bool,
    ) -> Result<Rational> {
        let (lhs, rhs) = self.relation_sides(rel, l, k, &LatticeFunction::delta(mu), twisted)?;
        Ok(lhs.checked_sub(&rhs)?.max_abs())
    }

    /// Checks one relation at fixed `(l, k)` on every `δ_μ`,
    /// `μ ∈ enumerate(n, max_part)`.
    pub fn verify_relation(
        &self,
        rel: Relation,
        l: u32,
        k: u32,
        n: usize,
        max_part: u32,
    ) -> Result<VerificationReport> {
        let mut report = VerificationReport::exact(rel.label(), n, max_part);
        for mu in enumerate(n, max_part) {
            let r = self.relation_residual(rel, l, k, &mu, true)?;
            report.record_exact(&r, || format!("l={l} k={k} on δ_{mu}: residual {r}"));
        }
        Ok(report)
    }

    /// Checks a relation for every admissible `l, k ≤ max_index` and every
    /// sector `n ≤ max_n`, in parallel.
    pub fn verify_relation_sweep(
        &self,
        rel: Relation,
        max_n: usize,
        max_part: u32,
        max_index: u32,
    ) -> Result<VerificationReport> {
        let mut jobs = Vec::new();
        for l in 0..=max_index {
            let ks: Vec<u32> = if !rel.takes_pair() {
                vec![l]
            } else if rel.ordered() {
                (l + 1..=max_index).collect()
            } else {
                (0..=max_index).collect()
            };
            for k in ks {
                for n in 0..=max_n {
                    jobs.push((l, k, n));
                }
            }
        }
        let reports = jobs
            .par_iter()
            .map(|&(l, k, n)| self.verify_relation(rel, l, k, n, max_part))
            .collect::<Result<Vec<_>>>()?;
        let mut total = VerificationReport::exact(rel.label(), max_n, max_part);
        for r in reports {
            total.absorb(r);
        }
        Ok(total)
    }

    /// First `δ_μ` on which `β_0 β_1 = β_1 β_0` fails, if any.
    pub fn untwisted_counterexample(&self, max_n: usize, max_part: u32) -> Result<Option<Partition>> {
        for n in 0..=max_n {
            for mu in enumerate(n, max_part) {
                if !self.relation_residual(Relation::D1, 0, 1, &mu, false)?.is_zero() {
                    return Ok(Some(mu));
                }
            }
        }
        Ok(None)
    }

    /// Exchange relations for every `l < k ≤ max_index` with the twist
    /// removed; all residuals must vanish when `t = 0`.
    pub fn verify_untwisted(&self, max_n: usize, max_part: u32, max_index: u32) -> Result<VerificationReport> {
        let mut report = VerificationReport::exact("untwisted-exchange", max_n, max_part);
        for rel in [Relation::D1, Relation::D2, Relation::E1, Relation::E2] {
            for l in 0..=max_index {
                for k in l + 1..=max_index {
                    for n in 0..=max_n {
                        for mu in enumerate(n, max_part) {
                            let r = self.relation_residual(rel, l, k, &mu, false)?;
                            report.record_exact(&r, || format!("{} l={l} k={k} on δ_{mu}", rel.label()));
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// `⟨β_l^* δ_μ, δ_ν⟩_{n+1} = ⟨δ_μ, β_l δ_ν⟩_n` for `μ ∈ enumerate(n, max_part)`,
    /// `ν ∈ enumerate(n+1, max_part)`, `l ≤ max_index`.
    pub fn verify_adjoint(&self, n: usize, max_part: u32, max_index: u32) -> Result<VerificationReport> {
        let mut report = VerificationReport::exact("adjoint", n, max_part);
        let lower = enumerate(n, max_part);
        let upper = enumerate(n + 1, max_part);
        for l in 0..=max_index {
            let created: Vec<_> = lower
                .iter()
                .map(|mu| self.create(l, &LatticeFunction::<Rational>::delta(mu)))
                .collect::<Result<_>>()?;
            let annihilated: Vec<_> = upper
                .iter()
                .map(|nu| self.annihilate(l, &LatticeFunction::<Rational>::delta(nu)))
                .collect::<Result<_>>()?;
            for (mu, cf) in lower.iter().zip(&created) {
                let f = LatticeFunction::<Rational>::delta(mu);
                for (nu, ag) in upper.iter().zip(&annihilated) {
                    let lhs: Rational = self.inner(cf, &LatticeFunction::delta(nu))?;
                    let rhs = self.inner(&f, ag)?;
                    let r: Rational = (lhs - rhs).abs();
                    report.record_exact(&r, || format!("l={l} μ={mu} ν={nu}"));
                }
            }
        }
        Ok(report)
    }

    /// `⟨H δ_μ, δ_ν⟩ = ⟨δ_μ, H δ_ν⟩` for all `μ, ν ∈ enumerate(n, max_part)`.
    pub fn verify_symmetry(&self, n: usize, max_part: u32) -> Result<VerificationReport> {
        let mut report = VerificationReport::exact("hamiltonian-symmetry", n, max_part);
        let basis = enumerate(n, max_part);
        let images: Vec<LatticeFunction<Rational>> = basis
            .iter()
            .map(|mu| self.apply_hamiltonian(&LatticeFunction::delta(mu)))
            .collect::<Result<_>>()?;
        for (mu, hmu) in basis.iter().zip(&images) {
            for (nu, hnu) in basis.iter().zip(&images) {
                let lhs = hmu.get(nu) * self.norm(nu)?;
                let rhs = hnu.get(mu) * self.norm(mu)?;
                let r = (lhs - rhs).abs();
                report.record_exact(&r, || format!("μ={mu} ν={nu}"));
            }
        }
        Ok(report)
    }

    /// Operator-assembled `H` against the coefficient form on every `δ_μ`.
    pub fn verify_hamiltonian_assembly(&self, n: usize, max_part: u32) -> Result<VerificationReport> {
        let mut report = VerificationReport::exact("hamiltonian-assembly", n, max_part);
        for mu in enumerate(n, max_part) {
            let f = LatticeFunction::delta(&mu);
            let diff = self
                .apply_hamiltonian(&f)?
                .checked_sub(&self.hamiltonian_from_operators(&f)?)?;
            let r = diff.max_abs();
            report.record_exact(&r, || format!("δ_{mu}: residual {r}"));
        }
        Ok(report)
    }
}

impl<S: Scalar> LatticeFunction<S> {
    fn scale_by(mut self, c: &Rational) -> Self {
        let c = S::from_rational(c);
        for v in self.values.values_mut() {
            *v = v.clone() * c.clone();
        }
        self.values.retain(|_, v| !v.is_zero());
        self
    }
}

/// General formulas against the reduced ones.
///
/// `params` must have `t_4 = 0` (three-parameter profile) or `t_3 = t_4 = 0`
/// (two-parameter profile). Norms, creation and annihilation factors, hopping
/// amplitudes and the boundary potential are compared exactly on all states
/// with `n ≤ max_n` and parts `≤ max_part`.
pub fn verify_degeneration(params: &ParamSet, max_n: usize, max_part: u32) -> Result<VerificationReport> {
    let label = format!("degeneration-{}", params.profile());
    let mut report = VerificationReport::exact(label, max_n, max_part);
    if params.profile() == Profile::Four {
        return Err(Error::Domain("degeneration needs a reduced profile".into()));
    }
    let general = Fock::general(params.clone());
    let reduced = Fock::new(params.clone());
    let mut check = |what: String, a: Rational, b: Rational| {
        let r = (a - b).abs();
        report.record_exact(&r, || what);
    };
    for n in 0..=max_n + 1 {
        for lam in enumerate(n, max_part + 1) {
            check(format!("N at {lam}"), general.norm(&lam)?, reduced.norm(&lam)?);
            for l in 0..=max_part + 1 {
                check(
                    format!("creation l={l} at {lam}"),
                    formulas!(general, creation(&lam, l, params))?,
                    formulas!(reduced, creation(&lam, l, params))?,
                );
                check(
                    format!("annihilation l={l} at {lam}"),
                    formulas!(general, annihilation(&lam, l, params))?,
                    formulas!(reduced, annihilation(&lam, l, params))?,
                );
            }
            if n <= max_n && lam.largest() <= max_part {
                let (g, r) = (general.hamiltonian_row(&lam)?, reduced.hamiltonian_row(&lam)?);
                check(format!("V at {lam}"), g.potential, r.potential);
                for ((mu, a), (_, b)) in g.hops.into_iter().zip(r.hops) {
                    check(format!("hop {lam} -> {mu}"), a, b);
                }
            }
        }
    }
    Ok(report)
}

/// `E_n(ξ) = 2 Σ cos ξ_j`.
pub fn energy(xi: &[f64]) -> f64 {
    2.0 * xi.iter().map(|x| x.cos()).sum::<f64>()
}

/// `φ_ξ(λ) = p_λ(ξ)/N_λ`.
pub fn wave_function(xi: &[f64], lambda: &Partition, family: &HlFamily) -> Result<Complex64> {
    let hl = family.get(lambda)?;
    Ok(hl.poly().evaluate_torus(xi)? / rational::to_f64(hl.norm()))
}

/// `{"xi": [...], "values": [{"lambda": [...], "re": .., "im": ..}]}`.
#[derive(Clone, Debug, Serialize)]
pub struct WaveFunctionDump {
    pub xi: Vec<f64>,
    pub values: Vec<WaveFunctionValue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WaveFunctionValue {
    pub lambda: Partition,
    pub re: f64,
    pub im: f64,
}

pub fn wave_function_dump(xi: &[f64], lambdas: &[Partition], family: &HlFamily) -> Result<WaveFunctionDump> {
    let values = lambdas
        .iter()
        .map(|l| {
            wave_function(xi, l, family).map(|z| WaveFunctionValue {
                lambda: l.clone(),
                re: z.re,
                im: z.im,
            })
        })
        .collect::<Result<_>>()?;
    Ok(WaveFunctionDump {
        xi: xi.to_vec(),
        values,
    })
}

/// Relative eigen-residual bound used by [`eigen_residual`].
pub const EIGEN_TOLERANCE: f64 = 1e-10;

/// `max_λ |(H_n φ_ξ)(λ) - E_n(ξ) φ_ξ(λ)| / max(1, |φ_ξ(λ)|)` over the given
/// `λ` and spectral points.
pub fn eigen_residual(
    xis: &[Vec<f64>],
    lambdas: &[Partition],
    fock: &Fock,
    family: &HlFamily,
) -> Result<VerificationReport> {
    let n = lambdas.first().map_or(0, Partition::len);
    let max_part = lambdas.iter().map(Partition::largest).max().unwrap_or(0);
    let mut report = VerificationReport::float("eigen", n, max_part, EIGEN_TOLERANCE);
    family.prefetch(&crate::hallittlewood::with_neighbors(lambdas))?;
    let rows: Vec<HamiltonianRow> = lambdas
        .iter()
        .map(|l| fock.hamiltonian_row(l))
        .collect::<Result<_>>()?;
    for xi in xis {
        let e = energy(xi);
        let mut phi: BTreeMap<Partition, Complex64> = BTreeMap::new();
        for (lam, row) in lambdas.iter().zip(&rows) {
            for mu in std::iter::once(lam).chain(row.hops.iter().map(|(m, _)| m)) {
                if !phi.contains_key(mu) {
                    phi.insert(mu.clone(), wave_function(xi, mu, family)?);
                }
            }
            let h_phi = row.apply(lam, |mu| phi[mu]);
            let here = phi[lam];
            let r = (h_phi - e * here).norm() / here.norm().max(1.0);
            report.record_float(r, || format!("λ={lam} ξ={xi:?}: {r:e}"));
        }
    }
    Ok(report)
}

/// `s(x) = (1 - q e^{-ix})/(1 - q e^{ix})` and
/// `s_0(x) = Π_r (1 - t_r e^{-ix})/(1 - t_r e^{ix})` over the nonzero `t_r`.
pub fn scattering_factors(x: f64, params: &ParamSet) -> (Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let e = Complex64::from_polar(1.0, x);
    let ratio = |c: f64| (one - c * e.conj()) / (one - c * e);
    let s = ratio(rational::to_f64(params.q()));
    let s0 = params
        .t()
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| ratio(rational::to_f64(t)))
        .product();
    (s, s0)
}

/// `S(ξ) = Π_{j<k} s(ξ_j - ξ_k) s(ξ_j + ξ_k) · Π_j s_0(ξ_j)`.
pub fn scattering_matrix(xi: &[f64], params: &ParamSet) -> Complex64 {
    let s = |x: f64| scattering_factors(x, params).0;
    let mut total = Complex64::new(1.0, 0.0);
    for j in 0..xi.len() {
        for k in j + 1..xi.len() {
            total *= s(xi[j] - xi[k]) * s(xi[j] + xi[k]);
        }
        total *= scattering_factors(xi[j], params).1;
    }
    total
}

/// Documents the broken ultralocality between sites 0 and 1 and its
/// restoration at `t_4 = 0`.
pub fn ultralocality_report(params: &ParamSet, max_n: usize, max_part: u32, max_index: u32) -> Result<VerificationReport> {
    let fock = Fock::new(params.clone());
    let mut report = VerificationReport::exact("ultralocality", max_n, max_part);
    let witness = fock.untwisted_counterexample(max_n, max_part)?;
    let observed = witness.is_some();
    report.expect_failure(ExpectedFailure {
        description: "untwisted β0β1 = β1β0 with four boundary parameters".into(),
        witness,
        observed,
    });
    let restored = Fock::general(params.reduce_to_three()?);
    report.absorb(restored.verify_untwisted(max_n, max_part, max_index)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hallittlewood::HlFamily;
    use crate::rational::{int, rat};
    use std::f64::consts::PI;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn four_fock() -> Fock {
        Fock::new(ParamSet::default_for(Profile::Four))
    }

    #[test]
    fn annihilation_examples() {
        let fock = four_fock();
        let t = fock.params().t_product();
        let f = LatticeFunction::<Rational>::delta(&p(&[0]));
        let b0 = fock.annihilate(0, &f).unwrap();
        assert_eq!(b0.get(&Partition::empty()), int(1) / (int(1) - t));
        let b3 = fock.annihilate(3, &LatticeFunction::<Rational>::delta(&p(&[3]))).unwrap();
        assert_eq!(b3.get(&Partition::empty()), int(1));
        assert!(fock
            .annihilate(0, &LatticeFunction::<Rational>::zero(0))
            .unwrap()
            .is_zero());

        let two = Fock::new(ParamSet::default_for(Profile::Two));
        let g = LatticeFunction::<Rational>::delta(&p(&[1, 0]));
        assert_eq!(two.annihilate(0, &g).unwrap().get(&p(&[1])), int(1));
    }

    #[test]
    fn creation_examples() {
        let fock = four_fock();
        let lam = p(&[3, 3, 1]);
        let f = LatticeFunction::<Rational>::delta(&p(&[3, 1]));
        let c = fock.create(3, &f).unwrap();
        assert_eq!(c.get(&lam), qkernels::q_integer(2, fock.params().q()));

        let ps = ParamSet::default_for(Profile::Two);
        let two = Fock::new(ps.clone());
        let c = two.create(0, &LatticeFunction::<Rational>::delta(&p(&[2, 0]))).unwrap();
        let q = ps.q();
        let expected = qkernels::q_integer(2, q) * (int(1) - ps.t_r(1) * ps.t_r(2) * q);
        assert_eq!(c.get(&p(&[2, 0, 0])), expected);
    }

    #[test]
    fn number_operator_examples() {
        let fock = four_fock();
        let f = LatticeFunction::<Rational>::delta(&p(&[2, 2, 0]));
        assert_eq!(fock.number_op(2, &f).get(&p(&[2, 2, 0])), rat(1, 4));
        assert_eq!(fock.number_op(5, &f), f);
        assert_eq!(
            fock.number_op(0, &fock.number_op(2, &f)),
            fock.number_op(2, &fock.number_op(0, &f))
        );
    }

    #[test]
    fn relation_parsing() {
        assert_eq!(Relation::parse_set("com-d").unwrap(), vec![Relation::D1, Relation::D2]);
        assert_eq!("e2".parse::<Relation>().unwrap(), Relation::E2);
        assert_eq!("com-b".parse::<Relation>().unwrap(), Relation::B);
        assert_eq!(Relation::parse_set("all").unwrap().len(), 8);
        assert!("com-a".parse::<Relation>().is_err());
        assert!(Relation::parse_set("z9").is_err());
    }

    #[test]
    fn every_relation_holds_small() {
        let fock = four_fock();
        for rel in Relation::ALL {
            let r = fock.verify_relation_sweep(rel, 2, 3, 3).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn exchange_needs_twist_at_boundary() {
        let fock = four_fock();
        assert!(fock.untwisted_counterexample(2, 3).unwrap().is_some());
        let report = ultralocality_report(fock.params(), 2, 3, 3).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(matches!(
            fock.relation_sides(Relation::D1, 1, 1, &LatticeFunction::delta(&p(&[1])), true),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduced_profiles_satisfy_all_relations_untwisted() {
        for profile in [Profile::Three, Profile::Two] {
            let fock = Fock::new(ParamSet::default_for(profile));
            assert!(fock.verify_untwisted(2, 3, 3).unwrap().pass);
            assert!(fock.verify_relation_sweep(Relation::B, 2, 3, 2).unwrap().pass);
            assert!(fock.verify_relation_sweep(Relation::C, 2, 3, 2).unwrap().pass);
        }
    }

    #[test]
    fn adjoint_and_symmetry() {
        for profile in [Profile::Four, Profile::Three, Profile::Two] {
            let fock = Fock::new(ParamSet::default_for(profile));
            assert!(fock.verify_adjoint(1, 3, 3).unwrap().pass);
            assert!(fock.verify_symmetry(2, 3).unwrap().pass);
        }
    }

    #[test]
    fn two_parameter_hamiltonian_examples() {
        let ps = ParamSet::default_for(Profile::Two);
        let fock = Fock::new(ps.clone());
        let f = LatticeFunction::<Rational>::delta(&p(&[3]));
        let g = LatticeFunction::<Rational>::delta(&p(&[1]));
        let h = fock.apply_hamiltonian(&f).unwrap();
        assert_eq!(h.get(&p(&[2])), int(1));
        assert_eq!(h.get(&p(&[4])), int(1));
        assert_eq!(h.get(&p(&[3])), int(0));
        let (t1, t2) = (ps.t_r(1), ps.t_r(2));
        let h0 = fock.apply_hamiltonian(&g).unwrap().get(&p(&[0]));
        assert_eq!(h0, int(1) - t1 * t2);
        let d0 = LatticeFunction::<Rational>::delta(&p(&[0]));
        assert_eq!(fock.apply_hamiltonian(&d0).unwrap().get(&p(&[0])), t1 + t2);
    }

    #[test]
    fn bulk_hamiltonian_is_free_hopping() {
        let fock = four_fock();
        let lam = p(&[6, 4, 2]);
        let row = fock.hamiltonian_row(&lam).unwrap();
        assert!(row.potential.is_zero());
        assert_eq!(row.hops.len(), 6);
        assert!(row.hops.iter().all(|(_, v)| v == &int(1)));
    }

    #[test]
    fn operator_assembly_matches_coefficients() {
        for profile in [Profile::Four, Profile::Three, Profile::Two] {
            let fock = Fock::new(ParamSet::default_for(profile));
            for n in 0..=2 {
                assert!(fock.verify_hamiltonian_assembly(n, 3).unwrap().pass);
            }
        }
    }

    #[test]
    fn degeneration_small() {
        let ps = ParamSet::default_for(Profile::Four);
        assert!(verify_degeneration(&ps.reduce_to_three().unwrap(), 2, 3).unwrap().pass);
        assert!(verify_degeneration(&ps.reduce_to_two().unwrap(), 2, 3).unwrap().pass);
        assert!(verify_degeneration(&ps, 1, 1).is_err());
    }

    #[test]
    fn wave_function_examples() {
        let ps = ParamSet::default_for(Profile::Four);
        let family = HlFamily::new(ps.clone());
        let n0 = rational::to_f64(&qkernels::norm(&p(&[0, 0]), &ps).unwrap());
        let v = wave_function(&[0.4, 1.3], &p(&[0, 0]), &family).unwrap();
        assert!((v - 1.0 / n0).norm() < 1e-14);

        let hl = family.get(&p(&[1])).unwrap();
        let constant = rational::to_f64(&hl.coeff(&p(&[0])));
        let n1 = rational::to_f64(hl.norm());
        let v = wave_function(&[PI / 2.0], &p(&[1]), &family).unwrap();
        assert!((v - constant / n1).norm() < 1e-14);

        let xi = [0.7, 2.1];
        let a = wave_function(&xi, &p(&[2, 1]), &family).unwrap();
        let b = wave_function(&[-2.1, 0.7], &p(&[2, 1]), &family).unwrap();
        assert!((a - b).norm() < 1e-12);

        let dump = wave_function_dump(&xi, &[p(&[0, 0]), p(&[1, 0])], &family).unwrap();
        let json = serde_json::to_value(&dump).unwrap();
        assert_eq!(json["values"][1]["lambda"], serde_json::json!([1, 0]));
    }

    #[test]
    fn eigen_single_particle() {
        let ps = ParamSet::default_for(Profile::Four);
        let family = HlFamily::new(ps.clone());
        let fock = Fock::new(ps);
        let lambdas: Vec<_> = (0..=3).map(|k| p(&[k])).collect();
        let r = eigen_residual(&[vec![1.0]], &lambdas, &fock, &family).unwrap();
        let max: f64 = r.max_residual.parse().unwrap();
        assert!(max < 1e-12, "{r:?}");
        assert!(energy(&[PI / 2.0, PI / 2.0]).abs() < 1e-15);
    }

    #[test]
    fn eigen_two_particles() {
        let ps = ParamSet::default_for(Profile::Four);
        let family = HlFamily::new(ps.clone());
        let fock = Fock::new(ps);
        let r = eigen_residual(&[vec![0.7, 2.1]], &enumerate(2, 3), &fock, &family).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn scattering_examples() {
        for profile in [Profile::Four, Profile::Two] {
            let ps = ParamSet::default_for(profile);
            let (s, s0) = scattering_factors(0.0, &ps);
            assert!((s - 1.0).norm() < 1e-15 && (s0 - 1.0).norm() < 1e-15);
            assert!((scattering_factors(PI, &ps).0 - 1.0).norm() < 1e-15);
            for x in [0.3, 1.7, -2.9] {
                let (s, s0) = scattering_factors(x, &ps);
                assert!((s.norm() - 1.0).abs() < 1e-12 && (s0.norm() - 1.0).abs() < 1e-12);
            }
            assert_eq!(scattering_matrix(&[0.9], &ps), scattering_factors(0.9, &ps).1);
        }
    }
}
