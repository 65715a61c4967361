//! Scalar coefficient formulas: q-shifted factorials, norms, normalizers,
//! Pieri coefficients, hopping amplitudes and the boundary potential.
//!
//! Every formula is evaluated in exact rational arithmetic at a specialized
//! [`ParamSet`]. Denominators go through [`guarded_div`], so a parameter point
//! on a singular locus surfaces as [`Error::Genericity`] instead of a panic.
//!
//! The reduced formulas for the three- and two-parameter boundary live in
//! [`three`] and [`two`]; [`four`] holds the general ones, which are valid for
//! any `t` (zeros included). The top-level functions dispatch on the profile.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{self, int, rat, Rational};

/// Which boundary couplings are switched on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// All four `t_r` nonzero.
    Four,
    /// `t_4 = 0`.
    Three,
    /// `t_3 = t_4 = 0`.
    Two,
}

impl Profile {
    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Four => "four",
            Profile::Three => "three",
            Profile::Two => "two",
        }
    }

    fn active(self) -> usize {
        match self {
            Profile::Four => 4,
            Profile::Three => 3,
            Profile::Two => 2,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "four" | "four-param" | "4" => Ok(Profile::Four),
            "three" | "three-param" | "3" => Ok(Profile::Three),
            "two" | "two-param" | "2" => Ok(Profile::Two),
            _ => Err(Error::Parse(format!("unknown profile {s:?}"))),
        }
    }
}

/// Default sector bounds used by [`ParamSet::new`] for the eager genericity
/// check.
pub const DEFAULT_MAX_N: usize = 4;
pub const DEFAULT_MAX_PART: u32 = 6;

/// Exact values of `q` and `t_1..t_4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    q: Rational,
    t: [Rational; 4],
    profile: Profile,
}

impl ParamSet {
    /// Validates the domain `0 < q < 1`, `-1 < t_r < 1`, the zero pattern of
    /// the profile, and genericity for sectors up to
    /// `n = DEFAULT_MAX_N`, parts up to `DEFAULT_MAX_PART`.
    pub fn new(q: Rational, t: [Rational; 4], profile: Profile) -> Result<Self> {
        Self::with_horizon(q, t, profile, DEFAULT_MAX_N, DEFAULT_MAX_PART)
    }

    pub fn with_horizon(
        q: Rational,
        t: [Rational; 4],
        profile: Profile,
        max_n: usize,
        max_part: u32,
    ) -> Result<Self> {
        if !(q > Rational::zero() && q < Rational::one()) {
            return Err(Error::Domain(format!("q = {q} is outside (0, 1)")));
        }
        for (r, tr) in t.iter().enumerate() {
            if tr.abs() >= Rational::one() {
                return Err(Error::Domain(format!("t{} = {tr} is outside (-1, 1)", r + 1)));
            }
            let should_vanish = r >= profile.active();
            if should_vanish != tr.is_zero() {
                return Err(Error::Domain(format!(
                    "profile {profile} requires t{} {} 0, got {tr}",
                    r + 1,
                    if should_vanish { "=" } else { "≠" }
                )));
            }
        }
        let p = ParamSet { q, t, profile };
        p.ensure_generic(max_n, max_part)?;
        Ok(p)
    }

    /// Parses `q` and `t_1..t_4` from `"p/q"` strings.
    pub fn parse(q: &str, t: [&str; 4], profile: Profile) -> Result<Self> {
        let q = rational::parse_rational(q)?;
        let t = [
            rational::parse_rational(t[0])?,
            rational::parse_rational(t[1])?,
            rational::parse_rational(t[2])?,
            rational::parse_rational(t[3])?,
        ];
        Self::new(q, t, profile)
    }

    /// `q = 1/2`, `t = (1/3, -1/4, 1/5, -1/6)`, truncated to the profile.
    pub fn default_for(profile: Profile) -> Self {
        let mut t = [rat(1, 3), rat(-1, 4), rat(1, 5), rat(-1, 6)];
        for tr in t.iter_mut().skip(profile.active()) {
            *tr = Rational::zero();
        }
        Self::new(rat(1, 2), t, profile).expect("default parameters are generic")
    }

    /// Three generic rational points, the default first, used to sample
    /// identities in the parameters at more than one point. The last one has
    /// `t_1 < 0`.
    pub fn samples(profile: Profile) -> Vec<Self> {
        let raw = [
            (rat(1, 2), [rat(1, 3), rat(-1, 4), rat(1, 5), rat(-1, 6)]),
            (rat(1, 3), [rat(2, 5), rat(-1, 2), rat(1, 4), rat(3, 7)]),
            (rat(3, 5), [rat(-1, 3), rat(1, 2), rat(-2, 7), rat(1, 6)]),
        ];
        raw.into_iter()
            .map(|(q, mut t)| {
                for tr in t.iter_mut().skip(profile.active()) {
                    *tr = Rational::zero();
                }
                Self::new(q, t, profile).expect("sample parameters are generic")
            })
            .collect()
    }

    /// Same `q, t_1, t_2, t_3` with `t_4 = 0`.
    pub fn reduce_to_three(&self) -> Result<Self> {
        let mut t = self.t.clone();
        t[3] = Rational::zero();
        Self::new(self.q.clone(), t, Profile::Three)
    }

    /// Same `q, t_1, t_2` with `t_3 = t_4 = 0`.
    pub fn reduce_to_two(&self) -> Result<Self> {
        let mut t = self.t.clone();
        t[2] = Rational::zero();
        t[3] = Rational::zero();
        Self::new(self.q.clone(), t, Profile::Two)
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn t(&self) -> &[Rational; 4] {
        &self.t
    }

    /// `t_r` with 1-based `r`.
    pub fn t_r(&self, r: usize) -> &Rational {
        &self.t[r - 1]
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    /// `t = t_1 t_2 t_3 t_4`.
    pub fn t_product(&self) -> Rational {
        self.t.iter().product()
    }

    pub fn q_pow(&self, k: i64) -> Rational {
        rational::pow(&self.q, k)
    }

    /// `τ_j = q^{n-j} t_1` for `j = 1..n`, returned 0-based.
    pub fn tau(&self, n: usize) -> Vec<Rational> {
        (1..=n)
            .map(|j| self.q_pow((n - j) as i64) * self.t_r(1))
            .collect()
    }

    /// Largest denominator exponent checked for sectors up to `(max_n, max_part)`.
    pub fn guard_horizon(max_n: usize, max_part: u32) -> i64 {
        2 * max_n as i64 + i64::from(max_part) + 3
    }

    /// Rejects parameter points where `t = q^m` or `t_r t_s = q^m` for some
    /// `1 ≤ m ≤ guard_horizon`; these are the loci where the denominators of
    /// the norms, the boundary-site operators and the boundary potential can
    /// vanish at the given sector sizes.
    pub fn ensure_generic(&self, max_n: usize, max_part: u32) -> Result<()> {
        if self.t[0].is_zero() {
            return Err(Error::Genericity("t1 must be nonzero".into()));
        }
        let horizon = Self::guard_horizon(max_n, max_part);
        let t = self.t_product();
        for m in 1..=horizon {
            let qm = self.q_pow(m);
            if t == qm {
                return Err(Error::Genericity(format!("t = q^{m}")));
            }
            for r in 0..4 {
                for s in r + 1..4 {
                    if &self.t[r] * &self.t[s] == qm {
                        return Err(Error::Genericity(format!("t{}·t{} = q^{m}", r + 1, s + 1)));
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={}, t=({}, {}, {}, {}) [{}]",
            self.q, self.t[0], self.t[1], self.t[2], self.t[3], self.profile
        )
    }
}

#[derive(Serialize, Deserialize)]
struct ParamJson {
    q: String,
    t: [String; 4],
    profile: String,
}

impl Serialize for ParamSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ParamJson {
            q: self.q.to_string(),
            t: self.t.clone().map(|x| x.to_string()),
            profile: self.profile.as_str().to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ParamJson::deserialize(deserializer)?;
        let profile = raw.profile.parse().map_err(D::Error::custom)?;
        let [a, b, c, d] = &raw.t;
        ParamSet::parse(&raw.q, [a, b, c, d], profile).map_err(D::Error::custom)
    }
}

/// Divides, reporting a vanishing denominator as a genericity failure.
pub fn guarded_div(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::Genericity(format!("denominator {what} vanishes")));
    }
    Ok(num / den)
}

/// `(x)_m = (1 - x)(1 - xq)···(1 - xq^{m-1})`, with `(x)_0 = 1`.
pub fn q_pochhammer(x: &Rational, m: usize, q: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut xk = x.clone();
    for _ in 0..m {
        acc *= Rational::one() - &xk;
        xk *= q;
    }
    acc
}

/// `[m] = (1 - q^m)/(1 - q)`.
pub fn q_integer(m: usize, q: &Rational) -> Rational {
    // 1 + q + ... + q^{m-1}; equal to the quotient for q ≠ 1
    let mut acc = Rational::zero();
    let mut qk = Rational::one();
    for _ in 0..m {
        acc += &qk;
        qk *= q;
    }
    acc
}

/// Unit step direction `λ ± e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

fn step_target(lambda: &Partition, j: usize, dir: Step) -> Result<Partition> {
    match dir {
        Step::Up => lambda.raise(j),
        Step::Down => lambda.lower(j),
    }
    .ok_or_else(|| {
        Error::Precondition(format!(
            "{lambda} {} e_{} is not a partition",
            if dir == Step::Up { "+" } else { "-" },
            j + 1
        ))
    })
}

fn prod_qm(lambda: &Partition, q: &Rational) -> Rational {
    lambda
        .multiplicities()
        .iter()
        .map(|&(_, m)| q_pochhammer(q, m, q))
        .product()
}

fn pairs(from: usize) -> impl Iterator<Item = (usize, usize)> {
    (from..=4).flat_map(move |r| (r + 1..=4).map(move |s| (r, s)))
}

/// `1 - t q^k`.
fn one_minus_tq(p: &ParamSet, k: i64) -> Rational {
    Rational::one() - p.t_product() * p.q_pow(k)
}

/// `h`-factor `τ_1^{λ_1}···τ_n^{λ_n}`.
fn tau_power(lambda: &Partition, p: &ParamSet) -> Rational {
    p.tau(lambda.len())
        .iter()
        .zip(lambda.parts())
        .map(|(tau, &l)| rational::pow(tau, i64::from(l)))
        .product()
}

/// General formulas; valid for arbitrary `t_r` including zeros.
pub mod four {
    use super::*;

    /// Squared norm `N_λ` of `p_λ`.
    pub fn norm(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
        let n = lambda.len();
        let (m0, m1) = (lambda.m0(), lambda.m1());
        let q = p.q();
        let t = p.t_product();
        let num = rational::pow(&(Rational::one() - q), n as i64)
            * q_pochhammer(&(&t * p.q_pow(m0 as i64 - 1)), m0, q);
        let mut den = q_pochhammer(&(&t * p.q_pow(2 * m0 as i64)), m1, q) * prod_qm(lambda, q);
        for (r, s) in pairs(1) {
            den *= q_pochhammer(&(p.t_r(r) * p.t_r(s)), m0, q);
        }
        guarded_div(num, den, "of N_λ")
    }

    /// Creation amplitude `[m_l(λ)]·(boundary factors)` for `λ ∈ Λ_{n+1}` with
    /// `m_l(λ) > 0`; zero otherwise.
    pub fn creation(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
        let ml = lambda.multiplicity(l);
        if ml == 0 {
            return Ok(Rational::zero());
        }
        let mut c = q_integer(ml, p.q());
        let (m0, m1) = (lambda.m0() as i64, lambda.m1() as i64);
        if l <= 1 {
            c *= one_minus_tq(p, 2 * m0 + m1 - 1);
        }
        if l == 0 {
            c *= boundary_bracket(m0, p)?;
        }
        Ok(c)
    }

    /// `(1 - t q^{m0-2}) Π_{r<s}(1 - t_r t_s q^{m0-1})
    ///  / ((1 - t q^{2m0-3})(1 - t q^{2m0-2})^2 (1 - t q^{2m0-1}))`.
    pub(crate) fn boundary_bracket(m0: i64, p: &ParamSet) -> Result<Rational> {
        let mut num = one_minus_tq(p, m0 - 2);
        for (r, s) in pairs(1) {
            num *= Rational::one() - p.t_r(r) * p.t_r(s) * p.q_pow(m0 - 1);
        }
        let den = one_minus_tq(p, 2 * m0 - 3)
            * one_minus_tq(p, 2 * m0 - 2)
            * one_minus_tq(p, 2 * m0 - 2)
            * one_minus_tq(p, 2 * m0 - 1);
        guarded_div(num, den, "of the boundary creation factor")
    }

    /// Multiplier applied by `β_l` at `λ ∈ Λ_{n-1}`:
    /// `1/(1 - t q^{2m0(λ)+m1(λ)})^{δ_l}`.
    pub fn annihilation(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
        if l != 0 {
            return Ok(Rational::one());
        }
        let k = 2 * lambda.m0() as i64 + lambda.m1() as i64;
        guarded_div(Rational::one(), one_minus_tq(p, k), "of the annihilation factor")
    }

    /// Hopping amplitude `v_j^±(λ)`.
    pub fn hamiltonian_v(lambda: &Partition, j: usize, dir: Step, p: &ParamSet) -> Result<Rational> {
        step_target(lambda, j, dir)?;
        let lj = lambda.parts()[j];
        let base = q_integer(lambda.multiplicity(lj), p.q());
        if dir == Step::Down {
            return Ok(base);
        }
        let (m0, m1) = (lambda.m0() as i64, lambda.m1() as i64);
        let mut v = base;
        if lj <= 1 {
            v *= one_minus_tq(p, 2 * m0 + m1 - 1);
        }
        if lj == 0 {
            v *= boundary_bracket(m0, p)?;
        }
        Ok(v)
    }

    /// `V(q^{m0}, q^{m1})` for the general boundary potential.
    pub fn boundary_potential(m0: usize, m1: usize, p: &ParamSet) -> Result<Rational> {
        let one = Rational::one();
        let q = p.q();
        let t = p.t_product();
        let t1 = p.t_r(1);
        let n0 = p.q_pow(m0 as i64);
        let n1 = p.q_pow(m1 as i64);
        let qinv = p.q_pow(-1);

        let mut inner_a = &one - &qinv * &t * &n0;
        for (r, s) in pairs(2) {
            inner_a *= &one - p.t_r(r) * p.t_r(s) * &n0;
        }
        let den_a = (&one - &t * &n0 * &n0) * (&one - &qinv * &t * &n0 * &n0);
        let frac_a = guarded_div(inner_a, den_a, "(1 - tN0²)(1 - q⁻¹tN0²)")?;
        let a = guarded_div(&t * &n0, t1.clone(), "t1")? + t1 * &n0 * (&one - frac_a);

        let mut inner_b = &one - &qinv * &t * &n0 * &n0 * &n1;
        for r in 2..=4 {
            inner_b *= &one - &qinv * t1 * p.t_r(r) * &n0;
        }
        let den_b = (&one - &qinv * &qinv * &t * &n0 * &n0) * (&one - &qinv * &t * &n0 * &n0);
        let frac_b = guarded_div(inner_b, den_b, "(1 - q⁻²tN0²)(1 - q⁻¹tN0²)")?;
        let b = t1 + guarded_div(q.clone(), t1 * &n0, "t1 N0")? * (&one - frac_b);

        let bracket = |nk: &Rational| (&one - nk) / (&one - q);
        Ok(a * bracket(&n1) + b * bracket(&n0))
    }
}

/// Reduced formulas at `t_4 = 0`.
pub mod three {
    use super::*;

    fn pair_products(p: &ParamSet) -> [Rational; 3] {
        [p.t_r(1) * p.t_r(2), p.t_r(1) * p.t_r(3), p.t_r(2) * p.t_r(3)]
    }

    pub fn norm(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
        let q = p.q();
        let num = rational::pow(&(Rational::one() - q), lambda.len() as i64);
        let den: Rational = pair_products(p)
            .iter()
            .map(|tt| q_pochhammer(tt, lambda.m0(), q))
            .product::<Rational>()
            * prod_qm(lambda, q);
        guarded_div(num, den, "of the three-parameter N_λ")
    }

    fn boundary_factor(m0: i64, p: &ParamSet) -> Rational {
        pair_products(p)
            .iter()
            .map(|tt| Rational::one() - tt * p.q_pow(m0 - 1))
            .product()
    }

    pub fn creation(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
        let ml = lambda.multiplicity(l);
        if ml == 0 {
            return Ok(Rational::zero());
        }
        let mut c = q_integer(ml, p.q());
        if l == 0 {
            c *= boundary_factor(lambda.m0() as i64, p);
        }
        Ok(c)
    }

    pub fn annihilation(_lambda: &Partition, _l: u32, _p: &ParamSet) -> Result<Rational> {
        Ok(Rational::one())
    }

    pub fn hamiltonian_v(lambda: &Partition, j: usize, dir: Step, p: &ParamSet) -> Result<Rational> {
        step_target(lambda, j, dir)?;
        let lj = lambda.parts()[j];
        let mut v = q_integer(lambda.multiplicity(lj), p.q());
        if dir == Step::Up && lj == 0 {
            v *= boundary_factor(lambda.m0() as i64, p);
        }
        Ok(v)
    }

    /// `(t1 + t2 + t3 - q⁻¹t1t2t3 N0)[m0] + t1t2t3 N0² [m1]`.
    pub fn boundary_potential(m0: usize, m1: usize, p: &ParamSet) -> Result<Rational> {
        let q = p.q();
        let e3 = p.t_r(1) * p.t_r(2) * p.t_r(3);
        let e1 = p.t_r(1) + p.t_r(2) + p.t_r(3);
        let n0 = p.q_pow(m0 as i64);
        Ok((e1 - p.q_pow(-1) * &e3 * &n0) * q_integer(m0, q)
            + e3 * &n0 * &n0 * q_integer(m1, q))
    }
}

/// Reduced formulas at `t_3 = t_4 = 0`.
pub mod two {
    use super::*;

    /// `(1 - q)^n / ((t1t2)_{m0} Π_l (q)_{m_l})`.
    pub fn norm(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
        let q = p.q();
        let num = rational::pow(&(Rational::one() - q), lambda.len() as i64);
        let den = q_pochhammer(&(p.t_r(1) * p.t_r(2)), lambda.m0(), q) * prod_qm(lambda, q);
        guarded_div(num, den, "of the two-parameter N_λ")
    }

    pub fn creation(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
        let ml = lambda.multiplicity(l);
        if ml == 0 {
            return Ok(Rational::zero());
        }
        let mut c = q_integer(ml, p.q());
        if l == 0 {
            c *= Rational::one() - p.t_r(1) * p.t_r(2) * p.q_pow(lambda.m0() as i64 - 1);
        }
        Ok(c)
    }

    pub fn annihilation(_lambda: &Partition, _l: u32, _p: &ParamSet) -> Result<Rational> {
        Ok(Rational::one())
    }

    pub fn hamiltonian_v(lambda: &Partition, j: usize, dir: Step, p: &ParamSet) -> Result<Rational> {
        step_target(lambda, j, dir)?;
        let lj = lambda.parts()[j];
        let mut v = q_integer(lambda.multiplicity(lj), p.q());
        if dir == Step::Up && lj == 0 {
            v *= Rational::one() - p.t_r(1) * p.t_r(2) * p.q_pow(lambda.m0() as i64 - 1);
        }
        Ok(v)
    }

    /// `(t1 + t2)[m0]`.
    pub fn boundary_potential(m0: usize, _m1: usize, p: &ParamSet) -> Result<Rational> {
        Ok((p.t_r(1) + p.t_r(2)) * q_integer(m0, p.q()))
    }
}

macro_rules! dispatch {
    ($p:expr, $f:ident($($arg:expr),*)) => {
        match $p.profile() {
            Profile::Four => four::$f($($arg),*),
            Profile::Three => three::$f($($arg),*),
            Profile::Two => two::$f($($arg),*),
        }
    };
}

/// `N_λ` using the formula of the parameter profile.
pub fn norm(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
    dispatch!(p, norm(lambda, p))
}

/// Amplitude of `β_l^*` landing on `λ ∈ Λ_{n+1}`.
pub fn creation_factor(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
    dispatch!(p, creation(lambda, l, p))
}

/// Multiplier of `β_l` at `λ ∈ Λ_{n-1}`.
pub fn annihilation_factor(lambda: &Partition, l: u32, p: &ParamSet) -> Result<Rational> {
    dispatch!(p, annihilation(lambda, l, p))
}

/// `v_j^±(λ)`, `j` 0-based.
pub fn hamiltonian_v(lambda: &Partition, j: usize, dir: Step, p: &ParamSet) -> Result<Rational> {
    dispatch!(p, hamiltonian_v(lambda, j, dir, p))
}

/// `V(q^{m0}, q^{m1})`.
pub fn boundary_potential(m0: usize, m1: usize, p: &ParamSet) -> Result<Rational> {
    dispatch!(p, boundary_potential(m0, m1, p))
}

/// Monic normalizer
/// `n_λ = (1-q)^{-n} (-1)_{m0} (t q^{2m0})_{m1} Π_l (q)_{m_l}`.
pub fn n_monic(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
    let q = p.q();
    let m0 = lambda.m0();
    let num = q_pochhammer(&int(-1), m0, q)
        * q_pochhammer(&(p.t_product() * p.q_pow(2 * m0 as i64)), lambda.m1(), q)
        * prod_qm(lambda, q);
    guarded_div(
        num,
        rational::pow(&(Rational::one() - q), lambda.len() as i64),
        "(1-q)^n",
    )
}

/// `c_λ`, the scale turning `p_λ` into `P_λ` with `P_λ(τ) = 1`.
pub fn c_lambda(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
    let n = lambda.len();
    let q = p.q();
    let m0 = lambda.m0();
    let num = tau_power(lambda, p)
        * q_pochhammer(&(p.t_product() * p.q_pow(2 * m0 as i64)), lambda.m1(), q)
        * prod_qm(lambda, q);
    let mut den = q_pochhammer(q, n, q);
    for r in 2..=4 {
        den *= q_pochhammer(&(p.t_r(1) * p.t_r(r) * p.q_pow(m0 as i64)), n - m0, q);
    }
    guarded_div(num, den, "of c_λ")
}

/// Closed form of `h_λ = c_λ N_λ`:
/// `τ^λ (t q^{m0-1})_{m0} Π_{1<r<s}(t_r t_s q^{m0})_{n-m0} / (t q^{n-1})_n · N_0`.
pub fn h_lambda(lambda: &Partition, p: &ParamSet) -> Result<Rational> {
    let n = lambda.len();
    let q = p.q();
    let t = p.t_product();
    let m0 = lambda.m0();
    let mut num = tau_power(lambda, p) * q_pochhammer(&(&t * p.q_pow(m0 as i64 - 1)), m0, q);
    for (r, s) in pairs(2) {
        num *= q_pochhammer(&(p.t_r(r) * p.t_r(s) * p.q_pow(m0 as i64)), n - m0, q);
    }
    let den = q_pochhammer(&(&t * p.q_pow(n as i64 - 1)), n, q);
    Ok(guarded_div(num, den, "(t q^{n-1})_n")? * four::norm(&Partition::zero(n), p)?)
}

/// Pieri coefficient `V_j^±(λ)`, `j` 0-based.
pub fn pieri_v(lambda: &Partition, j: usize, dir: Step, p: &ParamSet) -> Result<Rational> {
    step_target(lambda, j, dir)?;
    let n = lambda.len();
    let tau = &p.tau(n)[j];
    let lj = lambda.parts()[j];
    let ml = q_integer(lambda.multiplicity(lj), p.q());
    let (m0, m1) = (lambda.m0() as i64, lambda.m1() as i64);
    let one = Rational::one();
    match dir {
        Step::Up => {
            let mut v = guarded_div(ml, tau.clone(), "τ_j")?;
            if lj <= 1 {
                v *= one_minus_tq(p, 2 * m0 + m1 - 1);
            }
            if lj == 0 {
                let mut num = one.clone();
                for r in 2..=4 {
                    num *= &one - p.t_r(1) * p.t_r(r) * p.q_pow(m0 - 1);
                }
                let den = one_minus_tq(p, 2 * m0 - 2) * one_minus_tq(p, 2 * m0 - 1);
                v *= guarded_div(num, den, "(1 - tq^{2m0-2})(1 - tq^{2m0-1})")?;
            }
            Ok(v)
        }
        Step::Down => {
            let mut v = tau * ml;
            if lj == 1 {
                let mut num = one_minus_tq(p, m0 - 1);
                for (r, s) in pairs(2) {
                    num *= &one - p.t_r(r) * p.t_r(s) * p.q_pow(m0);
                }
                let den = one_minus_tq(p, 2 * m0 - 1) * one_minus_tq(p, 2 * m0);
                v *= guarded_div(num, den, "(1 - tq^{2m0-1})(1 - tq^{2m0})")?;
            }
            Ok(v)
        }
    }
}

/// All valid unit steps `(j, λ ± e_j)` of a partition.
pub fn unit_steps(lambda: &Partition, dir: Step) -> Vec<(usize, Partition)> {
    (0..lambda.len())
        .filter_map(|j| {
            match dir {
                Step::Up => lambda.raise(j),
                Step::Down => lambda.lower(j),
            }
            .map(|mu| (j, mu))
        })
        .collect()
}
