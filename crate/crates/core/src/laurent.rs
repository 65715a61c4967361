//! Exact multivariate Laurent polynomials over the rationals.
//!
//! The variable `x_j` stands for `e^{iξ_j}`, so every trigonometric
//! polynomial on the torus is a `LaurentPoly` and `e^{i⟨μ,ξ⟩}` is the monomial
//! `x^μ`. Coefficients are exact; floats only appear in [`LaurentPoly::evaluate`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::partition::{hyperoctahedral_group, SignedPermutation};
use crate::rational::{self, Rational};

pub type Exponent = SmallVec<[i32; 4]>;

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(&vec![0; nvars], c)
    }

    /// `c·x^exp`.
    pub fn monomial(exp: &[i32], c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(Exponent::from_slice(exp), c);
        }
        p
    }

    /// The variable `x_j`.
    pub fn var(nvars: usize, j: usize) -> Self {
        let mut exp = vec![0; nvars];
        exp[j] = 1;
        Self::monomial(&exp, Rational::one())
    }

    /// `1 - c·x^exp`.
    pub fn one_minus(exp: &[i32], c: Rational) -> Self {
        Self::one(exp.len()) - Self::monomial(exp, c)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::Domain(format!(
                    "exponent {exp:?} does not have length {nvars}"
                )));
            }
            p.add_term(Exponent::from_vec(exp), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exp: &[i32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Domain(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut acc: HashMap<Exponent, Rational> =
            HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                *acc.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        Ok(Self::from_map(self.nvars, acc))
    }

    fn from_map(nvars: usize, acc: HashMap<Exponent, Rational>) -> Self {
        LaurentPoly {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| &acc * self)
    }

    /// Componentwise minimum of all exponents (zeros for the zero polynomial).
    pub fn min_exponent(&self) -> Vec<i32> {
        let mut lo: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            match &mut lo {
                None => lo = Some(e.to_vec()),
                Some(lo) => lo.iter_mut().zip(e).for_each(|(l, &x)| *l = (*l).min(x)),
            }
        }
        lo.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Substitutes `x_j ↦ x_{σ_j}^{ε_j}`.
    pub fn apply_w(&self, w: &SignedPermutation) -> Result<Self> {
        if w.len() != self.nvars {
            return Err(Error::Domain(format!(
                "group element of size {} acting on {} variables",
                w.len(),
                self.nvars
            )));
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut img = Exponent::from_elem(0, self.nvars);
                    w.act_exponent_into(e, &mut img);
                    (img, c.clone())
                })
                .collect(),
        })
    }

    /// The raw orbit sum `Σ_{w ∈ W} w·p` (no normalization).
    pub fn symmetrize_w(&self) -> Self {
        let group = hyperoctahedral_group(self.nvars);
        let acc = group
            .par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Exponent, Rational>, w| {
                for (e, c) in &self.terms {
                    let mut img = Exponent::from_elem(0, self.nvars);
                    w.act_exponent_into(e, &mut img);
                    *acc.entry(img).or_insert_with(Rational::zero) += c;
                }
                acc
            })
            .reduce(HashMap::new, merge_maps);
        Self::from_map(self.nvars, acc)
    }

    /// `q` with `q·b = self` exactly.
    ///
    /// Both operands are shifted by monomials into ordinary polynomials
    /// without monomial content, then `b` is divided out with graded-lex
    /// leading terms. A nonzero remainder is reported as
    /// [`Error::NotDivisible`].
    pub fn div_exact(&self, b: &Self) -> Result<Self> {
        self.check_nvars(b)?;
        if b.is_zero() {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let sa = self.min_exponent();
        let sb = b.min_exponent();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let a = self.shift(&neg(&sa));
        let b = b.shift(&neg(&sb));

        let key = |e: &Exponent| (e.iter().map(|&x| i64::from(x)).sum::<i64>(), e.clone());
        let mut rest: BTreeMap<(i64, Exponent), Rational> =
            a.terms.iter().map(|(e, c)| (key(e), c.clone())).collect();
        let (lead_b, lead_c) = b
            .terms
            .iter()
            .max_by(|x, y| key(x.0).cmp(&key(y.0)))
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero divisor");

        let mut quotient = Self::zero(self.nvars);
        let mut remainder = Self::zero(self.nvars);
        while let Some(((_, e), c)) = rest.pop_last() {
            let divisible = e.iter().zip(&lead_b).all(|(x, y)| x >= y);
            if !divisible {
                remainder.add_term(e, c);
                continue;
            }
            let diff: Exponent = e.iter().zip(&lead_b).map(|(x, y)| x - y).collect();
            let factor = &c / &lead_c;
            for (eb, cb) in &b.terms {
                if *eb == lead_b {
                    continue;
                }
                let target: Exponent = eb.iter().zip(&diff).map(|(x, y)| x + y).collect();
                let k = key(&target);
                let v = rest.entry(k.clone()).or_insert_with(Rational::zero);
                *v -= &factor * cb;
                if v.is_zero() {
                    rest.remove(&k);
                }
            }
            quotient.add_term(diff, factor);
        }
        if !remainder.is_zero() {
            return Err(Error::NotDivisible {
                remainder: Box::new(remainder),
            });
        }
        let offset: Vec<i32> = sa.iter().zip(&sb).map(|(a, b)| a - b).collect();
        Ok(quotient.shift(&offset))
    }

    /// Exact division by the binomial `1 - x^beta`.
    ///
    /// Terms are grouped into chains `γ + kβ`; along each chain the quotient
    /// coefficients are the running sums of the dividend, and divisibility
    /// is equivalent to every chain summing to zero.
    pub fn div_one_minus(&self, beta: &[i32]) -> Result<Self> {
        assert_eq!(beta.len(), self.nvars);
        let Some(i) = beta.iter().position(|&b| b != 0) else {
            return Err(Error::Domain("division by 1 - x^0 = 0".into()));
        };
        if beta[i] < 0 {
            // 1 - x^β = -x^β (1 - x^{-β})
            let negb: Vec<i32> = beta.iter().map(|b| -b).collect();
            return Ok(self.div_one_minus(&negb)?.shift(&negb).scale(&-Rational::one()));
        }
        let step = beta[i];
        let mut chains: HashMap<Exponent, Vec<(i32, &Rational)>> = HashMap::new();
        for (e, c) in &self.terms {
            let k = e[i].div_euclid(step);
            let base: Exponent = e.iter().zip(beta).map(|(x, b)| x - k * b).collect();
            chains.entry(base).or_default().push((k, c));
        }
        let mut quotient = Self::zero(self.nvars);
        let mut remainder = Self::zero(self.nvars);
        for (base, mut chain) in chains {
            chain.sort_unstable_by_key(|&(k, _)| k);
            let kmax = chain.last().map(|&(k, _)| k).unwrap();
            let mut running = Rational::zero();
            let mut it = chain.into_iter().peekable();
            let mut k = it.peek().map(|&(k, _)| k).unwrap();
            loop {
                while let Some(&(kk, c)) = it.peek() {
                    if kk != k {
                        break;
                    }
                    running += c;
                    it.next();
                }
                if k == kmax {
                    break;
                }
                if !running.is_zero() {
                    let e: Exponent = base.iter().zip(beta).map(|(x, b)| x + k * b).collect();
                    quotient.add_term(e, running.clone());
                }
                k += 1;
            }
            if !running.is_zero() {
                let e: Exponent = base.iter().zip(beta).map(|(x, b)| x + (kmax + 1) * b).collect();
                remainder.add_term(e, running);
            }
        }
        if !remainder.is_zero() {
            return Err(Error::NotDivisible {
                remainder: Box::new(remainder),
            });
        }
        Ok(quotient)
    }

    /// Numerical value at a point of `(C^*)^n`.
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars {
            return Err(Error::Domain(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut sum = Complex64::zero();
        for (e, c) in &self.terms {
            let mut m = Complex64::new(rational::to_f64(c), 0.0);
            for (&x, &k) in point.iter().zip(e.iter()) {
                if k < 0 && x == Complex64::zero() {
                    return Err(Error::Evaluation(
                        "negative power of a zero coordinate".into(),
                    ));
                }
                m *= x.powi(k);
            }
            sum += m;
        }
        Ok(sum)
    }

    /// Value at `x_j = e^{iξ_j}`.
    pub fn evaluate_torus(&self, xi: &[f64]) -> Result<Complex64> {
        let point: Vec<Complex64> = xi.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        self.evaluate(&point)
    }

    /// Exact value at a rational point.
    pub fn evaluate_exact(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::Domain(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k < 0 && x.is_zero() {
                    return Err(Error::Evaluation(
                        "negative power of a zero coordinate".into(),
                    ));
                }
                m *= rational::pow(x, i64::from(k));
            }
            sum += m;
        }
        Ok(sum)
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational::to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

pub(crate) fn merge_maps(
    mut a: HashMap<Exponent, Rational>,
    b: HashMap<Exponent, Rational>,
) -> HashMap<Exponent, Rational> {
    if a.len() < b.len() {
        return merge_maps(b, a);
    }
    for (e, c) in b {
        *a.entry(e).or_insert_with(Rational::zero) += c;
    }
    a
}

impl LaurentPoly {
    pub(crate) fn from_accumulator(nvars: usize, acc: HashMap<Exponent, Rational>) -> Self {
        Self::from_map(nvars, acc)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    /// Panics on mismatched variable counts; use `checked_add` otherwise.
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("variable count mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·x{}", j + 1)?,
                    _ => write!(f, "·x{}^{}", j + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({self})", self.nvars)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                let c = rational::parse_rational(&format!("{}/{}", t.num, t.den))
                    .map_err(D::Error::custom)?;
                Ok((t.exp, c))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        LaurentPoly::from_terms(raw.nvars, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{hyperoctahedral_generators, hyperoctahedral_group};
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn x(n: usize, j: usize) -> LaurentPoly {
        LaurentPoly::var(n, j)
    }

    fn mono(e: &[i32], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(e, int(c))
    }

    #[test]
    fn ring_examples() {
        let a = &mono(&[1], 1) - &mono(&[-1], 1);
        let b = &mono(&[1], 1) + &mono(&[-1], 1);
        assert_eq!(&a * &b, &mono(&[2], 1) - &mono(&[-2], 1));
        assert_eq!(&a + &LaurentPoly::zero(1), a);
        let lhs = &(&LaurentPoly::one(1) - &x(1, 0))
            * &(&(&LaurentPoly::one(1) + &x(1, 0)) + &mono(&[2], 1));
        assert_eq!(lhs, &LaurentPoly::one(1) - &mono(&[3], 1));
    }

    #[test]
    fn mismatched_variable_counts_are_domain_errors() {
        assert!(matches!(
            x(1, 0).checked_mul(&x(2, 0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exact_division_examples() {
        let one = LaurentPoly::one(1);
        let a = &one - &mono(&[2], 1);
        let b = &one - &x(1, 0);
        assert_eq!(a.div_exact(&b).unwrap(), &one + &x(1, 0));

        let a = &mono(&[2, 0], 1) - &mono(&[0, 2], 1);
        let b = &x(2, 0) - &x(2, 1);
        assert_eq!(a.div_exact(&b).unwrap(), &x(2, 0) + &x(2, 1));

        let a = &one + &x(1, 0);
        assert!(matches!(a.div_exact(&b_one_minus_x()), Err(Error::NotDivisible { .. })));
    }

    fn b_one_minus_x() -> LaurentPoly {
        &LaurentPoly::one(1) - &LaurentPoly::var(1, 0)
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        // (x1 - x1^{-1}) / (1 - x1^{-2}) = x1
        let a = &mono(&[1], 1) - &mono(&[-1], 1);
        let b = &LaurentPoly::one(1) - &mono(&[-2], 1);
        assert_eq!(a.div_exact(&b).unwrap(), x(1, 0));
        assert_eq!(a.div_one_minus(&[-2]).unwrap(), x(1, 0));
    }

    #[test]
    fn binomial_division_matches_general_division() {
        let n = 2;
        let p = &(&mono(&[3, -1], 2) + &mono(&[0, 2], -5)) + &LaurentPoly::constant(n, rat(1, 3));
        for beta in [[1, -1], [1, 1], [2, 0], [0, 2], [-1, 1]] {
            let f = LaurentPoly::one_minus(&beta, int(1));
            let prod = &p * &f;
            assert_eq!(prod.div_one_minus(&beta).unwrap(), p);
            assert_eq!(prod.div_exact(&f).unwrap(), p);
        }
        assert!(matches!(
            p.div_one_minus(&[1, 1]),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn w_action_examples() {
        let p = &x(2, 0) + &x(2, 1);
        assert_eq!(p.apply_w(&SignedPermutation::identity(2)).unwrap(), p);
        assert_eq!(
            p.apply_w(&SignedPermutation::sign_flip(2, 0)).unwrap(),
            &mono(&[-1, 0], 1) + &x(2, 1)
        );
        assert_eq!(
            mono(&[1, -1], 1).apply_w(&SignedPermutation::swap(2, 0, 1)).unwrap(),
            mono(&[-1, 1], 1)
        );
        assert!(p.apply_w(&SignedPermutation::identity(3)).is_err());
    }

    #[test]
    fn symmetrization_examples() {
        assert_eq!(LaurentPoly::one(2).symmetrize_w(), LaurentPoly::constant(2, int(8)));
        assert_eq!(x(1, 0).symmetrize_w(), &x(1, 0) + &mono(&[-1], 1));
        // brute force over the 8 group elements
        let brute = hyperoctahedral_group(2)
            .iter()
            .fold(LaurentPoly::zero(2), |acc, w| &acc + &x(2, 0).apply_w(w).unwrap());
        let expected = (&(&x(2, 0) + &mono(&[-1, 0], 1)) + &(&x(2, 1) + &mono(&[0, -1], 1)))
            .scale(&int(2));
        assert_eq!(brute, expected);
        assert_eq!(x(2, 0).symmetrize_w(), expected);
    }

    #[test]
    fn evaluation_examples() {
        let p = &x(1, 0) + &mono(&[-1], 1);
        let v = p.evaluate_torus(&[std::f64::consts::FRAC_PI_2]).unwrap();
        assert!(v.norm() < 1e-15);
        assert_eq!(
            LaurentPoly::one(2)
                .evaluate(&[Complex64::new(0.3, 2.0), Complex64::new(-1.0, 0.5)])
                .unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert_eq!(p.evaluate_exact(&[int(2)]).unwrap(), rat(5, 2));
        assert!(matches!(
            p.evaluate(&[Complex64::zero()]),
            Err(Error::Evaluation(_))
        ));
        assert!(matches!(p.evaluate_exact(&[int(0)]), Err(Error::Evaluation(_))));
    }

    #[test]
    fn json_round_trip_shape() {
        let p = &mono(&[2, -1], 3) + &LaurentPoly::constant(2, rat(-1, 7));
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.starts_with("{\"nvars\":2,\"terms\":["));
        assert!(s.contains("\"num\":\"-1\",\"den\":\"7\""));
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    fn small_poly(n: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(
            (prop::collection::vec(-3i32..=3, n), -5i64..=5, 1i64..=4),
            0..=max_terms,
        )
        .prop_map(move |ts| {
            LaurentPoly::from_terms(n, ts.into_iter().map(|(e, a, b)| (e, rat(a, b)))).unwrap()
        })
    }

    fn poly_triple() -> impl Strategy<Value = (LaurentPoly, LaurentPoly, LaurentPoly)> {
        (1usize..=3).prop_flat_map(|n| (small_poly(n, 3), small_poly(n, 3), small_poly(n, 3)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in poly_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn division_inverts_multiplication(a in small_poly(2, 4), b in small_poly(2, 4)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn w_action_is_multiplicative(a in small_poly(2, 3), b in small_poly(2, 3)) {
            for w in hyperoctahedral_group(2) {
                prop_assert_eq!(
                    (&a * &b).apply_w(&w).unwrap(),
                    &a.apply_w(&w).unwrap() * &b.apply_w(&w).unwrap()
                );
            }
        }

        #[test]
        fn symmetrization_is_invariant(a in (1usize..=3).prop_flat_map(|n| small_poly(n, 3))) {
            let s = a.symmetrize_w();
            for g in hyperoctahedral_generators(a.nvars()) {
                prop_assert_eq!(&s.apply_w(&g).unwrap(), &s);
            }
        }
    }
}
