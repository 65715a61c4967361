//! Partitions of fixed length, the hyperoctahedral dominance order and the
//! signed-permutation group acting on exponent vectors.
//!
//! A partition of length `n` doubles as the position vector of `n` particles
//! on the half-line: `addPart`/`removePart` realize the particle creation and
//! annihilation maps on states.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Weakly decreasing vector of nonnegative integers. The empty vector is the
/// unique partition of length zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the given parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn zero(n: usize) -> Self {
        Partition(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// Number of parts equal to `l`; zero for every `l` on the empty partition.
    pub fn multiplicity(&self, l: u32) -> usize {
        self.0.iter().filter(|&&p| p == l).count()
    }

    pub fn m0(&self) -> usize {
        self.multiplicity(0)
    }

    pub fn m1(&self) -> usize {
        self.multiplicity(1)
    }

    /// Every distinct part with its multiplicity, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        self.0
            .iter()
            .copied()
            .dedup_with_count()
            .map(|(c, p)| (p, c))
            .collect()
    }

    /// `true` iff `self ≤ other` in the hyperoctahedral dominance order:
    /// every partial sum of `self` is bounded by the matching partial sum of
    /// `other`. No equal-degree requirement.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::Domain(format!(
                "cannot compare partitions of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        let mut a = 0u64;
        let mut b = 0u64;
        for (&x, &y) in self.0.iter().zip(&other.0) {
            a += u64::from(x);
            b += u64::from(y);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All partitions `μ ≤ self`, including `self`, in enumeration order.
    pub fn lower_set(&self) -> Vec<Partition> {
        enumerate(self.len(), self.largest())
            .into_iter()
            .filter(|mu| mu.dominated_by(self).expect("equal lengths"))
            .collect()
    }

    /// The `W`-orbit of `self` viewed as an exponent vector, sorted and
    /// without repetitions.
    pub fn orbit(&self) -> Vec<Vec<i32>> {
        let base: Vec<i32> = self.0.iter().map(|&p| p as i32).collect();
        let mut out = BTreeSet::new();
        // Distinct arrangements of the parts, then every sign choice on the
        // nonzero entries.
        for arrangement in base.iter().copied().permutations(base.len()).unique() {
            let nonzero: Vec<usize> = (0..arrangement.len())
                .filter(|&i| arrangement[i] != 0)
                .collect();
            for mask in 0u32..(1 << nonzero.len()) {
                let mut v = arrangement.clone();
                for (bit, &i) in nonzero.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        v[i] = -v[i];
                    }
                }
                out.insert(v);
            }
        }
        out.into_iter().collect()
    }

    /// Inserts a part of size `l` (the state reached by creating a particle at
    /// site `l`).
    pub fn add_part(&self, l: u32) -> Partition {
        let pos = self.0.partition_point(|&p| p > l);
        let mut parts = self.0.clone();
        parts.insert(pos, l);
        Partition(parts)
    }

    /// Discards one part of size `l`.
    pub fn remove_part(&self, l: u32) -> Result<Partition> {
        let pos = self.0.iter().position(|&p| p == l).ok_or_else(|| {
            Error::Precondition(format!("partition {self} has no part equal to {l}"))
        })?;
        let mut parts = self.0.clone();
        parts.remove(pos);
        Ok(Partition(parts))
    }

    /// `self + e_j` if it is again a partition.
    pub fn raise(&self, j: usize) -> Option<Partition> {
        if j >= self.len() || (j > 0 && self.0[j - 1] == self.0[j]) {
            return None;
        }
        let mut parts = self.0.clone();
        parts[j] += 1;
        Some(Partition(parts))
    }

    /// `self - e_j` if it is again a partition.
    pub fn lower(&self, j: usize) -> Option<Partition> {
        if j >= self.len() || self.0[j] == 0 || (j + 1 < self.len() && self.0[j + 1] == self.0[j])
        {
            return None;
        }
        let mut parts = self.0.clone();
        parts[j] -= 1;
        Some(Partition(parts))
    }

    pub fn as_exponent(&self) -> Vec<i32> {
        self.0.iter().map(|&p| p as i32).collect()
    }

    /// Reads an exponent vector back as a partition, if it is one.
    pub fn from_exponent(exp: &[i32]) -> Option<Partition> {
        if exp.iter().any(|&e| e < 0) || exp.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        Some(Partition(exp.iter().map(|&e| e as u32).collect()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Comma separated parts, e.g. `2,1,0`; the empty string is `∅`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of length `n` with largest part at most `max_part`, in
/// graded lexicographic order (total size first, then lexicographic).
pub fn enumerate(n: usize, max_part: u32) -> Vec<Partition> {
    fn rec(n: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if prefix.len() == n {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in 0..=cap {
            prefix.push(p);
            rec(n, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// An element `w = (σ, ε)` of the hyperoctahedral group, acting on
/// `ξ ∈ R^n` by `(wξ)_j = ε_j ξ_{σ_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Domain(format!("{perm:?} is not a permutation")));
            }
        }
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain(format!("bad sign vector {signs:?}")));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// Flips the sign of coordinate `j`.
    pub fn sign_flip(n: usize, j: usize) -> Self {
        let mut w = Self::identity(n);
        w.signs[j] = -1;
        w
    }

    /// Transposes coordinates `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut w = Self::identity(n);
        w.perm.swap(i, j);
        w
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `wξ` for a real point.
    pub fn act_point(&self, xi: &[f64]) -> Vec<f64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| f64::from(s) * xi[p])
            .collect()
    }

    /// Image of the exponent vector `α` under the variable substitution
    /// `x_j ↦ x_{σ_j}^{ε_j}`: entry `σ_j` of the result is `ε_j α_j`.
    pub fn act_exponent(&self, alpha: &[i32]) -> Vec<i32> {
        let mut out = vec![0; alpha.len()];
        self.act_exponent_into(alpha, &mut out);
        out
    }

    pub fn act_exponent_into(&self, alpha: &[i32], out: &mut [i32]) {
        for j in 0..alpha.len() {
            out[self.perm[j]] = i32::from(self.signs[j]) * alpha[j];
        }
    }
}

/// The full group of `2^n n!` signed permutations, in a fixed order.
pub fn hyperoctahedral_group(n: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::with_capacity(group_order(n));
    for perm in (0..n).permutations(n) {
        for mask in 0u32..(1 << n) {
            let signs = (0..n)
                .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(SignedPermutation {
                perm: perm.clone(),
                signs,
            });
        }
    }
    out
}

/// Generators of the group: adjacent transpositions and the last sign flip.
pub fn hyperoctahedral_generators(n: usize) -> Vec<SignedPermutation> {
    let mut gens: Vec<_> = (0..n.saturating_sub(1))
        .map(|i| SignedPermutation::swap(n, i, i + 1))
        .collect();
    if n > 0 {
        gens.push(SignedPermutation::sign_flip(n, n - 1));
    }
    gens
}

pub fn group_order(n: usize) -> usize {
    (1..=n).product::<usize>() << n
}
