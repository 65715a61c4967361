//! The orthogonality weight `Δ(ξ)` and trapezoidal inner products on the
//! torus `T_n = [0, 2π)^n`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::partition::group_order;
use crate::qkernels::ParamSet;
use crate::rational;

/// Nodes per block in the fixed-shape reduction.
const CHUNK: usize = 1024;

/// Tensor trapezoid rule with `M` equispaced nodes per dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    n: usize,
    points: usize,
}

impl QuadratureSpec {
    pub fn new(n: usize, points: usize) -> Result<Self> {
        if points < 4 {
            return Err(Error::Domain(format!("need at least 4 points per dimension, got {points}")));
        }
        Ok(QuadratureSpec { n, points })
    }

    /// `M = 64` up to two dimensions, `M = 32` beyond.
    pub fn default_for(n: usize) -> Self {
        QuadratureSpec {
            n,
            points: if n <= 2 { 64 } else { 32 },
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn nodes(&self) -> Option<usize> {
        self.points.checked_pow(self.n as u32)
    }
}

fn t_values(params: &ParamSet) -> Vec<f64> {
    params
        .t()
        .iter()
        .filter(|t| !num_traits::Zero::is_zero(*t))
        .map(rational::to_f64)
        .collect()
}

/// `Δ(ξ)` evaluated directly from its product formula.
pub fn weight_delta(xi: &[f64], params: &ParamSet) -> Complex64 {
    let q = rational::to_f64(params.q());
    let ts = t_values(params);
    let e = |theta: f64| Complex64::from_polar(1.0, theta);
    let one = Complex64::new(1.0, 0.0);
    let mut delta = one;
    for j in 0..xi.len() {
        for k in j + 1..xi.len() {
            let minus = e(xi[j] - xi[k]);
            let plus = e(xi[j] + xi[k]);
            delta *= (one - minus) * (one - plus) / ((one - q * minus) * (one - q * plus));
        }
    }
    for &x in xi {
        let den: Complex64 = ts.iter().map(|&t| one - t * e(x)).product();
        delta *= (one - e(2.0 * x)) / den;
    }
    delta
}

/// `|1 - c e^{iθ}|²` for real `c`.
fn abs2_one_minus(c: f64, theta: f64) -> f64 {
    1.0 - 2.0 * c * theta.cos() + c * c
}

/// `|Δ(ξ)|²` in real arithmetic, factor by factor.
pub fn weight_abs2(xi: &[f64], params: &ParamSet) -> f64 {
    let q = rational::to_f64(params.q());
    let ts = t_values(params);
    let mut w = 1.0;
    for j in 0..xi.len() {
        for k in j + 1..xi.len() {
            for theta in [xi[j] - xi[k], xi[j] + xi[k]] {
                w *= abs2_one_minus(1.0, theta) / abs2_one_minus(q, theta);
            }
        }
    }
    for &x in xi {
        w *= abs2_one_minus(1.0, 2.0 * x);
        for &t in &ts {
            w /= abs2_one_minus(t, x);
        }
    }
    w
}

/// Quadrature nodes with precomputed weights; evaluates polynomials on the
/// grid and takes weighted inner products.
#[derive(Clone, Debug)]
pub struct TorusGrid {
    spec: QuadratureSpec,
    roots: Vec<Complex64>,
    weights: Vec<f64>,
    scale: f64,
}

impl TorusGrid {
    pub fn new(params: &ParamSet, spec: &QuadratureSpec, budget: &Budget) -> Result<Self> {
        let total = Self::node_count(spec, budget)?;
        let m = spec.points;
        let weights = (0..total)
            .into_par_iter()
            .map(|idx| weight_abs2(&node_point(idx, spec.n, m), params))
            .collect();
        Ok(Self::assemble(*spec, weights))
    }

    /// A grid with `|Δ|²` replaced by 1.
    pub fn unit_weight(spec: &QuadratureSpec) -> Result<Self> {
        let total = Self::node_count(spec, &Budget::default())?;
        Ok(Self::assemble(*spec, vec![1.0; total]))
    }

    fn node_count(spec: &QuadratureSpec, budget: &Budget) -> Result<usize> {
        let total = spec
            .nodes()
            .ok_or_else(|| Error::Budget("quadrature node count overflows".into()))?;
        budget.check_nodes(total)?;
        Ok(total)
    }

    fn assemble(spec: QuadratureSpec, weights: Vec<f64>) -> Self {
        let m = spec.points;
        let roots = (0..m)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
            .collect();
        TorusGrid {
            spec,
            roots,
            weights,
            scale: 1.0 / (spec.nodes().unwrap_or(1) as f64 * group_order(spec.n) as f64),
        }
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// Values of `f` at every node, in node order.
    pub fn values(&self, f: &LaurentPoly) -> Result<Vec<Complex64>> {
        if f.nvars() != self.spec.n {
            return Err(Error::Domain(format!(
                "polynomial in {} variables on a {}-dimensional grid",
                f.nvars(),
                self.spec.n
            )));
        }
        let m = self.spec.points as i64;
        let terms: Vec<(Vec<i64>, f64)> = f
            .terms()
            .map(|(e, c)| (e.iter().map(|&x| i64::from(x)).collect(), rational::to_f64(c)))
            .collect();
        let n = self.spec.n;
        Ok((0..self.weights.len())
            .into_par_iter()
            .map(|idx| {
                let ks = node_indices(idx, n, m as usize);
                terms
                    .iter()
                    .map(|(e, c)| {
                        let phase: i64 = e.iter().zip(&ks).map(|(a, &k)| a * k as i64).sum();
                        self.roots[phase.rem_euclid(m) as usize] * *c
                    })
                    .sum()
            })
            .collect())
    }

    /// `⟨f, g⟩_Δ` from node values. The sum runs over fixed blocks whose
    /// partial sums are added in block order, so the result does not depend
    /// on the number of worker threads.
    pub fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        let blocks: Vec<Complex64> = self
            .weights
            .par_chunks(CHUNK)
            .enumerate()
            .map(|(b, ws)| {
                let off = b * CHUNK;
                ws.iter()
                    .enumerate()
                    .map(|(i, w)| f[off + i] * g[off + i].conj() * *w)
                    .sum()
            })
            .collect();
        blocks.into_iter().sum::<Complex64>() * self.scale
    }

    pub fn inner_product(&self, f: &LaurentPoly, g: &LaurentPoly) -> Result<Complex64> {
        Ok(self.inner(&self.values(f)?, &self.values(g)?))
    }
}

fn node_indices(mut idx: usize, n: usize, m: usize) -> Vec<usize> {
    let mut ks = vec![0; n];
    for k in ks.iter_mut().rev() {
        *k = idx % m;
        idx /= m;
    }
    ks
}

fn node_point(idx: usize, n: usize, m: usize) -> Vec<f64> {
    node_indices(idx, n, m)
        .into_iter()
        .map(|k| 2.0 * PI * k as f64 / m as f64)
        .collect()
}

/// `⟨f, g⟩_Δ` on a freshly built grid.
pub fn inner_product(
    f: &LaurentPoly,
    g: &LaurentPoly,
    params: &ParamSet,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    TorusGrid::new(params, spec, &Budget::from_env()?)?.inner_product(f, g)
}

/// Pairwise inner products `G[i][j] = ⟨b_i, b_j⟩_Δ`.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub matrix: DMatrix<Complex64>,
    /// `max |G - G^H|`.
    pub hermiticity_deviation: f64,
}

pub fn gram_matrix(basis: &[LaurentPoly], grid: &TorusGrid) -> Result<GramMatrix> {
    let vals: Vec<Vec<Complex64>> = basis.iter().map(|b| grid.values(b)).collect::<Result<_>>()?;
    let k = basis.len();
    let matrix = DMatrix::from_fn(k, k, |i, j| grid.inner(&vals[i], &vals[j]));
    let hermiticity_deviation = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .map(|(i, j)| (matrix[(i, j)] - matrix[(j, i)].conj()).norm())
        .fold(0.0, f64::max);
    Ok(GramMatrix {
        matrix,
        hermiticity_deviation,
    })
}

/// `⟨f, g⟩_Δ` at each grid size in `ms`.
pub fn convergence_probe(
    f: &LaurentPoly,
    g: &LaurentPoly,
    params: &ParamSet,
    ms: &[usize],
) -> Result<Vec<Complex64>> {
    if ms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("grid sizes must increase".into()));
    }
    ms.iter()
        .map(|&m| inner_product(f, g, params, &QuadratureSpec::new(f.nvars(), m)?))
        .collect()
}
