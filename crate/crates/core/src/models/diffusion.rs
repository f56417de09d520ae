//! Diffusion-induced averages on grid-sampled functions with an adjoined δ.
//!
//! A [`GridFunction`] stores `δ`'s coefficient and the samples of the
//! function part on `{−L, …, −h, 0, h, …, L}`, keeping both one-sided limits
//! at 0 so that half-line truncation is exact.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::rota_baxter::{RbModel, Sampling};
use crate::scalar::Tolerance;
use crate::word::Word;

/// Uniform grid of radius `L` and step `h`, with `L/h` an integer `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub radius: f64,
    pub step: f64,
    pub m: usize,
}

impl Grid {
    pub fn new(radius: f64, step: f64) -> Result<Self> {
        if !(radius.is_finite() && step.is_finite() && radius > 0.0 && step > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "radius {} and step {} must be positive",
                radius, step
            )));
        }
        let ratio = radius / step;
        let m = ratio.round();
        if (ratio - m).abs() > 1e-9 * ratio.max(1.0) || m < 1.0 {
            return Err(Error::InvalidGrid(format!(
                "radius {} is not a positive multiple of step {}",
                radius, step
            )));
        }
        if m > 1e6 {
            return Err(Error::InvalidGrid(format!("{} grid points per side", m)));
        }
        Ok(Grid {
            radius,
            step,
            m: m as usize,
        })
    }

    pub fn x(&self, k: usize) -> f64 {
        k as f64 * self.step
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::new(20.0, 1.0 / 64.0).expect("valid default grid")
    }
}

/// How [`GridFunction::convolve`] sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvolutionMethod {
    #[default]
    Direct,
    Fft,
}

/// `delta·δ + f`, with `neg[k] = f(−kh)`, `pos[k] = f(kh)` for `k ≥ 1`,
/// `neg[0] = f(0−)` and `pos[0] = f(0+)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub grid: Grid,
    pub delta: f64,
    pub neg: Vec<f64>,
    pub pos: Vec<f64>,
}

impl GridFunction {
    pub fn zero(grid: Grid) -> Self {
        GridFunction {
            grid,
            delta: 0.0,
            neg: vec![0.0; grid.m + 1],
            pos: vec![0.0; grid.m + 1],
        }
    }

    /// The unit `δ`.
    pub fn delta(grid: Grid) -> Self {
        GridFunction {
            delta: 1.0,
            ..GridFunction::zero(grid)
        }
    }

    /// Samples a function that is continuous at 0.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let pos: Vec<f64> = (0..=grid.m).map(|k| f(grid.x(k))).collect();
        let neg: Vec<f64> = (0..=grid.m).map(|k| f(-grid.x(k))).collect();
        GridFunction {
            grid,
            delta: 0.0,
            neg,
            pos,
        }
    }

    fn check(&self, other: &GridFunction) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    fn zip(&self, other: &GridFunction, op: impl Fn(f64, f64) -> f64) -> Result<GridFunction> {
        self.check(other)?;
        Ok(GridFunction {
            grid: self.grid,
            delta: op(self.delta, other.delta),
            neg: self
                .neg
                .iter()
                .zip(&other.neg)
                .map(|(a, b)| op(*a, *b))
                .collect(),
            pos: self
                .pos
                .iter()
                .zip(&other.pos)
                .map(|(a, b)| op(*a, *b))
                .collect(),
        })
    }

    fn map(&self, op: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            delta: op(self.delta),
            neg: self.neg.iter().map(|a| op(*a)).collect(),
            pos: self.pos.iter().map(|a| op(*a)).collect(),
        }
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> GridFunction {
        self.map(|a| c * a)
    }

    pub fn abs(&self) -> GridFunction {
        self.map(f64::abs)
    }

    /// Multiplication by the indicator of `(0, ∞)`; drops `δ`.
    pub fn truncate_pos(&self) -> GridFunction {
        GridFunction {
            grid: self.grid,
            delta: 0.0,
            neg: vec![0.0; self.grid.m + 1],
            pos: self.pos.clone(),
        }
    }

    /// Multiplication by the indicator of `(−∞, 0]`; keeps `δ`.
    pub fn truncate_neg(&self) -> GridFunction {
        GridFunction {
            grid: self.grid,
            delta: self.delta,
            neg: self.neg.clone(),
            pos: vec![0.0; self.grid.m + 1],
        }
    }

    /// `f(x) ↦ f(−x)`.
    pub fn reflect(&self) -> GridFunction {
        GridFunction {
            grid: self.grid,
            delta: self.delta,
            neg: self.pos.clone(),
            pos: self.neg.clone(),
        }
    }

    /// `delta + ∫ f`, trapezoid rule on each half line.
    pub fn integral(&self) -> f64 {
        let half = |v: &[f64]| {
            let m = v.len() - 1;
            let inner: f64 = v[1..m].iter().sum();
            self.grid.step * (inner + 0.5 * (v[0] + v[m]))
        };
        self.delta + half(&self.neg) + half(&self.pos)
    }

    /// Largest absolute difference over samples and the δ coefficient.
    pub fn sup_distance(&self, other: &GridFunction) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.neg
            .iter()
            .chain(&d.pos)
            .fold(d.delta.abs(), |acc, v| acc.max(v.abs())))
    }

    /// Sample values on `−m..=m`, averaging the one-sided limits at 0.
    fn mid(&self) -> Vec<f64> {
        let m = self.grid.m;
        let mut v = Vec::with_capacity(2 * m + 1);
        v.extend(self.neg[1..].iter().rev());
        v.push(0.5 * (self.neg[0] + self.pos[0]));
        v.extend(&self.pos[1..]);
        v
    }

    /// `(f ⋆ g)(x) = ∫ f(y) g(x − y) dy` plus `δ` cross terms.
    ///
    /// The trapezoid rule is applied with node values equal to the average of
    /// the integrand's one-sided limits, which matters at `x = 0` where the
    /// jumps of `f` and `g` at 0 meet.
    pub fn convolve(
        &self,
        other: &GridFunction,
        method: ConvolutionMethod,
    ) -> Result<GridFunction> {
        self.check(other)?;
        let m = self.grid.m;
        let h = self.grid.step;
        let (a, b) = (self.mid(), other.mid());
        let raw = match method {
            ConvolutionMethod::Direct => direct_central(&a, &b, m),
            ConvolutionMethod::Fft => fft_central(&a, &b, m),
        };
        let mut c: Vec<f64> = raw.into_iter().map(|v| h * v).collect();
        let (fm, fp, gm, gp) = (self.neg[0], self.pos[0], other.neg[0], other.pos[0]);
        c[m] += h * (0.5 * (fm * gp + fp * gm) - a[m] * b[m]);

        let mut out = GridFunction::zero(self.grid);
        out.pos.copy_from_slice(&c[m..]);
        for k in 0..=m {
            out.neg[k] = c[m - k];
        }
        if self.delta != 0.0 {
            out = out.add(&other.scale(self.delta))?;
        }
        if other.delta != 0.0 {
            out = out.add(&self.scale(other.delta))?;
        }
        out.delta = self.delta * other.delta;
        Ok(out)
    }
}

/// `c[i + m] = Σ_j a[j + m] b[i − j + m]` for `i ∈ −m..=m`, indices kept
/// inside `0..2m+1`.
fn direct_central(a: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let n = 2 * m + 1;
    (0..n)
        .into_par_iter()
        .map(|out| {
            let lo = out.saturating_sub(m);
            let hi = (out + m).min(n - 1);
            (lo..=hi).map(|ja| a[ja] * b[out + m - ja]).sum()
        })
        .collect()
}

fn fft_central(a: &[f64], b: &[f64], m: usize) -> Vec<f64> {
    let n = a.len() + b.len() - 1;
    let size = n.next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    let lift = |v: &[f64]| {
        let mut out: Vec<Complex<f64>> = v.iter().map(|&x| Complex::new(x, 0.0)).collect();
        out.resize(size, Complex::new(0.0, 0.0));
        out
    };
    let (mut fa, mut fb) = (lift(a), lift(b));
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    let mut prod: Vec<Complex<f64>> = fa.iter().zip(&fb).map(|(x, y)| x * y).collect();
    inv.process(&mut prod);
    let scale = 1.0 / size as f64;
    // Linear convolution index is i + 2m.
    (0..=2 * m).map(|k| prod[k + m].re * scale).collect()
}

/// `f_ω(x) = e^{−x²/(4ω)} / (2√(πω))`, the centred Gaussian of variance 2ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GaussianKernel {
    pub omega: u32,
}

impl GaussianKernel {
    pub fn new(omega: u32) -> Result<Self> {
        if omega == 0 {
            return Err(Error::InvalidLetter(0));
        }
        Ok(GaussianKernel { omega })
    }

    pub fn density(&self, x: f64) -> f64 {
        let w = f64::from(self.omega);
        (-x * x / (4.0 * w)).exp() / (2.0 * (PI * w).sqrt())
    }

    pub fn sample(&self, grid: Grid) -> GridFunction {
        GridFunction::from_fn(grid, |x| self.density(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiffusionParams {
    pub grid: Grid,
    pub method: ConvolutionMethod,
}

impl Default for DiffusionParams {
    fn default() -> Self {
        DiffusionParams {
            grid: Grid::default(),
            method: ConvolutionMethod::Direct,
        }
    }
}

pub const DEFAULT_TOL: f64 = 5e-3;

/// Elements closer than this in sup distance are equal; only rounding is
/// expected between them.
const ELEM_TOL: f64 = 1e-10;

/// `R` = truncation to `(0, ∞)`, `θ = σ` = reflection, `γ = f_1`, `Θ = ∫`.
#[derive(Debug, Clone)]
pub struct DiffusionModel {
    params: DiffusionParams,
    tol: f64,
    gamma: Arc<GridFunction>,
}

impl DiffusionModel {
    pub fn new(params: DiffusionParams, tol: f64) -> Result<Self> {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidModel(format!(
                "tolerance {} must be positive",
                tol
            )));
        }
        let gamma = Arc::new(GaussianKernel { omega: 1 }.sample(params.grid));
        Ok(DiffusionModel { params, tol, gamma })
    }

    pub fn grid(&self) -> Grid {
        self.params.grid
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

impl Default for DiffusionModel {
    fn default() -> Self {
        DiffusionModel::new(DiffusionParams::default(), DEFAULT_TOL).expect("valid defaults")
    }
}

impl RbModel for DiffusionModel {
    type Elem = GridFunction;
    type Scalar = f64;

    fn name(&self) -> String {
        format!(
            "diffusion(L={}, h={})",
            self.params.grid.radius, self.params.grid.step
        )
    }

    fn one(&self) -> GridFunction {
        GridFunction::delta(self.params.grid)
    }

    fn zero(&self) -> GridFunction {
        GridFunction::zero(self.params.grid)
    }

    fn add(&self, a: &GridFunction, b: &GridFunction) -> GridFunction {
        a.add(b).expect("one grid per model")
    }

    fn neg(&self, a: &GridFunction) -> GridFunction {
        a.scale(-1.0)
    }

    fn sub(&self, a: &GridFunction, b: &GridFunction) -> GridFunction {
        a.sub(b).expect("one grid per model")
    }

    fn mul(&self, a: &GridFunction, b: &GridFunction) -> GridFunction {
        a.convolve(b, self.params.method)
            .expect("one grid per model")
    }

    fn r(&self, a: &GridFunction) -> GridFunction {
        a.truncate_pos()
    }

    fn r_tilde(&self, a: &GridFunction) -> GridFunction {
        a.truncate_neg()
    }

    fn theta(&self, a: &GridFunction) -> GridFunction {
        a.reflect()
    }

    fn sigma(&self, a: &GridFunction) -> GridFunction {
        a.reflect()
    }

    fn gamma(&self) -> GridFunction {
        (*self.gamma).clone()
    }

    fn eval(&self, a: &GridFunction) -> f64 {
        a.integral()
    }

    fn majorant(&self, a: &GridFunction) -> GridFunction {
        a.abs()
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance::Abs(self.tol)
    }

    fn elem_eq(&self, a: &GridFunction, b: &GridFunction) -> bool {
        a.sup_distance(b).is_ok_and(|d| d <= ELEM_TOL)
    }

    fn elem_json(&self, a: &GridFunction) -> Value {
        let sup = a.sup_distance(&self.zero()).unwrap_or(f64::NAN);
        json!({ "delta": a.delta, "integral": a.integral(), "sup": sup })
    }

    fn sample_elements(&self, _max_grade: u64) -> Sampling<GridFunction> {
        Sampling::Reachable
    }
}

/// A Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

pub const MC_STREAMS: u64 = 16;

/// Fraction of samples, over `MC_STREAMS` streams seeded `seed + index`, for
/// which `hit` holds on independent `X_i ~ N(0, 2 ω_i)`.
fn bernoulli_mc(
    omegas: &[u32],
    samples: u64,
    seed: u64,
    hit: impl Fn(&[f64]) -> bool + Sync,
) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::Precondition(
            "at least one sample is required".into(),
        ));
    }
    let normals: Vec<Normal<f64>> = omegas
        .iter()
        .map(|&w| Normal::new(0.0, (2.0 * f64::from(w)).sqrt()).expect("positive variance"))
        .collect();
    let hits: u64 = (0..MC_STREAMS)
        .into_par_iter()
        .map(|s| {
            let n = samples / MC_STREAMS + u64::from(s < samples % MC_STREAMS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s));
            let mut x = vec![0.0; normals.len()];
            let mut count = 0u64;
            for _ in 0..n {
                for (xi, d) in x.iter_mut().zip(&normals) {
                    *xi = d.sample(&mut rng);
                }
                count += u64::from(hit(&x));
            }
            count
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(Estimate {
        value: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
    })
}

/// `(−1)^n P(S_1 > 0, …, S_n > 0)` for the partial sums `S_k` of independent
/// `X_i` with density `f_{ω_i}`.
pub fn diffusion_phi_mc(w: &Word, samples: u64, seed: u64) -> Result<Estimate> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let p = bernoulli_mc(&w.values(), samples, seed, |x| {
        let mut s = 0.0;
        x.iter().all(|xi| {
            s += xi;
            s > 0.0
        })
    })?;
    let sign = if w.len() % 2 == 1 { -1.0 } else { 1.0 };
    Ok(Estimate {
        value: sign * p.value,
        stderr: p.stderr,
    })
}

pub const ARB_NODE_CAP: usize = 4;

/// The arborified closed integral and its recursion-signed value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArbEstimate {
    /// `∫ ∏ f_{ω_i}(x_i) ∏ σ₊(x̂_i)` with `x̂_i` the hat sums.
    pub magnitude: Estimate,
    /// `(−1)^{nodes}` times the magnitude.
    pub signed: Estimate,
}

/// Monte-Carlo evaluation of the arborified closed formula.
pub fn diffusion_arb_closed(f: &Forest, samples: u64, seed: u64) -> Result<ArbEstimate> {
    if f.size() > ARB_NODE_CAP {
        return Err(Error::NodeCap {
            nodes: f.size(),
            cap: ARB_NODE_CAP,
        });
    }
    let nodes = f.flatten();
    let omegas: Vec<u32> = nodes.iter().map(|&(d, _)| d).collect();
    let parents: Vec<Option<usize>> = nodes.iter().map(|&(_, p)| p).collect();
    let magnitude = bernoulli_mc(&omegas, samples, seed, |x| {
        // Preorder lists parents first, so a reverse sweep folds each
        // subtree into its root.
        let mut hat = x.to_vec();
        for i in (0..hat.len()).rev() {
            if let Some(p) = parents[i] {
                hat[p] += hat[i];
            }
        }
        hat.iter().all(|&v| v > 0.0)
    })?;
    let sign = if nodes.len() % 2 == 1 { -1.0 } else { 1.0 };
    Ok(ArbEstimate {
        magnitude,
        signed: Estimate {
            value: sign * magnitude.value,
            stderr: magnitude.stderr,
        },
    })
}
