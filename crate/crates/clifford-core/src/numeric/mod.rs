//! Floating-point discovery of representations by damped Gauss–Newton.
//!
//! For forms with no exact constructor — generic quartics and beyond, and
//! every case with r ≥ 2 — solutions are found numerically: the d+1
//! coefficient identities of (uA + vB)^d = f·I form an overdetermined
//! polynomial system F: ℂ^{2m²} → ℂ^{(d+1)m²}, minimized by
//! Levenberg-damped Gauss–Newton from seeded random starts. The Jacobian is
//! the same linearization Σ_k M^k (uȦ + vḂ) M^{d−1−k} that the exact tangent
//! computation uses.
//!
//! Success is never the residual alone: a candidate must also pass the
//! SVD fiber diagnostics (numerical rank m−r of aA + bB − cI at sampled
//! curve points), which guards against rank-defective limits.

pub mod cmat;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Error;
use crate::field::FieldElement;
use crate::form::BinaryForm;
use crate::rep::Representation;
use crate::Result;

pub use cmat::{singular_values, CMat, C64};

#[derive(Debug, Clone)]
pub struct NumericRep {
    pub coeffs: Vec<C64>,
    pub m: usize,
    pub a: CMat,
    pub b: CMat,
    /// Frobenius norm of the stacked coefficient-identity defects,
    /// recomputed at construction.
    pub residual: f64,
}

impl NumericRep {
    pub fn new(coeffs: Vec<C64>, a: CMat, b: CMat) -> Self {
        let residual = residual(&a, &b, &coeffs);
        let m = a.rows;
        NumericRep { coeffs, m, a, b, residual }
    }

    pub fn d(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn r(&self) -> usize {
        self.m / self.d()
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub max_restarts: usize,
    pub max_iters: usize,
    pub tol: f64,
    pub damping_init: f64,
    /// Relative discriminant threshold for the numeric nondegeneracy test.
    pub nondeg_threshold: f64,
    /// Singular values below gap·σ_max count as zero in rank diagnostics.
    pub rank_gap: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_restarts: 12,
            max_iters: 300,
            tol: 1e-10,
            damping_init: 1e-3,
            nondeg_threshold: 1e-8,
            rank_gap: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttemptLog {
    pub seed: u64,
    pub iterations: usize,
    pub residual: f64,
    pub success: bool,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    /// First successful attempt in seed order, if any.
    pub rep: Option<NumericRep>,
    /// One entry per attempt, ordered by seed, up to and including the
    /// winning one.
    pub attempts: Vec<AttemptLog>,
    pub best_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentRankReport {
    pub jacobian_nullity: usize,
    pub moduli_estimate: i64,
    /// Set when the singular spectrum has no clear gap at the threshold.
    pub indeterminate: bool,
}

/// Coefficient matrices of (uA + vB)^d.
fn cpencil_power(a: &CMat, b: &CMat, d: usize) -> Vec<CMat> {
    let mut coeffs = vec![a.clone(), b.clone()];
    for _ in 1..d {
        let k = coeffs.len();
        let mut next = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let mut acc = CMat::zeros(a.rows, a.cols);
            if j < k {
                acc = acc.add(&coeffs[j].mul(a));
            }
            if j > 0 {
                acc = acc.add(&coeffs[j - 1].mul(b));
            }
            next.push(acc);
        }
        coeffs = next;
    }
    coeffs
}

/// Stacked defects C_j − c_j·I as one long vector.
pub fn residual_vector(a: &CMat, b: &CMat, coeffs: &[C64]) -> Vec<C64> {
    let d = coeffs.len() - 1;
    let m = a.rows;
    let power = cpencil_power(a, b, d);
    let mut out = Vec::with_capacity((d + 1) * m * m);
    for (j, c) in power.iter().enumerate() {
        for i in 0..m {
            for k in 0..m {
                let target = if i == k { coeffs[j] } else { C64::new(0.0, 0.0) };
                out.push(c.at(i, k) - target);
            }
        }
    }
    out
}

/// √(Σ_j ‖C_j − c_j I‖_F²).
pub fn residual(a: &CMat, b: &CMat, coeffs: &[C64]) -> f64 {
    let v = residual_vector(a, b, coeffs);
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Jacobian of the residual map at (A, B): rows index the (d+1)m²
/// coefficient entries, columns the 2m² matrix entries (A block then B
/// block).
pub fn jacobian(a: &CMat, b: &CMat, d: usize) -> CMat {
    let m = a.rows;
    let mut powers: Vec<Vec<CMat>> = Vec::with_capacity(d);
    powers.push(vec![CMat::identity(m)]);
    for k in 1..d {
        powers.push(cpencil_power(a, b, k));
    }
    let rows = (d + 1) * m * m;
    let cols = 2 * m * m;
    let mut out = CMat::zeros(rows, cols);
    for slot in 0..2usize {
        for s in 0..m {
            for t in 0..m {
                let colidx = slot * m * m + s * m + t;
                for k in 0..d {
                    let left = &powers[k];
                    let right = &powers[d - 1 - k];
                    for (j1, lm) in left.iter().enumerate() {
                        for (j2, rm) in right.iter().enumerate() {
                            let j = j1 + j2 + slot;
                            for x in 0..m {
                                let lxs = lm.at(x, s);
                                if lxs == C64::new(0.0, 0.0) {
                                    continue;
                                }
                                for y in 0..m {
                                    let row = j * m * m + x * m + y;
                                    let idx = row * cols + colidx;
                                    out.e[idx] += lxs * rm.at(t, y);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Numeric nondegeneracy: the discriminant-style resultant of f(t,1) and its
/// derivative, evaluated on coefficient vectors normalized to unit sup-norm,
/// in the given frame and two fixed rotated frames (rotating covers forms
/// whose leading coefficient degenerates). Errors when every frame is below
/// the threshold.
pub fn check_nondegenerate(coeffs: &[C64], threshold: f64) -> Result<()> {
    let d = coeffs.len() - 1;
    if d < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let frames: [(f64, f64); 3] = [(1.0, 0.0), (0.8, 0.6), (0.28, -0.96)];
    for &(c, s) in &frames {
        let rotated = rotate_coeffs(coeffs, c, s);
        let scale = rotated.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            continue;
        }
        let normalized: Vec<C64> = rotated.iter().map(|z| z / scale).collect();
        // dehomogenize ascending: coefficient of t^j is coeffs[d−j]
        let g: Vec<C64> = normalized.iter().rev().copied().collect();
        let mut dg = Vec::with_capacity(d);
        for j in 1..=d {
            dg.push(g[j] * C64::new(j as f64, 0.0));
        }
        let res = cmat::sylvester_resultant(&g, &dg);
        if res.norm() > threshold {
            return Ok(());
        }
    }
    Err(Error::NumericPrecondition(String::from(
        "form is numerically degenerate (near-repeated root)",
    )))
}

/// Substitute (u, v) ↦ (cu + sv, −su + cv).
fn rotate_coeffs(coeffs: &[C64], c: f64, s: f64) -> Vec<C64> {
    let d = coeffs.len() - 1;
    let lin1 = [C64::new(c, 0.0), C64::new(s, 0.0)];
    let lin2 = [C64::new(-s, 0.0), C64::new(c, 0.0)];
    let mut pow1: Vec<Vec<C64>> = vec![vec![C64::new(1.0, 0.0)]];
    let mut pow2 = pow1.clone();
    for i in 1..=d {
        pow1.push(conv_full(&pow1[i - 1], &lin1));
        pow2.push(conv_full(&pow2[i - 1], &lin2));
    }
    let mut out = vec![C64::new(0.0, 0.0); d + 1];
    for (i, &ci) in coeffs.iter().enumerate() {
        let prod = conv_full(&pow1[d - i], &pow2[i]);
        for (j, &t) in prod.iter().enumerate() {
            out[j] += ci * t;
        }
    }
    out
}

fn conv_full(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Deterministic sample points on the curve: a on a circle of radius 0.9,
/// b = 1, c the principal d-th root of f(a, 1).
pub fn sample_curve_points(coeffs: &[C64], count: usize) -> Vec<(C64, C64, C64)> {
    let d = coeffs.len() - 1;
    (0..count)
        .map(|j| {
            let theta = core::f64::consts::TAU * (j as f64) / (count as f64) + 0.37;
            let a = C64::from_polar(0.9, theta);
            let b = C64::new(1.0, 0.0);
            let mut val = C64::new(0.0, 0.0);
            for (i, &c) in coeffs.iter().enumerate() {
                val += c * a.powu((d - i) as u32);
            }
            let c = if val.norm() == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                val.powf(1.0 / d as f64)
            };
            (a, b, c)
        })
        .collect()
}

/// Numerical rank of aA + bB − cI must be m − r at each sampled point.
pub fn fiber_rank_ok(a: &CMat, b: &CMat, coeffs: &[C64], r: usize, gap: f64) -> bool {
    let m = a.rows;
    for (pa, pb, pc) in sample_curve_points(coeffs, 10) {
        let mut spec = a.scale(pa).add(&b.scale(pb));
        for i in 0..m {
            let cur = spec.at(i, i);
            spec.set(i, i, cur - pc);
        }
        let sv = singular_values(&spec);
        let smax = sv[0].max(1e-300);
        let rank = sv.iter().filter(|&&s| s > gap * smax).count();
        if rank != m - r {
            return false;
        }
    }
    true
}

fn random_matrix(m: usize, scale: f64, rng: &mut ChaCha8Rng) -> CMat {
    let mut out = CMat::zeros(m, m);
    let inv_sqrt2 = core::f64::consts::FRAC_1_SQRT_2;
    for e in out.e.iter_mut() {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        *e = C64::new(re, im) * inv_sqrt2 * scale;
    }
    out
}

struct LmResult {
    a: CMat,
    b: CMat,
    residual: f64,
    iterations: usize,
}

fn lm_attempt(coeffs: &[C64], m: usize, seed: u64, opts: &SolveOptions) -> LmResult {
    let d = coeffs.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let norm = libm::sqrt(coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>());
    let scale = libm::pow(norm.max(1e-12), 1.0 / d as f64);
    let mut a = random_matrix(m, scale, &mut rng);
    let mut b = random_matrix(m, scale, &mut rng);
    let mut lambda = opts.damping_init;
    let mut f = residual_vector(&a, &b, coeffs);
    let mut cost: f64 = f.iter().map(|z| z.norm_sqr()).sum();
    let nn = m * m;
    let mut iterations = 0;
    while iterations < opts.max_iters {
        iterations += 1;
        if libm::sqrt(cost) <= opts.tol {
            break;
        }
        let j = jacobian(&a, &b, d);
        let jh = j.adjoint();
        let h = jh.mul(&j);
        let g: Vec<C64> = (0..2 * nn)
            .map(|col| {
                let mut acc = C64::new(0.0, 0.0);
                for (row, fv) in f.iter().enumerate() {
                    acc += j.at(row, col).conj() * fv;
                }
                acc
            })
            .collect();
        // retry with stronger damping until a step is accepted
        let mut stepped = false;
        for _ in 0..40 {
            let mut damped = h.clone();
            for i in 0..2 * nn {
                let cur = damped.at(i, i);
                damped.set(i, i, cur + C64::new(lambda, 0.0));
            }
            let rhs: Vec<C64> = g.iter().map(|z| -z).collect();
            let Some(delta) = cmat::cholesky_solve(&damped, &rhs) else {
                lambda *= 10.0;
                continue;
            };
            let mut a2 = a.clone();
            let mut b2 = b.clone();
            for (idx, dv) in delta.iter().enumerate() {
                if idx < nn {
                    a2.e[idx] += dv;
                } else {
                    b2.e[idx - nn] += dv;
                }
            }
            let f2 = residual_vector(&a2, &b2, coeffs);
            let cost2: f64 = f2.iter().map(|z| z.norm_sqr()).sum();
            if cost2 < cost {
                a = a2;
                b = b2;
                f = f2;
                cost = cost2;
                lambda = (lambda / 3.0).max(1e-14);
                stepped = true;
                break;
            }
            lambda *= 10.0;
            if lambda > 1e14 {
                break;
            }
        }
        if !stepped {
            break;
        }
    }
    LmResult { a, b, residual: libm::sqrt(cost), iterations }
}

/// Validate the solve preconditions: degree, divisibility, nondegeneracy.
pub fn validate_problem(coeffs: &[C64], m: usize, opts: &SolveOptions) -> Result<()> {
    if coeffs.len() < 3 {
        return Err(Error::DegreeTooSmall);
    }
    let d = coeffs.len() - 1;
    if m == 0 || m % d != 0 {
        return Err(Error::DivisibilityViolation { d, m });
    }
    check_nondegenerate(coeffs, opts.nondeg_threshold)
}

/// One seeded Gauss–Newton descent plus diagnostics; independent of every
/// other attempt, so restarts can run concurrently.
pub fn solve_single(
    coeffs: &[C64],
    m: usize,
    attempt_seed: u64,
    opts: &SolveOptions,
) -> (AttemptLog, Option<NumericRep>) {
    let d = coeffs.len() - 1;
    let r = m / d;
    let result = lm_attempt(coeffs, m, attempt_seed, opts);
    let converged = result.residual <= opts.tol;
    let success = converged && fiber_rank_ok(&result.a, &result.b, coeffs, r, opts.rank_gap);
    let log = AttemptLog {
        seed: attempt_seed,
        iterations: result.iterations,
        residual: result.residual,
        success,
    };
    let rep = success.then(|| NumericRep::new(coeffs.to_vec(), result.a, result.b));
    (log, rep)
}

/// Run restarts in seed order until one attempt reaches the tolerance and
/// passes the SVD fiber diagnostics. All attempts up to the winner are
/// logged, ordered by seed, so the report is reproducible.
pub fn solve(coeffs: &[C64], m: usize, seed: u64, opts: &SolveOptions) -> Result<SolveOutcome> {
    validate_problem(coeffs, m, opts)?;
    let mut attempts = Vec::new();
    let mut best = f64::INFINITY;
    let mut rep = None;
    for i in 0..opts.max_restarts {
        let attempt_seed = seed.wrapping_add(i as u64);
        let (log, outcome) = solve_single(coeffs, m, attempt_seed, opts);
        best = best.min(log.residual);
        let done = log.success;
        attempts.push(log);
        if done {
            rep = outcome;
            break;
        }
    }
    Ok(SolveOutcome { rep, attempts, best_residual: best })
}

/// Count the near-zero singular values of the Jacobian at a converged
/// solution; the moduli estimate subtracts the conjugation orbit m² − 1.
pub fn numeric_tangent_rank(nrep: &NumericRep, opts: &SolveOptions) -> Result<TangentRankReport> {
    if nrep.residual > opts.tol {
        return Err(Error::ResidualAboveTolerance { residual: nrep.residual, tol: opts.tol });
    }
    let j = jacobian(&nrep.a, &nrep.b, nrep.d());
    let sv = singular_values(&j);
    let smax = sv[0].max(1e-300);
    let cut = opts.rank_gap * smax;
    let nullity = sv.iter().filter(|&&s| s < cut).count();
    let dropped_max = sv.iter().copied().filter(|&s| s < cut).fold(0.0, f64::max);
    let kept_min = sv.iter().copied().filter(|&s| s >= cut).fold(f64::INFINITY, f64::min);
    let indeterminate = dropped_max > 0.0 && kept_min < 100.0 * dropped_max;
    let m = nrep.m;
    Ok(TangentRankReport {
        jacobian_nullity: nullity,
        moduli_estimate: nullity as i64 - (m * m - 1) as i64,
        indeterminate,
    })
}

/// Componentwise relative disagreement between the analytic Jacobian and a
/// central finite difference of the residual map with the given step.
pub fn jacobian_fd_error(a: &CMat, b: &CMat, coeffs: &[C64], step: f64) -> f64 {
    let d = coeffs.len() - 1;
    let m = a.rows;
    let nn = m * m;
    let j = jacobian(a, b, d);
    let jmax = j.max_abs().max(1e-300);
    let mut worst: f64 = 0.0;
    for col in 0..2 * nn {
        let mut plus = (a.clone(), b.clone());
        let mut minus = (a.clone(), b.clone());
        if col < nn {
            plus.0.e[col] += C64::new(step, 0.0);
            minus.0.e[col] -= C64::new(step, 0.0);
        } else {
            plus.1.e[col - nn] += C64::new(step, 0.0);
            minus.1.e[col - nn] -= C64::new(step, 0.0);
        }
        let fp = residual_vector(&plus.0, &plus.1, coeffs);
        let fm = residual_vector(&minus.0, &minus.1, coeffs);
        for (row, (x1, x0)) in fp.iter().zip(&fm).enumerate() {
            let fd = (x1 - x0) / (2.0 * step);
            let exact = j.at(row, col);
            let denom = exact.norm().max(1e-6 * jmax);
            worst = worst.max((fd - exact).norm() / denom);
        }
    }
    worst
}

/// Canonical complex embedding of exact scalars: ℚ as doubles, ζ_n as
/// e^{2πi/n}.
pub fn embed_element(e: &FieldElement) -> Result<C64> {
    match e {
        FieldElement::Rational(r) => Ok(C64::new(r.to_f64().ok_or(Error::InexactField)?, 0.0)),
        FieldElement::Cyclotomic { n, coeffs } => {
            let mut acc = C64::new(0.0, 0.0);
            for (i, c) in coeffs.iter().enumerate() {
                let theta = core::f64::consts::TAU * (i as f64) / (*n as f64);
                let omega = C64::from_polar(1.0, theta);
                acc += C64::new(c.to_f64().ok_or(Error::InexactField)?, 0.0) * omega;
            }
            Ok(acc)
        }
        FieldElement::Complex(z) => Ok(*z),
        _ => Err(Error::FieldMismatch),
    }
}

pub fn embed_form(form: &BinaryForm) -> Result<Vec<C64>> {
    form.coeffs().iter().map(embed_element).collect()
}

/// Cast an exact representation over ℚ, a cyclotomic field, or complex
/// doubles into the numeric world.
pub fn embed_representation(rep: &Representation) -> Result<NumericRep> {
    let coeffs = embed_form(rep.form())?;
    let m = rep.m();
    let mut a = CMat::zeros(m, m);
    let mut b = CMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            a.set(i, j, embed_element(rep.pencil().a().entry(i, j))?);
            b.set(i, j, embed_element(rep.pencil().b().entry(i, j))?);
        }
    }
    Ok(NumericRep::new(coeffs, a, b))
}
