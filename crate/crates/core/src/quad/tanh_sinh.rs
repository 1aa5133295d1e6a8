//! Tanh-sinh (double exponential) rule on a finite panel with level halving,
//! falling back to bisection when a panel does not settle.
//!
//! Nodes: x = c + h·tanh(π/2·sinh t). Distances to the endpoints are formed
//! from e^{−π·sinh|t|} directly so that nodes can approach a logarithmic
//! endpoint singularity without cancellation.

use std::f64::consts::FRAC_PI_2;

/// Nodes run over |t| ≤ T_MAX; at 4.5 the endpoint distance is ~1e-61.
const T_MAX: f64 = 4.5;
const MAX_LEVEL: u32 = 9;
/// Convergence is only trusted from this level on.
const MIN_LEVEL: u32 = 3;
const MAX_DEPTH: u32 = 14;

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct PanelResult {
    pub value: f64,
    pub error: f64,
    /// ∫|f| over the panel, for scaling tolerances.
    pub l1: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum PanelFailure {
    Budget(PanelResult),
    Depth(PanelResult),
    NonFinite(f64),
}

pub(crate) struct Budget {
    pub remaining: usize,
}

struct Levels {
    value: f64,
    l1: f64,
    error: f64,
    converged: bool,
    evaluations: usize,
}

fn run_levels<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    tolerance: Tolerance,
    budget: &mut Budget,
) -> Result<Levels, PanelFailure> {
    let half = 0.5 * (hi - lo);
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut previous: Option<f64> = None;
    let mut diffs: Vec<f64> = Vec::new();
    let mut evaluations = 0usize;
    let mut estimate = 0.0;
    let mut l1 = 0.0;

    for level in 0..=MAX_LEVEL {
        let h = (0.5f64).powi(level as i32);
        let (first, step) = if level == 0 { (0u64, 1u64) } else { (1, 2) };
        let mut k = first;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let s = FRAC_PI_2 * t.sinh();
            let e = (-2.0 * s).exp();
            let dist = half * 2.0 * e / (1.0 + e);
            let weight = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
            let nodes: &[f64] = if k == 0 { &[lo + half] } else { &[lo + dist, hi - dist] };
            for &x in nodes {
                if !(x > lo && x < hi) {
                    continue;
                }
                if budget.remaining == 0 {
                    let partial = PanelResult {
                        value: estimate,
                        error: f64::INFINITY,
                        l1,
                        evaluations,
                        subdivisions: 0,
                    };
                    return Err(PanelFailure::Budget(partial));
                }
                budget.remaining -= 1;
                evaluations += 1;
                let y = f(x);
                if !y.is_finite() {
                    return Err(PanelFailure::NonFinite(x));
                }
                sum += weight * y;
                abs_sum += weight * y.abs();
            }
            k += step;
        }
        estimate = h * sum;
        l1 = h * abs_sum;
        if let Some(prev) = previous {
            diffs.push((estimate - prev).abs());
        }
        previous = Some(estimate);

        let limit = tolerance.absolute(l1);
        if level >= MIN_LEVEL && diffs.len() >= 2 {
            let last = diffs[diffs.len() - 1];
            let before = diffs[diffs.len() - 2];
            if last <= limit && before <= limit {
                return Ok(Levels {
                    value: estimate,
                    l1,
                    error: last,
                    converged: true,
                    evaluations,
                });
            }
        }
    }
    Ok(Levels {
        value: estimate,
        l1,
        error: diffs.last().copied().unwrap_or(f64::INFINITY),
        converged: false,
        evaluations,
    })
}

/// Either relative to the panel's own ∫|f|, or a fixed absolute target
/// inherited from a parent panel.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Tolerance {
    Relative(f64),
    Absolute(f64),
}

impl Tolerance {
    fn absolute(self, l1: f64) -> f64 {
        match self {
            Tolerance::Relative(rel) => rel * l1,
            Tolerance::Absolute(abs) => abs,
        }
    }
}

pub(crate) fn integrate_panel<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    tolerance: Tolerance,
    budget: &mut Budget,
) -> Result<PanelResult, PanelFailure> {
    integrate_recursive(f, lo, hi, tolerance, budget, 0)
}

fn integrate_recursive<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    tolerance: Tolerance,
    budget: &mut Budget,
    depth: u32,
) -> Result<PanelResult, PanelFailure> {
    let levels = run_levels(f, lo, hi, tolerance, budget)?;
    if levels.converged {
        return Ok(PanelResult {
            value: levels.value,
            error: levels.error,
            l1: levels.l1,
            evaluations: levels.evaluations,
            subdivisions: 0,
        });
    }
    let here = PanelResult {
        value: levels.value,
        error: levels.error,
        l1: levels.l1,
        evaluations: levels.evaluations,
        subdivisions: 0,
    };
    if depth >= MAX_DEPTH {
        return Err(PanelFailure::Depth(here));
    }
    let target = 0.5 * tolerance.absolute(levels.l1);
    let mid = lo + 0.5 * (hi - lo);
    let merge = |a: PanelResult, b: PanelResult| PanelResult {
        value: a.value + b.value,
        error: a.error + b.error,
        l1: a.l1 + b.l1,
        evaluations: a.evaluations + b.evaluations + levels.evaluations,
        subdivisions: a.subdivisions + b.subdivisions + 1,
    };
    let left = integrate_recursive(f, lo, mid, Tolerance::Absolute(target), budget, depth + 1);
    let left = match left {
        Ok(r) => r,
        Err(PanelFailure::Budget(p)) | Err(PanelFailure::Depth(p)) => {
            return Err(PanelFailure::Budget(PanelResult { evaluations: p.evaluations + levels.evaluations, ..here }))
        }
        Err(e) => return Err(e),
    };
    let right = integrate_recursive(f, mid, hi, Tolerance::Absolute(target), budget, depth + 1);
    match right {
        Ok(r) => Ok(merge(left, r)),
        Err(PanelFailure::Budget(p)) | Err(PanelFailure::Depth(p)) => {
            let partial = PanelResult {
                value: left.value + p.value,
                error: f64::INFINITY,
                l1: left.l1 + p.l1,
                evaluations: left.evaluations + p.evaluations + levels.evaluations,
                subdivisions: left.subdivisions + 1,
            };
            Err(PanelFailure::Budget(partial))
        }
        Err(e) => Err(e),
    }
}
