//! Perfect state transfer between vertex type states, the eigenvalue
//! necessary condition used to prune scans, and walk periods.
//!
//! Transfer amplitudes are computed two ways: directly, by stepping the
//! evolution operator, and spectrally, as entries of `T_τ(P)`. The two
//! routes coincide (`d U^τ d* = T_τ(P)`), and the engine asserts that
//! agreement on every call where the graph is small enough to afford both.

use num_complex::Complex64;
use serde::Serialize;

use crate::chebyshev::cheb_scalar;
use crate::error::Result;
use crate::operators::{ArcState, WalkOperators};
use crate::spectral::{SpectralDecomposition, DEFAULT_SUPPORT_TOL};

/// Default threshold on `1 - |amplitude|` for declaring transfer perfect.
pub const DEFAULT_PST_TOL: f64 = 1e-9;

/// Default tolerance for the `|T_τ(λ)| = 1` support condition.
pub const DEFAULT_NECESSARY_TOL: f64 = 1e-6;

/// Largest arc count for which every amplitude is computed by both
/// methods and their agreement asserted.
pub const CROSSCHECK_MAX_ARCS: usize = 256;

/// Required agreement between the direct and spectral amplitudes.
pub const METHOD_AGREEMENT_TOL: f64 = 1e-9;

/// Default search bound for [`find_period`]; covers the small named
/// families, whose periods divide 720.
pub const DEFAULT_PERIOD_BOUND: u32 = 720;

/// Default tolerance on `‖U^p - I‖_max` for period detection.
pub const DEFAULT_PERIOD_TOL: f64 = 1e-9;

/// How a transfer amplitude was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Direct stepping of U only.
    DirectU,
    /// Spectral evaluation of `T_τ(P)` only.
    Chebyshev,
    /// Both, with agreement asserted.
    Both,
}

/// Outcome of one transfer check from a source to a target vertex state.
#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub source: usize,
    pub target: usize,
    pub time: u32,
    /// `⟨U^τ d* e_x, d* e_y⟩`; its magnitude decides the verdict.
    pub amplitude: Complex64,
    pub amplitude_abs: f64,
    /// The transfer phase γ, present exactly when `pst` holds.
    pub phase: Option<Complex64>,
    pub pst: bool,
    /// Set for self-transfers and τ = 0, which are perfect but vacuous.
    pub trivial: bool,
    pub method: Method,
}

/// Result of scanning one source over a time range.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub source: usize,
    pub tau_max: u32,
    pub pst_tol: f64,
    /// Every report with `pst = true`, ordered by (time, target).
    pub hits: Vec<TransferReport>,
    /// Times discarded by the eigenvalue necessary condition alone.
    pub pruned_times: u32,
    /// Times on which amplitudes were actually evaluated.
    pub evaluated_times: u32,
}

/// Smallest period of the evolution operator, if one exists in range.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodReport {
    /// Least p with `‖U^p - I‖_max <= tol`, or `None` if no p <= bound works.
    pub period: Option<u32>,
    pub bound: u32,
    /// Deviation `‖U^p - I‖_max` at the reported period, else the smallest
    /// deviation seen anywhere in the searched range.
    pub deviation: f64,
}

/// Transfer amplitude `⟨U^τ d* e_x, d* e_y⟩`, equal to the (y, x) entry of
/// `T_τ(P)`.
pub fn transfer_amplitude(
    ops: &WalkOperators,
    sd: &SpectralDecomposition,
    x: usize,
    y: usize,
    tau: u32,
) -> Result<Complex64> {
    let (amplitude, _) = amplitude_with_method(ops, sd, x, y, tau)?;
    Ok(amplitude)
}

fn spectral_amplitude(sd: &SpectralDecomposition, x: usize, y: usize, tau: u32) -> f64 {
    sd.poly_entry(y, x, |lambda| cheb_scalar(tau, lambda))
}

fn amplitude_with_method(
    ops: &WalkOperators,
    sd: &SpectralDecomposition,
    x: usize,
    y: usize,
    tau: u32,
) -> Result<(Complex64, Method)> {
    assert_eq!(
        sd.dim(),
        ops.vertex_count(),
        "decomposition dimension must match the graph"
    );
    let n = ops.vertex_count();
    for vertex in [x, y] {
        if vertex >= n {
            return Err(crate::error::Error::VertexOutOfRange { vertex, n });
        }
    }
    let spectral = Complex64::new(spectral_amplitude(sd, x, y, tau), 0.0);
    if ops.arc_count() > CROSSCHECK_MAX_ARCS {
        return Ok((spectral, Method::Chebyshev));
    }
    let evolved = ops.step(&ops.vertex_state(x)?, tau);
    let direct = evolved.inner(&ops.vertex_state(y)?);
    assert!(
        (direct - spectral).norm() <= METHOD_AGREEMENT_TOL,
        "direct ({direct}) and spectral ({spectral}) amplitudes disagree \
         for x={x} y={y} tau={tau}"
    );
    Ok((direct, Method::Both))
}

/// Full perfect-state-transfer verdict for one (source, target, time).
pub fn detect_pst(
    ops: &WalkOperators,
    sd: &SpectralDecomposition,
    x: usize,
    y: usize,
    tau: u32,
    pst_tol: f64,
) -> Result<TransferReport> {
    let (amplitude, method) = amplitude_with_method(ops, sd, x, y, tau)?;
    Ok(report_from_amplitude(x, y, tau, amplitude, pst_tol, method))
}

fn report_from_amplitude(
    x: usize,
    y: usize,
    tau: u32,
    amplitude: Complex64,
    pst_tol: f64,
    method: Method,
) -> TransferReport {
    let amplitude_abs = amplitude.norm();
    let pst = amplitude_abs >= 1.0 - pst_tol;
    TransferReport {
        source: x,
        target: y,
        time: tau,
        amplitude,
        amplitude_abs,
        phase: pst.then_some(amplitude),
        pst,
        trivial: tau == 0 || x == y,
        method,
    }
}

/// The eigenvalue necessary condition from the transfer theorem: perfect
/// state transfer out of `x` at time τ requires `|T_τ(λ)| = 1` for every
/// λ in the eigenvalue support of `e_x`.
///
/// Returns true when every support eigenvalue passes within `tol`; a false
/// answer rules out transfer from `x` at time τ to *any* target.
pub fn necessary_condition(
    sd: &SpectralDecomposition,
    x: usize,
    tau: u32,
    tol: f64,
) -> Result<bool> {
    let support = sd.support(x, DEFAULT_SUPPORT_TOL)?;
    Ok(support
        .iter()
        .all(|&lambda| cheb_scalar(tau, lambda).abs() >= 1.0 - tol))
}

/// Scan all times 1..=`tau_max` from one source, pruning times that fail
/// the necessary condition before any amplitude is evaluated.
pub fn scan_pst(
    ops: &WalkOperators,
    sd: &SpectralDecomposition,
    x: usize,
    tau_max: u32,
    pst_tol: f64,
) -> Result<ScanReport> {
    let n = ops.vertex_count();
    let crosscheck = ops.arc_count() <= CROSSCHECK_MAX_ARCS;
    let mut state = ops.vertex_state(x)?;
    let target_states: Vec<ArcState> =
        (0..n).map(|y| ops.vertex_state(y)).collect::<Result<_>>()?;

    let mut hits = Vec::new();
    let mut pruned_times = 0;
    let mut evaluated_times = 0;
    for tau in 1..=tau_max {
        if crosscheck {
            state = ops.step(&state, 1);
        }
        if !necessary_condition(sd, x, tau, DEFAULT_NECESSARY_TOL)? {
            pruned_times += 1;
            continue;
        }
        evaluated_times += 1;
        for (y, target_state) in target_states.iter().enumerate() {
            let spectral = Complex64::new(spectral_amplitude(sd, x, y, tau), 0.0);
            let (amplitude, method) = if crosscheck {
                let direct = state.inner(target_state);
                assert!(
                    (direct - spectral).norm() <= METHOD_AGREEMENT_TOL,
                    "direct ({direct}) and spectral ({spectral}) amplitudes \
                     disagree for x={x} y={y} tau={tau}"
                );
                (direct, Method::Both)
            } else {
                (spectral, Method::Chebyshev)
            };
            let report = report_from_amplitude(x, y, tau, amplitude, pst_tol, method);
            if report.pst {
                hits.push(report);
            }
        }
    }
    Ok(ScanReport {
        source: x,
        tau_max,
        pst_tol,
        hits,
        pruned_times,
        evaluated_times,
    })
}

/// Smallest p <= `tau_bound` with `‖U^p - I‖_max <= tol`.
///
/// Tracks `U^p` column by column through the sparse step, so the cost is
/// O(p · |𝒜|²) without ever forming a dense product.
pub fn find_period(ops: &WalkOperators, tau_bound: u32, tol: f64) -> PeriodReport {
    let a = ops.arc_count();
    let mut columns: Vec<Vec<f64>> = (0..a)
        .map(|k| {
            let mut column = vec![0.0; a];
            column[k] = 1.0;
            column
        })
        .collect();
    let mut scratch = vec![0.0f64; a];
    let mut best_deviation = f64::INFINITY;
    for t in 1..=tau_bound {
        for column in columns.iter_mut() {
            ops.apply_evolution(column, &mut scratch);
            std::mem::swap(column, &mut scratch);
        }
        let mut deviation = 0.0f64;
        for (k, column) in columns.iter().enumerate() {
            for (r, &value) in column.iter().enumerate() {
                let target = if r == k { 1.0 } else { 0.0 };
                deviation = deviation.max((value - target).abs());
            }
        }
        if deviation <= tol {
            return PeriodReport {
                period: Some(t),
                bound: tau_bound,
                deviation,
            };
        }
        best_deviation = best_deviation.min(deviation);
    }
    PeriodReport {
        period: None,
        bound: tau_bound,
        deviation: best_deviation,
    }
}
