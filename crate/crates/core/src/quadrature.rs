//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! The panel with the largest error estimate is bisected until the summed
//! estimate drops below the absolute tolerance or the panel budget runs out.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Kronrod abscissae on [0, 1); odd indices are shared with the 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Panel {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
    pub error: f64,
    /// Largest |f| over the panel's nodes.
    pub peak: f64,
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod evaluation with the QUADPACK error rescaling.
pub fn gauss_kronrod<F, E>(f: &mut F, lo: f64, hi: f64) -> Result<Panel, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center)?;
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut peak = f_center.abs();
    let mut values = [(0.0, 0.0); 7];
    for (j, &node) in XGK[..7].iter().enumerate() {
        let dx = half * node;
        let (left, right) = (f(center - dx)?, f(center + dx)?);
        values[j] = (left, right);
        kronrod += WGK[j] * (left + right);
        abs_sum += WGK[j] * (left.abs() + right.abs());
        peak = peak.max(left.abs()).max(right.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (left + right);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (f_center - mean).abs();
    for (j, (left, right)) in values.iter().enumerate() {
        asc += WGK[j] * ((left - mean).abs() + (right - mean).abs());
    }

    let value = kronrod * half;
    let abs_value = abs_sum * half.abs();
    let asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    if abs_value > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * abs_value);
    }
    Ok(Panel {
        lo,
        hi,
        value,
        error,
        peak,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub converged: bool,
    pub evaluations: usize,
    /// Final partition, ordered by position.
    pub panels: Vec<Panel>,
}

pub const DEFAULT_MAX_PANELS: usize = 2000;

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`.
///
/// Integrand errors abort the integration. Running out of panels is not an
/// error here; check [`Quadrature::converged`].
pub fn integrate<F, E>(f: F, lo: f64, hi: f64, tol: f64, max_panels: usize) -> Result<Quadrature, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    integrate_bounded(f, lo, hi, tol, max_panels, 0.0)
}

/// As [`integrate`], but panels narrower than `min_width` are never bisected.
/// Refinement stops, unconverged, once the worst panel reaches that width.
pub fn integrate_bounded<F, E>(
    mut f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_panels: usize,
    min_width: f64,
) -> Result<Quadrature, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&mut f, lo, hi)?;
    let mut error = first.error;
    let mut evaluations = 15;
    heap.push(first);

    while error > tol && heap.len() < max_panels.max(1) {
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(worst.lo < mid && mid < worst.hi) || (worst.hi - worst.lo).abs() < min_width {
            // cannot bisect further
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod(&mut f, worst.lo, mid)?;
        let right = gauss_kronrod(&mut f, mid, worst.hi)?;
        evaluations += 30;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.lo.total_cmp(&q.lo));
    // re-sum to shed drift from the incremental error updates
    let error_sum: f64 = panels.iter().map(|p| p.error).sum();
    Ok(Quadrature {
        value: panels.iter().map(|p| p.value).sum(),
        error: error_sum,
        converged: error_sum <= tol,
        evaluations,
        panels,
    })
}
