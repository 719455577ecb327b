//! Shear profiles `u(y)` on the circle and their critical-point data.
//!
//! A profile is a zero-mean trigonometric polynomial
//! `u(y) = Σ_m a_m cos(my) + b_m sin(my)`, differentiated exactly term by
//! term. Critical points are the roots of `u'`; each carries its order `n`
//! (smallest `n ≥ 1` with `u^{(n+1)}(y₀) ≠ 0`), a ball radius `η`, and
//! certified two-sided Taylor constants
//!
//! ```text
//! c₁|z-y₀|ⁿ ≤ |u'(z)| ≤ c₂|z-y₀|ⁿ,   c₃|z-y₀|ⁿ⁻¹ ≤ |u''(z)| ≤ c₄|z-y₀|ⁿ⁻¹
//! ```
//!
//! valid on `|z-y₀| ≤ η`. The maximal order over all critical points is the
//! quantity `n₀` that sets every decay exponent downstream.
//!
//! A non-periodic linear profile (constant `u'`, vanishing `u''`) is provided
//! for debugging: all path-wise quantities have closed forms there. It is
//! rejected by the periodic spectral solver.

use crate::error::CoreError;
use std::f64::consts::PI;

/// Grid used to bracket roots of u' and u''.
const ROOT_SCAN_POINTS: usize = 1 << 14;
/// Derivative magnitude above which a derivative counts as nonzero when
/// classifying the order of a critical point.
const ORDER_THRESHOLD: f64 = 1e-8;
/// Largest order we attempt to classify before declaring the profile
/// numerically flat at a root.
const MAX_ORDER: u32 = 12;
/// Points per ball used to certify the Taylor constants.
const BALL_GRID_POINTS: usize = 10_000;
/// Smallest admissible ball radius before classification gives up.
const MIN_RADIUS: f64 = 1e-4;

/// Zero-mean trigonometric shear profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ShearProfile {
    /// Coefficients of cos(m y), m = 1..=degree.
    cos_coeffs: Vec<f64>,
    /// Coefficients of sin(m y), m = 1..=degree.
    sin_coeffs: Vec<f64>,
}

impl ShearProfile {
    /// Builds a profile from cosine and sine coefficient arrays `a_1..a_M`,
    /// `b_1..b_M` (shorter array padded with zeros).
    pub fn new(cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self, CoreError> {
        let degree = cos_coeffs.len().max(sin_coeffs.len());
        if degree == 0 {
            return Err(CoreError::InvalidProfile("no Fourier modes given".into()));
        }
        if degree > 64 {
            return Err(CoreError::InvalidProfile(format!(
                "degree {degree} exceeds the supported maximum 64"
            )));
        }
        let mut a = cos_coeffs;
        let mut b = sin_coeffs;
        a.resize(degree, 0.0);
        b.resize(degree, 0.0);
        if a.iter().chain(b.iter()).any(|c| !c.is_finite()) {
            return Err(CoreError::InvalidProfile("non-finite coefficient".into()));
        }
        if a.iter().chain(b.iter()).all(|c| *c == 0.0) {
            return Err(CoreError::InvalidProfile("all coefficients zero".into()));
        }
        Ok(Self {
            cos_coeffs: a,
            sin_coeffs: b,
        })
    }

    /// Builds a profile from `(mode, a_m, b_m)` triples.
    pub fn from_modes(modes: &[(u32, f64, f64)]) -> Result<Self, CoreError> {
        if modes.is_empty() {
            return Err(CoreError::InvalidProfile("no Fourier modes given".into()));
        }
        let degree = modes.iter().map(|(m, _, _)| *m).max().unwrap() as usize;
        if modes.iter().any(|(m, _, _)| *m == 0) {
            return Err(CoreError::InvalidProfile(
                "mode 0 would break the zero-mean normalisation".into(),
            ));
        }
        let mut a = vec![0.0; degree];
        let mut b = vec![0.0; degree];
        for &(m, am, bm) in modes {
            a[(m - 1) as usize] += am;
            b[(m - 1) as usize] += bm;
        }
        Self::new(a, b)
    }

    /// Number of Fourier modes (highest wavenumber present).
    pub fn degree(&self) -> usize {
        self.cos_coeffs.len()
    }

    /// `d`-th derivative at `y`, differentiated term by term:
    /// `(d/dy)^d cos(my) = m^d cos(my + dπ/2)` and likewise for sine, so each
    /// term only rotates through the four-cycle (cos, −sin, −cos, sin).
    pub fn evaluate(&self, y: f64, d: u32) -> f64 {
        let mut acc = 0.0;
        for (idx, (&a, &b)) in self.cos_coeffs.iter().zip(&self.sin_coeffs).enumerate() {
            if a == 0.0 && b == 0.0 {
                continue;
            }
            let m = (idx + 1) as f64;
            let (s, c) = (m * y).sin_cos();
            let scale = m.powi(d as i32);
            let (ca, sb) = match d % 4 {
                0 => (c, s),
                1 => (-s, c),
                2 => (-c, -s),
                _ => (s, -c),
            };
            acc += scale * (a * ca + b * sb);
        }
        acc
    }

    /// Maximum of `|u^{(d)}|` on a uniform grid of `points` samples.
    pub fn grid_max_abs(&self, d: u32, points: usize) -> f64 {
        (0..points)
            .map(|j| self.evaluate(2.0 * PI * j as f64 / points as f64, d).abs())
            .fold(0.0, f64::max)
    }
}

/// Critical point of the shear profile: a root `y₀` of `u'` with its order
/// and certified Taylor data.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    /// Location in `[0, 2π)`.
    pub location: f64,
    /// Order `n`: `u'` vanishes like `|z-y₀|ⁿ` at the point.
    pub order: u32,
    /// Ball radius on which the Taylor bounds are certified.
    pub radius: f64,
    /// `[c₁, c₂, c₃, c₄]` as in the module documentation.
    pub taylor_constants: [f64; 4],
}

/// A velocity profile usable by the stochastic and variational engines.
///
/// `Linear` is the constant-slope debug profile: it is not periodic, so the
/// spectral solver rejects it, but every Malliavin quantity is available in
/// closed form, which anchors the analytic test suite.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Trig(ShearProfile),
    Linear { slope: f64 },
}

impl Profile {
    /// `d`-th derivative of the profile at `y`.
    pub fn evaluate(&self, y: f64, d: u32) -> f64 {
        match self {
            Profile::Trig(p) => p.evaluate(y, d),
            Profile::Linear { slope } => match d {
                0 => slope * y,
                1 => *slope,
                _ => 0.0,
            },
        }
    }

    /// Critical points of the profile, located to absolute tolerance `tol`.
    ///
    /// Roots of `u'` are bracketed by sign changes on a dense grid and
    /// bisected; even-order roots (no sign change in `u'`) are recovered as
    /// sign changes of `u''` whose `u'` value is negligible.
    pub fn critical_points(&self, tol: f64) -> Result<Vec<CriticalPoint>, CoreError> {
        let trig = match self {
            Profile::Trig(p) => p,
            // u' is a nonzero constant: no critical points.
            Profile::Linear { .. } => return Ok(Vec::new()),
        };
        if !(tol > 0.0 && tol < 1e-3) {
            return Err(CoreError::InvalidArgument(format!(
                "root tolerance {tol} outside (0, 1e-3)"
            )));
        }
        let scale = trig.grid_max_abs(1, ROOT_SCAN_POINTS);
        let accept = 1e-9 * scale.max(1.0);

        let mut roots = find_roots(|y| trig.evaluate(y, 1), tol);
        for r in find_roots(|y| trig.evaluate(y, 2), tol) {
            if trig.evaluate(r, 1).abs() <= accept {
                roots.push(r);
            }
        }
        roots.sort_by(|a, b| a.total_cmp(b));
        roots.dedup_by(|a, b| circular_distance(*a, *b) < 1e-7);
        // The first and last root can coincide across the 2π wrap.
        if roots.len() > 1 {
            let last = *roots.last().unwrap();
            if circular_distance(roots[0], last) < 1e-7 {
                roots.pop();
            }
        }

        let mut points = Vec::with_capacity(roots.len());
        for &y0 in &roots {
            points.push(classify(trig, y0, &roots)?);
        }
        Ok(points)
    }

    /// Maximal critical-point order `n₀` (0 when `u'` never vanishes).
    pub fn max_order(&self, tol: f64) -> Result<u32, CoreError> {
        Ok(self
            .critical_points(tol)?
            .iter()
            .map(|p| p.order)
            .max()
            .unwrap_or(0))
    }

    /// True for the trigonometric (periodic) profiles.
    pub fn is_periodic(&self) -> bool {
        matches!(self, Profile::Trig(_))
    }

    /// Underlying trig profile, if periodic.
    pub fn as_trig(&self) -> Option<&ShearProfile> {
        match self {
            Profile::Trig(p) => Some(p),
            Profile::Linear { .. } => None,
        }
    }
}

/// Named profile presets used throughout the experiments.
///
/// Ordering is stable: it is the order in which presets are listed by the
/// CLI and documented in the experiment configs.
pub fn presets() -> Vec<(&'static str, Profile)> {
    vec![
        ("sin", Profile::Trig(ShearProfile::new(vec![], vec![1.0]).unwrap())),
        ("cos", Profile::Trig(ShearProfile::new(vec![1.0], vec![]).unwrap())),
        (
            "sin3",
            Profile::Trig(ShearProfile::new(vec![], vec![0.75, 0.0, -0.25]).unwrap()),
        ),
        ("couette", Profile::Linear { slope: 1.0 }),
    ]
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Option<Profile> {
    presets()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, p)| p)
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// All roots of `f` in `[0, 2π)` found by sign-change bracketing on a dense
/// grid followed by bisection; exact grid zeros are kept as-is.
fn find_roots(f: impl Fn(f64) -> f64, tol: f64) -> Vec<f64> {
    let n = ROOT_SCAN_POINTS;
    let h = 2.0 * PI / n as f64;
    let values: Vec<f64> = (0..=n).map(|j| f(j as f64 * h)).collect();
    let mut roots = Vec::new();
    for j in 0..n {
        let (fa, fb) = (values[j], values[j + 1]);
        if fa == 0.0 {
            roots.push((j as f64 * h).rem_euclid(2.0 * PI));
        } else if fa * fb < 0.0 {
            let root = bisect(&f, j as f64 * h, (j + 1) as f64 * h, fa, tol);
            roots.push(root.rem_euclid(2.0 * PI));
        }
    }
    roots
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, flo: f64, tol: f64) -> f64 {
    let sign_lo = flo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Classifies one root of `u'`: order, ball radius, Taylor constants.
fn classify(
    profile: &ShearProfile,
    y0: f64,
    all_roots: &[f64],
) -> Result<CriticalPoint, CoreError> {
    let order = (1..=MAX_ORDER)
        .find(|n| profile.evaluate(y0, n + 1).abs() > ORDER_THRESHOLD)
        .ok_or_else(|| CoreError::Classification {
            location: y0,
            reason: format!("all derivatives up to {} below threshold", MAX_ORDER + 1),
        })?;

    let factorial: f64 = (1..=order).map(|j| j as f64).product();
    let c1 = profile.evaluate(y0, order + 1).abs() / (2.0 * factorial);

    // Start from just under half the distance to the nearest other critical
    // point (so balls stay disjoint) and halve until the two-sided bounds
    // certify on a dense grid.
    let min_dist = all_roots
        .iter()
        .map(|&r| circular_distance(r, y0))
        .filter(|d| *d > 1e-7)
        .fold(f64::INFINITY, f64::min);
    let mut radius = if min_dist.is_finite() {
        0.45 * min_dist
    } else {
        1.0
    };

    while radius >= MIN_RADIUS {
        if let Some(constants) = certify_ball(profile, y0, order, c1, radius) {
            return Ok(CriticalPoint {
                location: y0,
                order,
                radius,
                taylor_constants: constants,
            });
        }
        radius *= 0.5;
    }
    Err(CoreError::Classification {
        location: y0,
        reason: "no ball radius certified the Taylor bounds".into(),
    })
}

/// Checks the two-sided Taylor bounds on `|z-y₀| ≤ radius` over a symmetric
/// grid that avoids the centre, returning `[c₁, c₂, c₃, c₄]` on success.
fn certify_ball(
    profile: &ShearProfile,
    y0: f64,
    order: u32,
    c1: f64,
    radius: f64,
) -> Option<[f64; 4]> {
    let g = BALL_GRID_POINTS;
    let mut c2: f64 = 0.0;
    let mut c3 = f64::INFINITY;
    let mut c4: f64 = 0.0;
    for i in 0..g {
        // Offsets (2i+1-g)/g ∈ (-1, 1) are symmetric and never exactly 0.
        let offset = radius * ((2 * i + 1) as f64 - g as f64) / g as f64;
        let dist = offset.abs();
        let q1 = profile.evaluate(y0 + offset, 1).abs() / dist.powi(order as i32);
        if q1 < c1 {
            return None;
        }
        c2 = c2.max(q1);
        let q2 = profile.evaluate(y0 + offset, 2).abs() / dist.powi(order as i32 - 1);
        c3 = c3.min(q2);
        c4 = c4.max(q2);
    }
    if c3 <= 0.0 || !c3.is_finite() {
        return None;
    }
    Some([c1, c2, c3, c4])
}
