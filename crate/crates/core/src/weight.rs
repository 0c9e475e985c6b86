//! The 2x2 hypergeometric matrix weight on the plane minus the mirrors.
//!
//! The weight is assembled as K = L^T diag(d1, d2) L from a fundamental
//! solution L(u) of a first-order system on the open octant 0 < x2 < x1,
//! u = x2/x1, and extended to the other octants by conjugation. L has two
//! evaluation branches: a direct hypergeometric series in u^2 below the
//! switch point, and a connection-formula factorization in 1 - u^2 above
//! it. The factored branch takes the distance to the diagonal as an input,
//! so callers that sit extremely close to a mirror lose no precision.
//!
//! Everything here is double precision; the exact layers never call in.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, PI};

use crate::algebra::GroupElement;
use crate::error::{Error, Result};

/// 2x2 real matrix, rows by columns.
pub type Mat2 = [[f64; 2]; 2];

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

pub fn mat2_transpose(a: &Mat2) -> Mat2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// The involution (1/sqrt 2)[[1,1],[1,-1]] that diagonalizes the swap;
/// conjugation by it turns the near-diagonal behavior of K into the
/// near-axis pattern.
pub const SIGMA: Mat2 = [
    [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2],
    [std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_1_SQRT_2],
];

/// sigma * K * sigma.
pub fn conjugate_sigma(k: &Mat2) -> Mat2 {
    mat2_mul(&mat2_mul(&SIGMA, k), &SIGMA)
}

/// Neumaier-compensated accumulator: the running compensation recovers the
/// low-order bits both when the sum dominates the addend and conversely.
#[derive(Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// The gamma function, Lanczos approximation with reflection for x < 1/2.
/// Relative error stays below 1e-13 on the range this crate uses.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole(x));
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma_fn(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a)
}

const HYP_TERM_CAP: u32 = 100_000;

fn nonpositive_integer(v: f64) -> Option<u32> {
    if v <= 0.0 && v == v.floor() {
        Some((-v) as u32)
    } else {
        None
    }
}

/// The Gauss hypergeometric series F(a, b; c; s) on 0 <= s < 1, by direct
/// compensated summation. Terminating cases (a or b a nonpositive integer)
/// stop exactly; otherwise the geometric tail ratio s keeps the term count
/// modest even close to 1.
pub fn gauss_2f1(a: f64, b: f64, c: f64, s: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::Domain(format!(
            "hypergeometric argument must lie in [0, 1), got {s}"
        )));
    }
    let stop = match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(na), Some(nb)) => Some(na.min(nb)),
        (Some(na), None) => Some(na),
        (None, Some(nb)) => Some(nb),
        (None, None) => None,
    };
    if let Some(nc) = nonpositive_integer(c) {
        if stop.map_or(true, |st| st > nc) {
            return Err(Error::Hypergeometric(format!(
                "lower parameter {c} is a nonpositive integer"
            )));
        }
    }
    let mut acc = Neumaier::default();
    acc.add(1.0);
    let mut term = 1.0f64;
    let mut small_streak = 0u32;
    for j in 0..HYP_TERM_CAP {
        if stop == Some(j) {
            return Ok(acc.value());
        }
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (1.0 + jf)) * s;
        acc.add(term);
        if term.abs() <= f64::EPSILON * acc.value().abs() * 0.25 + f64::MIN_POSITIVE {
            small_streak += 1;
            if small_streak >= 2 && j >= 4 {
                return Ok(acc.value());
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NonConvergence(format!(
        "hypergeometric series F({a},{b};{c};{s}) exceeded {HYP_TERM_CAP} terms"
    )))
}

/// The constant eta(k0, k1) in its duplication form
/// 2^(2 k0 - 1) / sqrt(pi) * G(1/2 + k1) G(1/2 + k0) / G(1/2 + k0 + k1),
/// finite and smooth across k0 = 0.
pub fn eta(k0: f64, k1: f64) -> Result<f64> {
    Ok(2f64.powf(2.0 * k0 - 1.0) / PI.sqrt() * gamma_fn(0.5 + k1)? * gamma_fn(0.5 + k0)?
        / gamma_fn(0.5 + k0 + k1)?)
}

/// How the normalization constant of the weight is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CMode {
    /// cos(pi k0) cos(pi k1) / (2 pi): the value the quadrature experiment
    /// is designed to confirm.
    Conjecture,
    /// c = 1, for measuring the normalization rather than assuming it.
    Unit,
    /// A caller-supplied value.
    Numeric(f64),
}

/// Working precision of the floating-point paths. Extended keeps every
/// compensated accumulator and pushes series and quadrature refinement to
/// the roundoff floor instead of stopping at the double-precision target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
}

/// Parameters of the weight: multiplicities as floats, the normalization
/// mode, and the precision mode. Construction enforces the open square
/// |k0 +- k1| < 1/2 on which the weight is positive-definite.
#[derive(Clone, Copy, Debug)]
pub struct WeightParams {
    pub k0: f64,
    pub k1: f64,
    pub c_mode: CMode,
    pub precision: Precision,
}

impl WeightParams {
    pub fn new(k0: f64, k1: f64, c_mode: CMode) -> Result<Self> {
        let inside = (k0 + k1).abs() < 0.5 && (k1 - k0).abs() < 0.5;
        if !inside {
            return Err(Error::OutsideValiditySquare(k0, k1));
        }
        Ok(WeightParams {
            k0,
            k1,
            c_mode,
            precision: Precision::Double,
        })
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    /// The active normalization constant.
    pub fn c(&self) -> f64 {
        match self.c_mode {
            CMode::Conjecture => (PI * self.k0).cos() * (PI * self.k1).cos() / (2.0 * PI),
            CMode::Unit => 1.0,
            CMode::Numeric(v) => v,
        }
    }
}

/// Branch switch for L(u): direct series at u^2 <= 1/2, factored form
/// above, so both hypergeometric arguments stay <= 1/2.
pub const L_BRANCH_SWITCH: f64 = 0.5;

fn l_direct(u: f64, wp: &WeightParams) -> Result<Mat2> {
    let (k0, k1) = (wp.k0, wp.k1);
    let s = u * u;
    let oms = 1.0 - s;
    let pref = oms.powf(-k0);
    let up = u.powf(k1);
    let um = u.powf(-k1);
    let l11 = up * pref * gauss_2f1(-k0, 0.5 - k0 + k1, k1 + 0.5, s)?;
    let l12 = -(k0 / (k1 + 0.5)) * up * pref * u * gauss_2f1(1.0 - k0, 0.5 - k0 + k1, k1 + 1.5, s)?;
    let l21 = -(k0 / (0.5 - k1)) * um * pref * u * gauss_2f1(1.0 - k0, 0.5 - k0 - k1, 1.5 - k1, s)?;
    let l22 = um * pref * gauss_2f1(-k0, 0.5 - k0 - k1, 0.5 - k1, s)?;
    Ok([[l11, l12], [l21, l22]])
}

/// F(a, a + b + 1/2; 2a + 1; 1 - s) — the building block of the factored
/// branch, taking the small quantity 1 - s directly.
fn h_fn(a: f64, b: f64, one_minus_s: f64) -> Result<f64> {
    gauss_2f1(a, a + b + 0.5, 2.0 * a + 1.0, one_minus_s)
}

/// The factored branch: Gamma-matrix times diag((1-u^2)^{k0}, (1-u^2)^{-k0})
/// times the H-matrix times diag(u^{k1}, u^{-k1}). `oms` is 1 - u^2,
/// supplied by the caller so near-diagonal points keep full precision.
fn l_factored(u: f64, oms: f64, wp: &WeightParams) -> Result<Mat2> {
    let (k0, k1) = (wp.k0, wp.k1);
    let gm = [
        [eta(-k0, k1)?, eta(k0, k1)?],
        [eta(-k0, -k1)?, -eta(k0, -k1)?],
    ];
    let dpow = [oms.powf(k0), oms.powf(-k0)];
    let h = [
        [h_fn(k0, k1, oms)?, h_fn(k0, -k1, oms)?],
        [h_fn(-k0, k1, oms)?, -h_fn(-k0, -k1, oms)?],
    ];
    let upow = [u.powf(k1), u.powf(-k1)];
    let mut l = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let v = gm[r][0] * dpow[0] * h[0][c] + gm[r][1] * dpow[1] * h[1][c];
            l[r][c] = v * upow[c];
        }
    }
    Ok(l)
}

/// The fundamental solution L(u) on 0 < u < 1, branch chosen by u^2
/// against the switch point. det L(u) = 1 up to roundoff.
pub fn l_matrix(u: f64, wp: &WeightParams) -> Result<Mat2> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain(format!(
            "fundamental solution needs 0 < u < 1, got {u}"
        )));
    }
    if u * u <= L_BRANCH_SWITCH {
        l_direct(u, wp)
    } else {
        l_factored(u, (1.0 - u) * (1.0 + u), wp)
    }
}

/// The diagonal constants of K = L^T diag(d1, d2) L.
pub fn d_consts(wp: &WeightParams) -> Result<(f64, f64)> {
    let (k0, k1) = (wp.k0, wp.k1);
    let c = wp.c();
    let cp = (PI * k0).cos();
    let d1 = c * gamma_fn(0.5 - k1)?.powi(2)
        / (cp * gamma_fn(0.5 + k0 - k1)? * gamma_fn(0.5 - k0 - k1)?);
    let d2 = c * gamma_fn(0.5 + k1)?.powi(2)
        / (cp * gamma_fn(0.5 + k0 + k1)? * gamma_fn(0.5 - k0 + k1)?);
    Ok((d1, d2))
}

fn k_from_l(l: &Mat2, d1: f64, d2: f64) -> Mat2 {
    let k11 = d1 * l[0][0] * l[0][0] + d2 * l[1][0] * l[1][0];
    let k12 = d1 * l[0][0] * l[0][1] + d2 * l[1][0] * l[1][1];
    let k22 = d1 * l[0][1] * l[0][1] + d2 * l[1][1] * l[1][1];
    [[k11, k12], [k12, k22]]
}

/// K on the fundamental ray (1, u), 0 < u < 1.
pub fn k_fundamental(u: f64, wp: &WeightParams) -> Result<Mat2> {
    let (d1, d2) = d_consts(wp)?;
    Ok(k_from_l(&l_matrix(u, wp)?, d1, d2))
}

/// K on the fundamental ray with the distance to the diagonal supplied:
/// `oms` = 1 - u^2. Always uses the factored branch.
pub fn k_fund_with_oms(u: f64, oms: f64, wp: &WeightParams) -> Result<Mat2> {
    let (d1, d2) = d_consts(wp)?;
    Ok(k_from_l(&l_factored(u, oms, wp)?, d1, d2))
}

/// An angle inside the open fundamental octant (0, pi/4), given as the
/// offset from the nearest mirror so extreme proximity loses no precision.
#[derive(Clone, Copy, Debug)]
pub enum OctantAngle {
    /// phi = delta, measured from the coordinate axis.
    FromAxis(f64),
    /// phi = pi/4 - delta, measured from the diagonal.
    FromDiagonal(f64),
}

/// K at the unit-circle point of the given octant angle. The near-axis
/// side maps to the direct branch through u = tan(phi); the near-diagonal
/// side builds u and 1 - u^2 from tan(delta) without cancellation.
pub fn k_fund_octant(angle: OctantAngle, wp: &WeightParams) -> Result<Mat2> {
    match angle {
        OctantAngle::FromAxis(delta) => {
            if delta <= 0.0 || delta > FRAC_PI_8 {
                return Err(Error::Domain(format!(
                    "axis offset must lie in (0, pi/8], got {delta}"
                )));
            }
            k_fundamental(delta.tan(), wp)
        }
        OctantAngle::FromDiagonal(delta) => {
            if delta <= 0.0 || delta > FRAC_PI_8 {
                return Err(Error::Domain(format!(
                    "diagonal offset must lie in (0, pi/8], got {delta}"
                )));
            }
            let tf = delta.tan();
            let u = (1.0 - tf) / (1.0 + tf);
            let oms = 4.0 * tf / ((1.0 + tf) * (1.0 + tf));
            k_fund_with_oms(u, oms, wp)
        }
    }
}

/// K at an octant angle phi in (0, pi/4), dispatching on which mirror is
/// nearer. Exact endpoints report the mirror.
pub fn k_fund_angle(phi: f64, wp: &WeightParams) -> Result<Mat2> {
    if phi <= 0.0 || phi >= FRAC_PI_4 {
        return Err(Error::OnMirror(phi.cos(), phi.sin()));
    }
    if phi <= FRAC_PI_8 {
        k_fund_octant(OctantAngle::FromAxis(phi), wp)
    } else {
        k_fund_octant(OctantAngle::FromDiagonal(FRAC_PI_4 - phi), wp)
    }
}

/// Map x into the open fundamental octant 0 < y2 < y1: returns (w, y) with
/// y = x w. Points exactly on a mirror (or the origin) have no such image.
pub fn chamber_reduce(x: [f64; 2]) -> Result<(GroupElement, [f64; 2])> {
    for w in crate::algebra::GROUP {
        let y = w.apply_point(x);
        if 0.0 < y[1] && y[1] < y[0] {
            return Ok((w, y));
        }
    }
    Err(Error::OnMirror(x[0], x[1]))
}

/// The matrix weight at any point off the mirrors: reduce to the
/// fundamental octant, evaluate there, conjugate back by the reducing
/// element. Degree-0 homogeneous by construction.
pub fn k_matrix(x: [f64; 2], wp: &WeightParams) -> Result<Mat2> {
    let (w, y) = chamber_reduce(x)?;
    let kf = k_fundamental(y[1] / y[0], wp)?;
    let m = w.matrix_f64();
    Ok(mat2_mul(&mat2_mul(&m, &kf), &mat2_transpose(&m)))
}

/// Closed form for k0 = 0: the weight is diagonal with entries
/// c |x2/x1|^(2 k1) and its reciprocal.
pub fn k_degenerate_k0_zero(x: [f64; 2], wp: &WeightParams) -> Result<Mat2> {
    if x[0] == 0.0 || x[1] == 0.0 {
        return Err(Error::OnMirror(x[0], x[1]));
    }
    let c = wp.c();
    let t = (x[1] / x[0]).abs().powf(2.0 * wp.k1);
    Ok([[c * t, 0.0], [0.0, c / t]])
}

/// Closed form for k1 = 0: conjugate of a diagonal weight in the rotated
/// frame, entries c |x1 - x2|^(+-2 k0) |x1 + x2|^(-+2 k0).
pub fn k_degenerate_k1_zero(x: [f64; 2], wp: &WeightParams) -> Result<Mat2> {
    if x[0] == x[1] || x[0] == -x[1] {
        return Err(Error::OnMirror(x[0], x[1]));
    }
    let c = wp.c();
    let a = ((x[0] - x[1]).abs() / (x[0] + x[1]).abs()).powf(2.0 * wp.k0);
    let diag = [[c * a, 0.0], [0.0, c / a]];
    Ok(conjugate_sigma(&diag))
}

/// One output row of a weight sampling run; entries are None when the
/// angle sits exactly on a mirror.
#[derive(Clone, Debug)]
pub struct WeightSampleRow {
    pub theta: f64,
    pub entries: Option<(f64, f64, f64)>,
}

/// Sample K (or sigma K sigma when `conjugated`) on the unit circle at the
/// given angles. Mirror hits become None rows; other errors abort.
pub fn weight_sample(
    theta_grid: &[f64],
    wp: &WeightParams,
    conjugated: bool,
) -> Result<Vec<WeightSampleRow>> {
    let mut rows = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        let x = [theta.cos(), theta.sin()];
        match k_matrix(x, wp) {
            Ok(k) => {
                let k = if conjugated { conjugate_sigma(&k) } else { k };
                rows.push(WeightSampleRow {
                    theta,
                    entries: Some((k[0][0], k[0][1], k[1][1])),
                });
            }
            Err(Error::OnMirror(..)) => rows.push(WeightSampleRow {
                theta,
                entries: None,
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(rows)
}

/// The first-order system matrix A(u) with dL/du = L A(u).
fn l_ode_coefficient(u: f64, wp: &WeightParams) -> Mat2 {
    let r = wp.k1 / u;
    let s = 2.0 * wp.k0 / (1.0 - u * u);
    [[r, -s], [-s, -r]]
}

/// Relative residual of the ODE dL/du = L A(u) by central differences.
pub fn l_ode_residual(u: f64, h: f64, wp: &WeightParams) -> Result<f64> {
    let lp = l_matrix(u + h, wp)?;
    let lm = l_matrix(u - h, wp)?;
    let l = l_matrix(u, wp)?;
    let a = l_ode_coefficient(u, wp);
    let rhs = mat2_mul(&l, &a);
    let mut num = 0.0f64;
    let mut den = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            let d = (lp[r][c] - lm[r][c]) / (2.0 * h);
            num = num.max((d - rhs[r][c]).abs());
            den = den.max(rhs[r][c].abs());
        }
    }
    Ok(num / den.max(1.0))
}

/// Relative residual of the weight equation
/// dK/dx_i = sum_v kappa(v) (v_i / <x, v>) (sigma_v K + K sigma_v)
/// at a point in the open fundamental octant, with Richardson-extrapolated
/// central differences.
pub fn k_pde_residual(x: [f64; 2], wp: &WeightParams) -> Result<f64> {
    let roots: [([f64; 2], GroupElement, f64); 4] = [
        ([1.0, -1.0], GroupElement::S12P, wp.k0),
        ([1.0, 1.0], GroupElement::S12M, wp.k0),
        ([1.0, 0.0], GroupElement::S1, wp.k1),
        ([0.0, 1.0], GroupElement::S2, wp.k1),
    ];
    let k = k_matrix(x, wp)?;
    let h = 1e-4 * (x[0] * x[0] + x[1] * x[1]).sqrt();
    let mut worst = 0.0f64;
    for i in 0..2 {
        let diff = |step: f64| -> Result<Mat2> {
            let mut xp = x;
            let mut xm = x;
            xp[i] += step;
            xm[i] -= step;
            let kp = k_matrix(xp, wp)?;
            let km = k_matrix(xm, wp)?;
            let mut out = [[0.0; 2]; 2];
            for r in 0..2 {
                for c in 0..2 {
                    out[r][c] = (kp[r][c] - km[r][c]) / (2.0 * step);
                }
            }
            Ok(out)
        };
        let d_h = diff(h)?;
        let d_h2 = diff(h / 2.0)?;
        let mut rhs = [[0.0; 2]; 2];
        for (v, refl, kappa) in &roots {
            let dot = x[0] * v[0] + x[1] * v[1];
            let factor = kappa * v[i] / dot;
            if factor == 0.0 {
                continue;
            }
            let sm = refl.matrix_f64();
            let a = mat2_mul(&sm, &k);
            let b = mat2_mul(&k, &sm);
            for r in 0..2 {
                for c in 0..2 {
                    rhs[r][c] += factor * (a[r][c] + b[r][c]);
                }
            }
        }
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                let richardson = (4.0 * d_h2[r][c] - d_h[r][c]) / 3.0;
                num = num.max((richardson - rhs[r][c]).abs());
                den = den.max(rhs[r][c].abs());
            }
        }
        worst = worst.max(num / den.max(1.0));
    }
    Ok(worst)
}

/// Least-squares slope of log|y| against log(x).
pub fn fit_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.abs().ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Measured decay exponent of K12(1, eps) as eps -> 0, fit over
/// eps in [1e-4, 1e-2].
pub fn k12_axis_slope(wp: &WeightParams) -> Result<f64> {
    let mut pts = Vec::new();
    for j in 0..=8 {
        let eps = 1e-4 * 10f64.powf(j as f64 / 4.0);
        let k = k_fundamental(eps, wp)?;
        pts.push((eps, k[0][1]));
    }
    Ok(fit_log_slope(&pts))
}

/// Measured decay exponent of K11 - K22 at (1, 1 - eps) as eps -> 0, fit
/// over eps in [1e-4, 1e-2].
pub fn diag_gap_slope(wp: &WeightParams) -> Result<f64> {
    let mut pts = Vec::new();
    for j in 0..=8 {
        let eps = 1e-4 * 10f64.powf(j as f64 / 4.0);
        let u = 1.0 - eps;
        let k = k_fund_with_oms(u, eps * (2.0 - eps), wp)?;
        pts.push((eps, k[0][0] - k[1][1]));
    }
    Ok(fit_log_slope(&pts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wp31() -> WeightParams {
        WeightParams::new(0.3, 0.1, CMode::Conjecture).unwrap()
    }

    #[test]
    fn gamma_classical_values() {
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-14);
        assert!(matches!(gamma_fn(0.0), Err(Error::GammaPole(_))));
        assert!(matches!(gamma_fn(-3.0), Err(Error::GammaPole(_))));
    }

    #[test]
    fn gamma_duplication() {
        let a = 0.3f64;
        let lhs = gamma_fn(2.0 * a).unwrap() / gamma_fn(a).unwrap();
        let rhs = 2f64.powf(2.0 * a - 1.0) * gamma_fn(a + 0.5).unwrap() / PI.sqrt();
        assert!((lhs - rhs).abs() < 1e-13 * rhs.abs());
    }

    #[test]
    fn hypergeometric_quadratic_transform() {
        // F(a, a+1/2; 2a+1; 1-u^2) = ((1+u)/2)^(-2a) at a = 0.3, u = 0.5.
        let v = gauss_2f1(0.3, 0.8, 1.6, 0.75).unwrap();
        let expect = 0.75f64.powf(-0.6);
        assert!((v - expect).abs() < 1e-12 * expect, "{v} vs {expect}");
        assert!((gauss_2f1(0.4, 0.7, 1.2, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(gauss_2f1(0.4, 0.7, 1.2, 1.0).is_err());
    }

    #[test]
    fn hypergeometric_euler_identity() {
        // F(a,b;c;u) = (1-u)^(c-a-b) F(c-a, c-b; c; u)
        let cases = [
            (0.25, 0.7, 1.3, 0.4),
            (-0.3, 0.45, 0.9, 0.6),
            (0.6, -0.2, 1.7, 0.85),
        ];
        for (a, b, c, u) in cases {
            let lhs = gauss_2f1(a, b, c, u).unwrap();
            let rhs = (1.0 - u).powf(c - a - b) * gauss_2f1(c - a, c - b, c, u).unwrap();
            assert!(
                (lhs - rhs).abs() < 1e-11 * lhs.abs().max(1.0),
                "({a},{b},{c},{u}): {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn eta_values_and_identity() {
        assert!((eta(0.0, 0.0).unwrap() - 0.5).abs() < 1e-14);
        let (k0, k1) = (0.3, 0.1);
        let lhs = eta(k0, k1).unwrap() * eta(-k0, -k1).unwrap()
            + eta(k0, -k1).unwrap() * eta(-k0, k1).unwrap();
        assert!((lhs - 0.5).abs() < 1e-12, "{lhs}");
    }

    #[test]
    fn l_branches_agree_and_det_is_one() {
        let wp = wp31();
        for u in [0.1, 0.3, 0.5, 0.70710678118, 0.8, 0.95] {
            let l = l_matrix(u, &wp).unwrap();
            let det = l[0][0] * l[1][1] - l[0][1] * l[1][0];
            assert!((det - 1.0).abs() < 1e-12, "u={u}: det={det}");
        }
        let sw = L_BRANCH_SWITCH.sqrt();
        let a = l_direct(sw, &wp).unwrap();
        let b = l_factored(sw, (1.0 - sw) * (1.0 + sw), &wp).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert!(
                    (a[r][c] - b[r][c]).abs() <= 1e-10 * a[r][c].abs().max(1.0),
                    "branch mismatch at [{r}][{c}]: {} vs {}",
                    a[r][c],
                    b[r][c]
                );
            }
        }
    }

    #[test]
    fn l_degenerate_k0_zero_is_diagonal_power() {
        let wp = WeightParams::new(0.0, 0.25, CMode::Conjecture).unwrap();
        for u in [0.2, 0.6, 0.9] {
            let l = l_matrix(u, &wp).unwrap();
            assert!((l[0][0] - u.powf(0.25)).abs() < 1e-12);
            assert!((l[1][1] - u.powf(-0.25)).abs() < 1e-12);
            assert!(l[0][1].abs() < 1e-12 && l[1][0].abs() < 1e-12);
        }
    }

    #[test]
    fn ode_residual_small() {
        let wp = wp31();
        for u in [0.05, 0.2, 0.5, 0.8, 0.95] {
            let r = l_ode_residual(u, 1e-5, &wp).unwrap();
            assert!(r < 1e-6, "u={u}: residual {r}");
        }
    }

    #[test]
    fn weight_determinant_and_equivariance() {
        let wp = wp31();
        let (d1, d2) = d_consts(&wp).unwrap();
        let c = wp.c();
        let expect = c * c * (1.0 - (PI * 0.3).tan().powi(2) * (PI * 0.1).tan().powi(2));
        assert!((d1 * d2 - expect).abs() < 1e-9 * expect.abs());
        let x = [0.9, 0.35];
        let k = k_matrix(x, &wp).unwrap();
        let det = k[0][0] * k[1][1] - k[0][1] * k[0][1];
        assert!((det - expect).abs() < 1e-9 * expect.abs());
        for w in crate::algebra::GROUP {
            let kx_w = k_matrix(w.apply_point(x), &wp).unwrap();
            let m = w.matrix_f64();
            let conj = mat2_mul(&mat2_mul(&mat2_transpose(&m), &k), &m);
            for r in 0..2 {
                for cc in 0..2 {
                    assert!(
                        (kx_w[r][cc] - conj[r][cc]).abs() < 1e-12,
                        "w={w} [{r}][{cc}]"
                    );
                }
            }
        }
    }

    #[test]
    fn weight_matches_degenerate_forms() {
        let wp0 = WeightParams::new(0.0, 0.2, CMode::Conjecture).unwrap();
        let wp1 = WeightParams::new(0.35, 0.0, CMode::Conjecture).unwrap();
        for theta in [0.1f64, 0.52, 1.1, 2.0, 3.9, 5.6] {
            let x = [theta.cos(), theta.sin()];
            let ka = k_matrix(x, &wp0).unwrap();
            let kb = k_degenerate_k0_zero(x, &wp0).unwrap();
            let kc = k_matrix(x, &wp1).unwrap();
            let kd = k_degenerate_k1_zero(x, &wp1).unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    assert!(
                        (ka[r][c] - kb[r][c]).abs() < 1e-10 * kb[r][c].abs().max(1.0),
                        "k0=0 theta={theta} [{r}][{c}]: {} vs {}",
                        ka[r][c],
                        kb[r][c]
                    );
                    assert!(
                        (kc[r][c] - kd[r][c]).abs() < 1e-10 * kd[r][c].abs().max(1.0),
                        "k1=0 theta={theta} [{r}][{c}]: {} vs {}",
                        kc[r][c],
                        kd[r][c]
                    );
                }
            }
        }
    }

    #[test]
    fn pde_residual_small() {
        let wp = wp31();
        for (r, phi) in [(1.0f64, 0.3f64), (0.7, 0.6), (1.3, 0.15)] {
            let x = [r * phi.cos(), r * phi.sin()];
            let res = k_pde_residual(x, &wp).unwrap();
            assert!(res < 1e-6, "x={x:?}: residual {res}");
        }
    }

    #[test]
    fn validity_square_enforced() {
        assert!(matches!(
            WeightParams::new(0.5, 0.0, CMode::Unit),
            Err(Error::OutsideValiditySquare(..))
        ));
        assert!(matches!(
            WeightParams::new(0.3, 0.25, CMode::Unit),
            Err(Error::OutsideValiditySquare(..))
        ));
        assert!(WeightParams::new(0.45, 0.04, CMode::Unit).is_ok());
    }

    #[test]
    fn mirror_angles_are_null_rows() {
        let wp = wp31();
        let rows = weight_sample(&[0.0, 0.3, FRAC_PI_4 * 2.0 - 0.2], &wp, false).unwrap();
        assert!(rows[0].entries.is_none());
        assert!(rows[1].entries.is_some());
        assert!(rows[2].entries.is_some());
    }
}
