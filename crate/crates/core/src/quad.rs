//! Polar quadrature for integrals of polynomial-times-weight profiles
//! against the plane Gaussian: exact radial moments times adaptive angular
//! integration over the eight octant panels.
//!
//! The weight matrix is homogeneous of degree zero and the other factors
//! are polynomial, so every integral here reduces to finitely many exact
//! radial moments multiplied by angular profiles. The angular profiles
//! carry algebraic singularities at the mirror angles (multiples of pi/4),
//! which is why the panels split exactly there and the node positions are
//! handed to the integrand as offsets from the panel endpoints: the weight
//! is evaluated from those offsets directly, never through a cancelling
//! subtraction near a mirror.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

use num_complex::Complex;
use num_traits::ToPrimitive;

use crate::algebra::{q_int, GroupElement, Params, VPoly};
use crate::error::{Error, Result};
use crate::forms::laguerre_coeffs;
use crate::kernel::{BasisValues, KernelTables};
use crate::weight::{gamma_fn, k_fund_octant, mat2_mul, mat2_transpose, Mat2, Neumaier, OctantAngle, WeightParams};

type C64 = Complex<f64>;

/// Offsets below this are dropped: the double-exponential weight at that
/// depth times any admissible singularity (exponent > -1) is far below
/// every supported tolerance, and smaller offsets would underflow inside
/// singular integrands.
const OFFSET_FLOOR: f64 = 1e-290;

/// Declared residual target for the Fourier eigenfunction experiment.
pub const FOURIER_RESIDUAL_TARGET: f64 = 1e-4;

/// Controls for the angular integrator and kernel truncation. The panel
/// scheme is fixed: eight panels tiling [0, 2pi) with endpoints at the
/// mirror angles, multiples of pi/4.
#[derive(Clone, Copy, Debug)]
pub struct QuadSpec {
    /// Target for the per-component estimated error, scaled by
    /// max(1, |value|).
    pub angular_tol: f64,
    /// Cap on tanh-sinh halvings per panel.
    pub max_levels: u32,
    /// Kernel series cutoff for the Fourier check.
    pub trunc_n: u32,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            angular_tol: 1e-10,
            max_levels: 12,
            trunc_n: 60,
        }
    }
}

/// One quadrature node: the angle, the panel index, and the exact
/// distances to the two panel endpoints. theta is anchored at whichever
/// endpoint is nearer, so the offsets stay meaningful down to the floor.
pub struct PanelPoint {
    pub theta: f64,
    pub panel: u8,
    pub left: f64,
    pub right: f64,
}

const EVEN_PANEL_ELEMS: [GroupElement; 4] = [
    GroupElement::E,
    GroupElement::R,
    GroupElement::R2,
    GroupElement::R3,
];
const ODD_PANEL_ELEMS: [GroupElement; 4] = [
    GroupElement::S12P,
    GroupElement::S1,
    GroupElement::S12M,
    GroupElement::S2,
];

/// Maps a panel position to the group element carrying the fundamental
/// octant onto it and the angle within the octant. Even panels start at an
/// axis mirror, odd panels end at one.
fn octant_decompose(panel: u8, left: f64, right: f64) -> (GroupElement, OctantAngle) {
    let (elem, phi, from_diag) = if panel % 2 == 0 {
        (EVEN_PANEL_ELEMS[(panel / 2) as usize], left, right)
    } else {
        (ODD_PANEL_ELEMS[(panel / 2) as usize], right, left)
    };
    let angle = if phi <= FRAC_PI_8 {
        OctantAngle::FromAxis(phi)
    } else {
        OctantAngle::FromDiagonal(from_diag)
    };
    (elem, angle)
}

/// Weight matrix on the unit circle at a quadrature node, built from the
/// endpoint offsets so the mirror singularities keep full precision.
pub fn weight_at_node(pt: &PanelPoint, wp: &WeightParams) -> Result<Mat2> {
    let (elem, angle) = octant_decompose(pt.panel, pt.left, pt.right);
    let kf = k_fund_octant(angle, wp)?;
    let m = elem.matrix_f64();
    Ok(mat2_mul(&mat2_mul(&mat2_transpose(&m), &kf), &m))
}

/// Adaptive tanh-sinh integration of a vector integrand over one panel.
/// Returns the component values and the estimated error.
fn integrate_panel<F>(
    panel: u8,
    dim: usize,
    f: &F,
    tol: f64,
    max_levels: u32,
) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&PanelPoint, &mut [f64]) -> Result<()> + Sync,
{
    let a = panel as f64 * FRAC_PI_4;
    let b = (panel as f64 + 1.0) * FRAC_PI_4;
    let half = FRAC_PI_8;
    let mut scratch = vec![0.0f64; dim];
    let mut sums = vec![Neumaier::default(); dim];
    let mut prev: Option<Vec<f64>> = None;
    let mut h = 0.5f64;

    let add_node = |theta: f64,
                        left: f64,
                        right: f64,
                        wt: f64,
                        scratch: &mut Vec<f64>,
                        sums: &mut Vec<Neumaier>|
     -> Result<()> {
        let pt = PanelPoint {
            theta,
            panel,
            left,
            right,
        };
        scratch.iter_mut().for_each(|v| *v = 0.0);
        f(&pt, scratch)?;
        for (s, v) in sums.iter_mut().zip(scratch.iter()) {
            if !v.is_finite() {
                return Err(Error::NonConvergence(format!(
                    "non-finite integrand value at theta = {theta}"
                )));
            }
            s.add(wt * v);
        }
        Ok(())
    };

    for level in 0..=max_levels {
        if level == 0 {
            add_node(
                0.5 * (a + b),
                half,
                half,
                FRAC_PI_2,
                &mut scratch,
                &mut sums,
            )?;
        }
        // Level 0 visits every multiple of h; later levels add the odd
        // multiples of the halved h.
        let step = if level == 0 { 1u64 } else { 2 };
        let mut j = 1u64;
        loop {
            let u = j as f64 * h;
            let w = FRAC_PI_2 * u.sinh();
            let e2 = (-2.0 * w).exp();
            let omt = 2.0 * e2 / (1.0 + e2);
            let near = half * omt;
            if near < OFFSET_FLOOR {
                break;
            }
            let t = (1.0 - e2) / (1.0 + e2);
            let far = half * (1.0 + t);
            let wt = FRAC_PI_2 * u.cosh() * 4.0 * e2 / ((1.0 + e2) * (1.0 + e2));
            add_node(b - near, far, near, wt, &mut scratch, &mut sums)?;
            add_node(a + near, near, far, wt, &mut scratch, &mut sums)?;
            j += step;
        }
        let values: Vec<f64> = sums.iter().map(|s| half * h * s.value()).collect();
        if let Some(p) = &prev {
            let mut err = 0.0f64;
            let mut ok = true;
            for (v, pv) in values.iter().zip(p.iter()) {
                let e = (v - pv).abs();
                err = err.max(e);
                if e > tol * v.abs().max(1.0) {
                    ok = false;
                }
            }
            if ok && level >= 2 {
                return Ok((values, err));
            }
        }
        prev = Some(values);
        h *= 0.5;
    }
    Err(Error::NonConvergence(format!(
        "panel {panel} did not reach tolerance {tol} within {max_levels} levels"
    )))
}

/// Integrates a vector integrand over [0, 2pi): the eight panels run in
/// parallel, their results accumulate in panel order.
pub fn panels_integrate<F>(dim: usize, f: &F, spec: &QuadSpec) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&PanelPoint, &mut [f64]) -> Result<()> + Sync,
{
    if dim == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let tol = spec.angular_tol / 8.0;
    let results: Vec<Result<(Vec<f64>, f64)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..8u8)
            .map(|panel| {
                scope.spawn(move || integrate_panel(panel, dim, f, tol, spec.max_levels))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("panel worker panicked"))
            .collect()
    });
    let mut acc = vec![Neumaier::default(); dim];
    let mut err = 0.0f64;
    for r in results {
        let (vals, e) = r?;
        err += e;
        for (s, v) in acc.iter_mut().zip(vals) {
            s.add(v);
        }
    }
    Ok((acc.iter().map(Neumaier::value).collect(), err))
}

/// Integrates a scalar function of the angle over [0, 2pi). The angle
/// passed to f is endpoint-anchored, so integrable mirror singularities
/// are sampled at true offsets down to the floor.
pub fn angular_integrate<F>(f: F, spec: &QuadSpec) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let eval = |pt: &PanelPoint, out: &mut [f64]| {
        out[0] = f(pt.theta);
        Ok(())
    };
    let (vals, _) = panels_integrate(1, &eval, spec)?;
    Ok(vals[0])
}

/// Radial Gaussian moment: the integral of r^(k+1) e^(-r^2/2) over
/// (0, inf), in closed form 2^(k/2) Gamma(k/2 + 1).
pub fn gaussian_moment(k: u32) -> f64 {
    let half = k as f64 / 2.0;
    2f64.powf(half) * gamma_fn(half + 1.0).expect("argument is positive")
}

/// One homogeneous layer of a polynomial, compiled to float coefficients
/// for fast pointwise evaluation.
struct CompiledPart {
    degree: u32,
    terms: Vec<(u32, u32, f64, f64)>,
}

fn compile_parts(f: &VPoly) -> Vec<CompiledPart> {
    f.degrees()
        .into_iter()
        .map(|d| {
            let part = f.homogeneous_component(d);
            let terms = part
                .terms()
                .map(|(m, c)| {
                    (
                        m.a,
                        m.b,
                        c[0].to_f64().expect("coefficient fits in f64"),
                        c[1].to_f64().expect("coefficient fits in f64"),
                    )
                })
                .collect();
            CompiledPart { degree: d, terms }
        })
        .collect()
}

fn eval_part(part: &CompiledPart, pw1: &[f64], pw2: &[f64]) -> [f64; 2] {
    let mut v = [0.0f64; 2];
    for &(a, b, c1, c2) in &part.terms {
        let m = pw1[a as usize] * pw2[b as usize];
        v[0] += c1 * m;
        v[1] += c2 * m;
    }
    v
}

fn power_table(x: f64, max: u32) -> Vec<f64> {
    let mut pw = Vec::with_capacity(max as usize + 1);
    pw.push(1.0);
    for _ in 0..max {
        pw.push(pw.last().unwrap() * x);
    }
    pw
}

/// All pairwise Gaussian-form integrals between two families in a single
/// angular pass: entry (i, j) is the integral of fs[i] K gs[j]^T against
/// the plane Gaussian. The radial direction is exact moments; only the
/// angular profile is quadrature.
pub fn gaussian_form_gram(
    fs: &[VPoly],
    gs: &[VPoly],
    wp: &WeightParams,
    spec: &QuadSpec,
) -> Result<Vec<Vec<f64>>> {
    let pf: Vec<Vec<CompiledPart>> = fs.iter().map(compile_parts).collect();
    let pg: Vec<Vec<CompiledPart>> = gs.iter().map(compile_parts).collect();
    let maxdeg = pf
        .iter()
        .chain(pg.iter())
        .flat_map(|ps| ps.iter().map(|p| p.degree))
        .max()
        .unwrap_or(0);
    // Slot layout: one angular component per (pair, part, part) triple.
    let mut slots = Vec::new();
    for (fi, fparts) in pf.iter().enumerate() {
        for (gi, gparts) in pg.iter().enumerate() {
            for pi in 0..fparts.len() {
                for qi in 0..gparts.len() {
                    slots.push((fi, pi, gi, qi));
                }
            }
        }
    }
    let mut out = vec![vec![0.0f64; gs.len()]; fs.len()];
    if slots.is_empty() {
        return Ok(out);
    }
    let eval = |pt: &PanelPoint, vals: &mut [f64]| -> Result<()> {
        let k = weight_at_node(pt, wp)?;
        let pw1 = power_table(pt.theta.cos(), maxdeg);
        let pw2 = power_table(pt.theta.sin(), maxdeg);
        let vf: Vec<Vec<[f64; 2]>> = pf
            .iter()
            .map(|ps| ps.iter().map(|p| eval_part(p, &pw1, &pw2)).collect())
            .collect();
        let vg: Vec<Vec<[f64; 2]>> = pg
            .iter()
            .map(|ps| ps.iter().map(|p| eval_part(p, &pw1, &pw2)).collect())
            .collect();
        for (slot, &(fi, pi, gi, qi)) in slots.iter().enumerate() {
            let u = vf[fi][pi];
            let v = vg[gi][qi];
            vals[slot] = u[0] * (k[0][0] * v[0] + k[0][1] * v[1])
                + u[1] * (k[1][0] * v[0] + k[1][1] * v[1]);
        }
        Ok(())
    };
    let (angular, _) = panels_integrate(slots.len(), &eval, spec)?;
    for (slot, &(fi, pi, gi, qi)) in slots.iter().enumerate() {
        let s = pf[fi][pi].degree + pg[gi][qi].degree;
        out[fi][gi] += gaussian_moment(s) * angular[slot];
    }
    Ok(out)
}

/// Gaussian-form integral of a single pair.
pub fn gaussian_form_integral(
    f: &VPoly,
    g: &VPoly,
    wp: &WeightParams,
    spec: &QuadSpec,
) -> Result<f64> {
    let gram = gaussian_form_gram(
        std::slice::from_ref(f),
        std::slice::from_ref(g),
        wp,
        spec,
    )?;
    Ok(gram[0][0])
}

/// Normalization estimate against its closed-form candidate.
#[derive(Clone, Copy, Debug)]
pub struct CEstimate {
    pub estimate: f64,
    pub conjecture: f64,
    pub abs_diff: f64,
}

/// Estimates the weight normalization: integrates the (1,1) profile with
/// unit normalization and returns the reciprocal, alongside the candidate
/// closed form cos(pi k0) cos(pi k1) / (2 pi).
pub fn estimate_c(k0: f64, k1: f64, spec: &QuadSpec) -> Result<CEstimate> {
    let wp = WeightParams::new(k0, k1, crate::weight::CMode::Unit)?;
    let t1 = VPoly::t1();
    let raw = gaussian_form_integral(&t1, &t1, &wp, spec)?;
    let estimate = raw.recip();
    let conjecture = (PI * k0).cos() * (PI * k1).cos() / (2.0 * PI);
    Ok(CEstimate {
        estimate,
        conjecture,
        abs_diff: (estimate - conjecture).abs(),
    })
}

/// Which argument the Laguerre factor takes in the Gaussian-dressed
/// eigenfunction family: half the squared radius or the full one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaguerreArg {
    Half,
    Full,
}

/// Outcome of the Fourier eigenfunction experiment at one (m, n, i, y).
#[derive(Clone, Copy, Debug)]
pub struct FourierCheck {
    pub lhs: [C64; 2],
    pub rhs: [C64; 2],
    pub residual: f64,
    /// Magnitude of the last kernel-degree term added to lhs.
    pub tail_estimate: f64,
    /// Set when the tail estimate exceeds the declared residual target,
    /// meaning the truncation itself could hide a failure.
    pub truncation_warning: bool,
}

/// Transforms the Gaussian-dressed Laguerre-harmonic eigenfunction with
/// the truncated kernel and compares against the phase-rotated function
/// value: lhs is the transform at y, rhs is (-i)^(n+2m) times the value.
///
/// The kernel argument rotation is exact per degree (degree-N terms pick
/// up (-i)^N), so the angular integrals are real and the phases attach in
/// the assembly. The radial direction is exact Gaussian moments.
pub fn fourier_eigen_check(
    m: u32,
    n: u32,
    i: u8,
    y: [f64; 2],
    params: &Params,
    wp: &WeightParams,
    spec: &QuadSpec,
    convention: LaguerreArg,
) -> Result<FourierCheck> {
    let nmax = spec.trunc_n.max(n);
    let tables = KernelTables::new(nmax, params)?;
    let by = BasisValues::eval(y, nmax, params);
    let ysq = y[0] * y[0] + y[1] * y[1];
    let iidx = (i as usize) - 1;
    let lam: Vec<f64> = laguerre_coeffs(m, &q_int(n as i64))
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let scale = match convention {
                LaguerreArg::Half => 0.5f64.powi(j as i32),
                LaguerreArg::Full => 1.0,
            };
            c.to_f64().expect("coefficient fits in f64") * scale
        })
        .collect();

    let dim = 2 * (nmax as usize + 1);
    let eval = |pt: &PanelPoint, out: &mut [f64]| -> Result<()> {
        let k = weight_at_node(pt, wp)?;
        let xhat = [pt.theta.cos(), pt.theta.sin()];
        let bx = BasisValues::eval(xhat, nmax, params);
        let p = bx.row(n)[iidx];
        let kp = [
            k[0][0] * p[0] + k[0][1] * p[1],
            k[1][0] * p[0] + k[1][1] * p[1],
        ];
        for nn in 0..=nmax {
            let ev = tables.e_n_value(&bx, &by, 1.0, ysq, nn);
            for l in 0..2 {
                out[2 * nn as usize + l] = ev[l][0] * kp[0] + ev[l][1] * kp[1];
            }
        }
        Ok(())
    };
    let (angular, _) = panels_integrate(dim, &eval, spec)?;

    let mut lhs = [C64::new(0.0, 0.0); 2];
    let mut tail = 0.0f64;
    for nn in 0..=nmax {
        let phase = match nn % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, -1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, 1.0),
        };
        let mut moment = 0.0;
        for (j, l) in lam.iter().enumerate() {
            moment += l * gaussian_moment(nn + n + 2 * j as u32);
        }
        tail = 0.0;
        for l in 0..2 {
            let term = moment * angular[2 * nn as usize + l];
            lhs[l] += phase * term;
            tail = tail.max(term.abs());
        }
    }

    let py = by.row(n)[iidx];
    let mut lag = 0.0;
    for (j, l) in lam.iter().enumerate() {
        lag += l * ysq.powi(j as i32);
    }
    let scal = lag * (-ysq / 2.0).exp();
    let phase = match (n + 2 * m) % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    };
    let rhs = [phase * (scal * py[0]), phase * (scal * py[1])];
    let residual = (lhs[0] - rhs[0]).norm().max((lhs[1] - rhs[1]).norm());
    Ok(FourierCheck {
        lhs,
        rhs,
        residual,
        tail_estimate: tail,
        truncation_warning: tail > FOURIER_RESIDUAL_TARGET,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{laguerre_element, pair_gauss};
    use crate::harmonic::basis_rows;
    use crate::weight::CMode;

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    #[test]
    fn angular_constants_and_trig() {
        let s = spec();
        let one = angular_integrate(|_| 1.0, &s).unwrap();
        assert!((one - 2.0 * PI).abs() < 1e-12);
        let cosine = angular_integrate(|th| th.cos(), &s).unwrap();
        assert!(cosine.abs() < 1e-12);
        let cos2 = angular_integrate(|th| th.cos().powi(2), &s).unwrap();
        assert!((cos2 - PI).abs() < 1e-12);
    }

    #[test]
    fn angular_handles_mirror_singularities() {
        // |sin cos|^(-1/4) has an integrable singularity at every panel
        // endpoint; doubling the angle gives 2^(1/4) 2 int_0^pi sin^(-1/4),
        // a Wallis-type integral.
        let s = spec();
        let val = angular_integrate(
            |th| (th.sin() * th.cos()).abs().powf(-0.25),
            &s,
        )
        .unwrap();
        let wallis = PI.sqrt() * gamma_fn(0.375).unwrap() / gamma_fn(0.875).unwrap();
        let expect = 2.0 * 2f64.powf(0.25) * wallis;
        assert!((val - expect).abs() < 1e-9, "{val} vs {expect}");
    }

    #[test]
    fn moments_match_closed_forms() {
        assert!((gaussian_moment(0) - 1.0).abs() < 1e-15);
        assert!((gaussian_moment(1) - (PI / 2.0).sqrt()).abs() < 1e-15);
        assert!((gaussian_moment(2) - 2.0).abs() < 1e-15);
        assert!((gaussian_moment(4) - 8.0).abs() < 1e-13);
        // Independent radial oracle: Simpson on [0, 40].
        let k = 3u32;
        let f = |r: f64| r.powi(k as i32 + 1) * (-r * r / 2.0).exp();
        let steps = 400_000usize;
        let h = 40.0 / steps as f64;
        let mut acc = 0.0;
        for j in 0..steps {
            let a = j as f64 * h;
            acc += h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
        }
        assert!((gaussian_moment(k) - acc).abs() < 1e-10);
    }

    #[test]
    fn unit_weight_form_is_gaussian_normalization() {
        // kappa = 0: the weight is c times the identity.
        let s = spec();
        let wp = WeightParams::new(0.0, 0.0, CMode::Unit).unwrap();
        let t1 = VPoly::t1();
        let v = gaussian_form_integral(&t1, &t1, &wp, &s).unwrap();
        assert!((v - 2.0 * PI).abs() < 1e-10);
        let est = estimate_c(0.0, 0.0, &s).unwrap();
        assert!((est.estimate - 0.5 / PI).abs() < 1e-12);
        assert!(est.abs_diff < 1e-12);
    }

    #[test]
    fn form_integral_matches_exact_pairing() {
        let s = spec();
        let params = Params::from_fracs((1, 4), (1, 8));
        let wp = WeightParams::new(0.25, 0.125, CMode::Conjecture).unwrap();
        let rows = basis_rows(2, &params);
        let p11 = &rows[1][0];
        let p13 = &rows[1][2];
        let exact = pair_gauss(p11, p11, &params).to_f64().unwrap();
        let v = gaussian_form_integral(p11, p11, &wp, &s).unwrap();
        assert!((v - exact).abs() < 1e-7, "{v} vs {exact}");
        let cross = gaussian_form_integral(p11, p13, &wp, &s).unwrap();
        assert!(cross.abs() < 1e-9, "{cross}");
    }

    #[test]
    fn gram_is_symmetric_and_group_invariant() {
        let s = spec();
        let params = Params::from_fracs((3, 10), (1, 10));
        let wp = WeightParams::new(0.3, 0.1, CMode::Conjecture).unwrap();
        let rows = basis_rows(2, &params);
        let fam = [rows[2][0].clone(), rows[2][2].clone()];
        let gram = gaussian_form_gram(&fam, &fam, &wp, &s).unwrap();
        assert!((gram[0][1] - gram[1][0]).abs() < 1e-10);
        // Same pair pushed through a group element.
        let w = GroupElement::S12P;
        let wf = [
            crate::algebra::group_act(w, &fam[0]),
            crate::algebra::group_act(w, &fam[1]),
        ];
        let gram_w = gaussian_form_gram(&wf, &wf, &wp, &s).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert!(
                    (gram[a][b] - gram_w[a][b]).abs() < 1e-9,
                    "[{a}][{b}]: {} vs {}",
                    gram[a][b],
                    gram_w[a][b]
                );
            }
        }
    }

    #[test]
    fn laguerre_layers_are_orthogonal_in_the_form() {
        let s = spec();
        let params = Params::from_fracs((3, 10), (1, 10));
        let wp = WeightParams::new(0.3, 0.1, CMode::Conjecture).unwrap();
        let e0 = laguerre_element(0, 0, 1, &params);
        let e1 = laguerre_element(1, 0, 1, &params);
        let v = gaussian_form_integral(&e0.poly, &e1.poly, &wp, &s).unwrap();
        assert!(v.abs() < 1e-8, "{v}");
        let diag = gaussian_form_integral(&e1.poly, &e1.poly, &wp, &s).unwrap();
        let exact = e1.nu_g.to_f64().unwrap();
        assert!((diag - exact).abs() < 1e-7, "{diag} vs {exact}");
    }

    #[test]
    fn estimate_c_tracks_conjecture() {
        let s = spec();
        let est = estimate_c(0.3, 0.1, &s).unwrap();
        assert!(est.abs_diff < 1e-8, "{est:?}");
        assert!(estimate_c(0.5, 0.0, &s).is_err());
    }

    #[test]
    fn fourier_ground_state_at_origin() {
        let s = spec();
        let params = Params::from_fracs((3, 10), (1, 10));
        let wp = WeightParams::new(0.3, 0.1, CMode::Conjecture).unwrap();
        let chk = fourier_eigen_check(
            0,
            0,
            1,
            [0.0, 0.0],
            &params,
            &wp,
            &s,
            LaguerreArg::Full,
        )
        .unwrap();
        assert!((chk.lhs[0].re - 1.0).abs() < 1e-7, "{:?}", chk.lhs);
        assert!(chk.lhs[0].im.abs() < 1e-12);
        assert!(chk.lhs[1].norm() < 1e-10);
        assert!(chk.residual < 1e-7);
        assert!(!chk.truncation_warning);
    }

    #[test]
    fn fourier_eigenfunction_small_case() {
        let mut s = spec();
        s.trunc_n = 60;
        let params = Params::from_fracs((3, 10), (1, 10));
        let wp = WeightParams::new(0.3, 0.1, CMode::Conjecture).unwrap();
        let chk = fourier_eigen_check(
            0,
            1,
            1,
            [1.0, 0.0],
            &params,
            &wp,
            &s,
            LaguerreArg::Full,
        )
        .unwrap();
        assert!(
            chk.residual < FOURIER_RESIDUAL_TARGET,
            "residual {}",
            chk.residual
        );
    }

    #[test]
    fn zero_polynomials_integrate_to_zero() {
        let s = spec();
        let wp = WeightParams::new(0.3, 0.1, CMode::Conjecture).unwrap();
        let z = VPoly::zero();
        let v = gaussian_form_integral(&z, &z, &wp, &s).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn nonconvergent_integrand_is_reported() {
        let mut s = spec();
        s.max_levels = 3;
        s.angular_tol = 1e-14;
        // Exponent -0.95 is admissible but slow; three levels cannot
        // reach 1e-14.
        let r = angular_integrate(
            |th| th.sin().abs().powf(-0.95).min(1e280),
            &s,
        );
        match r {
            Err(Error::NonConvergence(_)) => {}
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_k0_c_estimate_matches_beta_oracle() {
        // k0 = 0: the fundamental weight is diagonal with entries
        // u^(2 k1) and u^(-2 k1) on the octant, u = tan(phi). The (1,1)
        // angular integral reduces to 4 int_0^(pi/2) |tan|^(2 k1) = 4 *
        // (pi/2) / cos(pi k1), so c = cos(pi k1) / (2 pi).
        let s = spec();
        let k1 = 0.25f64;
        let est = estimate_c(0.0, k1, &s).unwrap();
        let closed = (PI * k1).cos() / (2.0 * PI);
        assert!((est.estimate - closed).abs() < 1e-10, "{est:?}");
    }
}
