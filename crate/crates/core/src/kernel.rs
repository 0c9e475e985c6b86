//! Reproducing kernels for the graded pairing: the degree-n harmonic
//! kernel, its radial completion, floating-point truncated sums with the
//! imaginary-rotation trick, the gamma-quotient limit function, and the
//! pointwise growth functional.
//!
//! A kernel value is a 2x2 array: entry (l, j) pairs the l-th dual
//! component in the second argument with the j-th module component in the
//! first. Fixing the second argument at a rational point turns each l-row
//! into an exact vector polynomial in x, which is how the reproducing
//! property is tested without any floating point.

use num_complex::Complex;

use crate::algebra::{pochhammer, q_factorial, q_int, q_pow, Params, VPoly, Q};
use crate::error::{Error, Result};
use crate::harmonic::{basis_rows, index_count, norm_pi};
use crate::weight::gamma_fn;
use num_traits::{ToPrimitive, Zero};

type C64 = Complex<f64>;

/// The degree-n harmonic kernel with the second argument fixed: row l is
/// the x-polynomial sum over i of p_{n,i}(y)_l p_{n,i}(x) / nu(p_{n,i}).
pub fn kernel_p_rows(n: u32, y: &[Q; 2], params: &Params) -> Result<[VPoly; 2]> {
    let rows = basis_rows(n, params);
    let mut out = [VPoly::zero(), VPoly::zero()];
    for i in 1..=index_count(n) {
        let nu = norm_pi(n, i, params);
        if nu.is_zero() {
            return Err(Error::ZeroNorm { n, i });
        }
        let p = &rows[n as usize][(i - 1) as usize];
        let py = p.eval_q(y);
        for l in 0..2 {
            if !py[l].is_zero() {
                out[l] = out[l].add(&p.scale(&(&py[l] / &nu)));
            }
        }
    }
    Ok(out)
}

/// The degree-n reproducing kernel rows: the harmonic kernels of degrees
/// n, n-2, ... completed with radial factors so the pairing against any
/// degree-n polynomial reproduces its value at y.
pub fn kernel_e_rows(n: u32, y: &[Q; 2], params: &Params) -> Result<[VPoly; 2]> {
    let ysq = &y[0] * &y[0] + &y[1] * &y[1];
    let mut out = [VPoly::zero(), VPoly::zero()];
    for m in 0..=n / 2 {
        let k = n - 2 * m;
        let p_rows = kernel_p_rows(k, y, params)?;
        let denom = q_pow(&q_int(4), m) * q_factorial(m) * pochhammer(&q_int(k as i64 + 1), m);
        let coeff = q_pow(&ysq, m) / denom;
        for l in 0..2 {
            out[l] = out[l].add(&p_rows[l].mul_rsq_pow(m).scale(&coeff));
        }
    }
    Ok(out)
}

/// Exact pointwise value of the harmonic kernel: entries[l][j].
pub fn kernel_p(n: u32, x: &[Q; 2], y: &[Q; 2], params: &Params) -> Result<[[Q; 2]; 2]> {
    let rows = kernel_p_rows(n, y, params)?;
    Ok([rows[0].eval_q(x), rows[1].eval_q(x)])
}

/// Exact pointwise value of the reproducing kernel: entries[l][j].
pub fn kernel_e(n: u32, x: &[Q; 2], y: &[Q; 2], params: &Params) -> Result<[[Q; 2]; 2]> {
    let rows = kernel_e_rows(n, y, params)?;
    Ok([rows[0].eval_q(x), rows[1].eval_q(x)])
}

/// Exact pointwise value of the degree-n kernel at complex arguments with
/// rational real and imaginary parts. The radial factor uses the bilinear
/// square x1^2 + x2^2, not a Hermitian norm.
pub fn kernel_e_complex(
    n: u32,
    x: &[Complex<Q>; 2],
    y: &[Complex<Q>; 2],
    params: &Params,
) -> Result<[[Complex<Q>; 2]; 2]> {
    let rows = basis_rows(n, params);
    let czero = || Complex::new(Q::zero(), Q::zero());
    let xsq = x[0].clone() * x[0].clone() + x[1].clone() * x[1].clone();
    let ysq = y[0].clone() * y[0].clone() + y[1].clone() * y[1].clone();
    let mut out = [[czero(), czero()], [czero(), czero()]];
    for m in 0..=n / 2 {
        let k = n - 2 * m;
        let denom = q_pow(&q_int(4), m) * q_factorial(m) * pochhammer(&q_int(k as i64 + 1), m);
        let mut radial = Complex::new(denom.recip(), Q::zero());
        for _ in 0..m {
            radial = radial * xsq.clone() * ysq.clone();
        }
        for i in 1..=index_count(k) {
            let nu = norm_pi(k, i, params);
            if nu.is_zero() {
                return Err(Error::ZeroNorm { n: k, i });
            }
            let p = &rows[k as usize][(i - 1) as usize];
            let px = p.eval_complex(x);
            let py = p.eval_complex(y);
            let scale = radial.clone() * Complex::new(nu.recip(), Q::zero());
            for l in 0..2 {
                for j in 0..2 {
                    out[l][j] = out[l][j].clone()
                        + scale.clone() * py[l].clone() * px[j].clone();
                }
            }
        }
    }
    Ok(out)
}

/// Floating-point values of every basis element at one point, computed by
/// running the defining recurrence on values. rows[n][i-1] is the module
/// coefficient pair of p_{n,i}(x).
pub struct BasisValues {
    pub rows: Vec<[[f64; 2]; 4]>,
}

impl BasisValues {
    pub fn eval(x: [f64; 2], nmax: u32, params: &Params) -> BasisValues {
        let (k0, k1) = params.to_f64();
        let kp2 = 2.0 * (k0 + k1);
        let km2 = 2.0 * (k1 - k0);
        let mut rows = Vec::with_capacity(nmax as usize + 1);
        rows.push([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0], [0.0, -1.0]]);
        let pair = |s: f64, u: [f64; 2], t: f64, v: [f64; 2]| {
            [s * u[0] + t * v[0], s * u[1] + t * v[1]]
        };
        for n in 1..=nmax {
            let prev = rows.last().expect("seed row present");
            let row = if n % 2 == 1 {
                [
                    pair(x[0], prev[0], x[1], prev[1]),
                    pair(-x[1], prev[0], x[0], prev[1]),
                    pair(x[0], prev[2], x[1], prev[3]),
                    pair(-x[1], prev[2], x[0], prev[3]),
                ]
            } else {
                let d = (n - 1) as f64;
                let (ap, am) = ((d + km2) / d, (d - km2) / d);
                let (bp, bm) = ((d + kp2) / d, (d - kp2) / d);
                [
                    pair(x[0] * ap, prev[2], x[1] * am, prev[3]),
                    pair(-x[1] * ap, prev[2], x[0] * am, prev[3]),
                    pair(x[0] * bp, prev[0], x[1] * bm, prev[1]),
                    pair(-x[1] * bp, prev[0], x[0] * bm, prev[1]),
                ]
            };
            rows.push(row);
        }
        BasisValues { rows }
    }

    pub fn row(&self, n: u32) -> &[[f64; 2]; 4] {
        &self.rows[n as usize]
    }
}

/// Reusable norm table for repeated floating-point kernel sums at fixed
/// parameters. Construction fails on the first vanishing norm.
pub struct KernelTables {
    nu: Vec<[f64; 4]>,
}

impl KernelTables {
    pub fn new(nmax: u32, params: &Params) -> Result<KernelTables> {
        let mut nu = Vec::with_capacity(nmax as usize + 1);
        for n in 0..=nmax {
            let mut row = [f64::NAN; 4];
            for i in 1..=index_count(n) {
                let v = norm_pi(n, i, params);
                if v.is_zero() {
                    return Err(Error::ZeroNorm { n, i });
                }
                row[(i - 1) as usize] = v.to_f64().expect("norm fits in f64 range");
            }
            nu.push(row);
        }
        Ok(KernelTables { nu })
    }

    pub fn nmax(&self) -> u32 {
        self.nu.len() as u32 - 1
    }

    /// The degree-n kernel value entries[l][j] from precomputed basis
    /// values; xsq and ysq are the squared euclidean norms of the points.
    pub fn e_n_value(
        &self,
        bx: &BasisValues,
        by: &BasisValues,
        xsq: f64,
        ysq: f64,
        n: u32,
    ) -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for m in 0..=n / 2 {
            let k = n - 2 * m;
            // (xsq ysq)^m / (4^m m! (k+1)_m); k varies with m, so no
            // incremental update across the loop.
            let mut radial = 1.0;
            for j in 1..=m {
                radial *= xsq * ysq / (4.0 * j as f64 * (k as f64 + j as f64));
            }
            let px = bx.row(k);
            let py = by.row(k);
            for i in 0..index_count(k) as usize {
                let w = radial / self.nu[k as usize][i];
                for l in 0..2 {
                    for j in 0..2 {
                        out[l][j] += w * py[i][l] * px[i][j];
                    }
                }
            }
        }
        out
    }
}

/// Which sum a truncated kernel evaluation forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncationMode {
    /// Sum of the kernels of degree <= N.
    Real,
    /// Sum of (-i)^n times the degree-n kernels: the truncation of the
    /// kernel at (x, -i y), exact by degree-n homogeneity in y.
    ComplexYRotation,
}

/// A truncated kernel sum and the magnitude of its last added term, so
/// callers can implement their own stopping rules.
#[derive(Clone, Copy, Debug)]
pub struct TruncatedKernel {
    pub entries: [[C64; 2]; 2],
    pub last_term_magnitude: f64,
}

/// Truncated kernel sum from precomputed tables and basis values.
pub fn kernel_e_truncated_with(
    tables: &KernelTables,
    bx: &BasisValues,
    by: &BasisValues,
    x: [f64; 2],
    y: [f64; 2],
    n_cutoff: u32,
    mode: TruncationMode,
) -> TruncatedKernel {
    let xsq = x[0] * x[0] + x[1] * x[1];
    let ysq = y[0] * y[0] + y[1] * y[1];
    let mut entries = [[C64::new(0.0, 0.0); 2]; 2];
    let mut last = 0.0f64;
    for n in 0..=n_cutoff {
        let ev = tables.e_n_value(bx, by, xsq, ysq, n);
        let phase = match mode {
            TruncationMode::Real => C64::new(1.0, 0.0),
            TruncationMode::ComplexYRotation => match n % 4 {
                0 => C64::new(1.0, 0.0),
                1 => C64::new(0.0, -1.0),
                2 => C64::new(-1.0, 0.0),
                _ => C64::new(0.0, 1.0),
            },
        };
        last = 0.0;
        for l in 0..2 {
            for j in 0..2 {
                entries[l][j] += phase * ev[l][j];
                last = last.max(ev[l][j].abs());
            }
        }
    }
    TruncatedKernel {
        entries,
        last_term_magnitude: last,
    }
}

/// Convenience truncated kernel sum: builds the tables and value rows,
/// then sums degrees 0..=N in the requested mode.
pub fn kernel_e_truncated(
    x: [f64; 2],
    y: [f64; 2],
    n_cutoff: u32,
    params: &Params,
    mode: TruncationMode,
) -> Result<TruncatedKernel> {
    let tables = KernelTables::new(n_cutoff, params)?;
    let bx = BasisValues::eval(x, n_cutoff, params);
    let by = BasisValues::eval(y, n_cutoff, params);
    Ok(kernel_e_truncated_with(
        &tables, &bx, &by, x, y, n_cutoff, mode,
    ))
}

/// The gamma-quotient limit function G(u)^2 / (G(u+z) G(u-z)). Returns 0
/// exactly at its zeros (u + z or u - z a nonpositive integer); u must be
/// positive.
pub fn omega(u: f64, z: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!(
            "limit function needs u > 0, got {u}"
        )));
    }
    for w in [u + z, u - z] {
        if w <= 0.0 && w == w.floor() {
            return Ok(0.0);
        }
    }
    Ok(gamma_fn(u)?.powi(2) / (gamma_fn(u + z)? * gamma_fn(u - z)?))
}

/// The growth functional: the squared euclidean length of the value.
pub fn beta_growth(f: &VPoly, x: [f64; 2]) -> f64 {
    let v = f.eval_f64(x);
    v[0] * v[0] + v[1] * v[1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dunkl, q};
    use crate::forms::pair_tau;
    use num_traits::One;

    fn params14() -> Params {
        Params::from_fracs((1, 4), (1, 8))
    }

    fn qv(a: (i64, i64), b: (i64, i64)) -> [Q; 2] {
        [q(a.0, a.1), q(b.0, b.1)]
    }

    #[test]
    fn degree_zero_kernel_is_identity() {
        let params = params14();
        let y = qv((2, 3), (-1, 5));
        let e = kernel_p(0, &qv((1, 7), (3, 4)), &y, &params).unwrap();
        assert_eq!(e[0][0], Q::one());
        assert_eq!(e[1][1], Q::one());
        assert!(e[0][1].is_zero() && e[1][0].is_zero());
        let e1 = kernel_e(1, &qv((1, 7), (3, 4)), &y, &params).unwrap();
        let p1 = kernel_p(1, &qv((1, 7), (3, 4)), &y, &params).unwrap();
        assert_eq!(e1, p1);
    }

    #[test]
    fn kernel_reproduces_values() {
        let params = params14();
        let y = qv((2, 3), (-1, 5));
        let n = 3u32;
        let rows = kernel_e_rows(n, &y, &params).unwrap();
        let basis = basis_rows(n, &params);
        for i in 0..4usize {
            let f = &basis[n as usize][i];
            let fy = f.eval_q(&y);
            for l in 0..2 {
                assert_eq!(pair_tau(&rows[l], f, &params), fy[l], "p_{{3,{}}} l={l}", i + 1);
            }
        }
        // Non-harmonic degree-3 input: |x|^2 p_{1,i}.
        for i in 0..4usize {
            let f = basis[1][i].mul_rsq_pow(1);
            let fy = f.eval_q(&y);
            for l in 0..2 {
                assert_eq!(pair_tau(&rows[l], &f, &params), fy[l]);
            }
        }
        // Degree mismatch pairs to zero.
        assert!(pair_tau(&rows[0], &basis[2][0], &params).is_zero());
    }

    #[test]
    fn kernel_intertwines_dunkl_and_multiplication() {
        let params = params14();
        let y = qv((1, 2), (1, 3));
        let e3 = kernel_e_rows(3, &y, &params).unwrap();
        let e2 = kernel_e_rows(2, &y, &params).unwrap();
        for (axis, yi) in [(1usize, &y[0]), (2, &y[1])] {
            for l in 0..2 {
                assert_eq!(
                    dunkl(axis, &e3[l], &params),
                    e2[l].scale(yi),
                    "axis {axis} row {l}"
                );
            }
        }
    }

    #[test]
    fn rotation_identity_is_exact() {
        // E_n(x, -i y) = (-i)^n E_n(x, y) for rational points, n = 2, 3.
        let params = params14();
        let x = qv((1, 2), (2, 5));
        let y = qv((2, 3), (-1, 4));
        let cx = [
            Complex::new(x[0].clone(), Q::zero()),
            Complex::new(x[1].clone(), Q::zero()),
        ];
        for n in [2u32, 3] {
            let miy = [
                Complex::new(Q::zero(), -y[0].clone()),
                Complex::new(Q::zero(), -y[1].clone()),
            ];
            let lhs = kernel_e_complex(n, &cx, &miy, &params).unwrap();
            let real = kernel_e(n, &x, &y, &params).unwrap();
            // (-i)^n: n=2 -> -1, n=3 -> +i
            for l in 0..2 {
                for j in 0..2 {
                    let expect = match n % 4 {
                        0 => Complex::new(real[l][j].clone(), Q::zero()),
                        1 => Complex::new(Q::zero(), -real[l][j].clone()),
                        2 => Complex::new(-real[l][j].clone(), Q::zero()),
                        _ => Complex::new(Q::zero(), real[l][j].clone()),
                    };
                    assert_eq!(lhs[l][j], expect, "n={n} [{l}][{j}]");
                }
            }
        }
    }

    #[test]
    fn basis_values_match_exact_rows() {
        let params = params14();
        let x = [0.37, -0.82];
        let bv = BasisValues::eval(x, 6, &params);
        let rows = basis_rows(6, &params);
        for n in 0..=6u32 {
            for i in 0..4usize {
                let exact = rows[n as usize][i].eval_f64(x);
                let fast = bv.row(n)[i];
                for j in 0..2 {
                    assert!(
                        (exact[j] - fast[j]).abs() <= 1e-12 * exact[j].abs().max(1.0),
                        "n={n} i={} j={j}: {} vs {}",
                        i + 1,
                        exact[j],
                        fast[j]
                    );
                }
            }
        }
    }

    #[test]
    fn zero_parameters_reduce_to_exponential() {
        // At kappa = 0 the summed kernel is e^(<x,y>) times the identity.
        let params = Params::new(Q::zero(), Q::zero());
        let x = [0.3, 0.2];
        let y = [0.1, 0.4];
        let t = kernel_e_truncated(x, y, 40, &params, TruncationMode::Real).unwrap();
        let dot = (x[0] * y[0] + x[1] * y[1]).exp();
        assert!((t.entries[0][0].re - dot).abs() < 1e-13);
        assert!((t.entries[1][1].re - dot).abs() < 1e-13);
        assert!(t.entries[0][1].norm() < 1e-13 && t.entries[1][0].norm() < 1e-13);
        assert!(t.last_term_magnitude < 1e-20);
    }

    #[test]
    fn truncated_kernel_is_equivariant() {
        let params = params14();
        let x = [0.7, 0.25];
        let y = [-0.4, 0.55];
        let t = kernel_e_truncated(x, y, 25, &params, TruncationMode::Real).unwrap();
        for w in crate::algebra::GROUP {
            let tw = kernel_e_truncated(
                w.apply_point(x),
                w.apply_point(y),
                25,
                &params,
                TruncationMode::Real,
            )
            .unwrap();
            let m = w.matrix_f64();
            // w^{-1} K w with w orthogonal: transpose conjugation.
            let mut conj = [[0.0f64; 2]; 2];
            for l in 0..2 {
                for j in 0..2 {
                    let mut v = 0.0;
                    for a in 0..2 {
                        for b in 0..2 {
                            v += m[a][l] * t.entries[a][b].re * m[b][j];
                        }
                    }
                    conj[l][j] = v;
                }
            }
            for l in 0..2 {
                for j in 0..2 {
                    assert!(
                        (tw.entries[l][j].re - conj[l][j]).abs() < 1e-12,
                        "w={w} [{l}][{j}]"
                    );
                }
            }
        }
    }

    #[test]
    fn omega_zeros_and_domain() {
        assert!((omega(0.7, 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(omega(0.75, 0.75).unwrap(), 0.0);
        assert_eq!(omega(0.25, 1.25).unwrap(), 0.0);
        assert_eq!(omega(0.25, 2.25).unwrap(), 0.0);
        assert!(omega(0.0, 0.3).is_err());
        assert!(omega(-1.0, 0.3).is_err());
    }

    #[test]
    fn beta_growth_basics() {
        let params = params14();
        let rows = basis_rows(1, &params);
        let x = [0.6, -1.1];
        let total = beta_growth(&rows[1][0], x) + beta_growth(&rows[1][1], x);
        let expect = 2.0 * (x[0] * x[0] + x[1] * x[1]);
        assert!((total - expect).abs() < 1e-14);
        assert_eq!(beta_growth(&VPoly::zero(), x), 0.0);
    }

    #[test]
    fn radical_parameters_surface_zero_norm() {
        let params = Params::new(Q::zero(), q(-1, 2));
        let y = qv((1, 2), (1, 3));
        match kernel_p_rows(1, &y, &params) {
            Err(Error::ZeroNorm { n: 1, i: 2 }) => {}
            other => panic!("expected ZeroNorm, got {other:?}"),
        }
    }
}
