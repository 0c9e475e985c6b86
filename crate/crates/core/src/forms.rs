//! The two bilinear pairings on vector polynomials and the Laguerre-type
//! radial extension of the harmonic basis.
//!
//! The differential pairing applies one argument's coefficients as a
//! polynomial in the two Dunkl operators to the other argument and reads
//! off the constant term. The Gaussian pairing conjugates both arguments by
//! exp(Lap/2), a finite sum because the Laplacian lowers degree by two.
//! Everything here is exact rational arithmetic.

use crate::algebra::{
    dunkl, laplacian, pochhammer, q, q_factorial, q_int, q_pow, Params, VPoly, Q,
};
use crate::harmonic::{basis_rows, norm_pi};
use num_traits::{One, Zero};

fn constant_term(f: &VPoly) -> [Q; 2] {
    f.terms()
        .find(|(m, _)| m.a == 0 && m.b == 0)
        .map(|(_, c)| c.clone())
        .unwrap_or([Q::zero(), Q::zero()])
}

/// The differential pairing: substitute the Dunkl operators into f's
/// coefficient polynomials, apply to g, take the value at the origin, and
/// contract the module components. Symmetric, and zero across distinct
/// homogeneous degrees.
pub fn pair_tau(f: &VPoly, g: &VPoly, params: &Params) -> Q {
    let mut acc = Q::zero();
    let max_b = f.terms().map(|(m, _)| m.b).max().unwrap_or(0);
    // Apply D2 powers once, then walk D1 powers incrementally per b-row.
    let mut d2_pow = g.clone();
    for b in 0..=max_b {
        if b > 0 {
            d2_pow = dunkl(2, &d2_pow, params);
        }
        if d2_pow.is_zero() {
            break;
        }
        let row: Vec<_> = f
            .terms()
            .filter(|(m, _)| m.b == b)
            .map(|(m, c)| (m.a, c.clone()))
            .collect();
        if row.is_empty() {
            continue;
        }
        let max_a = row.iter().map(|(a, _)| *a).max().expect("nonempty row");
        let mut d1_pow = d2_pow.clone();
        for a in 0..=max_a {
            if a > 0 {
                d1_pow = dunkl(1, &d1_pow, params);
            }
            if d1_pow.is_zero() {
                break;
            }
            if let Some((_, c)) = row.iter().find(|(aa, _)| *aa == a) {
                let v = constant_term(&d1_pow);
                acc += &c[0] * &v[0] + &c[1] * &v[1];
            }
        }
    }
    acc
}

/// exp(sign * Lap/2) as an exact finite sum.
pub fn exp_half_laplacian(f: &VPoly, params: &Params, negate: bool) -> VPoly {
    let mut out = VPoly::zero();
    let mut term = f.clone();
    let mut j = 0u32;
    while !term.is_zero() {
        let mut c = q_pow(&q(1, 2), j) / q_factorial(j);
        if negate && j % 2 == 1 {
            c = -c;
        }
        out = out.add(&term.scale(&c));
        term = laplacian(&term, params);
        j += 1;
    }
    out
}

/// The Gaussian pairing: the differential pairing of the exp(Lap/2) images.
/// Agrees with pair_tau on harmonic arguments.
pub fn pair_gauss(f: &VPoly, g: &VPoly, params: &Params) -> Q {
    pair_tau(
        &exp_half_laplacian(f, params, false),
        &exp_half_laplacian(g, params, false),
        params,
    )
}

/// Coefficients of the generalized Laguerre polynomial of degree m and
/// parameter alpha, as exact rationals: coeff[j] multiplies s^j.
pub fn laguerre_coeffs(m: u32, alpha: &Q) -> Vec<Q> {
    // coeff_j = (-1)^j / (j! (m-j)!) * prod_{l=j+1..m} (alpha + l)
    let mut out = Vec::with_capacity(m as usize + 1);
    for j in 0..=m {
        let mut c = Q::one() / (q_factorial(j) * q_factorial(m - j));
        c *= pochhammer(&(alpha + q_int(j as i64 + 1)), m - j);
        if j % 2 == 1 {
            c = -c;
        }
        out.push(c);
    }
    out
}

/// One element of the Gaussian-orthogonal basis: a Laguerre polynomial in
/// |x|^2/2 of parameter n times a harmonic basis element.
#[derive(Clone, Debug)]
pub struct LaguerreBasisElement {
    pub m: u32,
    pub n: u32,
    pub i: u8,
    pub poly: VPoly,
    pub nu_g: Q,
}

/// Build the (m, n, i) element with its exact Gaussian norm
/// (n+1)_m / m! times nu(p_{n,i}).
pub fn laguerre_element(m: u32, n: u32, i: u8, params: &Params) -> LaguerreBasisElement {
    let rows = basis_rows(n, params);
    let p = &rows[n as usize][(i - 1) as usize];
    let coeffs = laguerre_coeffs(m, &q_int(n as i64));
    let mut poly = VPoly::zero();
    for (j, c) in coeffs.iter().enumerate() {
        // (|x|^2 / 2)^j contributes 2^-j per radial power.
        let scaled = c / q_pow(&q_int(2), j as u32);
        poly = poly.add(&p.mul_rsq_pow(j as u32).scale(&scaled));
    }
    let nu_g = pochhammer(&q_int(n as i64 + 1), m) / q_factorial(m) * norm_pi(n, i, params);
    LaguerreBasisElement { m, n, i, poly, nu_g }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{group_act, GROUP};

    fn params14() -> Params {
        Params::from_fracs((1, 4), (1, 8))
    }

    #[test]
    fn degree_one_pairings() {
        let params = params14();
        let rows = basis_rows(1, &params);
        let two = q_int(2);
        assert_eq!(
            pair_tau(&rows[1][1], &rows[1][1], &params),
            &two * (Q::one() + &two * params.kplus())
        );
        assert_eq!(pair_tau(&rows[1][0], &rows[1][2], &params), Q::zero());
        assert_eq!(pair_tau(&rows[1][1], &rows[1][3], &params), Q::zero());
    }

    #[test]
    fn radial_factor_scales_pairing() {
        // <|x|^2 f, |x|^2 g> = 4 * 1! * (n+1) <f, g> at n = 1.
        let params = params14();
        let rows = basis_rows(1, &params);
        let f = rows[1][0].mul_rsq_pow(1);
        assert_eq!(
            pair_tau(&f, &f, &params),
            q_int(8) * pair_tau(&rows[1][0], &rows[1][0], &params)
        );
    }

    #[test]
    fn pairing_is_symmetric_and_w_invariant() {
        let params = params14();
        let rows = basis_rows(2, &params);
        let f = rows[2][0].add(&rows[2][3].scale(&q(1, 3)));
        let g = rows[2][1].sub(&rows[2][2]);
        assert_eq!(pair_tau(&f, &g, &params), pair_tau(&g, &f, &params));
        let base = pair_tau(&f, &g, &params);
        for w in GROUP {
            assert_eq!(
                pair_tau(&group_act(w, &f), &group_act(w, &g), &params),
                base,
                "w = {w}"
            );
        }
    }

    #[test]
    fn multiplication_is_adjoint_to_dunkl() {
        let params = params14();
        let f = VPoly::monomial(1, 1, [q(1, 2), q_int(1)]).add(&VPoly::monomial(0, 2, [Q::zero(), q(-1, 3)]));
        let g = VPoly::monomial(2, 1, [q_int(1), q(2, 5)]);
        for axis in [1usize, 2] {
            let (a, b) = if axis == 1 { (1, 0) } else { (0, 1) };
            assert_eq!(
                pair_tau(&f.mul_monomial(a, b), &g, &params),
                pair_tau(&f, &dunkl(axis, &g, &params), &params)
            );
        }
    }

    #[test]
    fn gauss_pairing_examples() {
        let params = params14();
        // <t1, |x|^2 t1>_G = 2: exp(Lap/2)(|x|^2 t1) = |x|^2 t1 + 2 t1.
        let f = VPoly::t1();
        let g = VPoly::t1().mul_rsq_pow(1);
        assert_eq!(pair_gauss(&f, &g, &params), q_int(2));
        // Gaussian and differential pairings agree on harmonics.
        let rows = basis_rows(3, &params);
        for i in 0..4 {
            assert_eq!(
                pair_gauss(&rows[3][i], &rows[3][i], &params),
                pair_tau(&rows[3][i], &rows[3][i], &params)
            );
        }
    }

    #[test]
    fn gauss_adjoint_identity() {
        let params = params14();
        let f = VPoly::monomial(2, 1, [q_int(1), q(-1, 2)]).add(&VPoly::monomial(1, 0, [Q::zero(), q(2, 7)]));
        let g = VPoly::monomial(1, 1, [q(3, 4), q_int(2)]).add(&VPoly::monomial(2, 0, [q_int(1), Q::zero()]));
        for axis in [1usize, 2] {
            let (a, b) = if axis == 1 { (1, 0) } else { (0, 1) };
            let lhs = pair_gauss(
                &f.mul_monomial(a, b).sub(&dunkl(axis, &f, &params)),
                &g,
                &params,
            );
            let rhs = pair_gauss(&f, &dunkl(axis, &g, &params), &params);
            assert_eq!(lhs, rhs, "axis {axis}");
        }
    }

    #[test]
    fn laguerre_elements() {
        let params = params14();
        let e0 = laguerre_element(0, 2, 3, &params);
        let rows = basis_rows(2, &params);
        assert_eq!(e0.poly, rows[2][2]);
        assert_eq!(e0.nu_g, norm_pi(2, 3, &params));

        // m=1, n=1: L_1^{(1)}(s) = 2 - s, so poly = (2 - |x|^2/2) p_{1,1}.
        let e1 = laguerre_element(1, 1, 1, &params);
        let p = &basis_rows(1, &params)[1][0];
        let expect = p.scale(&q_int(2)).sub(&p.mul_rsq_pow(1).scale(&q(1, 2)));
        assert_eq!(e1.poly, expect);
        assert_eq!(e1.nu_g, q_int(2) * norm_pi(1, 1, &params));
        assert_eq!(pair_gauss(&e1.poly, &e1.poly, &params), e1.nu_g);
    }

    #[test]
    fn laguerre_family_is_gauss_orthogonal() {
        let params = params14();
        let mut elems = Vec::new();
        for n in 0..=3u32 {
            for m in 0..=(3 - n) / 2 {
                for i in 1..=crate::harmonic::index_count(n) {
                    elems.push(laguerre_element(m, n, i, &params));
                }
            }
        }
        for (a, ea) in elems.iter().enumerate() {
            for eb in elems.iter().skip(a + 1) {
                assert_eq!(
                    pair_gauss(&ea.poly, &eb.poly, &params),
                    Q::zero(),
                    "({},{},{}) vs ({},{},{})",
                    ea.m,
                    ea.n,
                    ea.i,
                    eb.m,
                    eb.n,
                    eb.i
                );
            }
        }
    }
}
