//! The harmonic basis p_{n,i}, built by a two-term matrix recurrence, with
//! its parity labels, closed-form norms, harmonic projection, and radical
//! detection.
//!
//! Degree n holds four elements (two at n = 0). The odd step multiplies by
//! a rotation-like matrix in (x1, x2); the even step additionally mixes in
//! the parameters, alternating between 2k+ and 2k- and dividing by the odd
//! integer 2m - 1, so all coefficients stay rational.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{
    dunkl, group_act, laplacian, pochhammer, q, q_factorial, q_int, q_pow, GroupElement, Params,
    VPoly, Q,
};
use crate::error::{Error, Result};
use num_traits::{One, Zero};

/// Parity type under the two axis reflections: the first letter is the
/// eigenvalue sign under s1 (E for +1, O for -1), the second under s2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeLabel {
    EE,
    EO,
    OE,
    OO,
}

impl TypeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeLabel::EE => "EE",
            TypeLabel::EO => "EO",
            TypeLabel::OE => "OE",
            TypeLabel::OO => "OO",
        }
    }
}

impl std::fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One harmonic basis element with its exact norm under the differential
/// pairing.
#[derive(Clone, Debug)]
pub struct BasisEntry {
    pub n: u32,
    pub i: u8,
    pub poly: VPoly,
    pub type_label: TypeLabel,
    pub nu: Q,
}

impl Serialize for BasisEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BasisEntry", 5)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("i", &self.i)?;
        s.serialize_field("type_label", self.type_label.as_str())?;
        s.serialize_field("nu", &self.nu.to_string())?;
        s.serialize_field("poly", &self.poly)?;
        s.end()
    }
}

type RowCache = Mutex<HashMap<(String, String), Arc<Vec<[VPoly; 4]>>>>;

fn row_cache() -> &'static RowCache {
    static CACHE: OnceLock<RowCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn extend_rows(rows: &mut Vec<[VPoly; 4]>, nmax: u32, params: &Params) {
    if rows.is_empty() {
        // Degree 0 stores the aliases (0,3) -> (0,1) and (0,4) -> -(0,2) so
        // the recurrence below needs no special case.
        rows.push([VPoly::t1(), VPoly::t2(), VPoly::t1(), VPoly::t2().neg()]);
    }
    let two_kp = q_int(2) * params.kplus();
    let two_km = q_int(2) * params.kminus();
    for n in rows.len() as u32..=nmax {
        let prev = rows.last().expect("seed row present");
        let next: [VPoly; 4] = if n % 2 == 1 {
            // p_{2m+1,b}   =  x1 p_{2m,b} + x2 p_{2m,b+1}
            // p_{2m+1,b+1} = -x2 p_{2m,b} + x1 p_{2m,b+1}      (b = 1, 3)
            let step = |u: &VPoly, v: &VPoly| -> (VPoly, VPoly) {
                (
                    u.mul_monomial(1, 0).add(&v.mul_monomial(0, 1)),
                    u.mul_monomial(0, 1).neg().add(&v.mul_monomial(1, 0)),
                )
            };
            let (a, b) = step(&prev[0], &prev[1]);
            let (c, d) = step(&prev[2], &prev[3]);
            [a, b, c, d]
        } else {
            // p_{2m,1} = ( x1 (d+2k-) p_{2m-1,3} + x2 (d-2k-) p_{2m-1,4}) / d
            // p_{2m,2} = (-x2 (d+2k-) p_{2m-1,3} + x1 (d-2k-) p_{2m-1,4}) / d
            // p_{2m,3} = ( x1 (d+2k+) p_{2m-1,1} + x2 (d-2k+) p_{2m-1,2}) / d
            // p_{2m,4} = (-x2 (d+2k+) p_{2m-1,1} + x1 (d-2k+) p_{2m-1,2}) / d
            // with d = 2m - 1; the two chains swap which k they consume.
            let d = q_int((n - 1) as i64);
            let step = |u: &VPoly, v: &VPoly, tk: &Q| -> (VPoly, VPoly) {
                let cu = (&d + tk) / &d;
                let cv = (&d - tk) / &d;
                let us = u.scale(&cu);
                let vs = v.scale(&cv);
                (
                    us.mul_monomial(1, 0).add(&vs.mul_monomial(0, 1)),
                    us.mul_monomial(0, 1).neg().add(&vs.mul_monomial(1, 0)),
                )
            };
            let (a, b) = step(&prev[2], &prev[3], &two_km);
            let (c, dd) = step(&prev[0], &prev[1], &two_kp);
            [a, b, c, dd]
        };
        rows.push(next);
    }
}

/// Rows 0..=nmax of the basis recurrence, cached per parameter pair.
/// Row 0 stores the degree-0 aliases [t1, t2, t1, -t2].
pub fn basis_rows(nmax: u32, params: &Params) -> Arc<Vec<[VPoly; 4]>> {
    let key = (params.k0.to_string(), params.k1.to_string());
    let mut cache = row_cache().lock().expect("basis cache lock");
    let entry = cache.entry(key).or_default();
    if (entry.len() as u32) < nmax + 1 {
        let mut rows = entry.as_ref().clone();
        extend_rows(&mut rows, nmax, params);
        *entry = Arc::new(rows);
    }
    Arc::clone(entry)
}

/// Number of basis indices at degree n: 2 at n = 0, else 4.
pub fn index_count(n: u32) -> u8 {
    if n == 0 {
        2
    } else {
        4
    }
}

/// All basis entries for 0 <= n <= nmax, norms filled from the closed form.
pub fn build_basis(nmax: u32, params: &Params) -> Vec<BasisEntry> {
    let rows = basis_rows(nmax, params);
    let mut out = Vec::new();
    for n in 0..=nmax {
        for i in 1..=index_count(n) {
            let poly = rows[n as usize][(i - 1) as usize].clone();
            let type_label = type_label(&poly).expect("basis elements have pure parity");
            out.push(BasisEntry {
                n,
                i,
                poly,
                type_label,
                nu: norm_pi(n, i, params),
            });
        }
    }
    out
}

/// The parity label of a simultaneous eigenvector of both axis reflections.
pub fn type_label(f: &VPoly) -> Result<TypeLabel> {
    if f.is_zero() {
        return Err(Error::NotEigenvector);
    }
    let sign_under = |w: GroupElement| -> Result<i8> {
        let wf = group_act(w, f);
        if wf == *f {
            Ok(1)
        } else if wf == f.neg() {
            Ok(-1)
        } else {
            Err(Error::NotEigenvector)
        }
    };
    let e1 = sign_under(GroupElement::S1)?;
    let e2 = sign_under(GroupElement::S2)?;
    Ok(match (e1, e2) {
        (1, 1) => TypeLabel::EE,
        (1, -1) => TypeLabel::EO,
        (-1, 1) => TypeLabel::OE,
        _ => TypeLabel::OO,
    })
}

/// The degree-preserving self-adjoint operator: reflect across the main
/// diagonal after applying the angular combination x2 D1 - x1 D2. Even-degree
/// basis elements are eigenvectors with eigenvalue n times (-1, 1, 1, -1)_i.
pub fn u12_apply(f: &VPoly, params: &Params) -> VPoly {
    let d1 = dunkl(1, f, params);
    let d2 = dunkl(2, f, params);
    let inner = d1.mul_monomial(0, 1).sub(&d2.mul_monomial(1, 0));
    group_act(GroupElement::S12P, &inner)
}

fn pi_product(a: &Q, b: &Q, m: u32, eps: [u32; 4]) -> Q {
    let quarter = q(1, 4);
    let three_quarter = q(3, 4);
    let ha = a / q_int(2);
    let hb = b / q_int(2);
    let nums = [
        &quarter + &ha,
        &quarter - &ha,
        &three_quarter + &hb,
        &three_quarter - &hb,
    ];
    let dens = [
        quarter.clone(),
        quarter,
        three_quarter.clone(),
        three_quarter,
    ];
    let mut out = Q::one();
    for j in 0..4 {
        out *= pochhammer(&nums[j], m + eps[j]) / pochhammer(&dens[j], m + eps[j]);
    }
    out
}

/// The parameter-dependent norm factor: nu(p_{n,i}) = 2^n n! nu'(p_{n,i}).
pub fn norm_pi_prime(n: u32, i: u8, params: &Params) -> Q {
    assert!(
        i >= 1 && i <= index_count(n),
        "index {i} invalid at degree {n}"
    );
    let m = n / 4;
    let kp = params.kplus();
    let km = params.kminus();
    let (a, b, eps) = match (n % 4, i) {
        (0, 1 | 2) => (&kp, &km, [0, 0, 0, 0]),
        (0, 3 | 4) => (&km, &kp, [0, 0, 0, 0]),
        (2, 1 | 2) => (&km, &kp, [1, 1, 0, 0]),
        (2, 3 | 4) => (&kp, &km, [1, 1, 0, 0]),
        (1, 1) => (&kp, &km, [0, 1, 0, 0]),
        (1, 2) => (&kp, &km, [1, 0, 0, 0]),
        (1, 3) => (&km, &kp, [0, 1, 0, 0]),
        (1, 4) => (&km, &kp, [1, 0, 0, 0]),
        (3, 1) => (&km, &kp, [1, 1, 0, 1]),
        (3, 2) => (&km, &kp, [1, 1, 1, 0]),
        (3, 3) => (&kp, &km, [1, 1, 0, 1]),
        (3, 4) => (&kp, &km, [1, 1, 1, 0]),
        _ => unreachable!("residue and index ranges are exhaustive"),
    };
    pi_product(a, b, m, eps)
}

/// The exact norm nu(p_{n,i}) under the differential pairing.
pub fn norm_pi(n: u32, i: u8, params: &Params) -> Q {
    q_pow(&q_int(2), n) * q_factorial(n) * norm_pi_prime(n, i, params)
}

/// Project a homogeneous polynomial onto the harmonic subspace of its
/// degree: sum over j of |x|^(2j) Lap^j f / (4^j j! (1-n)_j). Safe because
/// j <= n/2 keeps the Pochhammer factor nonzero.
pub fn project_harmonic(f: &VPoly, params: &Params) -> Result<VPoly> {
    let n = f.homogeneous_degree()?;
    let mut out = VPoly::zero();
    let mut lap = f.clone();
    let mut j = 0u32;
    while !lap.is_zero() && 2 * j <= n {
        let denom =
            q_pow(&q_int(4), j) * q_factorial(j) * pochhammer(&(q_int(1) - q_int(n as i64)), j);
        out = out.add(&lap.mul_rsq_pow(j).scale(&denom.recip()));
        lap = laplacian(&lap, params);
        j += 1;
    }
    Ok(out)
}

/// All (n, i) with n <= nmax whose closed-form norm vanishes exactly.
pub fn radical_indices(params: &Params, nmax: u32) -> Vec<(u32, u8)> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for i in 1..=index_count(n) {
            if norm_pi(n, i, params).is_zero() {
                out.push((n, i));
            }
        }
    }
    out
}

/// True iff the four degree-n elements are linearly independent, i.e. the
/// coefficient matrix over all monomials has rank 4 (rank 2 at n = 0).
pub fn row_is_independent(n: u32, params: &Params) -> bool {
    let rows = basis_rows(n, params);
    let row = &rows[n as usize];
    let count = index_count(n) as usize;
    // Columns: (monomial, component) pairs; Gaussian elimination over Q.
    let mut cols: Vec<(crate::algebra::Mono, usize)> = Vec::new();
    for p in row.iter().take(count) {
        for (m, c) in p.terms() {
            for j in 0..2 {
                if !c[j].is_zero() && !cols.contains(&(*m, j)) {
                    cols.push((*m, j));
                }
            }
        }
    }
    let mut mat: Vec<Vec<Q>> = row
        .iter()
        .take(count)
        .map(|p| {
            cols.iter()
                .map(|(m, j)| {
                    p.terms()
                        .find(|(mm, _)| *mm == m)
                        .map(|(_, c)| c[*j].clone())
                        .unwrap_or_else(Q::zero)
                })
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    for col in 0..cols.len() {
        let Some(pivot) = (rank..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = mat[rank][col].clone().recip();
        for r in 0..mat.len() {
            if r != rank && !mat[r][col].is_zero() {
                let factor = &mat[r][col] * &inv;
                for cc in col..cols.len() {
                    let sub = &mat[rank][cc] * &factor;
                    mat[r][cc] = &mat[r][cc] - &sub;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank == count
}
