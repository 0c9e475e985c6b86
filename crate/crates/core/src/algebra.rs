//! Exact arithmetic for vector-valued polynomials in two variables, the
//! hyperoctahedral group action, and the Dunkl operators.
//!
//! Scalars are arbitrary-precision rationals; every operation in this module
//! is exact. Points are row vectors and the group acts from the right, so
//! the action on polynomials is (wf)(x, t) = f(xw, tw). The difference
//! quotients inside the Dunkl operators are exact polynomial divisions by
//! the mirror linear forms; divisibility is a structural invariant and its
//! failure panics rather than returning garbage.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar used across the crate.
pub type Q = BigRational;

/// Rational n/d. Panics on zero denominator.
pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// x^e by binary powering.
pub fn q_pow(x: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

/// n! as a rational.
pub fn q_factorial(n: u32) -> Q {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Q::from_integer(acc)
}

/// Rising factorial (x)_j = x (x+1) ... (x+j-1); empty product is 1.
pub fn pochhammer(x: &Q, j: u32) -> Q {
    let mut acc = Q::one();
    for k in 0..j {
        acc *= x + q_int(k as i64);
    }
    acc
}

/// Multiplicity parameters of the reflection arrangement: `k0` weights the
/// two diagonal mirrors, `k1` the two coordinate mirrors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub k0: Q,
    pub k1: Q,
}

impl Params {
    pub fn new(k0: Q, k1: Q) -> Self {
        Params { k0, k1 }
    }

    /// Both parameters from small integer fractions.
    pub fn from_fracs(k0: (i64, i64), k1: (i64, i64)) -> Self {
        Params::new(q(k0.0, k0.1), q(k1.0, k1.1))
    }

    /// k+ = k0 + k1.
    pub fn kplus(&self) -> Q {
        &self.k0 + &self.k1
    }

    /// k- = k1 - k0.
    pub fn kminus(&self) -> Q {
        &self.k1 - &self.k0
    }

    /// The module constant gamma(kappa) is identically zero for this module;
    /// degree shifts in eigenvalue and projection formulas use it as 0.
    pub fn gamma_shift(&self) -> Q {
        Q::zero()
    }

    /// True iff |k0 + k1| < 1/2 and |k1 - k0| < 1/2: the open square on
    /// which the bilinear forms are positive-definite.
    pub fn is_positive_region(&self) -> bool {
        let half = q(1, 2);
        self.kplus().abs() < half && self.kminus().abs() < half
    }

    /// True iff 1/2 +- k0 +- k1 is never an integer (all four sign choices),
    /// so no basis norm vanishes at any degree.
    pub fn is_generic(&self) -> bool {
        for s0 in [-1i64, 1] {
            for s1 in [-1i64, 1] {
                let v = q(1, 2) + q_int(s0) * &self.k0 + q_int(s1) * &self.k1;
                if v.is_integer() {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.k0.to_f64().expect("finite rational"),
            self.k1.to_f64().expect("finite rational"),
        )
    }
}

/// Monomial x1^a x2^b. Ordered by total degree, then by the x2 exponent;
/// this graded order fixes the serialized term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mono {
    pub a: u32,
    pub b: u32,
}

impl Mono {
    pub fn degree(&self) -> u32 {
        self.a + self.b
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.b).cmp(&(other.degree(), other.b))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse scalar polynomial in (x1, x2) with rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Mono, Q>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        ScalarPoly::default()
    }

    pub fn one() -> Self {
        ScalarPoly::monomial(0, 0, Q::one())
    }

    pub fn x1() -> Self {
        ScalarPoly::monomial(1, 0, Q::one())
    }

    pub fn x2() -> Self {
        ScalarPoly::monomial(0, 1, Q::one())
    }

    /// x1^2 + x2^2.
    pub fn rsq() -> Self {
        let mut p = ScalarPoly::monomial(2, 0, Q::one());
        p.insert_add(Mono { a: 0, b: 2 }, Q::one());
        p
    }

    pub fn monomial(a: u32, b: u32, c: Q) -> Self {
        let mut p = ScalarPoly::zero();
        p.insert_add(Mono { a, b }, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_add(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> ScalarPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &ScalarPoly) -> ScalarPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> ScalarPoly {
        if s.is_zero() {
            return ScalarPoly::zero();
        }
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, c * s);
        }
        out
    }

    pub fn mul(&self, other: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_add(
                    Mono {
                        a: ma.a + mb.a,
                        b: ma.b + mb.b,
                    },
                    ca * cb,
                );
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> ScalarPoly {
        let mut acc = ScalarPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn diff(&self, axis: usize) -> ScalarPoly {
        assert!(axis == 1 || axis == 2, "axis index is 1 or 2");
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            let (e, nm) = if axis == 1 {
                (m.a, Mono { a: m.a.wrapping_sub(1), b: m.b })
            } else {
                (m.b, Mono { a: m.a, b: m.b.wrapping_sub(1) })
            };
            if e > 0 {
                out.insert_add(nm, c * q_int(e as i64));
            }
        }
        out
    }

    pub fn eval_q(&self, x: &[Q; 2]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            acc += c * q_pow(&x[0], m.a) * q_pow(&x[1], m.b);
        }
        acc
    }

    pub fn eval_f64(&self, x: [f64; 2]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            acc += c.to_f64().expect("finite rational") * x[0].powi(m.a as i32) * x[1].powi(m.b as i32);
        }
        acc
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

/// A V-valued polynomial: each monomial carries the coefficient pair
/// (c1, c2) of the two module generators t1, t2. The pair (0, 0) is never
/// stored, so equality of term maps is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VPoly {
    terms: BTreeMap<Mono, [Q; 2]>,
}

impl VPoly {
    pub fn zero() -> Self {
        VPoly::default()
    }

    /// The constant polynomial t1.
    pub fn t1() -> Self {
        VPoly::monomial(0, 0, [Q::one(), Q::zero()])
    }

    /// The constant polynomial t2.
    pub fn t2() -> Self {
        VPoly::monomial(0, 0, [Q::zero(), Q::one()])
    }

    pub fn monomial(a: u32, b: u32, coeffs: [Q; 2]) -> Self {
        let mut p = VPoly::zero();
        p.insert_add(Mono { a, b }, coeffs);
        p
    }

    pub fn from_components(c1: ScalarPoly, c2: ScalarPoly) -> Self {
        let mut p = VPoly::zero();
        for (m, c) in c1.terms {
            p.insert_add(m, [c, Q::zero()]);
        }
        for (m, c) in c2.terms {
            p.insert_add(m, [Q::zero(), c]);
        }
        p
    }

    /// The scalar coefficient polynomial of t1 (j = 0) or t2 (j = 1).
    pub fn component(&self, j: usize) -> ScalarPoly {
        assert!(j < 2);
        let mut out = ScalarPoly::zero();
        for (m, c) in &self.terms {
            out.insert_add(*m, c[j].clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &[Q; 2])> {
        self.terms.iter()
    }

    fn insert_add(&mut self, m: Mono, c: [Q; 2]) {
        if c[0].is_zero() && c[1].is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = [&e.get()[0] + &c[0], &e.get()[1] + &c[1]];
                if v[0].is_zero() && v[1].is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &VPoly) -> VPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> VPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = [-c[0].clone(), -c[1].clone()];
        }
        out
    }

    pub fn sub(&self, other: &VPoly) -> VPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Q) -> VPoly {
        if s.is_zero() {
            return VPoly::zero();
        }
        let mut out = VPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(*m, [&c[0] * s, &c[1] * s]);
        }
        out
    }

    /// Multiply by the monomial x1^a x2^b.
    pub fn mul_monomial(&self, a: u32, b: u32) -> VPoly {
        let mut out = VPoly::zero();
        for (m, c) in &self.terms {
            out.terms.insert(
                Mono {
                    a: m.a + a,
                    b: m.b + b,
                },
                c.clone(),
            );
        }
        out
    }

    /// Multiply both components by a scalar polynomial.
    pub fn mul_scalar_poly(&self, p: &ScalarPoly) -> VPoly {
        let mut out = VPoly::zero();
        for (mp, cp) in p.terms() {
            for (m, c) in &self.terms {
                out.insert_add(
                    Mono {
                        a: m.a + mp.a,
                        b: m.b + mp.b,
                    },
                    [&c[0] * cp, &c[1] * cp],
                );
            }
        }
        out
    }

    /// Multiply by |x|^(2m) = (x1^2 + x2^2)^m.
    pub fn mul_rsq_pow(&self, m: u32) -> VPoly {
        self.mul_scalar_poly(&ScalarPoly::rsq().pow(m))
    }

    /// Componentwise partial derivative.
    pub fn diff(&self, axis: usize) -> VPoly {
        VPoly::from_components(self.component(0).diff(axis), self.component(1).diff(axis))
    }

    /// Maximum total degree over stored terms; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Total degree if all terms share it. The zero polynomial reports 0.
    pub fn homogeneous_degree(&self) -> crate::error::Result<u32> {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Ok(0),
            Some(m) => m.degree(),
        };
        for m in it {
            if m.degree() != first {
                return Err(crate::error::Error::NotHomogeneous(first, m.degree()));
            }
        }
        Ok(first)
    }

    /// The part of total degree d.
    pub fn homogeneous_component(&self, d: u32) -> VPoly {
        let mut out = VPoly::zero();
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.terms.insert(*m, c.clone());
            }
        }
        out
    }

    /// Sorted list of total degrees present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|m| m.degree()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn eval_q(&self, x: &[Q; 2]) -> [Q; 2] {
        [self.component(0).eval_q(x), self.component(1).eval_q(x)]
    }

    pub fn eval_f64(&self, x: [f64; 2]) -> [f64; 2] {
        [self.component(0).eval_f64(x), self.component(1).eval_f64(x)]
    }

    /// Evaluate at a complex point with exact rational real/imaginary parts.
    pub fn eval_complex(&self, x: &[Complex<Q>; 2]) -> [Complex<Q>; 2] {
        let max_a = self.terms.keys().map(|m| m.a).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|m| m.b).max().unwrap_or(0);
        let mut pow1 = Vec::with_capacity(max_a as usize + 1);
        let mut pow2 = Vec::with_capacity(max_b as usize + 1);
        let one = Complex::new(Q::one(), Q::zero());
        pow1.push(one.clone());
        for k in 1..=max_a as usize {
            let next = pow1[k - 1].clone() * x[0].clone();
            pow1.push(next);
        }
        pow2.push(one);
        for k in 1..=max_b as usize {
            let next = pow2[k - 1].clone() * x[1].clone();
            pow2.push(next);
        }
        let mut out = [
            Complex::new(Q::zero(), Q::zero()),
            Complex::new(Q::zero(), Q::zero()),
        ];
        for (m, c) in &self.terms {
            let xp = pow1[m.a as usize].clone() * pow2[m.b as usize].clone();
            for j in 0..2 {
                out[j] = out[j].clone()
                    + xp.clone() * Complex::new(c[j].clone(), Q::zero());
            }
        }
        out
    }
}

impl Add for &VPoly {
    type Output = VPoly;
    fn add(self, rhs: &VPoly) -> VPoly {
        VPoly::add(self, rhs)
    }
}

impl Sub for &VPoly {
    type Output = VPoly;
    fn sub(self, rhs: &VPoly) -> VPoly {
        VPoly::sub(self, rhs)
    }
}

impl Neg for &VPoly {
    type Output = VPoly;
    fn neg(self) -> VPoly {
        VPoly::neg(self)
    }
}

impl Mul<&Q> for &VPoly {
    type Output = VPoly;
    fn mul(self, rhs: &Q) -> VPoly {
        self.scale(rhs)
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            for (j, name) in ["t1", "t2"].iter().enumerate() {
                if c[j].is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "({})", c[j])?;
                if m.a > 0 {
                    write!(f, "*x1^{}", m.a)?;
                }
                if m.b > 0 {
                    write!(f, "*x2^{}", m.b)?;
                }
                write!(f, "*{}", name)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRow {
    a: u32,
    b: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c2: Option<String>,
}

impl Serialize for VPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<TermRow> = self
            .terms
            .iter()
            .map(|(m, c)| TermRow {
                a: m.a,
                b: m.b,
                c1: if c[0].is_zero() { None } else { Some(c[0].to_string()) },
                c2: if c[1].is_zero() { None } else { Some(c[1].to_string()) },
            })
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<TermRow>::deserialize(deserializer)?;
        let mut out = VPoly::zero();
        for row in rows {
            let parse = |s: &Option<String>| -> std::result::Result<Q, D::Error> {
                match s {
                    None => Ok(Q::zero()),
                    Some(s) => Q::from_str(s)
                        .map_err(|e| D::Error::custom(format!("bad rational {s:?}: {e}"))),
                }
            };
            let c1 = parse(&row.c1)?;
            let c2 = parse(&row.c2)?;
            out.insert_add(Mono { a: row.a, b: row.b }, [c1, c2]);
        }
        Ok(out)
    }
}

/// The eight signed-permutation symmetries of the square, acting on row
/// vectors from the right. `S1`, `S2` reflect across the coordinate axes,
/// `S12P`, `S12M` across the diagonals; `R` is the quarter turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    E,
    S1,
    S2,
    S12P,
    S12M,
    R,
    R2,
    R3,
}

pub const GROUP: [GroupElement; 8] = [
    GroupElement::E,
    GroupElement::S1,
    GroupElement::S2,
    GroupElement::S12P,
    GroupElement::S12M,
    GroupElement::R,
    GroupElement::R2,
    GroupElement::R3,
];

pub const REFLECTIONS: [GroupElement; 4] = [
    GroupElement::S12P,
    GroupElement::S12M,
    GroupElement::S1,
    GroupElement::S2,
];

impl GroupElement {
    /// The element's matrix M, with points acting as x -> x*M.
    pub fn matrix(self) -> [[i8; 2]; 2] {
        match self {
            GroupElement::E => [[1, 0], [0, 1]],
            GroupElement::S1 => [[-1, 0], [0, 1]],
            GroupElement::S2 => [[1, 0], [0, -1]],
            GroupElement::S12P => [[0, 1], [1, 0]],
            GroupElement::S12M => [[0, -1], [-1, 0]],
            GroupElement::R => [[0, 1], [-1, 0]],
            GroupElement::R2 => [[-1, 0], [0, -1]],
            GroupElement::R3 => [[0, -1], [1, 0]],
        }
    }

    pub fn from_matrix(m: [[i8; 2]; 2]) -> Option<GroupElement> {
        GROUP.into_iter().find(|g| g.matrix() == m)
    }

    /// The element whose matrix is M_a * M_b. Acting by b and then by a on
    /// polynomials equals one action by compose(a, b).
    pub fn compose(a: GroupElement, b: GroupElement) -> GroupElement {
        let (ma, mb) = (a.matrix(), b.matrix());
        let mut m = [[0i8; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = ma[r][0] * mb[0][c] + ma[r][1] * mb[1][c];
            }
        }
        GroupElement::from_matrix(m).expect("group closure")
    }

    pub fn inverse(self) -> GroupElement {
        let m = self.matrix();
        GroupElement::from_matrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
            .expect("orthogonal inverse is the transpose")
    }

    pub fn det(self) -> i8 {
        let m = self.matrix();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn is_reflection(self) -> bool {
        REFLECTIONS.contains(&self)
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupElement::E => "e",
            GroupElement::S1 => "s1",
            GroupElement::S2 => "s2",
            GroupElement::S12P => "s12p",
            GroupElement::S12M => "s12m",
            GroupElement::R => "r",
            GroupElement::R2 => "r2",
            GroupElement::R3 => "r3",
        }
    }

    /// The element's matrix in floating point.
    pub fn matrix_f64(self) -> [[f64; 2]; 2] {
        let m = self.matrix();
        [
            [m[0][0] as f64, m[0][1] as f64],
            [m[1][0] as f64, m[1][1] as f64],
        ]
    }

    /// Apply x -> x*M to an f64 point.
    pub fn apply_point(self, x: [f64; 2]) -> [f64; 2] {
        let m = self.matrix();
        [
            x[0] * m[0][0] as f64 + x[1] * m[1][0] as f64,
            x[0] * m[0][1] as f64 + x[1] * m[1][1] as f64,
        ]
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Substitute x -> x*M into a scalar polynomial, for a signed permutation M.
fn substitute_signed_perm(p: &ScalarPoly, w: GroupElement) -> ScalarPoly {
    let m = w.matrix();
    // Column j of M has exactly one nonzero entry: (x*M)_j = sign_j * x_{row_j}.
    let mut row = [0usize; 2];
    let mut sign = [0i8; 2];
    for j in 0..2 {
        for r in 0..2 {
            if m[r][j] != 0 {
                row[j] = r;
                sign[j] = m[r][j];
            }
        }
    }
    let mut out = ScalarPoly::zero();
    for (mono, c) in p.terms() {
        let swapped = row[0] == 1;
        let (na, nb) = if swapped { (mono.b, mono.a) } else { (mono.a, mono.b) };
        let mut s = 1i64;
        if sign[0] < 0 && mono.a % 2 == 1 {
            s = -s;
        }
        if sign[1] < 0 && mono.b % 2 == 1 {
            s = -s;
        }
        out.insert_add(Mono { a: na, b: nb }, c * q_int(s));
    }
    out
}

/// The group action (wf)(x, t) = f(xw, tw): substitute x -> x*M in each
/// component, then mix components by M.
pub fn group_act(w: GroupElement, f: &VPoly) -> VPoly {
    let m = w.matrix();
    let sub = [
        substitute_signed_perm(&f.component(0), w),
        substitute_signed_perm(&f.component(1), w),
    ];
    let mut comps = [ScalarPoly::zero(), ScalarPoly::zero()];
    for j in 0..2 {
        for i in 0..2 {
            if m[j][i] != 0 {
                comps[j] = comps[j].add(&sub[i].scale(&q_int(m[j][i] as i64)));
            }
        }
    }
    VPoly::from_components(comps[0].clone(), comps[1].clone())
}

/// The t-only substitution f(x, tw): mix components by M, leave x alone.
pub fn t_act(w: GroupElement, f: &VPoly) -> VPoly {
    let m = w.matrix();
    let comp = [f.component(0), f.component(1)];
    let mut comps = [ScalarPoly::zero(), ScalarPoly::zero()];
    for j in 0..2 {
        for i in 0..2 {
            if m[j][i] != 0 {
                comps[j] = comps[j].add(&comp[i].scale(&q_int(m[j][i] as i64)));
            }
        }
    }
    VPoly::from_components(comps[0].clone(), comps[1].clone())
}

#[derive(Clone, Copy)]
enum Mult {
    K0,
    K1,
}

/// Positive roots (v1, v2) with their reflections and multiplicity class.
/// The diagonal mirrors carry k0, the coordinate mirrors k1.
const POSITIVE_ROOTS: [(i64, i64, GroupElement, Mult); 4] = [
    (1, -1, GroupElement::S12P, Mult::K0),
    (1, 1, GroupElement::S12M, Mult::K0),
    (1, 0, GroupElement::S1, Mult::K1),
    (0, 1, GroupElement::S2, Mult::K1),
];

/// Exact division of a scalar polynomial by c1*x1 + c2*x2.
/// Panics if the division leaves a remainder: callers only divide
/// differences that vanish on the mirror, so a remainder is a bug.
fn scalar_divide_linear(p: &ScalarPoly, c1: i64, c2: i64) -> ScalarPoly {
    assert!(c1 != 0 || c2 != 0);
    let mut rem = p.clone();
    let mut quo = ScalarPoly::zero();
    if c1 != 0 {
        let qc1 = q_int(c1);
        while !rem.is_zero() {
            let (&mono, coeff) = rem
                .terms
                .iter()
                .max_by_key(|(m, _)| (m.a, m.b))
                .expect("nonzero polynomial has terms");
            assert!(
                mono.a > 0,
                "difference quotient not divisible by {}*x1 + {}*x2 (stuck at x1^{} x2^{})",
                c1,
                c2,
                mono.a,
                mono.b
            );
            let qc = coeff / &qc1;
            let qm = Mono { a: mono.a - 1, b: mono.b };
            rem.insert_add(mono, -(&qc * &qc1));
            if c2 != 0 {
                rem.insert_add(Mono { a: qm.a, b: qm.b + 1 }, -(&qc * q_int(c2)));
            }
            quo.insert_add(qm, qc);
        }
    } else {
        let qc2 = q_int(c2);
        while !rem.is_zero() {
            let (&mono, coeff) = rem
                .terms
                .iter()
                .max_by_key(|(m, _)| (m.b, m.a))
                .expect("nonzero polynomial has terms");
            assert!(
                mono.b > 0,
                "difference quotient not divisible by {}*x2 (stuck at x1^{} x2^{})",
                c2,
                mono.a,
                mono.b
            );
            let qc = coeff / &qc2;
            let qm = Mono { a: mono.a, b: mono.b - 1 };
            rem.insert_add(mono, -(&qc * &qc2));
            quo.insert_add(qm, qc);
        }
    }
    quo
}

fn divide_by_linear(f: &VPoly, c1: i64, c2: i64) -> VPoly {
    VPoly::from_components(
        scalar_divide_linear(&f.component(0), c1, c2),
        scalar_divide_linear(&f.component(1), c1, c2),
    )
}

/// The Dunkl operator on axis 1 or 2: the partial derivative plus, for each
/// positive root v with v_axis != 0, the multiplicity times
/// v_axis * (f(x, t s_v) - f(x s_v, t s_v)) / <x, v>, an exact division.
pub fn dunkl(axis: usize, f: &VPoly, params: &Params) -> VPoly {
    assert!(axis == 1 || axis == 2, "axis index is 1 or 2");
    let mut out = f.diff(axis);
    for &(v1, v2, refl, mult) in &POSITIVE_ROOTS {
        let vi = if axis == 1 { v1 } else { v2 };
        if vi == 0 {
            continue;
        }
        let kappa = match mult {
            Mult::K0 => &params.k0,
            Mult::K1 => &params.k1,
        };
        if kappa.is_zero() {
            continue;
        }
        let num = t_act(refl, f).sub(&group_act(refl, f));
        let quot = divide_by_linear(&num, v1, v2);
        out = out.add(&quot.scale(&(q_int(vi) * kappa)));
    }
    out
}

/// The Dunkl Laplacian, composed from the two commuting operators.
pub fn laplacian(f: &VPoly, params: &Params) -> VPoly {
    let d1 = dunkl(1, &dunkl(1, f, params), params);
    let d2 = dunkl(2, &dunkl(2, f, params), params);
    d1.add(&d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p11() -> VPoly {
        // x1 t1 + x2 t2
        let mut p = VPoly::monomial(1, 0, [Q::one(), Q::zero()]);
        p = p.add(&VPoly::monomial(0, 1, [Q::zero(), Q::one()]));
        p
    }

    #[test]
    fn group_is_closed_and_composes() {
        for a in GROUP {
            for b in GROUP {
                let c = GroupElement::compose(a, b);
                assert_eq!(c.matrix(), {
                    let (ma, mb) = (a.matrix(), b.matrix());
                    let mut m = [[0i8; 2]; 2];
                    for r in 0..2 {
                        for cc in 0..2 {
                            m[r][cc] = ma[r][0] * mb[0][cc] + ma[r][1] * mb[1][cc];
                        }
                    }
                    m
                });
            }
            assert_eq!(GroupElement::compose(a, a.inverse()), GroupElement::E);
        }
    }

    #[test]
    fn action_composition_order() {
        // Acting by w1 first and then w2 equals one action by compose(w2, w1).
        let f = p11().mul_monomial(1, 0); // break more symmetry
        for w1 in GROUP {
            for w2 in GROUP {
                let two_step = group_act(w2, &group_act(w1, &f));
                let one_step = group_act(GroupElement::compose(w2, w1), &f);
                assert_eq!(two_step, one_step, "w1={w1} w2={w2}");
            }
        }
    }

    #[test]
    fn axis_reflection_fixes_p11() {
        assert_eq!(group_act(GroupElement::S12P, &p11()), p11());
        // sigma1 (x1 t1) = -(-x1) t1 = x1 t1
        let f = VPoly::monomial(1, 0, [Q::one(), Q::zero()]);
        assert_eq!(group_act(GroupElement::S1, &f), f);
    }

    #[test]
    fn dunkl_kills_constants_and_drops_degree() {
        let params = Params::from_fracs((1, 4), (1, 8));
        assert!(dunkl(1, &VPoly::t1(), &params).is_zero());
        let d = dunkl(1, &p11(), &params);
        // D1 p11 = (1 - 2 k0 - 2 k1) t1
        let expected = VPoly::t1().scale(&(q_int(1) - q(2, 4) - q(2, 8)));
        assert_eq!(d, expected);
    }

    #[test]
    fn dunkl_operators_commute() {
        let params = Params::from_fracs((1, 4), (1, 8));
        let f = p11().mul_monomial(2, 1).add(&VPoly::monomial(0, 3, [q(1, 3), q(-2, 7)]));
        let a = dunkl(1, &dunkl(2, &f, &params), &params);
        let b = dunkl(2, &dunkl(1, &f, &params), &params);
        assert_eq!(a, b);
    }

    #[test]
    fn serde_round_trip() {
        let f = p11().mul_monomial(2, 1).add(&VPoly::monomial(0, 3, [q(1, 3), q(-2, 7)]));
        let s = serde_json::to_string(&f).unwrap();
        let back: VPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn eval_complex_at_1_i() {
        // p11 at (1, i) is (1, i).
        let x = [
            Complex::new(Q::one(), Q::zero()),
            Complex::new(Q::zero(), Q::one()),
        ];
        let v = p11().eval_complex(&x);
        assert_eq!(v[0], Complex::new(Q::one(), Q::zero()));
        assert_eq!(v[1], Complex::new(Q::zero(), Q::one()));
    }
}
