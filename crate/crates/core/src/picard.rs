//! The Picard lattice of the blow-up `X` of the plane at `n` collinear points.
//!
//! A class is written `dL - a_1 E_1 - ... - a_n E_n`, where `L` is the pullback
//! of a general line and `E_i` are the exceptional curves. The intersection
//! form is `L^2 = 1`, `E_i^2 = -1`, with all mixed products zero.
//!
//! Two bases of the lattice matter here. The effective monoid is free on
//! `L - E_1 - ... - E_n` (the strict transform of the line through the points)
//! together with `E_1, ..., E_n`; the nef monoid is free on `L, L - E_1, ...,
//! L - E_n`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{CoxError, Result};

/// A divisor class `dL - sum a_i E_i` on the blow-up at `n >= 2` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    d: BigInt,
    a: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(d: BigInt, a: Vec<BigInt>) -> Result<Self> {
        if a.len() < 2 {
            return Err(CoxError::UnsupportedPointCount(a.len()));
        }
        Ok(Self { d, a })
    }

    pub fn from_i64(d: i64, a: &[i64]) -> Result<Self> {
        Self::new(BigInt::from(d), a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(BigInt::zero(), vec![BigInt::zero(); n])
    }

    /// The class `L`.
    pub fn line(n: usize) -> Result<Self> {
        Self::new(BigInt::one(), vec![BigInt::zero(); n])
    }

    /// The exceptional class `E_i`, with `i` counted from 1.
    pub fn exceptional(n: usize, i: usize) -> Result<Self> {
        let mut c = Self::zero(n)?;
        if i == 0 || i > n {
            return Err(CoxError::Domain(format!("exceptional index {i} outside 1..={n}")));
        }
        c.a[i - 1] = -BigInt::one();
        Ok(c)
    }

    /// The class `L - E_1 - ... - E_n` of the strict transform of the line `Y`.
    pub fn line_through_points(n: usize) -> Result<Self> {
        Self::new(BigInt::one(), vec![BigInt::one(); n])
    }

    /// The class `L - E_i`, with `i` counted from 1.
    pub fn pencil(n: usize, i: usize) -> Result<Self> {
        let e = Self::exceptional(n, i)?;
        Ok(Self::line(n)? - e)
    }

    /// Parses `"d a1 ... an"` (whitespace separated integers) for a fixed `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != n + 1 {
            return Err(CoxError::Parse(format!(
                "expected {} integers \"d a1 ... a{n}\", got {} in {s:?}",
                n + 1,
                parts.len()
            )));
        }
        let mut nums = Vec::with_capacity(parts.len());
        for p in parts {
            let v: BigInt = p
                .parse()
                .map_err(|_| CoxError::Parse(format!("not an integer: {p:?} (expected \"d a1 ... a{n}\")")))?;
            nums.push(v);
        }
        let d = nums.remove(0);
        Self::new(d, nums)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(CoxError::DimensionMismatch { left: self.n(), right: other.n() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(self.clone() + other.clone())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(self.clone() - other.clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self { d: &self.d * k, a: self.a.iter().map(|x| x * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.a.iter().all(Zero::is_zero)
    }
}

// The operator impls assume equal `n`; use `checked_add`/`checked_sub` for untrusted input.
impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.n(), rhs.n());
        Self { d: self.d + rhs.d, a: self.a.into_iter().zip(rhs.a).map(|(x, y)| x + y).collect() }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        debug_assert_eq!(self.n(), rhs.n());
        Self { d: self.d - rhs.d, a: self.a.into_iter().zip(rhs.a).map(|(x, y)| x - y).collect() }
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        Self { d: -self.d, a: self.a.into_iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)?;
        for x in &self.a {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

/// Serializes as `{"d": .., "a": [..]}`; integers outside the `i64` range
/// become decimal strings.
impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DivisorClass", 2)?;
        st.serialize_field("d", &json_int(&self.d))?;
        st.serialize_field("a", &self.a.iter().map(json_int).collect::<Vec<_>>())?;
        st.end()
    }
}

pub(crate) fn json_int(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

/// Coordinates in the free basis `(L - sum E_i, E_1, ..., E_n)` of the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveCoords {
    /// Coefficient of `L - E_1 - ... - E_n`.
    pub m: BigInt,
    /// Coefficients of `E_1, ..., E_n`.
    pub c: Vec<BigInt>,
}

impl EffectiveCoords {
    pub fn to_class(&self) -> Result<DivisorClass> {
        DivisorClass::new(self.m.clone(), self.c.iter().map(|c| &self.m - c).collect())
    }
}

/// Coordinates in the nef basis `(L, L - E_1, ..., L - E_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefCoords {
    /// Coefficient of `L`.
    pub b: BigInt,
    /// Coefficients of `L - E_1, ..., L - E_n`.
    pub b_i: Vec<BigInt>,
}

impl NefCoords {
    pub fn to_class(&self) -> Result<DivisorClass> {
        let total: BigInt = self.b_i.iter().sum();
        DivisorClass::new(&self.b + total, self.b_i.clone())
    }
}

pub fn intersect(x: &DivisorClass, y: &DivisorClass) -> Result<BigInt> {
    x.check_same_n(y)?;
    let mut acc = &x.d * &y.d;
    for (p, q) in x.a.iter().zip(&y.a) {
        acc -= p * q;
    }
    Ok(acc)
}

/// `K = -3L + E_1 + ... + E_n`.
pub fn canonical_class(n: usize) -> Result<DivisorClass> {
    DivisorClass::new(BigInt::from(-3), vec![-BigInt::one(); n])
}

/// `k(k-1)/2` for every integer `k`; zero at `k = 0` and `k = 1`.
pub fn binom2(k: &BigInt) -> BigInt {
    (k * (k - 1u32)).div_floor(&BigInt::from(2))
}

/// Riemann-Roch: `C(d+2, 2) - sum C(a_i+1, 2)`.
pub fn chi(dc: &DivisorClass) -> BigInt {
    let mut acc = binom2(&(&dc.d + 2u32));
    for a in &dc.a {
        acc -= binom2(&(a + 1u32));
    }
    acc
}

pub fn effective_coords(dc: &DivisorClass) -> Option<EffectiveCoords> {
    if dc.d.is_negative() {
        return None;
    }
    let c: Vec<BigInt> = dc.a.iter().map(|a| &dc.d - a).collect();
    if c.iter().any(Signed::is_negative) {
        return None;
    }
    Some(EffectiveCoords { m: dc.d.clone(), c })
}

pub fn is_effective(dc: &DivisorClass) -> bool {
    effective_coords(dc).is_some()
}

pub fn nef_coords(dc: &DivisorClass) -> Option<NefCoords> {
    if dc.a.iter().any(Signed::is_negative) {
        return None;
    }
    let total: BigInt = dc.a.iter().sum();
    let b = &dc.d - total;
    if b.is_negative() {
        return None;
    }
    Some(NefCoords { b, b_i: dc.a.clone() })
}

pub fn is_nef(dc: &DivisorClass) -> bool {
    nef_coords(dc).is_some()
}

/// Result of removing fixed components from an effective class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stripped {
    pub nef_part: DivisorClass,
    /// Copies of `E_1, ..., E_n` removed.
    pub removed_exceptional: Vec<BigInt>,
    /// Copies of `L - E_1 - ... - E_n` removed.
    pub removed_line: BigInt,
}

impl Stripped {
    pub fn is_trivial(&self) -> bool {
        self.removed_line.is_zero() && self.removed_exceptional.iter().all(Zero::is_zero)
    }
}

/// Removes negative curves `E_i` and `L - sum E_j` from `|D|` until the class is nef.
///
/// The result is the one reached by repeatedly subtracting a single copy of the
/// first generator (in the order `E_1, ..., E_n, L - sum E_j`) meeting the class
/// negatively, but it is computed in closed form so huge classes do not loop.
///
/// In effective coordinates `D = m (L - sum E) + sum c_i E_i`, subtracting
/// exceptional curves clamps `c_i` to `min(c_i, m)`; the line is then removed
/// while `g(m) = sum min(c_i, m) - (n - 1) m` is negative. `g` is concave with
/// `g(0) = 0`, so `{m' : g(m') >= 0}` is an interval starting at zero and the
/// surviving `m'` is its top end capped at `m`.
pub fn strip_base_components(dc: &DivisorClass) -> Result<Stripped> {
    let coords = effective_coords(dc)
        .ok_or_else(|| CoxError::Domain(format!("class ({dc}) is not effective; nothing to strip")))?;
    let n = dc.n();
    let slope = BigInt::from(n - 1);
    let g = |m: &BigInt| -> BigInt {
        let s: BigInt = coords.c.iter().map(|c| c.min(m).clone()).sum();
        s - &slope * m
    };

    let m_kept = if !g(&coords.m).is_negative() {
        coords.m.clone()
    } else {
        // largest m' in [0, m) with g(m') >= 0
        let (mut lo, mut hi) = (BigInt::zero(), coords.m.clone());
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if g(&mid).is_negative() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo
    };
    let c_kept: Vec<BigInt> = coords.c.iter().map(|c| c.min(&m_kept).clone()).collect();
    let removed_exceptional = coords.c.iter().zip(&c_kept).map(|(c, k)| c - k).collect();
    let removed_line = &coords.m - &m_kept;
    let nef_part = EffectiveCoords { m: m_kept, c: c_kept }.to_class()?;
    debug_assert!(is_nef(&nef_part));
    Ok(Stripped { nef_part, removed_exceptional, removed_line })
}

/// `h^0(D)`: zero off the effective cone, otherwise `chi` of the nef part.
pub fn h0(dc: &DivisorClass) -> BigInt {
    match strip_base_components(dc) {
        Ok(s) => chi(&s.nef_part),
        Err(_) => BigInt::zero(),
    }
}

/// All nef classes with `0 <= d <= d_max`, ordered lexicographically in `(d, a_1, ..., a_n)`.
pub fn nef_classes(n: usize, d_max: u32) -> Result<Vec<DivisorClass>> {
    if n < 2 {
        return Err(CoxError::UnsupportedPointCount(n));
    }
    let mut out = Vec::new();
    let mut a = vec![0u32; n];
    for d in 0..=d_max {
        push_bounded(&mut out, d, &mut a, 0, d);
    }
    Ok(out)
}

fn push_bounded(out: &mut Vec<DivisorClass>, d: u32, a: &mut [u32], pos: usize, budget: u32) {
    if pos == a.len() {
        out.push(DivisorClass { d: BigInt::from(d), a: a.iter().map(|&x| BigInt::from(x)).collect() });
        return;
    }
    for v in 0..=budget {
        a[pos] = v;
        push_bounded(out, d, a, pos + 1, budget - v);
    }
    a[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(d: i64, a: &[i64]) -> DivisorClass {
        DivisorClass::from_i64(d, a).unwrap()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn intersection_form_on_basis() {
        let l = DivisorClass::line(3).unwrap();
        let e1 = DivisorClass::exceptional(3, 1).unwrap();
        let f = DivisorClass::line_through_points(3).unwrap();
        let p1 = DivisorClass::pencil(3, 1).unwrap();
        assert_eq!(p1, dc(1, &[1, 0, 0]));
        assert_eq!(intersect(&l, &l).unwrap(), big(1));
        assert_eq!(intersect(&p1, &e1).unwrap(), big(1));
        assert_eq!(intersect(&e1, &e1).unwrap(), big(-1));
        assert_eq!(intersect(&f, &f).unwrap(), big(-2));
        for n in 2..8 {
            let f = DivisorClass::line_through_points(n).unwrap();
            assert_eq!(intersect(&f, &f).unwrap(), big(1 - n as i64));
        }
    }

    #[test]
    fn intersect_rejects_mismatched_n() {
        let err = intersect(&DivisorClass::line(3).unwrap(), &DivisorClass::line(4).unwrap()).unwrap_err();
        assert_eq!(err, CoxError::DimensionMismatch { left: 3, right: 4 });
    }

    #[test]
    fn one_point_is_rejected() {
        assert!(matches!(DivisorClass::line(1), Err(CoxError::UnsupportedPointCount(1))));
        assert!(DivisorClass::line(2).is_ok());
        let msg = CoxError::UnsupportedPointCount(1).to_string();
        assert!(msg.contains("toric"));
    }

    #[test]
    fn canonical_class_values() {
        let k = canonical_class(3).unwrap();
        assert_eq!(k, dc(-3, &[-1, -1, -1]));
        assert!(!is_effective(&k));
        assert_eq!(intersect(&k, &DivisorClass::line(3).unwrap()).unwrap(), big(-3));
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi(&dc(0, &[0, 0, 0])), big(1));
        assert_eq!(chi(&dc(1, &[0, 0, 0])), big(3));
        assert_eq!(chi(&dc(3, &[1, 1, 1])), big(7));
    }

    #[test]
    fn chi_matches_riemann_roch_form() {
        for n in 2..5 {
            let k = canonical_class(n).unwrap();
            for d in -4..6i64 {
                for a0 in -3..4i64 {
                    for a1 in -2..3i64 {
                        let mut a = vec![a0, a1];
                        a.resize(n, 1);
                        let x = dc(d, &a);
                        let self_int = intersect(&x, &x).unwrap();
                        let with_k = intersect(&x, &k).unwrap();
                        assert_eq!(chi(&x), 1 + (self_int - with_k) / 2);
                    }
                }
            }
        }
    }

    #[test]
    fn binom2_extends_to_all_integers() {
        assert_eq!(binom2(&big(0)), big(0));
        assert_eq!(binom2(&big(1)), big(0));
        assert_eq!(binom2(&big(2)), big(1));
        assert_eq!(binom2(&big(5)), big(10));
        assert_eq!(binom2(&big(-1)), big(1));
        assert_eq!(binom2(&big(-2)), big(3));
    }

    #[test]
    fn effectivity_examples() {
        let e1 = dc(0, &[-1, 0, 0]);
        assert!(is_effective(&e1));
        assert_eq!(effective_coords(&e1).unwrap(), EffectiveCoords { m: big(0), c: vec![big(1), big(0), big(0)] });
        assert!(!is_effective(&dc(2, &[3, 0, 0])));
        let z = effective_coords(&dc(0, &[0, 0, 0])).unwrap();
        assert!(z.m.is_zero() && z.c.iter().all(Zero::is_zero));
        assert!(!is_effective(&dc(-1, &[-1, -1, -1])));
    }

    #[test]
    fn nef_examples() {
        assert!(is_nef(&dc(1, &[1, 0, 0])));
        assert!(!is_nef(&dc(2, &[1, 1, 1])));
        assert!(!is_nef(&dc(0, &[-1, 0, 0])));
        let c = nef_coords(&dc(5, &[1, 2, 0])).unwrap();
        assert_eq!(c.b, big(2));
        assert_eq!(c.to_class().unwrap(), dc(5, &[1, 2, 0]));
    }

    #[test]
    fn stripping_examples() {
        let s = strip_base_components(&dc(2, &[2, 1, 1])).unwrap();
        assert_eq!(s.nef_part, dc(1, &[1, 0, 0]));
        assert_eq!(s.removed_line, big(1));
        assert!(s.removed_exceptional.iter().all(Zero::is_zero));

        let nef = dc(4, &[2, 1, 0]);
        let s = strip_base_components(&nef).unwrap();
        assert_eq!(s.nef_part, nef);
        assert!(s.is_trivial());

        let s = strip_base_components(&dc(0, &[-2, 0, 0])).unwrap();
        assert_eq!(s.nef_part, dc(0, &[0, 0, 0]));
        assert_eq!(s.removed_exceptional, vec![big(2), big(0), big(0)]);
        assert!(s.removed_line.is_zero());

        assert!(matches!(strip_base_components(&dc(2, &[3, 0, 0])), Err(CoxError::Domain(_))));
    }

    #[test]
    fn stripping_handles_huge_classes() {
        let huge = BigInt::from(10).pow(40);
        let x = DivisorClass::new(huge.clone(), vec![huge.clone(), huge.clone(), huge.clone()]).unwrap();
        let s = strip_base_components(&x).unwrap();
        assert!(s.nef_part.is_zero());
        assert_eq!(s.removed_line, huge);
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0(&DivisorClass::line(3).unwrap()), big(3));
        assert_eq!(h0(&dc(2, &[3, 0, 0])), big(0));
        assert_eq!(h0(&dc(2, &[2, 1, 1])), big(2));
        assert_eq!(h0(&dc(1, &[1, 1, 1])), big(1));
        assert_eq!(h0(&dc(0, &[-4, 0, 0])), big(1));
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(DivisorClass::parse("3 1 1 1", 3).unwrap(), dc(3, &[1, 1, 1]));
        assert_eq!(DivisorClass::parse("  0 -1\t0 0 ", 3).unwrap(), dc(0, &[-1, 0, 0]));
        assert!(matches!(DivisorClass::parse("3 1 1", 3), Err(CoxError::Parse(_))));
        assert!(matches!(DivisorClass::parse("3 x 1 1", 3), Err(CoxError::Parse(_))));
    }

    #[test]
    fn nef_class_listing_is_lexicographic() {
        let v = nef_classes(2, 2).unwrap();
        // sum over d of C(d+2, 2)
        assert_eq!(v.len(), 1 + 3 + 6);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v.iter().all(is_nef));
    }

    #[test]
    fn serializes_as_d_and_a() {
        let s = serde_json::to_string(&dc(3, &[1, -1, 0])).unwrap();
        assert_eq!(s, r#"{"d":3,"a":[1,-1,0]}"#);
    }
}
