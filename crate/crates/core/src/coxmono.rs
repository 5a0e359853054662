//! Monomials in the generators `l, s_1..s_n, e_1..e_n` of the Cox ring, their
//! `Pic(X)`-degrees, and the standard monomials modulo the initial ideal
//! `(s_1 e_1, ..., s_{n-2} e_{n-2})`.
//!
//! Degrees: `l` has class `L - sum E_i`, `s_i` has `L - E_i`, `e_i` has `E_i`.
//! A monomial `l^λ Π s_i^σ_i Π e_i^ε_i` therefore has `d = λ + Σσ_i` and
//! `a_i = λ + σ_i - ε_i`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{CoxError, Result};
use crate::picard::{self, DivisorClass};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoxMonomial {
    #[serde(rename = "l")]
    pub lambda: u32,
    #[serde(rename = "s")]
    pub sigma: Vec<u32>,
    #[serde(rename = "e")]
    pub epsilon: Vec<u32>,
}

impl CoxMonomial {
    pub fn unit(n: usize) -> Self {
        Self { lambda: 0, sigma: vec![0; n], epsilon: vec![0; n] }
    }

    pub fn l(n: usize) -> Self {
        Self { lambda: 1, ..Self::unit(n) }
    }

    /// `s_i`, `i` counted from 1.
    pub fn s(n: usize, i: usize) -> Self {
        let mut m = Self::unit(n);
        m.sigma[i - 1] = 1;
        m
    }

    /// `e_i`, `i` counted from 1.
    pub fn e(n: usize, i: usize) -> Self {
        let mut m = Self::unit(n);
        m.epsilon[i - 1] = 1;
        m
    }

    /// `s_i e_i`, `i` counted from 1.
    pub fn se(n: usize, i: usize) -> Self {
        Self::s(n, i).mul(&Self::e(n, i))
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn total_degree(&self) -> u64 {
        u64::from(self.lambda)
            + self.sigma.iter().map(|&x| u64::from(x)).sum::<u64>()
            + self.epsilon.iter().map(|&x| u64::from(x)).sum::<u64>()
    }

    pub fn is_unit(&self) -> bool {
        self.total_degree() == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            lambda: self.lambda + other.lambda,
            sigma: self.sigma.iter().zip(&other.sigma).map(|(x, y)| x + y).collect(),
            epsilon: self.epsilon.iter().zip(&other.epsilon).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.lambda <= other.lambda
            && self.sigma.iter().zip(&other.sigma).all(|(x, y)| x <= y)
            && self.epsilon.iter().zip(&other.epsilon).all(|(x, y)| x <= y)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Self {
            lambda: other.lambda - self.lambda,
            sigma: other.sigma.iter().zip(&self.sigma).map(|(x, y)| x - y).collect(),
            epsilon: other.epsilon.iter().zip(&self.epsilon).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self {
            lambda: self.lambda.max(other.lambda),
            sigma: self.sigma.iter().zip(&other.sigma).map(|(x, y)| *x.max(y)).collect(),
            epsilon: self.epsilon.iter().zip(&other.epsilon).map(|(x, y)| *x.max(y)).collect(),
        }
    }

    pub fn is_coprime_to(&self, other: &Self) -> bool {
        let zero_or = |x: u32, y: u32| x == 0 || y == 0;
        zero_or(self.lambda, other.lambda)
            && self.sigma.iter().zip(&other.sigma).all(|(&x, &y)| zero_or(x, y))
            && self.epsilon.iter().zip(&other.epsilon).all(|(&x, &y)| zero_or(x, y))
    }

    /// Whether the monomial lies in `(s_1 e_1, ..., s_{n-2} e_{n-2})`.
    pub fn in_initial_ideal(&self) -> bool {
        let n = self.n();
        (0..n.saturating_sub(2)).any(|i| self.sigma[i] > 0 && self.epsilon[i] > 0)
    }
}

impl fmt::Display for CoxMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut push = |name: String, e: u32| match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        };
        push("l".into(), self.lambda);
        for (i, &x) in self.sigma.iter().enumerate() {
            push(format!("s{}", i + 1), x);
        }
        for (i, &x) in self.epsilon.iter().enumerate() {
            push(format!("e{}", i + 1), x);
        }
        write!(f, "{}", parts.join("*"))
    }
}

pub fn degree_of(m: &CoxMonomial) -> Result<DivisorClass> {
    let lambda = i64::from(m.lambda);
    let d = lambda + m.sigma.iter().map(|&x| i64::from(x)).sum::<i64>();
    let a: Vec<i64> = m.sigma.iter().zip(&m.epsilon).map(|(&s, &e)| lambda + i64::from(s) - i64::from(e)).collect();
    DivisorClass::from_i64(d, &a)
}

/// The standard monomials of one degree, in canonical order (ascending `λ`,
/// then ascending `σ_{n-1}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardMonomialSet {
    pub degree: DivisorClass,
    pub monomials: Vec<CoxMonomial>,
}

impl StandardMonomialSet {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Machine-sized view of a class for enumeration. `None` when no monomial of
/// that degree can exist.
struct SmallClass {
    d: i64,
    a: Vec<i64>,
}

fn small_class(dc: &DivisorClass) -> Result<Option<SmallClass>> {
    if dc.d().is_negative() {
        return Ok(None);
    }
    let too_large = || CoxError::TooLarge(format!("class ({dc}) is out of enumeration range"));
    let d = dc.d().to_i64().filter(|&d| d <= i64::from(u32::MAX)).ok_or_else(too_large)?;
    let mut a = Vec::with_capacity(dc.n());
    for ai in dc.a() {
        // a_i > d forces σ_i > d - λ: no monomials at all.
        if ai > dc.d() {
            return Ok(None);
        }
        let v = ai.to_i64().filter(|&v| d - v <= i64::from(u32::MAX)).ok_or_else(too_large)?;
        a.push(v);
    }
    Ok(Some(SmallClass { d, a }))
}

fn exp(v: i64) -> u32 {
    u32::try_from(v).expect("exponent bounded by small_class")
}

/// Exponent vectors of `R = k[l, s, e]` in degree `D` avoiding the initial
/// ideal of `J`.
///
/// For fixed `λ` and `i <= n-2`, complementarity forces `σ_i = max(a_i - λ, 0)`
/// and `ε_i = max(λ - a_i, 0)`; the remaining freedom is `σ_{n-1} + σ_n`,
/// scanned in ascending `σ_{n-1}`.
pub fn enumerate_standard_monomials(dc: &DivisorClass) -> Result<StandardMonomialSet> {
    let n = dc.n();
    let mut monomials = Vec::new();
    if let Some(SmallClass { d, a }) = small_class(dc)? {
        for lambda in 0..=d {
            let mut sigma = vec![0u32; n];
            let mut epsilon = vec![0u32; n];
            let mut rest = d - lambda;
            for i in 0..n - 2 {
                let s = (a[i] - lambda).max(0);
                sigma[i] = exp(s);
                epsilon[i] = exp((lambda - a[i]).max(0));
                rest -= s;
            }
            let (p, q) = (n - 2, n - 1);
            let lo_p = (a[p] - lambda).max(0);
            let lo_q = (a[q] - lambda).max(0);
            if rest < lo_p + lo_q {
                continue;
            }
            for sp in lo_p..=rest - lo_q {
                let sq = rest - sp;
                sigma[p] = exp(sp);
                sigma[q] = exp(sq);
                epsilon[p] = exp(lambda + sp - a[p]);
                epsilon[q] = exp(lambda + sq - a[q]);
                let m = CoxMonomial { lambda: exp(lambda), sigma: sigma.clone(), epsilon: epsilon.clone() };
                debug_assert_eq!(&degree_of(&m)?, dc);
                debug_assert!(!m.in_initial_ideal());
                monomials.push(m);
            }
        }
    }
    Ok(StandardMonomialSet { degree: dc.clone(), monomials })
}

/// Every monomial of `R` in degree `D`, standard or not, sorted.
pub fn enumerate_monomials(dc: &DivisorClass) -> Result<Vec<CoxMonomial>> {
    let n = dc.n();
    let mut out = Vec::new();
    if let Some(SmallClass { d, a }) = small_class(dc)? {
        for lambda in 0..=d {
            let lows: Vec<i64> = a.iter().map(|&ai| (ai - lambda).max(0)).collect();
            let slack = d - lambda - lows.iter().sum::<i64>();
            if slack < 0 {
                continue;
            }
            let mut extra = vec![0i64; n];
            distribute(slack, 0, &mut extra, &mut |extra| {
                let sigma: Vec<u32> = lows.iter().zip(extra).map(|(lo, x)| exp(lo + x)).collect();
                let epsilon = sigma.iter().zip(&a).map(|(&s, &ai)| exp(lambda + i64::from(s) - ai)).collect();
                out.push(CoxMonomial { lambda: exp(lambda), sigma, epsilon });
            });
        }
    }
    out.sort();
    Ok(out)
}

fn distribute(left: i64, pos: usize, slots: &mut [i64], emit: &mut impl FnMut(&[i64])) {
    if pos + 1 == slots.len() {
        slots[pos] = left;
        emit(slots);
        return;
    }
    for v in 0..=left {
        slots[pos] = v;
        distribute(left - v, pos + 1, slots, emit);
    }
}

/// The unclamped terms `S(λ) = d + 1 - λ - Σ_k max(a_k - λ, 0)` for `λ = 0..=d`.
pub fn s_terms(dc: &DivisorClass) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut lambda = BigInt::zero();
    while &lambda <= dc.d() {
        let over: BigInt = dc
            .a()
            .iter()
            .map(|ak| {
                let v = ak - &lambda;
                if v.is_positive() {
                    v
                } else {
                    BigInt::zero()
                }
            })
            .sum();
        out.push(dc.d() + 1u32 - &lambda - over);
        lambda += 1u32;
    }
    out
}

/// `Σ_λ max(S(λ), 0)`, defined on nef classes only.
///
/// Non-negativity of every `S(λ)` holds on the nef cone and is checked here.
pub fn count_standard_monomials_closed_form(dc: &DivisorClass) -> Result<BigInt> {
    if !picard::is_nef(dc) {
        return Err(CoxError::Domain(format!("closed-form count needs a nef class, got ({dc}); enumerate instead")));
    }
    let mut total = BigInt::zero();
    for s in s_terms(dc) {
        assert!(!s.is_negative(), "S(l) < 0 for nef class ({dc})");
        total += s;
    }
    Ok(total)
}

/// `dim_k (R/J)_D`, counted through the standard monomials.
pub fn hilbert_function_r_mod_j(dc: &DivisorClass) -> Result<usize> {
    Ok(enumerate_standard_monomials(dc)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(d: i64, a: &[i64]) -> DivisorClass {
        DivisorClass::from_i64(d, a).unwrap()
    }

    /// Scans every `(λ, σ)` box point with `λ + Σσ = d` and derives `ε`.
    fn brute_force_standard(dc: &DivisorClass) -> Vec<CoxMonomial> {
        let n = dc.n();
        let d = dc.d().to_i64().unwrap();
        let a: Vec<i64> = dc.a().iter().map(|x| x.to_i64().unwrap()).collect();
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let total = (d + 1).pow(n as u32 + 1);
        for code in 0..total {
            let mut c = code;
            let mut digits = Vec::new();
            for _ in 0..=n {
                digits.push(c % (d + 1));
                c /= d + 1;
            }
            if digits.iter().sum::<i64>() != d {
                continue;
            }
            let lambda = digits[0];
            let sigma = &digits[1..];
            let eps: Vec<i64> = (0..n).map(|i| lambda + sigma[i] - a[i]).collect();
            if eps.iter().any(|&e| e < 0) {
                continue;
            }
            if (0..n - 2).any(|i| sigma[i] > 0 && eps[i] > 0) {
                continue;
            }
            out.push(CoxMonomial {
                lambda: lambda as u32,
                sigma: sigma.iter().map(|&x| x as u32).collect(),
                epsilon: eps.iter().map(|&x| x as u32).collect(),
            });
        }
        out.sort();
        out
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_of(&CoxMonomial::se(3, 1)).unwrap(), DivisorClass::line(3).unwrap());
        let m = CoxMonomial::l(3).mul(&CoxMonomial::e(3, 1)).mul(&CoxMonomial::e(3, 2)).mul(&CoxMonomial::e(3, 3));
        assert_eq!(degree_of(&m).unwrap(), DivisorClass::line(3).unwrap());
        assert!(degree_of(&CoxMonomial::unit(3)).unwrap().is_zero());
        assert_eq!(degree_of(&CoxMonomial::l(4)).unwrap(), DivisorClass::line_through_points(4).unwrap());
        assert_eq!(degree_of(&CoxMonomial::s(4, 2)).unwrap(), DivisorClass::pencil(4, 2).unwrap());
        assert_eq!(degree_of(&CoxMonomial::e(4, 3)).unwrap(), DivisorClass::exceptional(4, 3).unwrap());
    }

    #[test]
    fn degree_is_additive() {
        let x = CoxMonomial { lambda: 2, sigma: vec![1, 0, 3], epsilon: vec![0, 2, 1] };
        let y = CoxMonomial { lambda: 0, sigma: vec![0, 4, 1], epsilon: vec![5, 0, 0] };
        let lhs = degree_of(&x.mul(&y)).unwrap();
        let rhs = degree_of(&x).unwrap() + degree_of(&y).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn standard_monomials_of_l() {
        let set = enumerate_standard_monomials(&DivisorClass::line(3).unwrap()).unwrap();
        let l_e = CoxMonomial::l(3).mul(&CoxMonomial::e(3, 1)).mul(&CoxMonomial::e(3, 2)).mul(&CoxMonomial::e(3, 3));
        assert_eq!(set.monomials, vec![CoxMonomial::se(3, 3), CoxMonomial::se(3, 2), l_e]);
    }

    #[test]
    fn standard_monomials_of_zero() {
        let set = enumerate_standard_monomials(&DivisorClass::zero(4).unwrap()).unwrap();
        assert_eq!(set.monomials, vec![CoxMonomial::unit(4)]);
    }

    #[test]
    fn matches_brute_force() {
        for (n, d_max) in [(2usize, 4i64), (3, 4), (4, 3)] {
            for d in -1..=d_max {
                let mut a = vec![-1i64; n];
                loop {
                    let x = DivisorClass::from_i64(d, &a).unwrap();
                    let mut got = enumerate_standard_monomials(&x).unwrap().monomials;
                    got.sort();
                    assert_eq!(got, brute_force_standard(&x), "class {x}");
                    // odometer over a_i in [-1, d_max]
                    let mut k = 0;
                    while k < n && a[k] == d_max {
                        a[k] = -1;
                        k += 1;
                    }
                    if k == n {
                        break;
                    }
                    a[k] += 1;
                }
            }
        }
    }

    #[test]
    fn seven_monomials_in_degree_3l_minus_three_points() {
        let x = dc(3, &[1, 1, 1]);
        assert_eq!(brute_force_standard(&x).len(), 7);
        assert_eq!(hilbert_function_r_mod_j(&x).unwrap(), 7);
    }

    #[test]
    fn closed_form_examples() {
        let x = dc(3, &[1, 1, 1]);
        let terms: Vec<i64> = s_terms(&x).iter().map(|s| s.to_i64().unwrap()).collect();
        assert_eq!(terms, vec![1, 3, 2, 1]);
        assert_eq!(count_standard_monomials_closed_form(&x).unwrap(), BigInt::from(7));
        assert_eq!(count_standard_monomials_closed_form(&DivisorClass::zero(3).unwrap()).unwrap(), BigInt::from(1));
        for n in 2..6 {
            for d in 0..7i64 {
                let x = DivisorClass::from_i64(d, &vec![0; n]).unwrap();
                assert_eq!(count_standard_monomials_closed_form(&x).unwrap(), BigInt::from((d + 2) * (d + 1) / 2));
            }
        }
    }

    #[test]
    fn closed_form_rejects_non_nef() {
        assert!(matches!(count_standard_monomials_closed_form(&dc(2, &[1, 1, 1])), Err(CoxError::Domain(_))));
    }

    #[test]
    fn hilbert_function_examples() {
        assert_eq!(hilbert_function_r_mod_j(&DivisorClass::line(5).unwrap()).unwrap(), 3);
        assert_eq!(hilbert_function_r_mod_j(&DivisorClass::exceptional(3, 1).unwrap()).unwrap(), 1);
        assert_eq!(hilbert_function_r_mod_j(&dc(2, &[0, 0, 0])).unwrap(), 6);
        assert_eq!(hilbert_function_r_mod_j(&dc(2, &[3, 0, 0])).unwrap(), 0);
        assert_eq!(hilbert_function_r_mod_j(&dc(-1, &[0, 0, 0])).unwrap(), 0);
    }

    #[test]
    fn degree_l_census() {
        for n in 2..8 {
            let all = enumerate_monomials(&DivisorClass::line(n).unwrap()).unwrap();
            assert_eq!(all.len(), n + 1);
            assert_eq!(all.iter().filter(|m| m.in_initial_ideal()).count(), n - 2);
        }
    }

    #[test]
    fn n2_has_no_complementarity() {
        for d in 0..5 {
            for a0 in 0..=d {
                let x = dc(d, &[a0, d - a0]);
                let all = enumerate_monomials(&x).unwrap();
                assert_eq!(hilbert_function_r_mod_j(&x).unwrap(), all.len());
            }
        }
    }

    #[test]
    fn huge_degree_is_refused() {
        let x = DivisorClass::new(BigInt::from(10).pow(30), vec![BigInt::zero(); 3]).unwrap();
        assert!(matches!(enumerate_standard_monomials(&x), Err(CoxError::TooLarge(_))));
    }

    #[test]
    fn display_and_json() {
        let m = CoxMonomial { lambda: 1, sigma: vec![2, 0], epsilon: vec![0, 1] };
        assert_eq!(m.to_string(), "l*s1^2*e2");
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"l":1,"s":[2,0],"e":[0,1]}"#);
        assert_eq!(CoxMonomial::unit(2).to_string(), "1");
    }
}
