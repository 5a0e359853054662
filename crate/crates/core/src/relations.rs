//! The ideal `J` of trinomial relations among the degree-`L` monomials
//! `s_i e_i` and `l e_1 ... e_n`.
//!
//! The lines `ℓ_1, ..., ℓ_n` through `q` span a two-dimensional space, so each
//! `ℓ_i` with `i <= n-2` is a combination of `ℓ_{n-1}` and `ℓ_n`. Pulling the
//! dependency back gives `g_i = s_i e_i + a_i s_{n-1} e_{n-1} + b_i s_n e_n`.
//!
//! Polynomials are ordered by graded lex with `s_1 > ... > s_n > e_1 > ... > e_n > l`,
//! which makes `s_i e_i` the leading monomial of `g_i`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coxmono::{self, CoxMonomial};
use crate::error::{CoxError, Result};
use crate::oracle::{self, HomogeneousForm, PointConfig};
use crate::picard::DivisorClass;

/// Graded lex: total degree first, then lex in `s_1..s_n, e_1..e_n, l`.
pub fn grlex_cmp(x: &CoxMonomial, y: &CoxMonomial) -> Ordering {
    let key = |m: &CoxMonomial| {
        m.sigma.iter().chain(&m.epsilon).chain(std::iter::once(&m.lambda)).copied().collect::<Vec<u32>>()
    };
    x.total_degree().cmp(&y.total_degree()).then_with(|| key(x).cmp(&key(y)))
}

/// A multihomogeneous element of `R = k[l, s_1..s_n, e_1..e_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomial {
    n: usize,
    terms: BTreeMap<CoxMonomial, BigRational>,
}

impl GradedPolynomial {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn monomial(m: CoxMonomial, c: BigRational) -> Self {
        let mut p = Self::zero(m.n());
        p.add_term(m, c);
        p
    }

    /// Fails with a domain error unless all monomials share one `Pic(X)` degree.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (CoxMonomial, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(n);
        let mut degree: Option<DivisorClass> = None;
        for (m, c) in terms {
            if m.n() != n {
                return Err(CoxError::DimensionMismatch { left: n, right: m.n() });
            }
            let dm = coxmono::degree_of(&m)?;
            match &degree {
                None => degree = Some(dm),
                Some(d0) if *d0 != dm => {
                    return Err(CoxError::Domain(format!(
                        "polynomial is not multihomogeneous: {m} has degree ({dm}), expected ({d0})"
                    )))
                }
                Some(_) => {}
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: CoxMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &CoxMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<DivisorClass> {
        self.terms.keys().next().map(|m| coxmono::degree_of(m).expect("n >= 2"))
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> Vec<(&CoxMonomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|x, y| grlex_cmp(y.0, x.0));
        v
    }

    pub fn leading_term(&self) -> Option<(&CoxMonomial, &BigRational)> {
        self.terms.iter().max_by(|x, y| grlex_cmp(x.0, y.0))
    }

    /// `self + c * m * other`.
    pub fn add_multiple(&mut self, other: &Self, m: &CoxMonomial, c: &BigRational) {
        for (t, k) in &other.terms {
            self.add_term(m.mul(t), k * c);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_multiple(other, &CoxMonomial::unit(self.n), &-BigRational::one());
        out
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().into_iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `g_i = s_i e_i + a s_{n-1} e_{n-1} + b s_n e_n`; `index` counts from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub index: usize,
    pub a: BigRational,
    pub b: BigRational,
}

impl Relation {
    pub fn to_polynomial(&self, n: usize) -> Result<GradedPolynomial> {
        if n < 3 || self.index == 0 || self.index > n - 2 {
            return Err(CoxError::Domain(format!("relation index {} invalid for n = {n}", self.index)));
        }
        GradedPolynomial::from_terms(
            n,
            [
                (CoxMonomial::se(n, self.index), BigRational::one()),
                (CoxMonomial::se(n, n - 1), self.a.clone()),
                (CoxMonomial::se(n, n), self.b.clone()),
            ],
        )
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Relation", 3)?;
        st.serialize_field("i", &self.index)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.end()
    }
}

/// Solves `ℓ_i + a ℓ_{n-1} + b ℓ_n = 0` for each `i <= n-2`.
pub fn derive_relations(cfg: &PointConfig) -> Result<Vec<Relation>> {
    let n = cfg.n();
    if n < 2 {
        return Err(CoxError::UnsupportedPointCount(n));
    }
    let lines = oracle::line_forms(cfg);
    let coords = |f: &HomogeneousForm| -> [BigRational; 3] {
        [f.coefficient(&[1, 0, 0]), f.coefficient(&[0, 1, 0]), f.coefficient(&[0, 0, 1])]
    };
    let mut out = Vec::new();
    if n == 2 {
        return Ok(out);
    }
    let u = coords(&lines.through_q[n - 2]);
    let v = coords(&lines.through_q[n - 1]);
    let (r, s, det) = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(r, s)| (r, s, &u[r] * &v[s] - &u[s] * &v[r]))
        .find(|(_, _, det)| !det.is_zero())
        .ok_or_else(|| CoxError::Degenerate("the last two lines through q coincide".into()))?;
    for i in 0..n - 2 {
        let w = coords(&lines.through_q[i]);
        let (cr, cs) = (-&w[r], -&w[s]);
        let a = (&cr * &v[s] - &cs * &v[r]) / &det;
        let b = (&u[r] * &cs - &u[s] * &cr) / &det;
        for k in 0..3 {
            if !(&w[k] + &a * &u[k] + &b * &v[k]).is_zero() {
                return Err(CoxError::Degenerate(format!("line {} is not in the pencil through q", i + 1)));
            }
        }
        if a.is_zero() || b.is_zero() {
            return Err(CoxError::Degenerate(format!("relation {} has a zero coefficient", i + 1)));
        }
        out.push(Relation { index: i + 1, a, b });
    }
    Ok(out)
}

/// Realizes each term as a plane form and checks that the combination vanishes identically.
pub fn verify_relation_geometrically(cfg: &PointConfig, rel: &Relation) -> Result<bool> {
    let n = cfg.n();
    let p = rel.to_polynomial(n)?;
    let mut total = HomogeneousForm::zero(1);
    for (m, c) in p.terms() {
        total = total.add_scaled(&oracle::realize_monomial(cfg, m)?, c);
    }
    Ok(total.is_zero())
}

fn relation_polys(rels: &[Relation], n: usize) -> Result<Vec<GradedPolynomial>> {
    rels.iter().map(|r| r.to_polynomial(n)).collect()
}

/// Whether each `g_i` leads with `s_i e_i` and the leading monomials are
/// pairwise coprime.
pub fn leading_terms_coprime(rels: &[Relation], n: usize) -> Result<bool> {
    let polys = relation_polys(rels, n)?;
    let leads: Vec<CoxMonomial> = polys.iter().map(|p| p.leading_term().expect("nonzero").0.clone()).collect();
    let expected = rels.iter().zip(&leads).all(|(r, m)| *m == CoxMonomial::se(n, r.index));
    let coprime = leads.iter().enumerate().all(|(i, x)| leads[i + 1..].iter().all(|y| x.is_coprime_to(y)));
    Ok(expected && coprime)
}

/// One division step: subtract `coeff * multiplier * g_divisor`.
/// Serializes as the triple `[divisor, multiplier, coeff]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub divisor: usize,
    pub multiplier: CoxMonomial,
    pub coeff: String,
}

impl Serialize for TraceStep {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (self.divisor, &self.multiplier, &self.coeff).serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub remainder: GradedPolynomial,
    pub trace: Vec<TraceStep>,
}

/// Multivariate division by `g_1, ..., g_{n-2}`, trying divisors in ascending index.
pub fn normal_form_with_trace(p: &GradedPolynomial, rels: &[Relation]) -> Result<Reduction> {
    let n = p.n();
    let polys = relation_polys(rels, n)?;
    let leads: Vec<CoxMonomial> = polys.iter().map(|g| g.leading_term().expect("nonzero").0.clone()).collect();
    let mut rest = p.clone();
    let mut remainder = GradedPolynomial::zero(n);
    let mut trace = Vec::new();
    while let Some((lm, lc)) = rest.leading_term() {
        let (lm, lc) = (lm.clone(), lc.clone());
        match leads.iter().position(|g| g.divides(&lm)) {
            Some(k) => {
                let multiplier = leads[k].quotient_of(&lm).expect("divides");
                // leading coefficients of the g_k are one
                rest.add_multiple(&polys[k], &multiplier, &-&lc);
                trace.push(TraceStep { divisor: rels[k].index, multiplier, coeff: lc.to_string() });
            }
            None => {
                remainder.add_term(lm.clone(), lc.clone());
                rest.add_term(lm, -lc);
            }
        }
    }
    Ok(Reduction { remainder, trace })
}

pub fn normal_form(p: &GradedPolynomial, rels: &[Relation]) -> Result<GradedPolynomial> {
    Ok(normal_form_with_trace(p, rels)?.remainder)
}

/// `S(g_i, g_j)` for `1 <= i < j <= n-2`.
pub fn s_polynomial(i: usize, j: usize, rels: &[Relation], n: usize) -> Result<GradedPolynomial> {
    if !(1 <= i && i < j && j <= n.saturating_sub(2)) {
        return Err(CoxError::Domain(format!("need 1 <= i < j <= {}, got ({i}, {j})", n.saturating_sub(2))));
    }
    let find = |k: usize| {
        rels.iter()
            .find(|r| r.index == k)
            .ok_or_else(|| CoxError::Domain(format!("relation g{k} missing")))
            .and_then(|r| r.to_polynomial(n))
    };
    let (gi, gj) = (find(i)?, find(j)?);
    let (li, lj) = (gi.leading_term().expect("nonzero").0.clone(), gj.leading_term().expect("nonzero").0.clone());
    let lcm = li.lcm(&lj);
    let mut s = GradedPolynomial::zero(n);
    s.add_multiple(&gi, &li.quotient_of(&lcm).expect("lcm"), &BigRational::one());
    s.add_multiple(&gj, &lj.quotient_of(&lcm).expect("lcm"), &-BigRational::one());
    Ok(s)
}

/// Normal form of `S(g_i, g_j)` modulo all relations; zero when the set is a Gröbner basis.
pub fn spoly_reduce(i: usize, j: usize, rels: &[Relation], n: usize) -> Result<GradedPolynomial> {
    normal_form(&s_polynomial(i, j, rels, n)?, rels)
}

/// `(i, j, reduces_to_zero)` for every pair `i < j`.
pub fn spoly_matrix(rels: &[Relation], n: usize) -> Result<Vec<(usize, usize, bool)>> {
    let mut out = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        for j in i + 1..=n - 2 {
            out.push((i, j, spoly_reduce(i, j, rels, n)?.is_zero()));
        }
    }
    Ok(out)
}

/// Dimension of the span of the normal forms of all monomials of degree `D`.
pub fn normal_form_span_dimension(dc: &DivisorClass, rels: &[Relation]) -> Result<usize> {
    let standard = coxmono::enumerate_standard_monomials(dc)?.monomials;
    let column: BTreeMap<&CoxMonomial, usize> = standard.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows = Vec::new();
    for m in coxmono::enumerate_monomials(dc)? {
        let nf = normal_form(&GradedPolynomial::monomial(m, BigRational::one()), rels)?;
        let mut row = vec![BigRational::zero(); standard.len()];
        for (t, c) in nf.terms() {
            let k = column.get(t).ok_or_else(|| {
                CoxError::Domain(format!("normal form term {t} is not a standard monomial of degree ({dc})"))
            })?;
            row[*k] = c.clone();
        }
        rows.push(row);
    }
    Ok(oracle::exact_rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn default_n3_relation() {
        let cfg = PointConfig::default_for(3).unwrap();
        let rels = derive_relations(&cfg).unwrap();
        assert_eq!(rels, vec![Relation { index: 1, a: q(-2), b: q(1) }]);
        assert!(verify_relation_geometrically(&cfg, &rels[0]).unwrap());
        assert_eq!(serde_json::to_string(&rels[0]).unwrap(), r#"{"i":1,"a":"-2","b":"1"}"#);
        assert_eq!(rels[0].to_polynomial(3).unwrap().to_string(), "s1*e1 - 2*s2*e2 + s3*e3");
    }

    #[test]
    fn n2_has_no_relations() {
        let cfg = PointConfig::default_for(2).unwrap();
        assert!(derive_relations(&cfg).unwrap().is_empty());
        assert!(spoly_matrix(&[], 2).unwrap().is_empty());
    }

    #[test]
    fn n4_relations_are_form_identities() {
        let cfg = PointConfig::default_for(4).unwrap();
        let rels = derive_relations(&cfg).unwrap();
        assert_eq!(rels.len(), 2);
        for r in &rels {
            assert!(verify_relation_geometrically(&cfg, r).unwrap());
            assert!(!r.a.is_zero() && !r.b.is_zero());
        }
    }

    #[test]
    fn perturbed_coefficient_fails_geometry() {
        let cfg = PointConfig::default_for(3).unwrap();
        let mut r = derive_relations(&cfg).unwrap().remove(0);
        r.a += q(1);
        assert!(!verify_relation_geometrically(&cfg, &r).unwrap());
    }

    #[test]
    fn leading_terms() {
        for n in 3..8 {
            let rels = derive_relations(&PointConfig::default_for(n).unwrap()).unwrap();
            assert!(leading_terms_coprime(&rels, n).unwrap());
        }
    }

    #[test]
    fn grlex_examples() {
        let n = 4;
        assert_eq!(grlex_cmp(&CoxMonomial::se(n, 1), &CoxMonomial::se(n, 3)), Ordering::Greater);
        assert_eq!(grlex_cmp(&CoxMonomial::l(n), &CoxMonomial::e(n, 4)), Ordering::Less);
        assert_eq!(grlex_cmp(&CoxMonomial::s(n, 4), &CoxMonomial::e(n, 1)), Ordering::Greater);
        assert_eq!(grlex_cmp(&CoxMonomial::l(n), &CoxMonomial::se(n, 4)), Ordering::Less);
    }

    #[test]
    fn normal_form_examples() {
        let n = 3;
        let rels = derive_relations(&PointConfig::default_for(n).unwrap()).unwrap();
        let s1e1 = GradedPolynomial::monomial(CoxMonomial::se(n, 1), q(1));
        let red = normal_form_with_trace(&s1e1, &rels).unwrap();
        let expected =
            GradedPolynomial::from_terms(n, [(CoxMonomial::se(n, 2), q(2)), (CoxMonomial::se(n, 3), q(-1))]).unwrap();
        assert_eq!(red.remainder, expected);
        assert_eq!(red.trace, vec![TraceStep { divisor: 1, multiplier: CoxMonomial::unit(n), coeff: "1".into() }]);

        let s3e3 = GradedPolynomial::monomial(CoxMonomial::se(n, 3), q(1));
        assert_eq!(normal_form(&s3e3, &rels).unwrap(), s3e3);

        let g1 = rels[0].to_polynomial(n).unwrap();
        assert!(normal_form(&g1, &rels).unwrap().is_zero());

        let nf = normal_form(&s1e1, &rels).unwrap();
        assert_eq!(normal_form(&nf, &rels).unwrap(), nf);
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let err = GradedPolynomial::from_terms(3, [(CoxMonomial::se(3, 1), q(1)), (CoxMonomial::l(3), q(1))]);
        assert!(matches!(err, Err(CoxError::Domain(_))));
    }

    #[test]
    fn s_polynomials_reduce_to_zero() {
        for n in [4, 5, 6] {
            let rels = derive_relations(&PointConfig::default_for(n).unwrap()).unwrap();
            let matrix = spoly_matrix(&rels, n).unwrap();
            assert_eq!(matrix.len(), (n - 2) * (n - 3) / 2);
            assert!(matrix.iter().all(|&(_, _, ok)| ok));
        }
        let rels = derive_relations(&PointConfig::default_for(4).unwrap()).unwrap();
        let s = s_polynomial(1, 2, &rels, 4).unwrap();
        assert!(!s.is_zero());
        assert!(matches!(s_polynomial(2, 1, &rels, 4), Err(CoxError::Domain(_))));
        assert!(matches!(s_polynomial(1, 3, &rels, 4), Err(CoxError::Domain(_))));
    }

    #[test]
    fn normal_forms_span_the_standard_space() {
        for n in 2..6 {
            let rels = derive_relations(&PointConfig::default_for(n).unwrap()).unwrap();
            for dc in crate::picard::nef_classes(n, 3).unwrap() {
                let dim = normal_form_span_dimension(&dc, &rels).unwrap();
                assert_eq!(dim, coxmono::hilbert_function_r_mod_j(&dc).unwrap(), "class {dc}");
            }
        }
    }
}
