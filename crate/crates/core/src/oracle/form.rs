use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

/// Exponents of `x^i y^j z^k`.
pub type Exps = [u32; 3];

/// A homogeneous form in the plane coordinates `x, y, z` with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    coeffs: BTreeMap<Exps, BigRational>,
}

impl HomogeneousForm {
    pub fn zero(degree: u32) -> Self {
        Self { degree, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert([0, 0, 0], BigRational::one());
        Self { degree: 0, coeffs }
    }

    /// `cx x + cy y + cz z`.
    pub fn linear(cx: BigRational, cy: BigRational, cz: BigRational) -> Self {
        let mut f = Self::zero(1);
        f.add_term([1, 0, 0], cx);
        f.add_term([0, 1, 0], cy);
        f.add_term([0, 0, 1], cz);
        f
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exps, BigRational)>) -> Self {
        let mut f = Self::zero(degree);
        for (e, c) in terms {
            assert_eq!(e.iter().sum::<u32>(), degree, "term {e:?} not of degree {degree}");
            f.add_term(e, c);
        }
        f
    }

    fn add_term(&mut self, e: Exps, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, e: &Exps) -> BigRational {
        self.coeffs.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in graded lex order with `x > y > z` (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigRational)> {
        self.coeffs.iter().rev()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (e, c) in &self.coeffs {
            for (f, k) in &other.coeffs {
                out.add_term([e[0] + f[0], e[1] + f[1], e[2] + f[2]], c * k);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self + c * other`; degrees must agree unless one side is zero.
    pub fn add_scaled(&self, other: &Self, c: &BigRational) -> Self {
        let degree = if self.is_zero() { other.degree } else { self.degree };
        assert!(other.is_zero() || other.degree == degree, "adding forms of different degree");
        let mut out = Self { degree, coeffs: self.coeffs.clone() };
        for (e, k) in &other.coeffs {
            out.add_term(*e, k * c);
        }
        out
    }

    pub fn eval(&self, p: &[BigRational; 3]) -> BigRational {
        self.coeffs.iter().map(|(e, c)| c * pow_q(&p[0], e[0]) * pow_q(&p[1], e[1]) * pow_q(&p[2], e[2])).sum()
    }

    /// Scales so the leading coefficient (graded lex, `x > y > z`) is one.
    pub fn normalized(&self) -> Self {
        match self.terms().next() {
            None => self.clone(),
            Some((_, lead)) => {
                let inv = lead.recip();
                Self { degree: self.degree, coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * &inv)).collect() }
            }
        }
    }

    /// Coefficient vector against `monomial_basis(self.degree())`.
    pub fn coefficient_row(&self, basis: &[Exps]) -> Vec<BigRational> {
        basis.iter().map(|e| self.coefficient(e)).collect()
    }
}

pub(crate) fn pow_q(x: &BigRational, k: u32) -> BigRational {
    num_traits::pow(x.clone(), k as usize)
}

/// The degree-`d` monomials in `x, y, z`, leading (graded lex) first.
pub fn monomial_basis(d: u32) -> Vec<Exps> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let vars: Vec<String> = ["x", "y", "z"]
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(serde::Serialize)]
struct TermJson<'a> {
    exps: &'a Exps,
    coeff: String,
}

/// `{"degree": d, "terms": [{"exps": [i, j, k], "coeff": "p/q"}, ...]}`, leading term first.
impl Serialize for HomogeneousForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self.terms().map(|(e, c)| TermJson { exps: e, coeff: c.to_string() }).collect();
        let mut st = serializer.serialize_struct("HomogeneousForm", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}
