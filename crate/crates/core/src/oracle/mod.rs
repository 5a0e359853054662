//! Ground truth from plane geometry.
//!
//! Sections of `dL - sum a_i E_i` are degree-`d` plane forms with multiplicity at
//! least `a_i` at `p_i`. The dimension of that space is computed here by exact
//! linear algebra over `Q`, independently of the lattice formulas, and Cox
//! monomials are realized as concrete forms through the configuration's lines.

mod config;
mod form;
mod rank;

pub use config::{parse_rational, PointConfig};
pub use form::{monomial_basis, Exps, HomogeneousForm};
pub use rank::{exact_rank, integer_rank};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coxmono::{self, CoxMonomial};
use crate::error::{CoxError, Result};
use crate::picard::{self, DivisorClass};

/// The line `Y` and the lines `ℓ_i` through `q` and `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineForms {
    pub y: HomogeneousForm,
    pub through_q: Vec<HomogeneousForm>,
}

/// Line forms of a configuration, each scaled so its leading coefficient
/// (`x > y > z`) is one.
pub fn line_forms(cfg: &PointConfig) -> LineForms {
    let q = cfg.q();
    let through_q = (0..cfg.n())
        .map(|i| {
            let p = cfg.point(i);
            // p × q
            let cx = &p[1] * &q[2] - &p[2] * &q[1];
            let cy = &p[2] * &q[0] - &p[0] * &q[2];
            let cz = &p[0] * &q[1] - &p[1] * &q[0];
            HomogeneousForm::linear(cx, cy, cz).normalized()
        })
        .collect();
    let y = HomogeneousForm::linear(BigRational::zero(), BigRational::one(), BigRational::zero());
    LineForms { y, through_q }
}

fn falling(k: u32, j: u32) -> BigInt {
    (0..j).fold(BigInt::one(), |acc, r| acc * BigInt::from(k - r))
}

/// Position of `x^i y^j z^(d-i-j)` in `monomial_basis(d)`.
fn basis_index(d: u32, i: u32, j: u32) -> usize {
    let r = (d - i) as usize;
    r * (r + 1) / 2 + (d - i - j) as usize
}

fn powers(x: &BigInt, d: u32) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(d as usize + 1);
    out.push(BigInt::one());
    for k in 0..d as usize {
        out.push(&out[k] * x);
    }
    out
}

/// Fat-point conditions at the affine point `(u, v)` of the chart `z = 1`: one
/// row per partial derivative `∂x^j ∂y^k` with `j + k < mult`, against
/// `monomial_basis(d)`.
///
/// Row `(j, k)` is scaled by `(den u · den v)^(d-j-k)` so every entry is an
/// integer: for `x^α y^β` the entry is
/// `α^(j) β^(k) u_n^(α-j) u_d^(d'-(α-j)) v_n^(β-k) v_d^(d'-(β-k))` with `d' = d-j-k`.
fn fat_point_rows(d: u32, u: &BigRational, v: &BigRational, mult: u32) -> Vec<Vec<BigInt>> {
    let (un, ud) = (powers(u.numer(), d), powers(u.denom(), d));
    let (vn, vd) = (powers(v.numer(), d), powers(v.denom(), d));
    let cols = basis_index(d, 0, 0) + 1;
    let mut rows = Vec::new();
    for order in 0..mult.min(d + 1) {
        let span = d - order;
        for j in 0..=order {
            let k = order - j;
            let mut row = vec![BigInt::zero(); cols];
            for alpha in j..=d {
                for beta in k..=d - alpha {
                    let (ex, ey) = (alpha - j, beta - k);
                    if ex + ey > span {
                        continue;
                    }
                    let c = falling(alpha, j) * falling(beta, k);
                    let x_part = &un[ex as usize] * &ud[(span - ex) as usize];
                    let y_part = &vn[ey as usize] * &vd[(span - ey) as usize];
                    row[basis_index(d, alpha, beta)] = c * x_part * y_part;
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Degree and clamped multiplicities `min(max(a_i, 0), d + 1)` as machine integers.
/// Order-`(d+1)` partials of a degree-`d` form vanish, so larger multiplicities
/// add no independent conditions beyond killing everything.
fn interpolation_data(dc: &DivisorClass) -> Result<Option<(u32, Vec<u32>)>> {
    if dc.d().is_negative() {
        return Ok(None);
    }
    let d = dc
        .d()
        .to_u32()
        .filter(|&d| d <= 4096)
        .ok_or_else(|| CoxError::TooLarge(format!("degree {} is beyond interpolation range", dc.d())))?;
    let cap = BigInt::from(d + 1);
    let mults = dc
        .a()
        .iter()
        .map(|a| {
            let m = if a.is_negative() { BigInt::zero() } else { a.min(&cap).clone() };
            m.to_u32().expect("clamped to d + 1")
        })
        .collect();
    Ok(Some((d, mults)))
}

fn integer_constraints(cfg: &PointConfig, d: u32, mults: &[u32]) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::new();
    for (i, &m) in mults.iter().enumerate() {
        let (u, v) = cfg.affine_point(i);
        rows.extend(fat_point_rows(d, u, v, m));
    }
    rows
}

/// The full interpolation constraint matrix for `D` (rows: point conditions,
/// columns: `monomial_basis(d)`), or `None` for `d < 0`. Rows are scaled to
/// integers; the row space is that of the derivative conditions.
pub fn constraint_matrix(cfg: &PointConfig, dc: &DivisorClass) -> Result<Option<Vec<Vec<BigInt>>>> {
    check_n(cfg, dc)?;
    Ok(interpolation_data(dc)?.map(|(d, mults)| integer_constraints(cfg, d, &mults)))
}

fn check_n(cfg: &PointConfig, dc: &DivisorClass) -> Result<()> {
    if cfg.n() != dc.n() {
        return Err(CoxError::DimensionMismatch { left: cfg.n(), right: dc.n() });
    }
    Ok(())
}

fn columns(d: u32) -> usize {
    basis_index(d, 0, 0) + 1
}

/// `h^0(D)` as `C(d+2, 2)` minus the rank of the fat-point conditions.
/// Negative `a_i` impose nothing.
pub fn h0_rank(cfg: &PointConfig, dc: &DivisorClass) -> Result<usize> {
    check_n(cfg, dc)?;
    let Some((d, mults)) = interpolation_data(dc)? else {
        return Ok(0);
    };
    let mut rows = integer_constraints(cfg, d, &mults);
    Ok(columns(d) - integer_rank(&mut rows))
}

/// The plane form of a Cox monomial: `ℓ_Y^λ Π ℓ_i^σ_i`. The `e_i` carry no
/// plane factor.
pub fn realize_monomial(cfg: &PointConfig, m: &CoxMonomial) -> Result<HomogeneousForm> {
    if m.n() != cfg.n() {
        return Err(CoxError::DimensionMismatch { left: cfg.n(), right: m.n() });
    }
    let lines = line_forms(cfg);
    let mut f = lines.y.pow(m.lambda);
    for (l, &s) in lines.through_q.iter().zip(&m.sigma) {
        if s > 0 {
            f = f.mul(&l.pow(s));
        }
    }
    Ok(f)
}

/// Dense integer coefficients over `monomial_basis(degree)`; a positive
/// rational multiple of the form it stands for.
fn integer_coefficients(f: &HomogeneousForm) -> Vec<BigInt> {
    let d = f.degree();
    let lcm = f.terms().fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
    let mut out = vec![BigInt::zero(); columns(d)];
    for (e, c) in f.terms() {
        out[basis_index(d, e[0], e[1])] = c.numer() * (&lcm / c.denom());
    }
    out
}

/// Multiplies a dense degree-`d` form by the linear form `(cx, cy, cz)`.
fn times_linear(f: &[BigInt], d: u32, lin: &[BigInt; 3]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); columns(d + 1)];
    for i in 0..=d {
        for j in 0..=d - i {
            let c = &f[basis_index(d, i, j)];
            if c.is_zero() {
                continue;
            }
            for (t, (di, dj)) in [(1, 0), (0, 1), (0, 0)].into_iter().enumerate() {
                if !lin[t].is_zero() {
                    out[basis_index(d + 1, i + di, j + dj)] += c * &lin[t];
                }
            }
        }
    }
    out
}

/// Integer scalings of the line forms, in the layout used by `times_linear`.
struct IntegerLines {
    y: [BigInt; 3],
    through_q: Vec<[BigInt; 3]>,
}

impl IntegerLines {
    fn new(cfg: &PointConfig) -> Self {
        let lines = line_forms(cfg);
        let as_triple = |f: &HomogeneousForm| -> [BigInt; 3] {
            let v = integer_coefficients(f);
            [v[0].clone(), v[1].clone(), v[2].clone()]
        };
        Self { y: as_triple(&lines.y), through_q: lines.through_q.iter().map(as_triple).collect() }
    }

    fn realize(&self, m: &CoxMonomial) -> Vec<BigInt> {
        let mut f = vec![BigInt::one()];
        let mut d = 0;
        for _ in 0..m.lambda {
            f = times_linear(&f, d, &self.y);
            d += 1;
        }
        for (lin, &s) in self.through_q.iter().zip(&m.sigma) {
            for _ in 0..s {
                f = times_linear(&f, d, lin);
                d += 1;
            }
        }
        f
    }
}

fn annihilated(rows: &[Vec<BigInt>], f: &[BigInt]) -> bool {
    rows.iter().all(|row| {
        row.iter().zip(f).filter(|(r, c)| !r.is_zero() && !c.is_zero()).map(|(r, c)| r * c).sum::<BigInt>().is_zero()
    })
}

/// Whether every partial derivative of order `< mult` of `f` vanishes at `p_i` (0-based).
pub fn vanishes_to_order(cfg: &PointConfig, i: usize, f: &HomogeneousForm, mult: u32) -> bool {
    if f.is_zero() || mult == 0 {
        return true;
    }
    let (u, v) = cfg.affine_point(i);
    annihilated(&fat_point_rows(f.degree(), u, v, mult), &integer_coefficients(f))
}

/// Whether `f` satisfies every vanishing condition of the class `D`.
pub fn satisfies_conditions(cfg: &PointConfig, dc: &DivisorClass, f: &HomogeneousForm) -> bool {
    dc.a().iter().enumerate().all(|(i, a)| {
        if !a.is_positive() {
            return true;
        }
        // a > deg + 1 can only be met by the zero form
        let m = a.to_u32().unwrap_or(u32::MAX);
        vanishes_to_order(cfg, i, f, m)
    })
}

/// Outcome of realizing the standard monomials of `D` as plane forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCheck {
    pub degree: DivisorClass,
    pub monomials: usize,
    pub rank: usize,
    pub h0_rank: usize,
    pub conditions_satisfied: bool,
}

impl BasisCheck {
    pub fn independent(&self) -> bool {
        self.rank == self.monomials
    }

    pub fn is_basis(&self) -> bool {
        self.conditions_satisfied && self.independent() && self.monomials == self.h0_rank
    }
}

pub fn check_basis(cfg: &PointConfig, dc: &DivisorClass) -> Result<BasisCheck> {
    check_n(cfg, dc)?;
    if !picard::is_effective(dc) {
        return Err(CoxError::Domain(format!("class ({dc}) is not effective; h0 = 0, empty basis")));
    }
    let set = coxmono::enumerate_standard_monomials(dc)?;
    let (d, mults) = interpolation_data(dc)?.expect("effective classes have d >= 0");
    let lines = IntegerLines::new(cfg);
    let mut forms: Vec<Vec<BigInt>> = set.monomials.iter().map(|m| lines.realize(m)).collect();
    let mut conditions = integer_constraints(cfg, d, &mults);
    let conditions_satisfied = forms.iter().all(|f| annihilated(&conditions, f));
    let h0_rank = columns(d) - integer_rank(&mut conditions);
    Ok(BasisCheck {
        degree: dc.clone(),
        monomials: forms.len(),
        rank: integer_rank(&mut forms),
        h0_rank,
        conditions_satisfied,
    })
}

/// True iff the standard monomials of `D` realize to independent forms that
/// satisfy the conditions of `D` and span a space of dimension `h0_rank`.
pub fn verify_basis_independence(cfg: &PointConfig, dc: &DivisorClass) -> Result<bool> {
    Ok(check_basis(cfg, dc)?.is_basis())
}
