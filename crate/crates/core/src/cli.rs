//! Report builders behind the `coxline` binary. Each command returns a
//! serializable report; the binary only parses arguments and prints.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::coxmono::{self, CoxMonomial};
use crate::error::{CoxError, Result};
use crate::oracle::{self, BasisCheck, HomogeneousForm, PointConfig};
use crate::picard::{self, json_int, DivisorClass};
use crate::relations::{self, Relation};

fn ints(v: &[BigInt]) -> Vec<serde_json::Value> {
    v.iter().map(json_int).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EffectiveJson {
    pub m: serde_json::Value,
    pub c: Vec<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NefJson {
    pub b: serde_json::Value,
    pub b_i: Vec<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrippedJson {
    pub nef_part: DivisorClass,
    pub removed_exceptional: Vec<serde_json::Value>,
    pub removed_line: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: DivisorClass,
    pub effective: bool,
    pub nef: bool,
    pub effective_coords: Option<EffectiveJson>,
    pub nef_coords: Option<NefJson>,
    pub chi: serde_json::Value,
    pub h0: serde_json::Value,
    pub stripped: Option<StrippedJson>,
}

pub fn cmd_classify(dc: &DivisorClass) -> Classification {
    let eff = picard::effective_coords(dc);
    let nef = picard::nef_coords(dc);
    let stripped = picard::strip_base_components(dc).ok().map(|s| StrippedJson {
        nef_part: s.nef_part,
        removed_exceptional: ints(&s.removed_exceptional),
        removed_line: json_int(&s.removed_line),
    });
    Classification {
        class: dc.clone(),
        effective: eff.is_some(),
        nef: nef.is_some(),
        effective_coords: eff.map(|e| EffectiveJson { m: json_int(&e.m), c: ints(&e.c) }),
        nef_coords: nef.map(|c| NefJson { b: json_int(&c.b), b_i: ints(&c.b_i) }),
        chi: json_int(&picard::chi(dc)),
        h0: json_int(&picard::h0(dc)),
        stripped,
    }
}

fn show(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn show_list(v: &[serde_json::Value]) -> String {
    v.iter().map(show).collect::<Vec<_>>().join(", ")
}

impl Classification {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "class: {} (n = {})", self.class, self.class.n());
        match &self.effective_coords {
            Some(e) => {
                let _ = writeln!(out, "effective: true (m = {}, c = [{}])", show(&e.m), show_list(&e.c));
            }
            None => {
                let _ = writeln!(out, "effective: false");
            }
        }
        match &self.nef_coords {
            Some(c) => {
                let _ = writeln!(out, "nef: true (b = {}, b_i = [{}])", show(&c.b), show_list(&c.b_i));
            }
            None => {
                let _ = writeln!(out, "nef: false");
            }
        }
        let _ = writeln!(out, "chi: {}", show(&self.chi));
        let _ = writeln!(out, "h0: {}", show(&self.h0));
        if let Some(s) = &self.stripped {
            let _ = writeln!(
                out,
                "nef part: {} (removed: line {}, exceptional [{}])",
                s.nef_part,
                show(&s.removed_line),
                show_list(&s.removed_exceptional)
            );
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct H0Report {
    pub class: DivisorClass,
    pub h0: serde_json::Value,
    pub oracle_rank: usize,
    pub agree: bool,
}

pub fn cmd_h0(cfg: &PointConfig, dc: &DivisorClass) -> Result<H0Report> {
    let h0 = picard::h0(dc);
    let rank = oracle::h0_rank(cfg, dc)?;
    Ok(H0Report { class: dc.clone(), agree: h0 == BigInt::from(rank), h0: json_int(&h0), oracle_rank: rank })
}

impl H0Report {
    pub fn to_text(&self) -> String {
        format!(
            "class: {}\nh0: {}\noracle rank: {}\n{}\n",
            self.class,
            show(&self.h0),
            self.oracle_rank,
            if self.agree { "agree" } else { "MISMATCH" }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisEntry {
    pub monomial: CoxMonomial,
    pub form: HomogeneousForm,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub degree: DivisorClass,
    pub h0: serde_json::Value,
    pub monomials: Vec<BasisEntry>,
    pub check: Option<BasisCheck>,
    pub message: Option<String>,
}

impl BasisReport {
    pub fn is_ok(&self) -> bool {
        self.check.as_ref().is_none_or(BasisCheck::is_basis)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "degree: {}", self.degree);
        if let Some(msg) = &self.message {
            let _ = writeln!(out, "{msg}");
            return out;
        }
        let _ = writeln!(out, "h0: {}", show(&self.h0));
        for e in &self.monomials {
            let _ = writeln!(out, "  {}  ->  {}", e.monomial, e.form);
        }
        if let Some(c) = &self.check {
            let _ = writeln!(
                out,
                "monomials: {}, rank: {}, oracle h0: {}, conditions: {}",
                c.monomials,
                c.rank,
                c.h0_rank,
                if c.conditions_satisfied { "satisfied" } else { "VIOLATED" }
            );
            let _ = writeln!(out, "{}", if c.is_basis() { "basis: independent" } else { "basis: FAILED" });
        }
        out
    }
}

pub fn cmd_basis(cfg: &PointConfig, dc: &DivisorClass) -> Result<BasisReport> {
    if !picard::is_effective(dc) {
        return Ok(BasisReport {
            degree: dc.clone(),
            h0: serde_json::Value::from(0),
            monomials: Vec::new(),
            check: None,
            message: Some("h0 = 0, empty basis".into()),
        });
    }
    let set = coxmono::enumerate_standard_monomials(dc)?;
    let monomials = set
        .monomials
        .into_iter()
        .map(|m| Ok(BasisEntry { form: oracle::realize_monomial(cfg, &m)?, monomial: m }))
        .collect::<Result<Vec<_>>>()?;
    Ok(BasisReport {
        degree: dc.clone(),
        h0: json_int(&picard::h0(dc)),
        monomials,
        check: Some(oracle::check_basis(cfg, dc)?),
        message: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationEntry {
    #[serde(flatten)]
    pub relation: Relation,
    pub polynomial: String,
    pub geometric: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpolyEntry {
    pub i: usize,
    pub j: usize,
    pub s_polynomial: String,
    pub trace: Vec<relations::TraceStep>,
    pub reduces_to_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsReport {
    pub config: PointConfig,
    pub generators: usize,
    pub relation_count: usize,
    pub krull_dimension: usize,
    pub relations: Vec<RelationEntry>,
    pub leading_terms_coprime: bool,
    pub s_polynomials: Vec<SpolyEntry>,
    pub message: Option<String>,
}

impl RelationsReport {
    pub fn is_ok(&self) -> bool {
        self.leading_terms_coprime
            && self.relations.iter().all(|r| r.geometric)
            && self.s_polynomials.iter().all(|s| s.reduces_to_zero)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n = {}: {} generators, {} relations, dimension {}",
            self.config.n(),
            self.generators,
            self.relation_count,
            self.krull_dimension
        );
        if let Some(msg) = &self.message {
            let _ = writeln!(out, "{msg}");
        }
        for r in &self.relations {
            let _ = writeln!(
                out,
                "g{} = {}  [{}]",
                r.relation.index,
                r.polynomial,
                if r.geometric { "verified" } else { "FAILED" }
            );
        }
        if !self.relations.is_empty() {
            let _ = writeln!(out, "leading terms coprime: {}", self.leading_terms_coprime);
        }
        for s in &self.s_polynomials {
            let _ = writeln!(out, "S(g{}, g{}) -> {}", s.i, s.j, if s.reduces_to_zero { "0" } else { "NONZERO" });
        }
        out
    }
}

pub fn cmd_relations(cfg: &PointConfig) -> Result<RelationsReport> {
    let n = cfg.n();
    let rels = relations::derive_relations(cfg)?;
    let relations = rels
        .iter()
        .map(|r| {
            Ok(RelationEntry {
                polynomial: r.to_polynomial(n)?.to_string(),
                geometric: relations::verify_relation_geometrically(cfg, r)?,
                relation: r.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s_polynomials = Vec::new();
    for i in 1..=n.saturating_sub(2) {
        for j in i + 1..=n - 2 {
            let s = relations::s_polynomial(i, j, &rels, n)?;
            let red = relations::normal_form_with_trace(&s, &rels)?;
            s_polynomials.push(SpolyEntry {
                i,
                j,
                s_polynomial: s.to_string(),
                trace: red.trace,
                reduces_to_zero: red.remainder.is_zero(),
            });
        }
    }
    Ok(RelationsReport {
        config: cfg.clone(),
        generators: 2 * n + 1,
        relation_count: rels.len(),
        krull_dimension: n + 3,
        leading_terms_coprime: relations::leading_terms_coprime(&rels, n)?,
        relations,
        s_polynomials,
        message: (n == 2).then(|| format!("free polynomial ring on {} generators, no relations", 2 * n + 1)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub class: Option<DivisorClass>,
    pub check: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub d_max: u32,
    pub classes_checked: usize,
    pub complete: bool,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n = {}, d <= {}: {} nef classes checked{}, {} failures",
            self.n,
            self.d_max,
            self.classes_checked,
            if self.complete { "" } else { " (INCOMPLETE: class bound reached)" },
            self.failures.len()
        );
        for f in &self.failures {
            let class = f.class.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
            let _ = writeln!(out, "  FAIL [{class}] {}: expected {}, got {}", f.check, f.expected, f.got);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub d_max: u32,
    /// Stop after this many nef classes; the report is then marked incomplete.
    pub max_classes: Option<usize>,
    /// Test mode: add one to the first relation's `a` coefficient.
    pub corrupt_relation: bool,
}

impl SweepOptions {
    pub fn new(d_max: u32) -> Self {
        Self { d_max, max_classes: None, corrupt_relation: false }
    }
}

/// The five dimension counts of a nef class and the basis realization.
pub fn check_nef_class(cfg: &PointConfig, dc: &DivisorClass) -> Vec<Failure> {
    let mut out = Vec::new();
    let mut fail = |check: &str, expected: String, got: String| {
        out.push(Failure { class: Some(dc.clone()), check: check.into(), expected, got });
    };
    let chi = picard::chi(dc);
    let mut compare = |check: &str, got: Result<BigInt>| match got {
        Ok(v) if v == chi => {}
        Ok(v) => fail(check, chi.to_string(), v.to_string()),
        Err(e) => fail(check, chi.to_string(), format!("error: {e}")),
    };
    compare("standard_monomial_count", coxmono::hilbert_function_r_mod_j(dc).map(BigInt::from));
    compare("closed_form_count", coxmono::count_standard_monomials_closed_form(dc));
    compare("h0_stripping", Ok(picard::h0(dc)));
    compare("oracle_rank", oracle::h0_rank(cfg, dc).map(BigInt::from));
    if let Some((l, s)) = coxmono::s_terms(dc).iter().enumerate().find(|(_, s)| s.is_negative()) {
        out.push(Failure {
            class: Some(dc.clone()),
            check: format!("counting_terms_l{l}"),
            expected: ">= 0".into(),
            got: s.to_string(),
        });
    }
    match oracle::check_basis(cfg, dc) {
        Ok(c) if c.is_basis() => {}
        Ok(c) => out.push(Failure {
            class: Some(dc.clone()),
            check: "basis_realization".into(),
            expected: format!("{} independent forms satisfying the conditions", c.h0_rank),
            got: format!("{} forms, rank {}, conditions satisfied: {}", c.monomials, c.rank, c.conditions_satisfied),
        }),
        Err(e) => out.push(Failure {
            class: Some(dc.clone()),
            check: "basis_realization".into(),
            expected: "basis".into(),
            got: format!("error: {e}"),
        }),
    }
    out
}

fn relation_failures(cfg: &PointConfig, corrupt: bool) -> Vec<Failure> {
    let n = cfg.n();
    let mut out = Vec::new();
    let mut fail = |check: String, expected: &str, got: String| {
        out.push(Failure { class: None, check, expected: expected.into(), got });
    };
    let mut rels = match relations::derive_relations(cfg) {
        Ok(r) => r,
        Err(e) => {
            fail("derive_relations".into(), "n - 2 relations", format!("error: {e}"));
            return out;
        }
    };
    if corrupt {
        if let Some(r) = rels.first_mut() {
            r.a += BigRational::one();
        }
    }
    if rels.len() != n.saturating_sub(2) {
        fail("relation_count".into(), &(n - 2).to_string(), rels.len().to_string());
    }
    if 2 * n + 1 - rels.len() != n + 3 {
        fail("complete_intersection".into(), &(n + 3).to_string(), (2 * n + 1 - rels.len()).to_string());
    }
    for r in &rels {
        match relations::verify_relation_geometrically(cfg, r) {
            Ok(true) => {}
            Ok(false) => fail(format!("relation_g{}_geometric", r.index), "zero form", "nonzero form".into()),
            Err(e) => fail(format!("relation_g{}_geometric", r.index), "zero form", format!("error: {e}")),
        }
    }
    match relations::leading_terms_coprime(&rels, n) {
        Ok(true) => {}
        Ok(false) => fail("leading_terms".into(), "coprime s_i e_i", "not coprime".into()),
        Err(e) => fail("leading_terms".into(), "coprime s_i e_i", format!("error: {e}")),
    }
    match relations::spoly_matrix(&rels, n) {
        Ok(m) => {
            for (i, j, ok) in m {
                if !ok {
                    fail(format!("spoly_g{i}_g{j}"), "0", "nonzero normal form".into());
                }
            }
        }
        Err(e) => fail("spoly".into(), "0", format!("error: {e}")),
    }
    out
}

/// Full cross-check for one configuration: every nef class with `d <= d_max`
/// plus the relations and their S-polynomials.
pub fn cmd_verify(cfg: &PointConfig, opts: &SweepOptions) -> Result<SweepReport> {
    let n = cfg.n();
    let mut classes = picard::nef_classes(n, opts.d_max)?;
    let mut complete = true;
    if let Some(limit) = opts.max_classes {
        if classes.len() > limit {
            classes.truncate(limit);
            complete = false;
        }
    }
    let mut failures: Vec<Failure> = classes.par_iter().flat_map_iter(|dc| check_nef_class(cfg, dc)).collect();
    failures.extend(relation_failures(cfg, opts.corrupt_relation));
    failures.sort();
    Ok(SweepReport { n, d_max: opts.d_max, classes_checked: classes.len(), complete, failures })
}

/// Moves the last point off the line `y = 0`; only for negative controls.
pub fn non_collinear_variant(cfg: &PointConfig) -> Result<PointConfig> {
    let n = cfg.n();
    let points = (0..n)
        .map(|i| {
            let (x, y) = cfg.affine_point(i).clone();
            if i + 1 == n {
                (x, y + BigRational::one())
            } else {
                (x, y)
            }
        })
        .collect();
    PointConfig::from_points_unchecked(points, cfg.q().clone())
}

pub fn parse_n_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            let p = p.trim();
            let n: usize = p.parse().map_err(|_| CoxError::Parse(format!("bad entry {p:?} in n-list")))?;
            if n < 2 {
                return Err(CoxError::UnsupportedPointCount(n));
            }
            Ok(n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dc(d: i64, a: &[i64]) -> DivisorClass {
        DivisorClass::from_i64(d, a).unwrap()
    }

    #[test]
    fn classify_examples() {
        let r = cmd_classify(&dc(3, &[1, 1, 1]));
        assert!(r.nef && r.effective);
        assert_eq!(r.h0, serde_json::json!(7));

        let r = cmd_classify(&dc(0, &[-1, 0, 0]));
        assert!(r.effective && !r.nef);
        assert_eq!(r.h0, serde_json::json!(1));

        let r = cmd_classify(&dc(2, &[3, 0, 0]));
        assert!(!r.effective);
        assert_eq!(r.h0, serde_json::json!(0));
        assert!(r.stripped.is_none());
        assert!(r.to_text().contains("effective: false"));
    }

    #[test]
    fn basis_examples() {
        let cfg = PointConfig::default_for(3).unwrap();
        let r = cmd_basis(&cfg, &DivisorClass::line(3).unwrap()).unwrap();
        assert_eq!(r.monomials.len(), 3);
        assert!(r.is_ok());
        let forms: Vec<String> = r.monomials.iter().map(|e| e.form.to_string()).collect();
        assert_eq!(forms, vec!["x - 2*z", "x - z", "y"]);

        let r = cmd_basis(&cfg, &DivisorClass::zero(3).unwrap()).unwrap();
        assert_eq!(r.monomials.len(), 1);
        assert!(r.monomials[0].monomial.is_unit());

        let cfg4 = PointConfig::default_for(4).unwrap();
        let r = cmd_basis(&cfg4, &dc(2, &[0, 0, 0, 0])).unwrap();
        assert_eq!(r.monomials.len(), 6);
        assert!(r.is_ok());

        let r = cmd_basis(&cfg, &dc(2, &[3, 0, 0])).unwrap();
        assert_eq!(r.message.as_deref(), Some("h0 = 0, empty basis"));
    }

    #[test]
    fn relations_reports() {
        let r = cmd_relations(&PointConfig::default_for(3).unwrap()).unwrap();
        assert_eq!(r.relations.len(), 1);
        assert!(r.is_ok());
        let r = cmd_relations(&PointConfig::default_for(2).unwrap()).unwrap();
        assert_eq!(r.message.as_deref(), Some("free polynomial ring on 5 generators, no relations"));
        let r = cmd_relations(&PointConfig::default_for(5).unwrap()).unwrap();
        assert_eq!(r.relations.len(), 3);
        assert_eq!(r.s_polynomials.len(), 3);
        assert!(r.is_ok());
    }

    #[test]
    fn small_sweeps() {
        for n in 2..5 {
            let cfg = PointConfig::default_for(n).unwrap();
            let rep = cmd_verify(&cfg, &SweepOptions::new(3)).unwrap();
            assert!(rep.passed(), "{}", rep.to_text());
        }
        let rep = cmd_verify(&PointConfig::default_for(3).unwrap(), &SweepOptions::new(0)).unwrap();
        assert_eq!(rep.classes_checked, 1);
        assert!(rep.passed());
    }

    #[test]
    fn class_bound_marks_incomplete() {
        let opts = SweepOptions { max_classes: Some(5), ..SweepOptions::new(4) };
        let rep = cmd_verify(&PointConfig::default_for(3).unwrap(), &opts).unwrap();
        assert!(!rep.complete);
        assert_eq!(rep.classes_checked, 5);
    }

    #[test]
    fn corrupted_relation_is_reported() {
        let opts = SweepOptions { corrupt_relation: true, ..SweepOptions::new(1) };
        let rep = cmd_verify(&PointConfig::default_for(4).unwrap(), &opts).unwrap();
        assert!(!rep.passed());
        assert!(rep.failures.iter().any(|f| f.check == "relation_g1_geometric"));
    }

    #[test]
    fn n_list_parsing() {
        assert_eq!(parse_n_list("3, 4,5").unwrap(), vec![3, 4, 5]);
        assert!(parse_n_list("3,x").is_err());
        assert!(parse_n_list("1").is_err());
    }
}
