//! Named example cases and the batch runner.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::fpgroups::{AbelianInvariants, CyclicFreeProduct};
use crate::homology::h1_p2;
use crate::inference::{audit_claim, derive, ClaimStatus, DeriveError, Scenario};
use crate::pencil::{pencil_from_pq, Connectivity, FieldKind, ProjPoint};
use crate::polyalg::{parse_poly_in, Field, QSqrt3, Rational};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    /// `[f_p^q : f_q^p]`.
    Generators { f_p: String, f_q: String, p: u32, q: u32 },
    /// An affine polynomial `f(x, y)` with connected generic fibers.
    Affine { f: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberPlan {
    pub sampled: usize,
    pub asserted: Vec<ProjPoint>,
    /// A special fiber added as a component, with an optional asserted complement group.
    pub component: Option<(String, Option<CyclicFreeProduct>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusCase {
    pub id: String,
    pub field: FieldKind,
    pub source: Source,
    pub plan: FiberPlan,
    pub expected_group: CyclicFreeProduct,
    pub expected_h1: AbelianInvariants,
    /// Whether the derivation must reach `CertifiedProbabilistic` or better.
    pub expect_certify: bool,
}

fn gens(f_p: &str, f_q: &str, p: u32, q: u32) -> Source {
    Source::Generators { f_p: f_p.into(), f_q: f_q.into(), p, q }
}

fn case(id: String, field: FieldKind, source: Source, plan: FiberPlan, expected: CyclicFreeProduct, expect_certify: bool) -> CorpusCase {
    let expected_h1 = expected.abelianization();
    CorpusCase { id, field, source, plan, expected_group: expected, expected_h1, expect_certify }
}

fn sampled(n: usize) -> FiberPlan {
    FiberPlan { sampled: n, asserted: Vec::new(), component: None }
}

/// Maximal tame torus sextics `f_2³ + f_3²`, families 1 to 7. Family 7 is
/// over `Q(√3)` with `u² = 3`.
pub const TORUS_SEXTICS: [(&str, &str); 7] = [
    ("y*z - x^2", "40*y^3 + 21*x*y*z - 21*x^3"),
    ("y^2 - x^2", "2*y^2*z - 2*x^2*z + 32/27*x^3"),
    ("y*z - x^2", "23/27*x^3 - 4/9*x^2*y + x*y*z + 4/9*x*y^2 - 4/27*y^3"),
    ("x*y", "y^2*z - y^3 - x^3"),
    ("y*z - y^2 - x^2", "y*(y*z - y^2 - x^2 + x*y + 18/25*y^2)"),
    ("y^2 - 2*y*z + z^2 + x^2 - z^2", "x^2*y"),
    ("y*z - x^2", "y*(y*z + 4/3*y^2 + 3/2*u*x*z + 2/3*u*x*y + y^2)"),
];

pub fn corpus_cases() -> Vec<CorpusCase> {
    let mut out = Vec::new();
    for (p, q) in [(2u32, 3u32), (3, 4), (2, 5), (3, 5)] {
        for r in 0..3usize {
            let id = if r == 0 { format!("cpq-{p}-{q}") } else { format!("cpq-{p}-{q}-r{r}") };
            let src = gens(&format!("x^{p} + y^{p}"), &format!("y^{q} + z^{q}"), p, q);
            out.push(case(id, FieldKind::Rational, src, sampled(r + 1), CyclicFreeProduct::new(r, [p as u64, q as u64]), true));
        }
    }
    for (i, (f2, f3)) in TORUS_SEXTICS.iter().enumerate() {
        let family = i + 1;
        let id = format!("table1-family{family}");
        let z23 = CyclicFreeProduct::new(0, [2, 3]);
        if family == 7 {
            // the torus curve itself, over [-1:1]; its typicality can only be asserted
            let plan = FiberPlan { sampled: 0, asserted: vec![ProjPoint::affine(Rational::from_integer((-1).into()))], component: None };
            out.push(case(id, FieldKind::Sqrt3, gens(f2, f3, 2, 3), plan, z23, false));
        } else {
            out.push(case(id, FieldKind::Rational, gens(f2, f3, 2, 3), sampled(1), z23, true));
        }
    }
    for r in [0usize, 1, 3] {
        out.push(case(
            format!("amram-r{r}"),
            FieldKind::Rational,
            gens("x^2 + y^2 - z^2", "z", 2, 1),
            sampled(r + 1),
            CyclicFreeProduct::new(r, [2]),
            true,
        ));
    }
    // special fibers joined to r + 1 = 2 generic fibers
    let (f2, f3) = TORUS_SEXTICS[0];
    out.push(case(
        "addition-family1-cubic".into(),
        FieldKind::Rational,
        gens(f2, f3, 2, 3),
        FiberPlan { sampled: 2, asserted: Vec::new(), component: Some((f3.into(), Some(CyclicFreeProduct::new(0, [3])))) },
        CyclicFreeProduct::new(2, [3]),
        false,
    ));
    for family in [1usize, 5] {
        let (f2, f3) = TORUS_SEXTICS[family - 1];
        out.push(case(
            format!("addition-family{family}-conic"),
            FieldKind::Rational,
            gens(f2, f3, 2, 3),
            FiberPlan { sampled: 2, asserted: Vec::new(), component: Some((f2.into(), None)) },
            CyclicFreeProduct::new(2, [2]),
            true,
        ));
    }
    out.push(case(
        "primitive-cubic-r2".into(),
        FieldKind::Rational,
        Source::Affine { f: "y + x^3".into() },
        sampled(2),
        CyclicFreeProduct::free(2),
        true,
    ));
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseStatus {
    Certified,
    CertifiedProbabilistic,
    Conditional,
    HypothesisFailed,
    Error,
}

impl From<ClaimStatus> for CaseStatus {
    fn from(s: ClaimStatus) -> Self {
        match s {
            ClaimStatus::Certified => CaseStatus::Certified,
            ClaimStatus::CertifiedProbabilistic => CaseStatus::CertifiedProbabilistic,
            ClaimStatus::Conditional => CaseStatus::Conditional,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub status: CaseStatus,
    pub group: Option<CyclicFreeProduct>,
    pub h1: Option<AbelianInvariants>,
    pub trace_digest: Option<String>,
    pub expected: CyclicFreeProduct,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub version: u32,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# Corpus run (seed {})\n\n| case | status | group | H1 | expected | result |\n|---|---|---|---|---|---|\n", self.seed);
        for c in &self.cases {
            let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            let _ = writeln!(
                s,
                "| {} | {:?} | {} | {} | {} | {} |",
                c.id,
                c.status,
                show(c.group.as_ref().map(ToString::to_string)),
                show(c.h1.as_ref().map(ToString::to_string)),
                c.expected,
                if c.passed { "pass" } else { "FAIL" }
            );
        }
        let passed = self.cases.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "\n{passed}/{} cases pass.", self.cases.len());
        s
    }
}

/// Builds the scenario for a case over the field `K`.
pub fn scenario<K: Field>(c: &CorpusCase) -> Result<Scenario<K>, String> {
    let parse = |s: &str| parse_poly_in::<K>(s).map_err(|e| format!("{s}: {e}"));
    let mut sc = match &c.source {
        Source::Generators { f_p, f_q, p, q } => Scenario::new(pencil_from_pq(parse(f_p)?, parse(f_q)?, *p, *q).map_err(|e| e.to_string())?),
        Source::Affine { f } => Scenario::affine_primitive(&parse(f)?, Connectivity::Test).map_err(|e| e.to_string())?,
    };
    for t in &c.plan.asserted {
        sc = sc.with_asserted(t.clone());
    }
    sc = sc.with_sampled(c.plan.sampled);
    if let Some((f, g)) = &c.plan.component {
        sc = sc.with_component(parse(f)?, g.clone());
    }
    Ok(sc)
}

fn run_in<K: Field>(c: &CorpusCase, seed: u64) -> CaseResult {
    let mut r = CaseResult {
        id: c.id.clone(),
        status: CaseStatus::Error,
        group: None,
        h1: None,
        trace_digest: None,
        expected: c.expected_group.clone(),
        passed: false,
        detail: String::new(),
    };
    let sc = match scenario::<K>(c) {
        Ok(sc) => sc,
        Err(e) => {
            r.detail = e;
            return r;
        }
    };
    match derive(&sc, seed) {
        Ok((claim, trace)) => {
            r.status = claim.status.into();
            r.trace_digest = Some(trace.digest());
            let h1 = h1_p2(&claim.component_degrees).ok();
            let coherent = h1.as_ref() == Some(&claim.group.abelianization()) && h1.as_ref() == Some(&c.expected_h1);
            let audit = audit_claim(&claim.component_degrees, &claim.group);
            let certified = claim.status >= ClaimStatus::CertifiedProbabilistic;
            let group_ok = claim.group == c.expected_group;
            r.passed = group_ok && coherent && audit.passed && certified == c.expect_certify;
            r.detail = if r.passed {
                claim.space
            } else {
                format!(
                    "group match {group_ok}, homology coherent {coherent}, audit {}, certified {certified} (expected {})",
                    audit.passed, c.expect_certify
                )
            };
            r.h1 = h1;
            r.group = Some(claim.group);
        }
        Err(DeriveError::HypothesisFailed { rule, hypothesis, evidence, trace }) => {
            r.status = CaseStatus::HypothesisFailed;
            r.trace_digest = Some(trace.digest());
            r.passed = !c.expect_certify;
            r.detail = format!("{rule}: {hypothesis}: {evidence}");
        }
        Err(e) => r.detail = e.to_string(),
    }
    r
}

pub fn run_case(c: &CorpusCase, seed: u64) -> CaseResult {
    match c.field {
        FieldKind::Rational => run_in::<Rational>(c, seed),
        FieldKind::Sqrt3 => run_in::<QSqrt3>(c, seed),
    }
}

/// Runs every case whose id matches `filter` (a glob), in parallel; the
/// report is ordered by case id.
pub fn run_corpus(seed: u64, filter: Option<&str>) -> Result<CorpusReport, glob::PatternError> {
    let pattern = filter.map(glob::Pattern::new).transpose()?;
    let selected: Vec<CorpusCase> = corpus_cases().into_iter().filter(|c| pattern.as_ref().is_none_or(|p| p.matches(&c.id))).collect();
    let mut cases: Vec<CaseResult> = selected.par_iter().map(|c| run_case(c, seed)).collect();
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(CorpusReport { version: REPORT_VERSION, seed, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let cases = corpus_cases();
        assert!(cases.len() >= 14);
        for c in &cases {
            assert_eq!(c.expected_group.abelianization(), c.expected_h1, "{}", c.id);
        }
        let ids: std::collections::BTreeSet<_> = cases.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), cases.len());
        assert!(!cases.iter().find(|c| c.id == "table1-family7").unwrap().expect_certify);
        assert_eq!(cases.iter().find(|c| c.id == "amram-r3").unwrap().expected_group.to_string(), "F3*Z2");
    }

    #[test]
    fn filter_selects_table() {
        let r = run_corpus(0, Some("table1-*")).unwrap();
        assert_eq!(r.cases.len(), 7);
        assert!(r.all_passed(), "{}", r.to_markdown());
    }
}
