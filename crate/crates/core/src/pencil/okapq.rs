//! Hypothesis checks for `[f_p^q : f_q^p]` pencils.

use num::Integer;
use serde::Serialize;

use super::screen::{multiple_fiber_screen, ScreenOutcome};
use super::{form_degree, pencil_from_pq, perfect_power_exponent, Pencil, PencilError, PqGenerators};
use crate::polyalg::{gcd, irreducibility_report, AbsoluteIrreducibility, Field, Irreducibility};

/// Strength of a single verdict; the derived order is weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, serde::Deserialize)]
pub enum Verdict {
    Failed,
    Asserted,
    CertifiedProbabilistic,
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub id: String,
    pub verdict: Verdict,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OkapqCertificate {
    pub p: u32,
    pub q: u32,
    pub checks: Vec<HypothesisCheck>,
    pub overall: Verdict,
}

impl OkapqCertificate {
    pub fn failed(&self) -> Option<&HypothesisCheck> {
        self.checks.iter().find(|c| c.verdict == Verdict::Failed)
    }
}

/// How connectedness of generic fibers is established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Test,
    Assert,
}

const IRREDUCIBILITY_TRIALS: usize = 12;
const SCREEN_LINES: usize = 3;

fn check(id: &str, verdict: Verdict, evidence: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck { id: id.to_string(), verdict, evidence: evidence.into() }
}

/// Checks on a pencil that carries its generators.
pub fn check_okapq<K: Field>(pencil: &Pencil<K>, seed: u64, connectivity: Connectivity) -> Result<OkapqCertificate, PencilError> {
    let gens = pencil.origin().ok_or(PencilError::NotHomogeneous)?;
    check_okapq_generators(gens, seed, connectivity)
}

/// Checks on raw generators, reporting failures as verdicts rather than errors.
pub fn check_okapq_generators<K: Field>(
    g: &PqGenerators<K>,
    seed: u64,
    connectivity: Connectivity,
) -> Result<OkapqCertificate, PencilError> {
    let mut checks = Vec::new();

    let degrees_ok = match (form_degree(&g.f_p), form_degree(&g.f_q)) {
        (Ok(dp), Ok(dq)) if dp == g.p && dq == g.q && g.p.gcd(&g.q) == 1 && g.p >= 1 => {
            checks.push(check("degrees", Verdict::Certified, format!("deg f_p = {dp}, deg f_q = {dq}, coprime")));
            true
        }
        (dp, dq) => {
            let shown = |d: Result<u32, PencilError>| d.map(|d| d.to_string()).unwrap_or_else(|_| "not a form".into());
            checks.push(check(
                "degrees",
                Verdict::Failed,
                format!("deg f_p = {}, deg f_q = {}, (p, q) = ({}, {})", shown(dp), shown(dq), g.p, g.q),
            ));
            false
        }
    };
    if !degrees_ok {
        return Ok(finish(g, checks));
    }

    let mut power_free = true;
    for (name, f) in [("f_p", &g.f_p), ("f_q", &g.f_q)] {
        match perfect_power_exponent(f)? {
            None => checks.push(check(
                &format!("power-free-{name}"),
                Verdict::Certified,
                format!("{name} is not a k-th power for 2 ≤ k ≤ {}", f.degree().unwrap_or(0)),
            )),
            Some(k) => {
                power_free = false;
                checks.push(check(&format!("power-free-{name}"), Verdict::Failed, format!("{name} is a perfect {k}-th power")));
            }
        }
    }

    let c = gcd(&g.f_p, &g.f_q)?;
    let coprime = c.is_constant();
    checks.push(if coprime {
        check("no-common-factor", Verdict::Certified, "gcd(f_p, f_q) = 1")
    } else {
        check("no-common-factor", Verdict::Failed, format!("gcd(f_p, f_q) = {c}"))
    });

    if !(power_free && coprime) {
        return Ok(finish(g, checks));
    }
    let pencil = pencil_from_pq(g.f_p.clone(), g.f_q.clone(), g.p, g.q)?;
    checks.push(connectedness(&pencil, seed, connectivity)?);
    checks.push(multiple_fiber_location(&pencil, seed)?);
    Ok(finish(g, checks))
}

fn finish<K: Field>(g: &PqGenerators<K>, checks: Vec<HypothesisCheck>) -> OkapqCertificate {
    let overall = checks.iter().map(|c| c.verdict).min().unwrap_or(Verdict::Failed);
    OkapqCertificate { p: g.p, q: g.q, checks, overall }
}

/// An irreducible reduced fiber rules out a composite pencil, whose fibers
/// are all reducible or multiple; so it certifies connected generic fibers.
fn connectedness<K: Field>(pencil: &Pencil<K>, seed: u64, mode: Connectivity) -> Result<HypothesisCheck, PencilError> {
    const ID: &str = "connected-generic-fibers";
    if mode == Connectivity::Assert {
        return Ok(check(ID, Verdict::Asserted, "asserted by the caller"));
    }
    let t = pencil.sample_generic_points(1, seed)?.remove(0);
    let eq = pencil.fiber_equation(&t);
    let r = irreducibility_report(&eq, seed, IRREDUCIBILITY_TRIALS)?;
    Ok(match (r.verdict, r.absolute) {
        (_, AbsoluteIrreducibility::Irreducible) => {
            check(ID, Verdict::Certified, format!("fiber over [{t}] is absolutely irreducible by degree"))
        }
        (Irreducibility::Irreducible, _) => {
            let w = r.witness.expect("irreducible slices carry a witness");
            check(
                ID,
                Verdict::CertifiedProbabilistic,
                format!(
                    "fiber over [{t}] is irreducible over the base field: slice through {:?} along {:?} is irreducible mod {}",
                    w.point, w.direction, w.prime
                ),
            )
        }
        (Irreducibility::Unknown, _) => check(
            ID,
            Verdict::Failed,
            format!("no irreducible slice of the fiber over [{t}] in {IRREDUCIBILITY_TRIALS} trials"),
        ),
    })
}

fn multiple_fiber_location<K: Field>(pencil: &Pencil<K>, seed: u64) -> Result<HypothesisCheck, PencilError> {
    const ID: &str = "multiple-fibers-location";
    let zero = pencil.fiber(&super::ProjPoint::zero())?;
    let inf = pencil.fiber(&super::ProjPoint::infinity())?;
    if zero.multiplicity > 1 && inf.multiplicity > 1 {
        return Ok(check(
            ID,
            Verdict::Certified,
            format!(
                "[0:1] has multiplicity {} and [1:0] has multiplicity {}; a plane pencil has at most two multiple fibers",
                zero.multiplicity, inf.multiplicity
            ),
        ));
    }
    Ok(match multiple_fiber_screen(pencil, seed, SCREEN_LINES) {
        ScreenOutcome::Clear { lines } => check(
            ID,
            Verdict::Certified,
            format!("discriminant gcd over {lines} lines has no roots outside [0:1], [1:0]"),
        ),
        ScreenOutcome::Unresolved { residual } => check(
            ID,
            Verdict::Failed,
            format!("possible multiple fibers at the roots of {residual} (affine coordinate x = a/b)"),
        ),
    })
}
