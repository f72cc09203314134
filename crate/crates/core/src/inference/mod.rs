//! Rule-based derivation of fundamental groups of fiber-type curve
//! complements, with a replayable trace.
//!
//! Rules:
//!
//! | id | content |
//! |----|---------|
//! | `R-BASE` | one typical fiber `C₀` with `H₁ = Z_pq` gives `π₁ = Z_p * Z_q` |
//! | `R-ADD` | each further typical fiber adds a free factor `Z` |
//! | `R-SMOOTH` | a line or smooth conic of degree `d` has complement group `Z_d` |
//! | `R-ASSERT` | a complement group supplied by the caller |
//! | `R-MOREOVER` | adding a special fiber `V(f)` with `π₁(P² ∖ V(f)) = Z_m` for the other multiplicity `m` |
//! | `R-PRIM` | an affine polynomial read as the pencil `[f̄ : z^d]` |

mod audit;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fpgroups::{reduce_presn0, AbelianInvariants, CyclicFreeProduct};
use crate::homology::{h1_from_intersections, h1_p2, HomologyError, IntersectionData};
use crate::pencil::{
    check_okapq_generators, pencil_from_pq, Connectivity, HypothesisCheck, Pencil, PencilError, PqGenerators, ProjPoint,
    Verdict,
};
use crate::polyalg::{irreducibility_report, kth_power_root, AbsoluteIrreducibility, Field, Irreducibility, Poly, Var};

pub use audit::{audit_claim, AuditCheck, AuditReport};

const FIBER_TRIALS: usize = 12;

/// How a fiber is known to be generic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FiberChoice {
    /// Drawn from the seed during derivation.
    Sampled,
    /// Typicality vouched for by the caller.
    UserAsserted(ProjPoint),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Ambient {
    Plane,
    /// A simply connected surface; `H₁` of the base complement comes from
    /// the supplied intersection data.
    SimplyConnected { base_homology: Option<IntersectionData> },
}

/// A special fiber `V(f)` added to the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtraComponent<K: Field> {
    pub equation: Poly<K>,
    /// `π₁(P² ∖ V(f))` as asserted by the caller; `None` asks for certification.
    pub asserted_group: Option<CyclicFreeProduct>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario<K: Field> {
    pub pencil: Pencil<K>,
    pub fibers: Vec<FiberChoice>,
    pub extra_components: Vec<ExtraComponent<K>>,
    pub ambient: Ambient,
    pub connectivity: Connectivity,
    /// Set by [`Scenario::affine_primitive`].
    pub affine: bool,
}

impl<K: Field> Scenario<K> {
    pub fn new(pencil: Pencil<K>) -> Self {
        Scenario {
            pencil,
            fibers: Vec::new(),
            extra_components: Vec::new(),
            ambient: Ambient::Plane,
            connectivity: Connectivity::Test,
            affine: false,
        }
    }

    pub fn with_sampled(mut self, count: usize) -> Self {
        self.fibers.extend(std::iter::repeat_n(FiberChoice::Sampled, count));
        self
    }

    pub fn with_asserted(mut self, point: ProjPoint) -> Self {
        self.fibers.push(FiberChoice::UserAsserted(point));
        self
    }

    pub fn with_component(mut self, equation: Poly<K>, asserted_group: Option<CyclicFreeProduct>) -> Self {
        self.extra_components.push(ExtraComponent { equation, asserted_group });
        self
    }

    /// Complement in the affine plane of generic fibers of `f(x, y)`: the
    /// pencil `[f̄ : z^d]` with the line at infinity added as a component.
    /// `connectivity` decides whether primitivity is tested or asserted.
    pub fn affine_primitive(f: &Poly<K>, connectivity: Connectivity) -> Result<Self, PencilError> {
        if f.uses(Var::Z) {
            return Err(PencilError::NotHomogeneous);
        }
        let d = f.degree().filter(|&d| d >= 1).ok_or(PencilError::NotHomogeneous)?;
        let z = Poly::var(Var::Z);
        let pencil = pencil_from_pq(f.homogenize(), z.clone(), d, 1)?;
        let mut sc = Scenario::new(pencil).with_component(z, None);
        sc.connectivity = connectivity;
        sc.affine = true;
        Ok(sc)
    }

    pub fn generic_fiber_count(&self) -> usize {
        self.fibers.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ClaimStatus {
    Conditional,
    CertifiedProbabilistic,
    Certified,
}

impl ClaimStatus {
    fn from_verdict(v: Verdict) -> Option<Self> {
        match v {
            Verdict::Failed => None,
            Verdict::Asserted => Some(ClaimStatus::Conditional),
            Verdict::CertifiedProbabilistic => Some(ClaimStatus::CertifiedProbabilistic),
            Verdict::Certified => Some(ClaimStatus::Certified),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub space: String,
    pub group: CyclicFreeProduct,
    pub status: ClaimStatus,
    /// Degrees of the removed curves: one per fiber, then the extra components.
    pub component_degrees: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<ProjPoint>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub group: CyclicFreeProduct,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DerivationTrace {
    pub steps: Vec<TraceStep>,
}

impl DerivationTrace {
    /// Hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("trace serializes");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn final_group(&self) -> Option<&CyclicFreeProduct> {
        self.steps.last().map(|s| &s.group)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeriveError {
    #[error("{rule}: hypothesis `{hypothesis}` failed: {evidence}")]
    HypothesisFailed { rule: String, hypothesis: String, evidence: String, trace: DerivationTrace },
    #[error("ambient surface unsupported: {0}")]
    AmbientUnsupported(String),
    #[error(transparent)]
    Pencil(#[from] PencilError),
}

fn hyp(id: &str, verdict: Verdict, evidence: impl Into<String>) -> HypothesisCheck {
    HypothesisCheck { id: id.to_string(), verdict, evidence: evidence.into() }
}

struct Builder {
    trace: DerivationTrace,
}

impl Builder {
    /// Records the step, failing on the first `Failed` hypothesis.
    fn push(&mut self, step: TraceStep) -> Result<(), DeriveError> {
        let failed = step.hypotheses.iter().find(|h| h.verdict == Verdict::Failed).cloned();
        let rule = step.rule.clone();
        self.trace.steps.push(step);
        match failed {
            None => Ok(()),
            Some(h) => Err(DeriveError::HypothesisFailed { rule, hypothesis: h.id, evidence: h.evidence, trace: self.trace.clone() }),
        }
    }

    fn status(&self) -> ClaimStatus {
        let v = self.trace.steps.iter().flat_map(|s| &s.hypotheses).map(|h| h.verdict).min().unwrap_or(Verdict::Certified);
        ClaimStatus::from_verdict(v).expect("failed hypotheses abort the derivation")
    }
}

/// `(f_p, f_q, p, q)` for the pencil, recovered from its forms when it was
/// not built from generators: `A = c·f_p^q`, `B = c'·f_q^p`.
pub fn recover_generators<K: Field>(pencil: &Pencil<K>) -> Result<Option<PqGenerators<K>>, PencilError> {
    if let Some(o) = pencil.origin() {
        return Ok(Some(o.clone()));
    }
    let q = pencil.fiber(&ProjPoint::zero())?.multiplicity;
    let p = pencil.fiber(&ProjPoint::infinity())?.multiplicity;
    if p * q != pencil.degree() {
        return Ok(None);
    }
    let root = |f: &Poly<K>, k: u32| -> Result<Option<Poly<K>>, PencilError> {
        if k == 1 {
            return Ok(Some(f.clone()));
        }
        Ok(kth_power_root(f, k)?)
    };
    match (root(pencil.a(), q)?, root(pencil.b(), p)?) {
        (Some(f_p), Some(f_q)) => Ok(Some(PqGenerators { f_p, f_q, p, q })),
        _ => Ok(None),
    }
}

/// Runs the rule pipeline.
pub fn derive<K: Field>(sc: &Scenario<K>, seed: u64) -> Result<(Claim, DerivationTrace), DeriveError> {
    let mut b = Builder { trace: DerivationTrace::default() };
    let pencil = &sc.pencil;
    let d = pencil.degree();
    let Some(gens) = recover_generators(pencil)? else {
        b.push(TraceStep {
            rule: "R-BASE".into(),
            statement: "the pencil must have the shape [f_p^q : f_q^p]".into(),
            point: None,
            hypotheses: vec![hyp("pq-shape", Verdict::Failed, "the special fibers do not split the degree as p·q")],
            group: CyclicFreeProduct::trivial(),
        })?;
        unreachable!("a failed hypothesis aborts");
    };
    let (p, q) = (gens.p as u64, gens.q as u64);

    if sc.affine {
        b.push(TraceStep {
            rule: "R-PRIM".into(),
            statement: "a polynomial with connected generic fibers, read as the pencil [f̄ : z^d] whose fiber at infinity bounds C²".into(),
            point: None,
            hypotheses: vec![hyp(
                "homogenized",
                Verdict::Certified,
                format!("f̄ = {}, line at infinity z = 0 is the fiber over [1:0] with multiplicity {d}", gens.f_p),
            )],
            group: CyclicFreeProduct::trivial(),
        })?;
    }

    // fiber points, asserted ones first in the caller's order, then samples
    let asserted: Vec<ProjPoint> = sc
        .fibers
        .iter()
        .filter_map(|f| match f {
            FiberChoice::UserAsserted(t) => Some(t.clone()),
            FiberChoice::Sampled => None,
        })
        .collect();
    let sampled_count = sc.fibers.len() - asserted.len();
    let mut points: Vec<(ProjPoint, bool)> = Vec::new();
    let mut sampled = pencil.sample_generic_points(sampled_count + asserted.len(), seed)?.into_iter().filter(|t| !asserted.contains(t));
    for f in &sc.fibers {
        match f {
            FiberChoice::UserAsserted(t) => points.push((t.clone(), true)),
            FiberChoice::Sampled => points.push((sampled.next().expect("enough samples"), false)),
        }
    }
    let Some((first, _)) = points.first().cloned() else {
        return Err(DeriveError::HypothesisFailed {
            rule: "R-BASE".into(),
            hypothesis: "fiber-count".into(),
            evidence: "at least one fiber is required".into(),
            trace: b.trace,
        });
    };

    // R-BASE
    let cert = check_okapq_generators(&gens, seed, sc.connectivity)?;
    let mut hyps = cert.checks.clone();
    hyps.push(fiber_check(pencil, &first, points[0].1, &points[..0], seed)?);
    let m_inf = pencil.fiber(&ProjPoint::infinity())?;
    let m_zero = pencil.fiber(&ProjPoint::zero())?;
    let base_h1 = match &sc.ambient {
        Ambient::Plane => h1_p2(&[d as u64]).expect("nonempty"),
        Ambient::SimplyConnected { base_homology: Some(data) } => match h1_from_intersections(data) {
            Ok(h) => h,
            Err(HomologyError::HypothesisNotMet) => {
                return Err(DeriveError::AmbientUnsupported("the intersection data does not assert H₁(X) = 0".into()))
            }
            Err(e) => return Err(DeriveError::AmbientUnsupported(e.to_string())),
        },
        Ambient::SimplyConnected { base_homology: None } => {
            return Err(DeriveError::AmbientUnsupported("a simply connected ambient needs intersection data".into()))
        }
    };
    let orbifold = CyclicFreeProduct::new(0, [m_inf.multiplicity as u64, m_zero.multiplicity as u64]);
    let target = AbelianInvariants::from_cyclic_orders(0, &[p * q]);
    let pairs = exponent_pairs(&m_inf.decomposition.factors, p, &m_zero.decomposition.factors, q);
    let presn = reduce_presn0(p as i64, q as i64, &pairs).map_err(|e| DeriveError::HypothesisFailed {
        rule: "R-BASE".into(),
        hypothesis: "lattice-reduction".into(),
        evidence: e.to_string(),
        trace: b.trace.clone(),
    })?;
    hyps.push(if base_h1 == target {
        hyp("h1-is-cyclic-pq", Verdict::Certified, format!("H₁ of the base complement is {base_h1}"))
    } else {
        hyp("h1-is-cyclic-pq", Verdict::Failed, format!("H₁ of the base complement is {base_h1}, not Z{}", p * q))
    });
    hyps.push(if presn.is_pq {
        hyp("lattice-reduction", Verdict::Certified, format!("exponent pairs {pairs:?} span Z²"))
    } else {
        hyp("lattice-reduction", Verdict::Failed, format!("exponent pairs {pairs:?} reduce to {:?}", presn.hermite))
    });
    hyps.push(if orbifold == CyclicFreeProduct::new(0, [p, q]) {
        hyp("orbifold-multiplicities", Verdict::Certified, format!("[1:0] has multiplicity {}, [0:1] has {}", m_inf.multiplicity, m_zero.multiplicity))
    } else {
        hyp("orbifold-multiplicities", Verdict::Failed, format!("orbifold group {orbifold} differs from Z{p}*Z{q}"))
    });
    let mut group = CyclicFreeProduct::new(0, [p, q]);
    b.push(TraceStep {
        rule: "R-BASE".into(),
        statement: "one typical fiber with H₁ = Z_pq: the complement group maps isomorphically onto Z_p * Z_q".into(),
        point: Some(first.clone()),
        hypotheses: hyps,
        group: group.clone(),
    })?;

    // R-ADD
    for i in 1..points.len() {
        let (t, is_asserted) = &points[i];
        let h = fiber_check(pencil, t, *is_asserted, &points[..i], seed)?;
        group = group.free_product(&CyclicFreeProduct::free(1));
        b.push(TraceStep {
            rule: "R-ADD".into(),
            statement: "adding a typical fiber: π₁(U_{B∪{P}}) ≅ Z * π₁(U_B)".into(),
            point: Some(t.clone()),
            hypotheses: vec![h],
            group: group.clone(),
        })?;
    }

    let mut degrees: Vec<u64> = vec![d as u64; points.len()];
    let mut space = format!("P2 minus {} fiber(s) of a degree {d} pencil", points.len());

    // extra components
    if sc.extra_components.len() > 1 {
        return Err(DeriveError::HypothesisFailed {
            rule: "R-MOREOVER".into(),
            hypothesis: "single-component".into(),
            evidence: "at most one special fiber can be added".into(),
            trace: b.trace,
        });
    }
    if let Some(extra) = sc.extra_components.first() {
        let (at, other) = if same_curve(&extra.equation, &m_zero.decomposition.radical()) {
            (&m_zero, &m_inf)
        } else if same_curve(&extra.equation, &m_inf.decomposition.radical()) {
            (&m_inf, &m_zero)
        } else {
            b.push(TraceStep {
                rule: "R-MOREOVER".into(),
                statement: "the added curve must be the support of a special fiber".into(),
                point: None,
                hypotheses: vec![hyp("special-fiber", Verdict::Failed, format!("{} is not the support of the fiber over [0:1] or [1:0]", extra.equation))],
                group: group.clone(),
            })?;
            unreachable!("a failed hypothesis aborts");
        };
        let base = base_group_step(&mut b, extra, seed)?;
        let m_other = other.multiplicity as u64;
        let expected_base = CyclicFreeProduct::new(0, [m_other]);
        let matches = if base == expected_base {
            hyp("base-is-orbifold-group", Verdict::Certified, format!("π₁(P² ∖ V(f)) = {base} equals the orbifold group of P¹ ∖ [{}]", at.point))
        } else {
            hyp("base-is-orbifold-group", Verdict::Failed, format!("π₁(P² ∖ V(f)) = {base} but the orbifold group is {expected_base}"))
        };
        let irreducible = component_irreducibility(&extra.equation, seed)?;
        group = CyclicFreeProduct::new(points.len(), [m_other]);
        b.push(TraceStep {
            rule: if sc.affine { "R-PRIM" } else { "R-MOREOVER" }.into(),
            statement: "the special fiber V(f) with π₁(P² ∖ V(f)) ≅ Z_m, m the other multiplicity, joins as a deleted fiber: F_{r+1} * Z_m".into(),
            point: Some(at.point.clone()),
            hypotheses: vec![irreducible, matches],
            group: group.clone(),
        })?;
        degrees.push(extra.equation.degree().unwrap_or(0) as u64);
        space = if sc.affine {
            format!("C2 minus {} generic fiber(s) of a degree {d} polynomial", points.len())
        } else {
            format!("{space} and the curve {}", extra.equation)
        };
    }

    let status = b.status();
    Ok((Claim { space, group, status, component_degrees: degrees }, b.trace))
}

/// Pairs `(e_i, 0)` for the components of `f_q` and `(0, e_j)` for those of
/// `f_p`, where `e` is the exponent divided by the fiber's base multiplicity.
fn exponent_pairs<K: Field>(inf: &[(Poly<K>, u32)], p: u64, zero: &[(Poly<K>, u32)], q: u64) -> Vec<(i64, i64)> {
    inf.iter()
        .map(|(_, e)| (*e as i64 / p as i64, 0))
        .chain(zero.iter().map(|(_, e)| (0, *e as i64 / q as i64)))
        .collect()
}

fn same_curve<K: Field>(a: &Poly<K>, b: &Poly<K>) -> bool {
    a.normalized() == b.normalized()
}

/// Reducedness is exact; irreducibility is exact for lines and smooth
/// conics and probabilistic otherwise. Typicality itself is never proven,
/// so an asserted point only ever reaches `Asserted`.
fn fiber_check<K: Field>(
    pencil: &Pencil<K>,
    t: &ProjPoint,
    asserted: bool,
    earlier: &[(ProjPoint, bool)],
    seed: u64,
) -> Result<HypothesisCheck, PencilError> {
    let id = format!("typical-fiber-{t}");
    if earlier.iter().any(|(s, _)| s == t) {
        return Ok(hyp(&id, Verdict::Failed, "repeated fiber"));
    }
    if t.is_infinity() || t.a().is_zero() {
        return Ok(hyp(&id, Verdict::Failed, "the fibers over [0:1] and [1:0] are multiple, not typical"));
    }
    if !pencil.is_reduced_fiber(t)? {
        return Ok(hyp(&id, Verdict::Failed, "the fiber is not reduced"));
    }
    if asserted {
        return Ok(hyp(&id, Verdict::Asserted, "reduced; typicality asserted by the caller"));
    }
    let eq = pencil.fiber_equation(t);
    let r = irreducibility_report(&eq, seed, FIBER_TRIALS)?;
    Ok(match (r.absolute, r.verdict) {
        (AbsoluteIrreducibility::Irreducible, _) => hyp(&id, Verdict::Certified, "reduced and smooth by degree"),
        (_, Irreducibility::Irreducible) => hyp(&id, Verdict::CertifiedProbabilistic, "sampled: reduced, with an irreducible line slice"),
        (_, Irreducibility::Unknown) => hyp(&id, Verdict::Failed, "sampled fiber shows no irreducible slice"),
    })
}

fn component_irreducibility<K: Field>(f: &Poly<K>, seed: u64) -> Result<HypothesisCheck, PencilError> {
    let r = irreducibility_report(f, seed, FIBER_TRIALS)?;
    Ok(match (r.absolute, r.verdict) {
        (AbsoluteIrreducibility::Irreducible, _) => hyp("component-irreducible", Verdict::Certified, "absolutely irreducible by degree"),
        (_, Irreducibility::Irreducible) => hyp("component-irreducible", Verdict::CertifiedProbabilistic, "irreducible line slice"),
        (_, Irreducibility::Unknown) => hyp("component-irreducible", Verdict::Failed, "no irreducible slice found"),
    })
}

/// `R-SMOOTH` when the curve is a line or a smooth conic, `R-ASSERT` otherwise.
fn base_group_step<K: Field>(b: &mut Builder, extra: &ExtraComponent<K>, _seed: u64) -> Result<CyclicFreeProduct, DeriveError> {
    let deg = extra.equation.degree().unwrap_or(0) as u64;
    let smooth = crate::polyalg::absolute_verdict(&extra.equation) == AbsoluteIrreducibility::Irreducible;
    if smooth {
        let g = CyclicFreeProduct::new(0, [deg]);
        let mut hyps = vec![hyp("smooth-curve", Verdict::Certified, format!("{} is a smooth curve of degree {deg}", extra.equation))];
        if let Some(a) = &extra.asserted_group {
            hyps.push(if *a == g {
                hyp("assertion-consistent", Verdict::Certified, format!("asserted {a} agrees"))
            } else {
                hyp("assertion-consistent", Verdict::Failed, format!("asserted {a} but the complement of a smooth curve of degree {deg} has group {g}"))
            });
        }
        b.push(TraceStep {
            rule: "R-SMOOTH".into(),
            statement: "the complement of a smooth plane curve of degree d has group Z_d".into(),
            point: None,
            hypotheses: hyps,
            group: g.clone(),
        })?;
        return Ok(g);
    }
    match &extra.asserted_group {
        Some(a) => {
            b.push(TraceStep {
                rule: "R-ASSERT".into(),
                statement: "complement group of the added curve supplied by the caller (e.g. irreducible with only nodes)".into(),
                point: None,
                hypotheses: vec![hyp("asserted-base-group", Verdict::Asserted, format!("π₁(P² ∖ V(f)) = {a} asserted"))],
                group: a.clone(),
            })?;
            Ok(a.clone())
        }
        None => {
            b.push(TraceStep {
                rule: "R-ASSERT".into(),
                statement: "complement group of the added curve supplied by the caller".into(),
                point: None,
                hypotheses: vec![hyp("asserted-base-group", Verdict::Failed, "curve is not a line or smooth conic and no group was asserted")],
                group: CyclicFreeProduct::trivial(),
            })?;
            unreachable!("a failed hypothesis aborts")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    /// Every step matches exactly.
    pub identical: bool,
    /// The final groups agree.
    pub group_equal: bool,
}

/// Re-runs the derivation and compares it with `trace`.
pub fn replay_report<K: Field>(trace: &DerivationTrace, sc: &Scenario<K>, seed: u64) -> ReplayReport {
    let again = match derive(sc, seed) {
        Ok((_, t)) => t,
        Err(DeriveError::HypothesisFailed { trace, .. }) => trace,
        Err(_) => return ReplayReport { identical: false, group_equal: false },
    };
    ReplayReport { identical: again == *trace, group_equal: again.final_group() == trace.final_group() }
}

pub fn replay<K: Field>(trace: &DerivationTrace, sc: &Scenario<K>, seed: u64) -> bool {
    replay_report(trace, sc, seed).identical
}

/// Removing a fiber of multiplicity `m` from a complement with group
/// `F_r * …`, `r ≥ 1`: `F_{r−1} * Z_m * …`.
pub fn delete_fiber(g: &CyclicFreeProduct, multiplicity: u64) -> Option<CyclicFreeProduct> {
    let r = g.free_rank().checked_sub(1)?;
    Some(CyclicFreeProduct::new(r, g.torsion().iter().copied().chain([multiplicity])))
}
