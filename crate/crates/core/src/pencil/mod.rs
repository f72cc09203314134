//! Pencils `[A : B]` of plane curves and their fibers.
//!
//! Orientation: the fiber over `[a:b]` is `b·A − a·B = 0`, so `[0:1]` is
//! `{A = 0}` and `[1:0]` is `{B = 0}`.

mod file;
mod okapq;
mod point;
mod screen;

use num::Integer;
use rand::Rng;

use crate::polyalg::{
    certified_squarefree, gcd, kth_power_root, squarefree_decomposition, Field, Poly, PolyError, Rational,
    SquarefreeDecomposition,
};

pub use file::{FieldKind, PencilFile, PencilFileError};
pub use okapq::{check_okapq, check_okapq_generators, Connectivity, HypothesisCheck, OkapqCertificate, Verdict};
pub use point::{PointParseError, ProjPoint};
pub use screen::{multiple_fiber_screen, ScreenOutcome};

/// Which generator an error or check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Generator {
    #[serde(rename = "f_p")]
    Fp,
    #[serde(rename = "f_q")]
    Fq,
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Generator::Fp => "f_p",
            Generator::Fq => "f_q",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PencilError {
    #[error("generators must be nonzero homogeneous forms")]
    NotHomogeneous,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("degrees {p} and {q} are not coprime")]
    NotCoprimeDegrees { p: u32, q: u32 },
    #[error("generators share the factor {factor}")]
    CommonFactor { factor: String },
    #[error("{which} is a perfect {k}-th power")]
    IsPerfectPower { which: Generator, k: u32 },
    #[error("found {count} multiple fibers; a pencil on the plane has at most two")]
    TooManyMultipleFibers { count: usize },
    #[error("could not find {wanted} generic fibers within the retry budget")]
    ExhaustedRetries { wanted: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `(f_p, f_q, p, q)` before any hypothesis is enforced.
#[derive(Clone, Debug, PartialEq)]
pub struct PqGenerators<K: Field> {
    pub f_p: Poly<K>,
    pub f_q: Poly<K>,
    pub p: u32,
    pub q: u32,
}

/// Pair of coprime forms of equal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil<K: Field> {
    a: Poly<K>,
    b: Poly<K>,
    degree: u32,
    origin: Option<PqGenerators<K>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiberAnalysis<K: Field> {
    pub point: ProjPoint,
    pub equation: Poly<K>,
    pub multiplicity: u32,
    pub reduced: bool,
    pub degree: u32,
    pub decomposition: SquarefreeDecomposition<K>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BaseLocusReport {
    pub finite: bool,
    pub bezout_count: u32,
}

fn form_degree<K: Field>(f: &Poly<K>) -> Result<u32, PencilError> {
    match f.degree() {
        Some(d) if f.is_homogeneous() => Ok(d),
        _ => Err(PencilError::NotHomogeneous),
    }
}

impl<K: Field> Pencil<K> {
    pub fn new(a: Poly<K>, b: Poly<K>) -> Result<Self, PencilError> {
        let da = form_degree(&a)?;
        let db = form_degree(&b)?;
        if da != db {
            return Err(PencilError::DegreeMismatch { expected: da, found: db });
        }
        if da == 0 {
            return Err(PencilError::NotHomogeneous);
        }
        let g = gcd(&a, &b)?;
        if !g.is_constant() {
            return Err(PencilError::CommonFactor { factor: g.to_string() });
        }
        Ok(Pencil { a, b, degree: da, origin: None })
    }

    pub fn a(&self) -> &Poly<K> {
        &self.a
    }

    pub fn b(&self) -> &Poly<K> {
        &self.b
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn origin(&self) -> Option<&PqGenerators<K>> {
        self.origin.as_ref()
    }

    /// `b·A − a·B`.
    pub fn fiber_equation(&self, t: &ProjPoint) -> Poly<K> {
        let a = K::from_rational(t.a().clone());
        let b = K::from_rational(t.b().clone());
        &self.a.scale(&b) - &self.b.scale(&a)
    }

    pub fn fiber(&self, t: &ProjPoint) -> Result<FiberAnalysis<K>, PencilError> {
        let equation = self.fiber_equation(t);
        let decomposition = match (&self.origin, t.is_infinity(), t.a().is_zero()) {
            // f^k decomposes as f with exponents scaled by k
            (Some(o), false, true) => power_decomposition(&o.f_p, o.q)?,
            (Some(o), true, _) => {
                let mut d = power_decomposition(&o.f_q, o.p)?;
                d.unit = d.unit.neg();
                d
            }
            _ => squarefree_decomposition(&equation)?,
        };
        debug_assert_eq!(decomposition.unit, equation.leading_coeff());
        Ok(FiberAnalysis {
            point: t.clone(),
            multiplicity: decomposition.multiplicity(),
            reduced: decomposition.is_reduced(),
            degree: self.degree,
            equation,
            decomposition,
        })
    }

    /// Multiple fibers among `[0:1]`, `[1:0]` and `scan_count` random points.
    pub fn detect_multiple_fibers(&self, scan_seed: u64, scan_count: usize) -> Result<Vec<FiberAnalysis<K>>, PencilError> {
        let mut points = vec![ProjPoint::zero(), ProjPoint::infinity()];
        let mut rng = crate::rng::seeded(scan_seed, "multiple-fiber-scan");
        while points.len() < scan_count + 2 {
            let t = random_point(&mut rng);
            if !points.contains(&t) {
                points.push(t);
            }
        }
        let mut found = Vec::new();
        for t in &points {
            let f = self.fiber(t)?;
            if f.multiplicity > 1 {
                found.push(f);
            }
        }
        if found.len() > 2 {
            return Err(PencilError::TooManyMultipleFibers { count: found.len() });
        }
        Ok(found)
    }

    pub fn base_locus_report(&self) -> BaseLocusReport {
        let bezout_count = match &self.origin {
            Some(o) => o.f_p.degree().unwrap_or(0) * o.f_q.degree().unwrap_or(0),
            None => self.degree * self.degree,
        };
        BaseLocusReport { finite: true, bezout_count }
    }

    /// Distinct seeded points whose fibers are reduced and not among the
    /// special fibers `[0:1]`, `[1:0]`.
    pub fn sample_generic_points(&self, count: usize, seed: u64) -> Result<Vec<ProjPoint>, PencilError> {
        let mut rng = crate::rng::seeded(seed, "generic-fibers");
        let mut out: Vec<ProjPoint> = Vec::new();
        let budget = 64 * count.max(1);
        for _ in 0..budget {
            if out.len() == count {
                break;
            }
            let t = random_point(&mut rng);
            if t.a().is_zero() || out.contains(&t) {
                continue;
            }
            if self.is_reduced_fiber(&t)? {
                out.push(t);
            }
        }
        if out.len() < count {
            return Err(PencilError::ExhaustedRetries { wanted: count });
        }
        Ok(out)
    }

    pub fn is_reduced_fiber(&self, t: &ProjPoint) -> Result<bool, PencilError> {
        let eq = self.fiber_equation(t);
        Ok(certified_squarefree(&eq) || squarefree_decomposition(&eq)?.is_reduced())
    }
}

fn power_decomposition<K: Field>(f: &Poly<K>, k: u32) -> Result<SquarefreeDecomposition<K>, PencilError> {
    let mut d = squarefree_decomposition(f)?;
    let mut unit = K::one();
    for _ in 0..k {
        unit = unit.mul(&d.unit);
    }
    d.unit = unit;
    for (_, e) in d.factors.iter_mut() {
        *e *= k;
    }
    Ok(d)
}

/// `[a:1]` with `a = n/d`, `n ∈ [-40, 40]`, `d ∈ [1, 9]`.
fn random_point(rng: &mut crate::rng::Rng) -> ProjPoint {
    let n: i64 = rng.gen_range(-40..=40);
    let d: i64 = rng.gen_range(1..=9);
    ProjPoint::affine(Rational::new(n.into(), d.into()))
}

/// Builds `[f_p^q : f_q^p]` after checking every exact hypothesis.
pub fn pencil_from_pq<K: Field>(f_p: Poly<K>, f_q: Poly<K>, p: u32, q: u32) -> Result<Pencil<K>, PencilError> {
    let gens = PqGenerators { f_p, f_q, p, q };
    validate_generators(&gens)?;
    let a = gens.f_p.pow(q);
    let b = gens.f_q.pow(p);
    let degree = p * q;
    Ok(Pencil { a, b, degree, origin: Some(gens) })
}

pub(crate) fn validate_generators<K: Field>(g: &PqGenerators<K>) -> Result<(), PencilError> {
    if g.p == 0 || g.q == 0 {
        return Err(PencilError::NotCoprimeDegrees { p: g.p, q: g.q });
    }
    for (f, expected) in [(&g.f_p, g.p), (&g.f_q, g.q)] {
        let d = form_degree(f)?;
        if d != expected {
            return Err(PencilError::DegreeMismatch { expected, found: d });
        }
    }
    if g.p.gcd(&g.q) != 1 {
        return Err(PencilError::NotCoprimeDegrees { p: g.p, q: g.q });
    }
    let c = gcd(&g.f_p, &g.f_q)?;
    if !c.is_constant() {
        return Err(PencilError::CommonFactor { factor: c.to_string() });
    }
    for (which, f) in [(Generator::Fp, &g.f_p), (Generator::Fq, &g.f_q)] {
        if let Some(k) = perfect_power_exponent(f)? {
            return Err(PencilError::IsPerfectPower { which, k });
        }
    }
    Ok(())
}

/// Smallest `k ≥ 2` with `f` a `k`-th power (projectively), if any.
pub(crate) fn perfect_power_exponent<K: Field>(f: &Poly<K>) -> Result<Option<u32>, PencilError> {
    let d = f.degree().unwrap_or(0);
    for k in 2..=d {
        if d % k == 0 && kth_power_root(f, k)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
