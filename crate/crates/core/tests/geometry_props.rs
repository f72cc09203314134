use num::{BigRational, One};
use orbipencil::corpus::{corpus_cases, scenario, Source};
use orbipencil::fpgroups::{abelianize, reduce_presn0, AbelianInvariants, CyclicFreeProduct};
use orbipencil::homology::{h1_from_intersections, h1_p2, IntersectionData};
use orbipencil::inference::{derive, ClaimStatus, DeriveError, Scenario};
use orbipencil::orbifold::{OrbGroup, OrbifoldCurve};
use orbipencil::pencil::{pencil_from_pq, Pencil, ProjPoint, Verdict};
use orbipencil::polyalg::{parse_poly, rat, Monomial, Poly, Rational};
use proptest::prelude::*;

fn open_group(o: &OrbifoldCurve) -> CyclicFreeProduct {
    match o.orb_group() {
        OrbGroup::Open(g) => g,
        OrbGroup::Closed(_) => panic!("punctured orbifolds are open"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn orbifold_recursions(g in 0usize..3, n in 1usize..4, ms in proptest::collection::vec(2u64..8, 0..4)) {
        let o = OrbifoldCurve::new(g, n, ms.clone()).unwrap();
        let more = o.punctured();
        prop_assert_eq!(more.euler_char(), o.euler_char() - BigRational::one());
        let (a, b) = (open_group(&o), open_group(&more));
        prop_assert_eq!(b.free_rank(), a.free_rank() + 1);
        prop_assert_eq!(b.torsion(), a.torsion());
        prop_assert_eq!(b, CyclicFreeProduct::free(1).free_product(&a));
        // `n` counts the deleted points, so the free rank is 2g + n - 1
        let ab = abelianize(&a.presentation());
        prop_assert_eq!(ab.free_rank, 2 * g + n - 1);
        prop_assert_eq!(ab, AbelianInvariants::from_cyclic_orders(2 * g + n - 1, &ms));
    }

    #[test]
    fn plane_homology_specializes(degrees in proptest::collection::vec(1u64..9, 1..5)) {
        let via_matrix = h1_from_intersections(&IntersectionData::plane(&degrees).unwrap()).unwrap();
        prop_assert_eq!(h1_p2(&degrees).unwrap(), via_matrix);
    }
}

fn monomials(d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|i| (0..=d - i).map(move |j| Monomial([i, j, d - i - j]))).collect()
}

fn form(d: u32) -> impl Strategy<Value = Poly<Rational>> {
    let ms = monomials(d);
    let n = ms.len();
    proptest::collection::vec((0..n, -5i64..=5), 1..5)
        .prop_map(move |ts| Poly::from_terms(ts.into_iter().map(|(i, c)| (ms[i], rat(c, 1)))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn pencil_and_point() -> impl Strategy<Value = (Pencil<Rational>, ProjPoint)> {
    (1u32..4)
        .prop_flat_map(|d| (form(d), form(d), -6i64..=6, 0i64..=3))
        .prop_filter_map("a pencil", |(a, b, x, y)| {
            let pencil = Pencil::new(a, b).ok()?;
            let t = ProjPoint::new(rat(x, 1), rat(y, 1))?;
            Some((pencil, t))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fiber_degree_and_multiplicity((pencil, t) in pencil_and_point()) {
        let f = pencil.fiber(&t).unwrap();
        prop_assert_eq!(f.equation.degree(), Some(pencil.degree()));
        prop_assert_eq!(f.degree, pencil.degree());
        for (_, e) in &f.decomposition.factors {
            prop_assert_eq!(e % f.multiplicity, 0);
        }
    }
}

#[test]
fn special_fibers_of_corpus_pencils() {
    for c in corpus_cases() {
        let Source::Generators { f_p, f_q, p, q } = &c.source else { continue };
        if f_p.contains('u') || f_q.contains('u') {
            continue;
        }
        let pencil = pencil_from_pq(parse_poly(f_p).unwrap(), parse_poly(f_q).unwrap(), *p, *q).unwrap();
        let at_zero = pencil.fiber(&ProjPoint::zero()).unwrap().multiplicity;
        let at_inf = pencil.fiber(&ProjPoint::infinity()).unwrap().multiplicity;
        assert_eq!(at_zero % q, 0, "{}", c.id);
        assert_eq!(at_inf % p, 0, "{}", c.id);
        // every corpus generator is squarefree
        assert_eq!((at_zero, at_inf), (*q, *p), "{}", c.id);
        assert!(pencil.detect_multiple_fibers(0, 8).unwrap().len() <= 2, "{}", c.id);
    }
}

fn c_pq(p: u32, q: u32) -> Pencil<Rational> {
    let f_p = parse_poly(&format!("x^{p} + y^{p}")).unwrap();
    let f_q = parse_poly(&format!("y^{q} + z^{q}")).unwrap();
    pencil_from_pq(f_p, f_q, p, q).unwrap()
}

#[test]
fn each_added_fiber_adds_one_free_factor() {
    for (p, q) in [(2, 3), (3, 4), (2, 5)] {
        for seed in 0..3 {
            let (_, trace) = derive(&Scenario::new(c_pq(p, q)).with_sampled(4), seed).unwrap();
            let mut prev: Option<&CyclicFreeProduct> = None;
            for step in &trace.steps {
                if step.rule == "R-ADD" {
                    let before = prev.expect("R-ADD follows a base step");
                    assert_eq!(step.group.free_rank(), before.free_rank() + 1);
                    assert_eq!(step.group.torsion(), before.torsion());
                }
                prev = Some(&step.group);
            }
            assert_eq!(trace.final_group().unwrap(), &CyclicFreeProduct::new(3, [p as u64, q as u64]));
        }
    }
}

fn status_floor(v: Verdict) -> Option<ClaimStatus> {
    match v {
        Verdict::Failed => None,
        Verdict::Asserted => Some(ClaimStatus::Conditional),
        Verdict::CertifiedProbabilistic => Some(ClaimStatus::CertifiedProbabilistic),
        Verdict::Certified => Some(ClaimStatus::Certified),
    }
}

/// Every scenario the suite knows: the corpus plus mixed sampled and asserted fibers.
fn scenarios() -> Vec<Scenario<Rational>> {
    let mut out: Vec<Scenario<Rational>> =
        corpus_cases().iter().filter(|c| c.id != "table1-family7").map(|c| scenario(c).unwrap()).collect();
    for k in 0..3 {
        out.push(Scenario::new(c_pq(2, 3)).with_asserted(ProjPoint::affine(rat(-1 - k, 1))).with_sampled(k as usize));
        out.push(Scenario::new(c_pq(3, 5)).with_sampled(k as usize + 1));
    }
    let conic = Pencil::new(parse_poly("y*z - x^2").unwrap(), parse_poly("z^2").unwrap()).unwrap();
    out.push(Scenario::new(conic.clone()).with_asserted(ProjPoint::affine(rat(1, 1))));
    out.push(Scenario::new(conic).with_asserted(ProjPoint::zero()));
    out
}

#[test]
fn soundness_gate_and_coherence() {
    for (i, sc) in scenarios().iter().enumerate() {
        for seed in [0, 7] {
            match derive(sc, seed) {
                Ok((claim, trace)) => {
                    let weakest = trace.steps.iter().flat_map(|s| &s.hypotheses).map(|h| h.verdict).min().unwrap();
                    assert!(weakest != Verdict::Failed, "scenario {i}");
                    // never stronger than the weakest hypothesis
                    assert!(claim.status <= status_floor(weakest).unwrap(), "scenario {i}");
                    if claim.status == ClaimStatus::Certified {
                        assert_eq!(weakest, Verdict::Certified, "scenario {i}");
                    }
                    if claim.status >= ClaimStatus::CertifiedProbabilistic {
                        assert_eq!(claim.group.abelianization(), h1_p2(&claim.component_degrees).unwrap(), "scenario {i}");
                    }
                }
                Err(DeriveError::HypothesisFailed { trace, .. }) => {
                    assert!(trace.steps.iter().flat_map(|s| &s.hypotheses).any(|h| h.verdict == Verdict::Failed));
                }
                Err(e) => panic!("scenario {i}: {e}"),
            }
        }
    }
}

#[test]
fn base_rule_agrees_with_lattice_reduction() {
    for c in corpus_cases() {
        let Source::Generators { p, q, .. } = &c.source else { continue };
        if c.id == "table1-family7" {
            continue;
        }
        let sc: Scenario<Rational> = scenario(&c).unwrap();
        let exps = |t: ProjPoint| -> Vec<u32> {
            sc.pencil.fiber(&t).unwrap().decomposition.factors.iter().map(|(_, e)| *e).collect()
        };
        let mut pairs: Vec<(i64, i64)> = exps(ProjPoint::infinity()).iter().map(|&e| ((e / p) as i64, 0)).collect();
        pairs.extend(exps(ProjPoint::zero()).iter().map(|&e| (0, (e / q) as i64)));
        let lattice = reduce_presn0(*p as i64, *q as i64, &pairs).unwrap();
        let base_ok = match derive(&sc, 0) {
            Ok(_) => true,
            Err(DeriveError::HypothesisFailed { rule, .. }) => rule != "R-BASE",
            Err(e) => panic!("{}: {e}", c.id),
        };
        assert_eq!(base_ok, lattice.is_pq, "{}", c.id);
    }
}
