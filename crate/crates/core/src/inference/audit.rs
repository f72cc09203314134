//! Necessary conditions on a claimed plane curve complement group
//! `F_r * Z_p * Z_q`.

use num::Integer;
use serde::Serialize;

use crate::fpgroups::CyclicFreeProduct;
use crate::homology::h1_p2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCheck {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub degrees: Vec<u64>,
    pub claimed: CyclicFreeProduct,
    pub checks: Vec<AuditCheck>,
    pub passed: bool,
}

impl AuditReport {
    pub fn failed(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(id: &str, passed: bool, detail: impl Into<String>) -> AuditCheck {
    AuditCheck { id: id.to_string(), passed, detail: detail.into() }
}

/// Checks a claim `π₁(P² ∖ D) = claimed` for a curve `D` with irreducible
/// components of the given degrees.
pub fn audit_claim(degrees: &[u64], claimed: &CyclicFreeProduct) -> AuditReport {
    let mut checks = Vec::new();
    let t = claimed.torsion();
    checks.push(check("torsion-count", t.len() <= 2, format!("{} finite cyclic factor(s); a plane complement has at most two", t.len())));
    let coprime = t.iter().enumerate().all(|(i, a)| t[i + 1..].iter().all(|b| a.gcd(b) == 1));
    checks.push(check("coprime-torsion", coprime, format!("torsion orders {t:?}")));
    checks.push(check(
        "component-count",
        degrees.len() == claimed.free_rank() + 1,
        format!("{} components, free rank {}", degrees.len(), claimed.free_rank()),
    ));
    match h1_p2(degrees) {
        Ok(h) => {
            let a = claimed.abelianization();
            checks.push(check("homology", h == a, format!("H₁ from degrees is {h}, claimed group abelianizes to {a}")));
        }
        Err(e) => checks.push(check("homology", false, e.to_string())),
    }
    checks.push(degree_pattern(degrees, t));
    let passed = checks.iter().all(|c| c.passed);
    AuditReport { degrees: degrees.to_vec(), claimed: claimed.clone(), checks, passed }
}

/// The admissible map is `[f_{d₂}^{d₁} : f_{d₁}^{d₂}]` with coprime `d₁ ≥ d₂`.
/// With torsion `p > q > 1` every component is a typical fiber of degree `pq`;
/// with `p > q = 1` one component is `V(f_p)` of degree `p` and the rest have
/// degree `p·d₂`; with no torsion the components have degree `d₁d₂`, except
/// possibly one of degree `d₁` and one of degree `d₂`.
fn degree_pattern(degrees: &[u64], torsion: &[u64]) -> AuditCheck {
    const ID: &str = "degree-pattern";
    if degrees.is_empty() || degrees.contains(&0) {
        return check(ID, false, "degrees must be positive");
    }
    let mut t = torsion.to_vec();
    t.sort_unstable_by(|a, b| b.cmp(a));
    match t.as_slice() {
        [p, q] => {
            let ok = degrees.iter().all(|&d| d == p * q);
            check(ID, ok, format!("with Z{p}*Z{q} every component must have degree {}", p * q))
        }
        [p] => {
            let p = *p;
            let Some(i) = degrees.iter().position(|&d| d == p) else {
                return check(ID, false, format!("with one torsion factor Z{p} one component must have degree {p}"));
            };
            let rest: Vec<u64> = degrees.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &d)| d).collect();
            let ok = match rest.first() {
                None => true,
                Some(&d) => rest.iter().all(|&e| e == d) && d % p == 0 && (d / p).gcd(&p) == 1,
            };
            check(ID, ok, format!("one component of degree {p}, the others of a common degree p·d₂ with gcd(d₂, {p}) = 1"))
        }
        [] => {
            let max = *degrees.iter().max().expect("nonempty");
            let ok = (1..=max).any(|d1| {
                (1..=d1).filter(|d2| d1.gcd(d2) == 1).any(|d2| {
                    let generic = d1 * d2;
                    let mut odd: Vec<u64> = degrees.iter().copied().filter(|&d| d != generic).collect();
                    odd.sort_unstable();
                    match odd.as_slice() {
                        [] => true,
                        [a] => *a == d1 || *a == d2,
                        [a, b] => *a == d2 && *b == d1 && d1 != d2,
                        _ => false,
                    }
                })
            });
            check(ID, ok, "components must be fibers of a pencil [f_{d₂}^{d₁} : f_{d₁}^{d₂}]")
        }
        _ => check(ID, false, "more than two torsion factors"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> CyclicFreeProduct {
        s.parse().unwrap()
    }

    #[test]
    fn zariski_sextic_passes() {
        assert!(audit_claim(&[6], &g("Z2*Z3")).passed);
        assert!(audit_claim(&[6, 6], &g("F1*Z2*Z3")).passed);
    }

    #[test]
    fn failures() {
        let r = audit_claim(&[4], &g("Z2*Z2"));
        assert!(r.failed().any(|c| c.id == "coprime-torsion"));
        let r = audit_claim(&[5, 5], &g("F1*Z2*Z3"));
        assert!(r.failed().any(|c| c.id == "degree-pattern"));
        assert!(!audit_claim(&[6, 6], &g("Z2*Z3")).passed);
    }

    #[test]
    fn one_torsion_factor() {
        assert!(audit_claim(&[2, 2, 2, 2], &g("F3*Z2")).passed);
        assert!(audit_claim(&[6, 6, 3], &g("F2*Z3")).passed);
        assert!(!audit_claim(&[6, 4], &g("F1*Z3")).passed);
    }

    #[test]
    fn free_groups() {
        assert!(audit_claim(&[3, 3, 1], &g("F2")).passed);
        assert!(audit_claim(&[1, 1, 1], &g("F2")).passed);
        assert!(audit_claim(&[6, 3, 2], &g("F2")).passed);
    }
}
