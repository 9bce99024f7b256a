use serde::Serialize;

use crate::fp::{FpMatrix, Subspace};
use crate::unstable::module::FiniteModule;
use crate::unstable::presented::FinitelyPresentedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NilVerdict {
    Exact,
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotenceDegree {
    pub n: usize,
    pub verdict: NilVerdict,
}

/// Bounds on the set of x in degree e that are killed by iterating
/// Π_j x = P^{deg x - j} x: `certain` is proved to die inside the known
/// window, `possible` contains every element that might die.
#[derive(Clone, Debug)]
pub struct PiBounds {
    pub certain: Subspace,
    pub possible: Subspace,
}

impl PiBounds {
    pub fn resolved(&self) -> bool {
        self.certain.dim() == self.possible.dim()
    }
}

fn kernel(m: &FpMatrix) -> Subspace {
    Subspace::from_vectors(m.prime(), m.cols(), m.kernel_basis())
}

/// Iterates Π_j on all of degree `e` while the degrees stay known.
pub fn pi_bounds(m: &FiniteModule, e: usize, j: usize) -> PiBounds {
    let p = m.prime();
    let n = m.dim(e).unwrap_or(0);
    let all = Subspace::full(p, n);
    if n == 0 || j > e {
        return PiBounds {
            certain: all.clone(),
            possible: all,
        };
    }
    if j == e {
        let zero = Subspace::zero(p, n);
        return PiBounds {
            certain: zero.clone(),
            possible: zero,
        };
    }
    let q = p.value() as usize;
    let mut cur = FpMatrix::identity(p, n);
    let mut deg = e;
    loop {
        let a = (deg - j) as u32;
        let next = q * deg - (q - 1) * j;
        let Some(step) = m.act(a, deg) else {
            let certain = kernel(&cur);
            let possible = match (j, m.frobenius_detector(e)) {
                (0, Some(det)) => kernel(det),
                _ => all,
            };
            return PiBounds { certain, possible };
        };
        cur = step.mul(&cur).expect("shapes compose");
        deg = next;
        if cur.is_zero() {
            return PiBounds {
                certain: all.clone(),
                possible: all,
            };
        }
    }
}

/// The largest n <= cutoff such that every Π_j with j < n is nilpotent on
/// all classes of degree <= cutoff, as far as the known window decides.
pub fn nilpotence_degree(m: &FiniteModule, cutoff: usize) -> NilpotenceDegree {
    let degrees: Vec<usize> = (0..=cutoff).filter(|&e| m.dim(e).unwrap_or(0) > 0).collect();
    for j in 0..cutoff {
        let mut unresolved = false;
        for &e in &degrees {
            let b = pi_bounds(m, e, j);
            if b.possible.dim() < m.dim(e).unwrap_or(0) {
                return NilpotenceDegree {
                    n: j,
                    verdict: NilVerdict::Exact,
                };
            }
            if !b.resolved() {
                unresolved = true;
            }
        }
        if unresolved {
            return NilpotenceDegree {
                n: j,
                verdict: NilVerdict::AtLeast,
            };
        }
    }
    NilpotenceDegree {
        n: cutoff,
        verdict: if degrees.contains(&cutoff) {
            NilVerdict::Exact
        } else {
            NilVerdict::AtLeast
        },
    }
}

/// Presented variant: uses the whole module when it is bounded, otherwise
/// compiles through degree `p * cutoff`.
pub fn nilpotence_degree_fp(m: &FinitelyPresentedModule, cutoff: usize) -> NilpotenceDegree {
    let compiled = m
        .bounded()
        .unwrap_or_else(|| m.compile(m.prime().value() as usize * cutoff.max(1)));
    nilpotence_degree(&compiled, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Prime;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn points() {
        for q in [2, 3, 5] {
            for d in 0..6 {
                let r = nilpotence_degree(&FiniteModule::point(p(q), d), 8);
                assert_eq!(r, NilpotenceDegree { n: d, verdict: NilVerdict::Exact });
                let r = nilpotence_degree_fp(&FinitelyPresentedModule::point(p(q), d), 8);
                assert_eq!(r, NilpotenceDegree { n: d, verdict: NilVerdict::Exact });
            }
        }
    }

    #[test]
    fn polynomial_truncation() {
        for q in [2, 3] {
            let ring = crate::chow::elem_abelian_ring(1, p(q)).to_module(8).unwrap();
            assert_eq!(nilpotence_degree(&ring, 8), NilpotenceDegree { n: 0, verdict: NilVerdict::Exact });
        }
    }

    #[test]
    fn suspensions_are_nilpotent() {
        // Σ^d of a module with nontrivial action; P^a on σx equals σ P^a x
        let q = p(2);
        let base = FinitelyPresentedModule::free(q, 1).compile_bounded(0).ok();
        assert!(base.is_none());
        let m = crate::unstable::presented::FinitelyPresentedModule::new(
            q,
            vec![crate::unstable::presented::FpGenerator { name: "x".into(), degree: 1 }],
            vec![vec![(1, crate::powers::Word::new([2, 1]), 0)]],
        )
        .unwrap()
        .compile_bounded(2)
        .unwrap();
        for d in 0..4 {
            let r = nilpotence_degree(&m.suspend(d), 10);
            assert!(r.n >= d, "d={d} got {r:?}");
        }
    }
}
