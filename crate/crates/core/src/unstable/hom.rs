use crate::error::{Error, Result};
use crate::fp::{FpMatrix, Subspace};
use crate::unstable::module::FiniteModule;
use crate::unstable::presented::FinitelyPresentedModule;

/// A basis of Hom(M, N): each vector lists the images of the generators of
/// M, concatenated in generator order (`offsets[i]` is where generator i starts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub offsets: Vec<usize>,
    pub basis: Vec<Vec<u32>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Image of generator `g` under the `i`-th basis homomorphism.
    pub fn image(&self, i: usize, g: usize) -> &[u32] {
        &self.basis[i][self.offsets[g]..self.offsets[g + 1]]
    }
}

/// The matrix sending an assignment of generator images to the values of
/// all relations, stacked in relation order.
pub fn relation_evaluation(m: &FinitelyPresentedModule, n: &FiniteModule) -> Result<(Vec<usize>, FpMatrix)> {
    let p = m.prime();
    if p != n.prime() {
        return Err(Error::validation("prime", "modules over different primes"));
    }
    let unknown = |d: usize| Error::CutoffExceeded {
        degree: d,
        cutoff: n.window().saturating_sub(1),
    };
    let mut offsets = vec![0];
    for g in m.generators() {
        let dim = n.dim(g.degree).ok_or_else(|| unknown(g.degree))?;
        offsets.push(offsets.last().unwrap() + dim);
    }
    let cols = *offsets.last().unwrap();
    let mut rows = 0;
    let mut blocks = Vec::new();
    for r in m.relations() {
        let h = n.dim(r.degree).ok_or_else(|| unknown(r.degree))?;
        let mut block = FpMatrix::zeros(p, h, cols);
        for t in &r.terms {
            let gd = m.generators()[t.gen].degree;
            let w = n.word_matrix(&t.op, gd).ok_or_else(|| unknown(r.degree))?;
            let mut cur = FpMatrix::zeros(p, h, cols);
            cur.set_block(0, offsets[t.gen], &w.scale(t.coeff));
            block = block.add(&cur)?;
        }
        rows += h;
        blocks.push(block);
    }
    let mut out = FpMatrix::zeros(p, rows, cols);
    let mut r0 = 0;
    for b in blocks {
        out.set_block(r0, 0, &b);
        r0 += b.rows();
    }
    Ok((offsets, out))
}

/// Hom_U(M, N) for a presented M and a module N known in all degrees where
/// M has generators or relations.
pub fn hom_space(m: &FinitelyPresentedModule, n: &FiniteModule) -> Result<HomSpace> {
    let (offsets, eval) = relation_evaluation(m, n)?;
    let basis = Subspace::from_vectors(m.prime(), eval.cols(), eval.kernel_basis())
        .basis()
        .to_vec();
    Ok(HomSpace { offsets, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Prime;
    use crate::powers::Word;
    use crate::unstable::free::brown_gitler;
    use crate::unstable::presented::FpGenerator;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn free_hom_is_the_degree_piece() {
        let q = p(2);
        let n = brown_gitler(4, 4, q).module;
        for d in 0..=4 {
            let h = hom_space(&FinitelyPresentedModule::free(q, d), &n).unwrap();
            assert_eq!(h.dim(), n.dim(d).unwrap());
        }
    }

    #[test]
    fn point_into_brown_gitler() {
        for q in [2, 3] {
            for d in 0..4 {
                for k in 0..5 {
                    let h = hom_space(&FinitelyPresentedModule::point(p(q), d), &brown_gitler(k, k, p(q)).module).unwrap();
                    assert_eq!(h.dim(), (d == k) as usize, "p={q} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn killed_generator_has_no_room() {
        let q = p(2);
        let m = FinitelyPresentedModule::new(
            q,
            vec![FpGenerator { name: "g".into(), degree: 1 }],
            vec![vec![(1, Word::single(1), 0)]],
        )
        .unwrap();
        let ring = crate::chow::elem_abelian_ring(1, q).to_module(4).unwrap();
        assert_eq!(hom_space(&m, &ring).unwrap().dim(), 0);
    }
}
