//! Lannes's T-functor: dimensions of T_V M for presented modules through
//! Brown–Gitler duality, the product decomposition of T_V CH*_G over
//! Rep(V, G), and the comparison map ℓ.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::chow::{elem_abelian_ring, ChowRing, RingMap};
use crate::error::{Error, Result};
use crate::fp::{FpMatrix, Prime};
use crate::groups::{rep_classes, AbelianGroup, FiniteGroup, GroupData, HomClass};
use crate::poly::{monomials_of_degree, Poly};
use crate::unstable::{brown_gitler, hom_space, FiniteModule, FinitelyPresentedModule};

/// Largest presentation degree accepted by `tv_dim_fp`.
pub const TV_CUTOFF: usize = 64;

type TargetKey = (u32, usize, usize, usize);

fn target_cache() -> &'static Mutex<HashMap<TargetKey, Arc<FiniteModule>>> {
    static CACHE: OnceLock<Mutex<HashMap<TargetKey, Arc<FiniteModule>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// CH*_V ⊗ J̃(k) through degree `top`.
fn hom_target(p: Prime, r: usize, k: usize, top: usize) -> Result<Arc<FiniteModule>> {
    let key = (p.value(), r, k, top);
    if let Some(m) = target_cache().lock().expect("cache lock").get(&key) {
        return Ok(m.clone());
    }
    let ring = elem_abelian_ring(r, p).to_module(top)?;
    let bg = brown_gitler(k, top, p).module;
    let m = Arc::new(ring.tensor(&bg)?.window_to(top + 1));
    target_cache().lock().expect("cache lock").insert(key, m.clone());
    Ok(m)
}

/// dim (T_V M)^k = dim Hom(M, CH*_V ⊗ J̃(k)) with V of rank r.
pub fn tv_dim_fp(m: &FinitelyPresentedModule, r: usize, k: usize) -> Result<usize> {
    let Some(w) = m.presentation_degree() else {
        return Ok(0);
    };
    if w > TV_CUTOFF {
        return Err(Error::CutoffExceeded {
            degree: w,
            cutoff: TV_CUTOFF,
        });
    }
    let target = hom_target(m.prime(), r, k, w)?;
    Ok(hom_space(m, &target)?.dim())
}

/// Degreewise dimensions of T_V M.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TvDimensionTable {
    pub module: String,
    pub rank: usize,
    pub cutoff: usize,
    pub dims: BTreeMap<usize, usize>,
}

impl TvDimensionTable {
    pub fn get(&self, k: usize) -> Option<usize> {
        self.dims.get(&k).copied()
    }
}

/// `tv_dim_fp` for all k <= cutoff, computed in parallel.
pub fn tv_table(m: &FinitelyPresentedModule, id: &str, r: usize, cutoff: usize) -> Result<TvDimensionTable> {
    let dims = (0..=cutoff)
        .into_par_iter()
        .map(|k| tv_dim_fp(m, r, k).map(|d| (k, d)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TvDimensionTable {
        module: id.to_string(),
        rank: r,
        cutoff,
        dims: dims.into_iter().collect(),
    })
}

/// One factor CH*_{C_G(ρ)} of T_V CH*_G.
#[derive(Clone, Debug)]
pub struct TvComponent {
    pub class: HomClass,
    pub centralizer: Vec<usize>,
    pub ring: ChowRing,
    /// The ℓ̃-component CH*_G -> CH*_{C_G(ρ)} ⊗ CH*_V, when both sides are
    /// polynomial rings with known coordinates.
    pub map: Option<RingMap>,
}

#[derive(Clone, Debug)]
pub struct TvStructural {
    pub group: String,
    pub prime: Prime,
    pub rank: usize,
    pub components: Vec<TvComponent>,
}

impl TvStructural {
    pub fn dim(&self, k: usize) -> Result<usize> {
        self.components.iter().map(|c| c.ring.dim(k)).sum()
    }

    pub fn table(&self, cutoff: usize) -> Result<TvDimensionTable> {
        let dims = (0..=cutoff).map(|k| self.dim(k).map(|d| (k, d))).collect::<Result<_>>()?;
        Ok(TvDimensionTable {
            module: format!("CH*({})", self.group),
            rank: self.rank,
            cutoff,
            dims,
        })
    }
}

/// T_V CH*_G as the product of CH*_{C_G(ρ)} over Rep(V, G).
pub fn tv_structural(g: &GroupData, r: usize) -> Result<TvStructural> {
    let p = g.prime;
    let mut components = Vec::new();
    for class in rep_classes(r, &g.group, p) {
        let image = class.image(&g.group);
        let centralizer = g.group.centralizer_elements(&image);
        let what = format!("C_G(rho) for rho = {:?}", class.representative);
        let ring = g.subgroup_ring(&centralizer, &what)?;
        let map = match &g.abelian {
            Some(a) if g.abelian_p_group().is_ok() => Some(ell_tilde_component(a, r, &class.representative)?),
            _ => None,
        };
        components.push(TvComponent {
            class,
            centralizer,
            ring,
            map,
        });
    }
    Ok(TvStructural {
        group: g.name.clone(),
        prime: p,
        rank: r,
        components,
    })
}

/// Coordinates in F_p of the degree-one class (χ_j ∘ ρ)^* on the l-th basis
/// vector of V, for ρ given by element indices of `a`.
fn character_matrix(a: &AbelianGroup, rho: &[usize]) -> Vec<Vec<u32>> {
    let p = a.prime().value() as u64;
    rho.iter()
        .map(|&x| {
            let c = a.coords_of(x);
            a.orders()
                .iter()
                .zip(&c)
                .map(|(&n, &v)| ((v * p / n) % p) as u32)
                .collect()
        })
        .collect()
}

/// CH*_G -> CH*_G ⊗ CH*_V, y_j ↦ y_j ⊗ 1 + 1 ⊗ (χ_j ∘ ρ)^*, the target being
/// the polynomial ring on y_1..y_s, v_1..v_r.
fn ell_tilde_component(a: &AbelianGroup, r: usize, rho: &[usize]) -> Result<RingMap> {
    let p = a.prime();
    let s = a.orders().len();
    let source = elem_abelian_ring(s, p);
    let target = elem_abelian_ring(s + r, p);
    let chi = character_matrix(a, rho);
    let images = (0..s)
        .map(|j| {
            let mut f = Poly::var(s + r, j);
            for (l, row) in chi.iter().enumerate() {
                f = f.add(&Poly::var(s + r, s + l).scale(row[j], p), p);
            }
            f
        })
        .collect();
    RingMap::new(source, target, images)
}

/// What `ell_check` establishes in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllDegreeReport {
    pub degree: usize,
    /// dim of ∏_ρ CH^k_G
    pub codomain_dim: usize,
    /// dim (T_V CH*_G)^k from the product decomposition
    pub domain_dim: usize,
    /// rank of the contracted components of ℓ̃, a lower bound for rank ℓ^k
    pub rank: usize,
    pub surjective: bool,
    pub injective: bool,
}

/// Degreewise check of ℓ: T_V CH*_G -> ∏_ρ CH*_G for an abelian p-group.
///
/// For each v-monomial u of degree d - k, contracting ℓ̃(x) against u lands
/// in the image of ℓ^k. Spanning the codomain proves ℓ^k onto, and with
/// equal dimensions, injective.
pub fn ell_check(a: &AbelianGroup, r: usize, top: usize) -> Result<Vec<EllDegreeReport>> {
    let p = a.prime();
    let q = p.value() as usize;
    let g = GroupData::from_abelian(a.clone());
    let tv = tv_structural(&g, r)?;
    let s = a.orders().len();
    let ys = vec![1usize; s];
    let vs = vec![1usize; r];
    let maps: Vec<&RingMap> = tv.components.iter().map(|c| c.map.as_ref().expect("abelian p-group")).collect();
    (0..=top)
        .into_par_iter()
        .map(|k| {
            let ybasis = monomials_of_degree(&ys, k);
            let yindex: HashMap<&Vec<u32>, usize> = ybasis.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let codomain_dim = ybasis.len() * maps.len();
            // v-degrees that are multiples of p^t > k keep the binomial
            // coefficients equal to one, and the exponents up to (p-1)rs
            // separate all functions of ρ
            let mut pt = 1;
            while pt <= k {
                pt *= q;
            }
            let mut columns: Vec<Vec<u32>> = Vec::new();
            let mut rank = 0;
            for step in 0..=(q - 1) * r * s {
                let vdeg = step * pt;
                let vbasis = monomials_of_degree(&vs, vdeg);
                for x in monomials_of_degree(&ys, k + vdeg) {
                    let images: Vec<Poly> = maps
                        .iter()
                        .map(|m| m.apply(&Poly::monomial(x.clone(), 1)))
                        .collect::<Result<_>>()?;
                    for u in &vbasis {
                        let mut col = vec![0u32; codomain_dim];
                        for (c, f) in images.iter().enumerate() {
                            for (mono, coeff) in f.terms() {
                                if mono[s..] == u[..] {
                                    let i = yindex[&mono[..s].to_vec()];
                                    col[c * ybasis.len() + i] = coeff;
                                }
                            }
                        }
                        columns.push(col);
                    }
                }
                rank = FpMatrix::from_columns(p, codomain_dim, &columns).rank();
                if rank == codomain_dim {
                    break;
                }
            }
            let domain_dim = tv.dim(k)?;
            let surjective = rank == codomain_dim;
            Ok(EllDegreeReport {
                degree: k,
                codomain_dim,
                domain_dim,
                rank,
                surjective,
                injective: surjective && domain_dim == codomain_dim,
            })
        })
        .collect()
}

/// The tensor product of two bounded presented modules, presented again.
pub fn tensor_presented(m: &FinitelyPresentedModule, n: &FinitelyPresentedModule) -> Result<FinitelyPresentedModule> {
    let a = bounded_compile(m)?;
    let b = bounded_compile(n)?;
    let t = a.tensor(&b)?;
    // relations through p·top pin the module down (see `compile_bounded`)
    let w = m.prime().value() as usize * t.top().unwrap_or(0);
    crate::unstable::presentation(&t.window_to(w + 1), w)
}

/// Compiles a module proved to vanish above some degree.
pub fn bounded_compile(m: &FinitelyPresentedModule) -> Result<FiniteModule> {
    m.bounded()
        .ok_or_else(|| Error::Unsupported("the tensor check needs modules that are provably bounded".into()))
}

/// Checks dim T_V(M ⊗ N)^k = Σ_i dim (T_V M)^i dim (T_V N)^{k-i} for k <= top.
pub fn tensor_convolution_check(
    m: &FinitelyPresentedModule,
    n: &FinitelyPresentedModule,
    r: usize,
    top: usize,
) -> Result<bool> {
    let mn = tensor_presented(m, n)?;
    let tm = tv_table(m, "M", r, top)?;
    let tn = tv_table(n, "N", r, top)?;
    let tmn = tv_table(&mn, "M⊗N", r, top)?;
    Ok((0..=top).all(|k| {
        let conv: usize = (0..=k).map(|i| tm.dims[&i] * tn.dims[&(k - i)]).sum();
        tmn.dims[&k] == conv
    }))
}

/// Rep((Z/p)^2, G) against Rep(Z/p, C_G(ρ)) over ρ ∈ Rep(Z/p, G): the two
/// ways of computing T_{(Z/p)^2} CH*_G must give the same multiset of
/// centralizer orders. Returns (direct, iterated), both sorted.
pub fn iterativity(g: &FiniteGroup, p: Prime) -> (Vec<usize>, Vec<usize>) {
    let mut direct: Vec<usize> = rep_classes(2, g, p)
        .iter()
        .map(|c| g.centralizer_elements(&c.representative).len())
        .collect();
    let mut iterated = Vec::new();
    for c in rep_classes(1, g, p) {
        let cent = g.centralizer(&c.representative);
        for d in rep_classes(1, &cent.group, p) {
            iterated.push(cent.group.centralizer_elements(&d.representative).len());
        }
    }
    direct.sort_unstable();
    iterated.sort_unstable();
    (direct, iterated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powers::Word;
    use crate::unstable::FpGenerator;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn points_are_fixed() {
        for q in [2, 3] {
            for d in 0..4 {
                let m = FinitelyPresentedModule::point(p(q), d);
                for r in 0..3 {
                    for k in 0..5 {
                        assert_eq!(tv_dim_fp(&m, r, k).unwrap(), (k == d) as usize, "p={q} d={d} r={r} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn free_on_degree_one() {
        let m = FinitelyPresentedModule::free(p(2), 1);
        assert_eq!(tv_dim_fp(&m, 1, 0).unwrap(), 1);
        assert_eq!(tv_dim_fp(&FinitelyPresentedModule::zero(p(2)), 1, 3).unwrap(), 0);
    }

    #[test]
    fn structural_cyclic() {
        for q in [2u32, 3] {
            let a = AbelianGroup::new(p(q), vec![q as u64]).unwrap();
            let tv = tv_structural(&GroupData::from_abelian(a.clone()), 1).unwrap();
            assert_eq!(tv.components.len(), q as usize);
            for k in 0..6 {
                assert_eq!(tv.dim(k).unwrap(), q as usize);
            }
            for rep in ell_check(&a, 1, 4).unwrap() {
                assert!(rep.injective && rep.surjective, "{rep:?}");
            }
        }
        let v = AbelianGroup::new(p(2), vec![2, 2]).unwrap();
        for rep in ell_check(&v, 1, 3).unwrap() {
            assert_eq!(rep.codomain_dim, 4 * (rep.degree + 1));
            assert!(rep.injective);
        }
        let triv = AbelianGroup::new(p(2), vec![]).unwrap();
        let tv = tv_structural(&GroupData::from_abelian(triv), 1).unwrap();
        assert_eq!(tv.components.len(), 1);
        assert_eq!(tv.dim(0).unwrap(), 1);
        assert_eq!(tv.dim(1).unwrap(), 0);
    }

    #[test]
    fn tensor_with_points() {
        let q = p(2);
        let one = FinitelyPresentedModule::point(q, 1);
        assert!(tensor_convolution_check(&one, &one, 1, 4).unwrap());
        let unit = FinitelyPresentedModule::point(q, 0);
        let trunc = FinitelyPresentedModule::new(
            q,
            vec![FpGenerator { name: "g".into(), degree: 1 }],
            vec![vec![(1, Word::new([2, 1]), 0)]],
        )
        .unwrap();
        assert!(tensor_convolution_check(&trunc, &unit, 2, 5).unwrap());
        assert!(tensor_convolution_check(&trunc, &trunc, 1, 5).unwrap());
    }

    #[test]
    fn iterated_centralizers() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        for q in [2, 3] {
            let (a, b) = iterativity(&s3, p(q));
            assert_eq!(a, b);
        }
    }
}
