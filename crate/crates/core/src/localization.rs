//! The localization map λ_n into the equalizer over the Quillen category,
//! F-isomorphism certificates, d₀/d₁ and maximal Nil_d submodules.
//!
//! Everything here needs restriction maps between Chow rings, which are
//! available for abelian p-groups.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::chow::{restriction_map, ChowRing};
use crate::error::Result;
use crate::fp::{FpMatrix, Prime, Subspace};
use crate::groups::{elementary_abelians, AbelianGroup, GroupData, QuillenCategoryData};
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::unstable::{nilpotence_degree, pi_bounds, FiniteModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exact,
    VerifiedThroughCutoff,
    Unresolved,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Exact => "exact",
            Verdict::VerifiedThroughCutoff => "verified-through-cutoff",
            Verdict::Unresolved => "unresolved",
        })
    }
}

/// A polynomial ring on degree-one variables, truncated (when `level` is
/// set) to monomials of degree < level in the variables `trunc`.
#[derive(Clone, Debug)]
struct Space {
    nvars: usize,
    trunc: Vec<usize>,
    level: Option<usize>,
}

impl Space {
    fn full(nvars: usize) -> Self {
        Space {
            nvars,
            trunc: Vec::new(),
            level: None,
        }
    }

    fn keeps(&self, m: &[u32]) -> bool {
        match self.level {
            None => true,
            Some(n) => self.trunc.iter().map(|&i| m[i] as usize).sum::<usize>() < n,
        }
    }

    fn basis(&self, d: usize) -> Vec<Monomial> {
        monomials_of_degree(&vec![1; self.nvars], d)
            .into_iter()
            .filter(|m| self.keeps(m))
            .collect()
    }

    fn dim(&self, d: usize) -> usize {
        self.basis(d).len()
    }
}

/// Degree-d matrix of the algebra map x_i ↦ images[i], followed by the
/// truncation of the target.
fn map_matrix(p: Prime, src: &Space, tgt: &Space, images: &[Poly], d: usize) -> FpMatrix {
    let tb = tgt.basis(d);
    let index: HashMap<&Monomial, usize> = tb.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let cols: Vec<Vec<u32>> = src
        .basis(d)
        .into_iter()
        .map(|m| {
            let f = Poly::monomial(m, 1).substitute(images, tgt.nvars, p);
            let mut v = vec![0u32; tb.len()];
            for (mono, c) in f.terms() {
                if tgt.keeps(mono) {
                    v[index[mono]] = c;
                }
            }
            v
        })
        .collect();
    FpMatrix::from_columns(p, tb.len(), &cols)
}

/// Re-embeds a polynomial into `nvars` variables starting at `offset`.
fn shifted(f: &Poly, nvars: usize, offset: usize, p: Prime) -> Poly {
    let mut out = Poly::zero(nvars);
    for (m, c) in f.terms() {
        let mut mono = vec![0u32; nvars];
        mono[offset..offset + m.len()].copy_from_slice(m);
        out.add_term(p, mono, c);
    }
    out
}

/// Restrictions CH*_G -> CH*_E for every object of the Quillen category and
/// CH*_{E2} -> CH*_{E1} for every morphism.
struct QuillenRings {
    p: Prime,
    rank: usize,
    category: QuillenCategoryData,
    /// images of y_1..y_s in CH*_E
    to_object: Vec<Vec<Poly>>,
    /// images of the generators of CH*_{E2} in CH*_{E1}
    along: Vec<Vec<Poly>>,
}

impl QuillenRings {
    fn new(a: &AbelianGroup) -> Result<Self> {
        let p = a.prime();
        let g = a.to_finite_group();
        let category = elementary_abelians(&g, p);
        let to_object = category
            .objects
            .iter()
            .map(|e| {
                let images: Vec<Vec<u64>> = e.basis.iter().map(|&b| a.coords_of(b)).collect();
                let h = AbelianGroup::elementary(p, e.rank);
                Ok(restriction_map(&h, a, &images)?.images)
            })
            .collect::<Result<Vec<_>>>()?;
        let along = category
            .morphisms
            .iter()
            .map(|m| {
                let e1 = category.objects[m.source].rank;
                let e2 = category.objects[m.target].rank;
                (0..e2)
                    .map(|k| {
                        let mut f = Poly::zero(e1);
                        for (l, row) in m.map.iter().enumerate() {
                            f = f.add(&Poly::var(e1, l).scale(row[k], p), p);
                        }
                        f
                    })
                    .collect()
            })
            .collect();
        Ok(QuillenRings {
            p,
            rank: a.orders().len(),
            category,
            to_object,
            along,
        })
    }

    fn object_rank(&self, i: usize) -> usize {
        self.category.objects[i].rank
    }
}

/// One degree of the equalizer diagram.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramDegree {
    pub degree: usize,
    pub source_dim: usize,
    pub middle_dims: Vec<usize>,
    pub right_dims: Vec<usize>,
    #[serde(skip)]
    pub lambda: FpMatrix,
    #[serde(skip)]
    pub leg1: FpMatrix,
    #[serde(skip)]
    pub leg2: FpMatrix,
    pub lambda_rank: usize,
    pub equalizer_dim: usize,
    pub legs_agree: bool,
}

impl DiagramDegree {
    pub fn injective(&self) -> bool {
        self.lambda_rank == self.source_dim
    }

    /// λ_n maps onto the equalizer (its image always lies inside).
    pub fn onto_equalizer(&self) -> bool {
        self.legs_agree && self.lambda_rank == self.equalizer_dim
    }
}

/// CH*_G -> ∏_E CH*_E ⊗ CH^{<n}_G ⇉ ∏_{E1 -> E2} CH*_{E1} ⊗ (CH*_{E1} ⊗ CH*_G)^{<n}
/// through degree `cutoff`, products indexed by the Quillen category
/// (identity morphisms included).
#[derive(Clone, Debug, Serialize)]
pub struct EqualizerDiagram {
    pub group: String,
    pub level: usize,
    pub cutoff: usize,
    pub objects: Vec<Vec<usize>>,
    pub morphisms: Vec<(usize, usize)>,
    pub degrees: Vec<DiagramDegree>,
}

impl EqualizerDiagram {
    pub fn legs_agree(&self) -> bool {
        self.degrees.iter().all(|d| d.legs_agree)
    }

    pub fn injective(&self) -> bool {
        self.degrees.iter().all(|d| d.injective())
    }

    pub fn onto_equalizer(&self) -> bool {
        self.degrees.iter().all(|d| d.onto_equalizer())
    }
}

/// Builds λ_n and both legs.
pub fn build_lambda(g: &GroupData, n: usize, cutoff: usize) -> Result<EqualizerDiagram> {
    let a = g.abelian_p_group()?;
    let qr = QuillenRings::new(a)?;
    Ok(build_lambda_with(&qr, &g.name, n, cutoff))
}

fn build_lambda_with(qr: &QuillenRings, name: &str, n: usize, cutoff: usize) -> EqualizerDiagram {
    let p = qr.p;
    let s = qr.rank;
    let source = Space::full(s);
    let objs = &qr.category.objects;
    let middles: Vec<Space> = objs
        .iter()
        .map(|e| Space {
            nvars: e.rank + s,
            trunc: (e.rank..e.rank + s).collect(),
            level: Some(n),
        })
        .collect();
    let lambda_images: Vec<Vec<Poly>> = objs
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let nv = e.rank + s;
            (0..s)
                .map(|j| shifted(&qr.to_object[i][j], nv, 0, p).add(&Poly::var(nv, e.rank + j), p))
                .collect()
        })
        .collect();
    let morphisms = &qr.category.morphisms;
    let rights: Vec<Space> = morphisms
        .iter()
        .map(|m| {
            let e1 = qr.object_rank(m.source);
            Space {
                nvars: 2 * e1 + s,
                trunc: (e1..2 * e1 + s).collect(),
                level: Some(n),
            }
        })
        .collect();
    // φ1 on the E1 factor: u ↦ u ⊗ 1 ⊗ 1 + 1 ⊗ u ⊗ 1, y ↦ 1 ⊗ 1 ⊗ y
    let phi1: Vec<Vec<Poly>> = morphisms
        .iter()
        .map(|m| {
            let e1 = qr.object_rank(m.source);
            let nv = 2 * e1 + s;
            (0..e1)
                .map(|l| Poly::var(nv, l).add(&Poly::var(nv, e1 + l), p))
                .chain((0..s).map(|j| Poly::var(nv, 2 * e1 + j)))
                .collect()
        })
        .collect();
    // φ2 on the E2 factor: ψ ↦ ψ|E1 ⊗ 1 ⊗ 1, y ↦ 1 ⊗ y|E1 ⊗ 1 + 1 ⊗ 1 ⊗ y
    let phi2: Vec<Vec<Poly>> = morphisms
        .iter()
        .enumerate()
        .map(|(mi, m)| {
            let e1 = qr.object_rank(m.source);
            let nv = 2 * e1 + s;
            qr.along[mi]
                .iter()
                .map(|f| shifted(f, nv, 0, p))
                .chain((0..s).map(|j| {
                    shifted(&qr.to_object[m.source][j], nv, e1, p).add(&Poly::var(nv, 2 * e1 + j), p)
                }))
                .collect()
        })
        .collect();

    let degrees = (0..=cutoff)
        .into_par_iter()
        .map(|d| {
            let source_dim = source.dim(d);
            let middle_dims: Vec<usize> = middles.iter().map(|m| m.dim(d)).collect();
            let right_dims: Vec<usize> = rights.iter().map(|r| r.dim(d)).collect();
            let moff = offsets(&middle_dims);
            let roff = offsets(&right_dims);
            let (mtot, rtot) = (moff[moff.len() - 1], roff[roff.len() - 1]);
            let mut lambda = FpMatrix::zeros(p, mtot, source_dim);
            for (i, mid) in middles.iter().enumerate() {
                lambda.set_block(moff[i], 0, &map_matrix(p, &source, mid, &lambda_images[i], d));
            }
            let mut leg1 = FpMatrix::zeros(p, rtot, mtot);
            let mut leg2 = FpMatrix::zeros(p, rtot, mtot);
            for (mi, m) in morphisms.iter().enumerate() {
                let b1 = map_matrix(p, &middles[m.source], &rights[mi], &phi1[mi], d);
                let b2 = map_matrix(p, &middles[m.target], &rights[mi], &phi2[mi], d);
                leg1.set_block(roff[mi], moff[m.source], &b1);
                leg2.set_block(roff[mi], moff[m.target], &b2);
            }
            let diff = leg1.sub(&leg2).expect("same shape");
            let legs_agree = diff.mul(&lambda).expect("shapes compose").is_zero();
            let equalizer_dim = mtot - diff.rank();
            DiagramDegree {
                degree: d,
                source_dim,
                middle_dims,
                right_dims,
                lambda_rank: lambda.rank(),
                lambda,
                leg1,
                leg2,
                equalizer_dim,
                legs_agree,
            }
        })
        .collect();
    EqualizerDiagram {
        group: name.to_string(),
        level: n,
        cutoff,
        objects: objs.iter().map(|e| e.elements.clone()).collect(),
        morphisms: morphisms.iter().map(|m| (m.source, m.target)).collect(),
        degrees,
    }
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelEntry {
    pub degree: usize,
    pub element: String,
    /// smallest m with x^{p^m} = 0, if found while p^m deg x <= cutoff
    pub nilpotent_at: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageEntry {
    pub degree: usize,
    pub element: String,
    /// smallest j with z^{p^j} in the image, if found while p^j deg z <= cutoff
    pub power: Option<u32>,
}

/// Evidence that CH*_G -> lim_E CH*_E is an F-isomorphism through the cutoff.
/// Entries are for basis elements; kernel and image conditions pass to
/// linear combinations because x ↦ x^{p^m} is additive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FIsoCertificate {
    pub group: String,
    pub cutoff: usize,
    pub kernel_report: Vec<KernelEntry>,
    pub image_report: Vec<ImageEntry>,
    pub limit_dims: Vec<usize>,
    pub verdict: Verdict,
}

impl FIsoCertificate {
    pub fn kernel_empty(&self) -> bool {
        self.kernel_report.is_empty()
    }

    pub fn image_full(&self) -> bool {
        self.image_report.iter().all(|e| e.power == Some(0))
    }
}

/// lim_E CH^d_E as a subspace of ⊕_E CH^d_E, plus the restriction matrix
/// CH^d_G -> ⊕_E CH^d_E.
struct LimitDegree {
    limit: Subspace,
    restriction: FpMatrix,
}

fn limit_degree(qr: &QuillenRings, d: usize) -> LimitDegree {
    let p = qr.p;
    let objs = &qr.category.objects;
    let spaces: Vec<Space> = objs.iter().map(|e| Space::full(e.rank)).collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.dim(d)).collect();
    let off = offsets(&dims);
    let total = off[off.len() - 1];
    let mut blocks: Vec<FpMatrix> = Vec::new();
    for (mi, m) in qr.category.morphisms.iter().enumerate() {
        let mut b = FpMatrix::zeros(p, dims[m.source], total);
        b.set_block(0, off[m.source], &FpMatrix::identity(p, dims[m.source]));
        let r = map_matrix(p, &spaces[m.target], &spaces[m.source], &qr.along[mi], d);
        let cur = b.clone();
        let mut sub = FpMatrix::zeros(p, dims[m.source], total);
        sub.set_block(0, off[m.target], &r);
        blocks.push(cur.sub(&sub).expect("same shape"));
    }
    let mut cond = FpMatrix::zeros(p, 0, total);
    for b in blocks {
        cond = cond.vstack(&b).expect("same width");
    }
    let limit = Subspace::from_vectors(p, total, cond.kernel_basis());
    let source = Space::full(qr.rank);
    let mut restriction = FpMatrix::zeros(p, total, source.dim(d));
    for (i, sp) in spaces.iter().enumerate() {
        restriction.set_block(off[i], 0, &map_matrix(p, &source, sp, &qr.to_object[i], d));
    }
    LimitDegree { limit, restriction }
}

/// Splits a vector of ⊕_E CH^d_E into per-object polynomials.
fn components(qr: &QuillenRings, d: usize, v: &[u32]) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut pos = 0;
    for e in &qr.category.objects {
        let basis = Space::full(e.rank).basis(d);
        let mut f = Poly::zero(e.rank);
        for m in basis {
            f.add_term(qr.p, m, v[pos]);
            pos += 1;
        }
        out.push(f);
    }
    out
}

fn assemble(qr: &QuillenRings, d: usize, parts: &[Poly]) -> Vec<u32> {
    let mut v = Vec::new();
    for (e, f) in qr.category.objects.iter().zip(parts) {
        for m in Space::full(e.rank).basis(d) {
            v.push(f.coefficient(&m));
        }
    }
    v
}

/// Certifies kernel nilpotence and p-power surjectivity of CH*_G -> lim_E CH*_E.
pub fn f_iso_check(g: &GroupData, cutoff: usize) -> Result<FIsoCertificate> {
    let a = g.abelian_p_group()?;
    let qr = QuillenRings::new(a)?;
    let p = qr.p;
    let q = p.value() as usize;
    let names: Vec<String> = (1..=qr.rank).map(|i| format!("y{i}")).collect();
    let limits: Vec<LimitDegree> = (0..=cutoff).into_par_iter().map(|d| limit_degree(&qr, d)).collect();
    let mut kernel_report = Vec::new();
    let mut image_report = Vec::new();
    for d in 0..=cutoff {
        let lim = &limits[d];
        let basis = Space::full(qr.rank).basis(d);
        for k in lim.restriction.kernel_basis() {
            let mut x = Poly::zero(qr.rank);
            for (m, &c) in basis.iter().zip(&k) {
                x.add_term(p, m.clone(), c);
            }
            let mut nilpotent_at = None;
            let mut m = 1u32;
            while q.pow(m) * d <= cutoff && d > 0 {
                if x.pow(q.pow(m) as u64, p).is_zero() {
                    nilpotent_at = Some(m);
                    break;
                }
                m += 1;
            }
            kernel_report.push(KernelEntry {
                degree: d,
                element: x.display(&names),
                nilpotent_at,
            });
        }
        for z in lim.limit.basis() {
            let parts = components(&qr, d, z);
            let element = parts
                .iter()
                .zip(&qr.category.objects)
                .map(|(f, e)| {
                    let n: Vec<String> = (1..=e.rank).map(|i| format!("u{i}")).collect();
                    f.display(&n)
                })
                .collect::<Vec<_>>()
                .join(" | ");
            let mut power = None;
            let mut j = 0u32;
            loop {
                let e = q.pow(j) * d;
                if e > cutoff || (j > 0 && d == 0) {
                    break;
                }
                let powered: Vec<Poly> = parts.iter().map(|f| f.pow(q.pow(j) as u64, p)).collect();
                let v = assemble(&qr, e, &powered);
                if limits[e].restriction.image_contains(&v)? {
                    power = Some(j);
                    break;
                }
                j += 1;
            }
            image_report.push(ImageEntry {
                degree: d,
                element,
                power,
            });
        }
    }
    let resolved = kernel_report.iter().all(|k| k.nilpotent_at.is_some()) && image_report.iter().all(|i| i.power.is_some());
    Ok(FIsoCertificate {
        group: g.name.clone(),
        cutoff,
        kernel_report,
        image_report,
        limit_dims: limits.iter().map(|l| l.limit.dim()).collect(),
        verdict: if resolved {
            Verdict::VerifiedThroughCutoff
        } else {
            Verdict::Unresolved
        },
    })
}

/// dim lim^d_E CH*_E for d <= cutoff, the limit routine of `f_iso_check`.
pub fn limit_dims(g: &GroupData, cutoff: usize) -> Result<Vec<usize>> {
    let qr = QuillenRings::new(g.abelian_p_group()?)?;
    Ok((0..=cutoff).map(|d| limit_degree(&qr, d).limit.dim()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Estimate {
    pub value: usize,
    pub verdict: Verdict,
}

impl std::fmt::Display for Estimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.value, self.verdict)
    }
}

fn scan(g: &GroupData, cutoff: usize, ok: impl Fn(&EqualizerDiagram) -> bool) -> Result<Estimate> {
    let qr = QuillenRings::new(g.abelian_p_group()?)?;
    // for n > cutoff the trivial subgroup's factor is the identity through the cutoff
    for n in 1..=cutoff + 1 {
        if ok(&build_lambda_with(&qr, &g.name, n, cutoff)) {
            return Ok(Estimate {
                value: n - 1,
                verdict: Verdict::VerifiedThroughCutoff,
            });
        }
    }
    Ok(Estimate {
        value: cutoff + 1,
        verdict: Verdict::Unresolved,
    })
}

/// Smallest d with λ_{d+1} injective through the cutoff.
pub fn d0_estimate(g: &GroupData, cutoff: usize) -> Result<Estimate> {
    scan(g, cutoff, |e| e.injective())
}

/// Smallest d with λ_{d+1} an isomorphism onto the equalizer through the cutoff.
pub fn d1_estimate(g: &GroupData, cutoff: usize) -> Result<Estimate> {
    scan(g, cutoff, |e| e.injective() && e.onto_equalizer())
}

/// The largest submodule contained in Nil_d, degreewise through `cutoff`.
/// `certain` is proved to lie in it, `possible` contains it.
#[derive(Clone, Debug)]
pub struct NilSubmodule {
    pub level: usize,
    pub cutoff: usize,
    pub certain: Vec<Subspace>,
    pub possible: Vec<Subspace>,
}

impl NilSubmodule {
    pub fn resolved(&self) -> bool {
        self.certain.iter().zip(&self.possible).all(|(a, b)| a.dim() == b.dim())
    }

    pub fn certain_dims(&self) -> Vec<usize> {
        self.certain.iter().map(Subspace::dim).collect()
    }

    pub fn possible_dims(&self) -> Vec<usize> {
        self.possible.iter().map(Subspace::dim).collect()
    }
}

fn largest_closed(m: &FiniteModule, mut s: Vec<Subspace>) -> Vec<Subspace> {
    let q1 = m.prime().value() as usize - 1;
    let top = s.len() - 1;
    loop {
        let mut changed = false;
        for e in (0..=top).rev() {
            for a in 1..=e as u32 {
                let t = e + a as usize * q1;
                if t > top {
                    break;
                }
                let Some(mat) = m.act(a, e) else { continue };
                let next = s[e].preimage_within(&mat, &s[t]);
                if next.dim() < s[e].dim() {
                    s[e] = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return s;
        }
    }
}

/// Greatest fixed point: the largest family of subspaces, closed under every
/// P^a landing in degrees <= cutoff, on which each Π_j with j < d dies.
pub fn max_nil_submodule(m: &FiniteModule, d: usize, cutoff: usize) -> NilSubmodule {
    let p = m.prime();
    let top = cutoff.min(m.window().saturating_sub(1));
    let mut certain = Vec::new();
    let mut possible = Vec::new();
    for e in 0..=top {
        let n = m.dim(e).unwrap_or(0);
        let mut c = Subspace::full(p, n);
        let mut q = Subspace::full(p, n);
        for j in 0..d {
            let b = pi_bounds(m, e, j);
            c = c.intersect(&b.certain);
            q = q.intersect(&b.possible);
        }
        certain.push(c);
        possible.push(q);
    }
    NilSubmodule {
        level: d,
        cutoff: top,
        certain: largest_closed(m, certain),
        possible: largest_closed(m, possible),
    }
}

/// max{d : the largest Nil_d submodule is nonzero}, scanning d <= cutoff + 1.
pub fn max_nil_level(m: &FiniteModule, cutoff: usize) -> Estimate {
    let mut certain = 0;
    let mut possible = 0;
    for d in 0..=cutoff + 1 {
        let s = max_nil_submodule(m, d, cutoff);
        let c = s.certain.iter().any(|x| !x.is_zero());
        let q = s.possible.iter().any(|x| !x.is_zero());
        if c {
            certain = d;
        }
        if q {
            possible = d;
        } else {
            break;
        }
    }
    Estimate {
        value: certain,
        verdict: if certain == possible {
            Verdict::VerifiedThroughCutoff
        } else {
            Verdict::Unresolved
        },
    }
}

/// CH*_G as a module with enough room above the cutoff for the Π-chains.
pub fn ring_window(ring: &ChowRing, cutoff: usize) -> Result<FiniteModule> {
    ring.to_module(ring.prime().value() as usize * cutoff.max(1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub group: String,
    pub faithful_degree: usize,
    pub cutoff: usize,
    pub d0: Estimate,
    pub d1: Estimate,
    pub d0_bound: usize,
    pub d1_bound: usize,
    pub nil_level: Estimate,
    pub d0_within_bound: bool,
    pub d1_within_bound: bool,
    pub totaro_identity: bool,
    pub verdict: Verdict,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.d0_within_bound && self.d1_within_bound && self.totaro_identity
    }
}

/// d₀ <= n(n-1)/2, d₁ <= n(n-1), and d₀ = max{d : M_d ≠ 0}.
pub fn bounds_report(g: &GroupData, faithful_degree: usize, cutoff: usize) -> Result<BoundsReport> {
    let d0 = d0_estimate(g, cutoff)?;
    let d1 = d1_estimate(g, cutoff)?;
    let nil_level = max_nil_level(&ring_window(&g.ring()?, cutoff)?, cutoff);
    let n = faithful_degree;
    let d0_bound = n * n.saturating_sub(1) / 2;
    let d1_bound = n * n.saturating_sub(1);
    let verdict = [d0.verdict, d1.verdict, nil_level.verdict].into_iter().max().expect("nonempty");
    Ok(BoundsReport {
        group: g.name.clone(),
        faithful_degree: n,
        cutoff,
        d0_within_bound: d0.value <= d0_bound,
        d1_within_bound: d1.value <= d1_bound,
        totaro_identity: d0.value == nil_level.value,
        d0,
        d1,
        d0_bound,
        d1_bound,
        nil_level,
        verdict,
    })
}

/// The Totaro identity on CH*_V ⊕ F_p[d]: d₀ of a direct sum is the larger
/// of the two, with d₀(F_p[d]) its nilpotence degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyntheticTotaro {
    pub rank: usize,
    pub point_degree: usize,
    pub d0: Estimate,
    pub nil_level: Estimate,
}

pub fn synthetic_totaro(p: Prime, rank: usize, d: usize, cutoff: usize) -> Result<SyntheticTotaro> {
    let g = GroupData::from_abelian(AbelianGroup::elementary(p, rank));
    let ring_d0 = d0_estimate(&g, cutoff)?;
    let point = FiniteModule::point(p, d);
    let point_nil = nilpotence_degree(&point, cutoff);
    let d0 = Estimate {
        value: ring_d0.value.max(point_nil.n),
        verdict: ring_d0.verdict,
    };
    let sum = ring_window(&g.ring()?, cutoff)?.direct_sum(&point.window_to(p.value() as usize * cutoff.max(1) + 1))?;
    Ok(SyntheticTotaro {
        rank,
        point_degree: d,
        d0,
        nil_level: max_nil_level(&sum, cutoff),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::elem_abelian_ring;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn data(q: u32, orders: &[u64]) -> GroupData {
        GroupData::from_abelian(AbelianGroup::new(p(q), orders.to_vec()).unwrap())
    }

    #[test]
    fn lambda_one_is_injective() {
        for (q, orders) in [(2, vec![2, 2]), (3, vec![9]), (2, vec![]), (2, vec![4, 2])] {
            let g = data(q, &orders);
            let e = build_lambda(&g, 1, 5).unwrap();
            assert!(e.legs_agree());
            assert!(e.injective(), "{orders:?}");
            assert!(e.onto_equalizer(), "{orders:?}");
            assert_eq!(d0_estimate(&g, 5).unwrap().value, 0);
        }
    }

    #[test]
    fn legs_agree_at_higher_levels() {
        let g = data(2, &[2, 2]);
        for n in 1..=3 {
            assert!(build_lambda(&g, n, 4).unwrap().legs_agree());
        }
    }

    #[test]
    fn equalizer_at_level_one_is_the_limit() {
        let g = data(2, &[4, 2]);
        let e = build_lambda(&g, 1, 5).unwrap();
        let eq: Vec<usize> = e.degrees.iter().map(|d| d.equalizer_dim).collect();
        assert_eq!(eq, limit_dims(&g, 5).unwrap());
    }

    #[test]
    fn f_iso_small() {
        let cert = f_iso_check(&data(3, &[9]), 6).unwrap();
        assert!(cert.kernel_empty() && cert.image_full());
        assert_eq!(cert.verdict, Verdict::VerifiedThroughCutoff);
    }

    #[test]
    fn nil_submodules() {
        let r = ring_window(&elem_abelian_ring(1, p(2)), 6).unwrap();
        let s = max_nil_submodule(&r, 1, 6);
        assert!(s.possible.iter().all(|x| x.is_zero()));
        let s0 = max_nil_submodule(&r, 0, 6);
        assert_eq!(s0.certain_dims(), vec![1; 7]);
        for d in 0..4 {
            let m = FiniteModule::point(p(3), d).window_to(20);
            let at = max_nil_submodule(&m, d, 8);
            assert_eq!(at.certain[d].dim(), 1);
            let above = max_nil_submodule(&m, d + 1, 8);
            assert!(above.possible.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn bounds() {
        let rep = bounds_report(&data(2, &[2, 2]), 2, 6).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(synthetic_totaro(p(2), 1, 2, 6).unwrap().nil_level.value, 2);
    }
}
