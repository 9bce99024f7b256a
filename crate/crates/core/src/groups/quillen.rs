use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::fp::Prime;
use crate::groups::FiniteGroup;

/// A conjugacy class of homomorphisms (Z/p)^r -> G, given by the images of
/// the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomClass {
    pub rank: usize,
    pub representative: Vec<usize>,
    pub orbit_size: usize,
}

impl HomClass {
    /// Sorted elements of the image subgroup.
    pub fn image(&self, g: &FiniteGroup) -> Vec<usize> {
        g.closure(&self.representative)
    }

    pub fn is_injective(&self, g: &FiniteGroup, p: Prime) -> bool {
        self.image(g).len() == (p.value() as usize).pow(self.rank as u32)
    }
}

/// All r-tuples of pairwise commuting elements with x^p = 1, in
/// lexicographic order.
pub fn commuting_tuples(g: &FiniteGroup, r: usize, p: Prime) -> Vec<Vec<usize>> {
    let torsion = g.p_torsion(p.value());
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(g: &FiniteGroup, torsion: &[usize], r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for &x in torsion {
            if cur.iter().all(|&y| g.commute(x, y)) {
                cur.push(x);
                go(g, torsion, r, cur, out);
                cur.pop();
            }
        }
    }
    go(g, &torsion, r, &mut cur, &mut out);
    out
}

/// Rep((Z/p)^r, G): commuting tuples modulo simultaneous conjugation, each
/// represented by the lexicographically least member of its orbit.
pub fn rep_classes(r: usize, g: &FiniteGroup, p: Prime) -> Vec<HomClass> {
    let tuples = commuting_tuples(g, r, p);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for t in tuples {
        if seen.contains(&t) {
            continue;
        }
        let mut orbit: HashSet<Vec<usize>> = HashSet::new();
        for h in 0..g.order() {
            orbit.insert(t.iter().map(|&x| g.conjugate(h, x)).collect());
        }
        let orbit_size = orbit.len();
        seen.extend(orbit);
        out.push(HomClass {
            rank: r,
            representative: t,
            orbit_size,
        });
    }
    out
}

/// An elementary abelian p-subgroup with a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElemAbelianSubgroup {
    pub elements: Vec<usize>,
    pub rank: usize,
    pub basis: Vec<usize>,
}

impl ElemAbelianSubgroup {
    fn from_elements(g: &FiniteGroup, elements: Vec<usize>, p: Prime) -> Self {
        let mut basis = Vec::new();
        let mut span = vec![0usize];
        for &x in &elements {
            if !span.contains(&x) {
                basis.push(x);
                span = g.closure(&basis);
            }
        }
        let rank = basis.len();
        debug_assert_eq!(elements.len(), (p.value() as usize).pow(rank as u32));
        ElemAbelianSubgroup { elements, rank, basis }
    }

    /// Coordinates of every element in the chosen basis.
    pub fn coordinates(&self, g: &FiniteGroup, p: Prime) -> HashMap<usize, Vec<u32>> {
        let q = p.value();
        let mut out = HashMap::new();
        let total = (q as usize).pow(self.rank as u32);
        for mut idx in 0..total {
            let mut c = vec![0u32; self.rank];
            let mut x = 0;
            for (l, slot) in c.iter_mut().enumerate() {
                *slot = (idx % q as usize) as u32;
                idx /= q as usize;
                x = g.mul(x, g.pow(self.basis[l], *slot as u64));
            }
            out.insert(x, c);
        }
        out
    }
}

/// A morphism E1 -> E2 of the Quillen category, x ↦ h x h⁻¹. `map[l]` holds
/// the coordinates in E2 of the image of the l-th basis element of E1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuillenMorphism {
    pub source: usize,
    pub target: usize,
    pub h: usize,
    pub map: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuillenCategoryData {
    pub objects: Vec<ElemAbelianSubgroup>,
    pub morphisms: Vec<QuillenMorphism>,
}

impl QuillenCategoryData {
    pub fn morphisms_between(&self, source: usize, target: usize) -> impl Iterator<Item = &QuillenMorphism> {
        self.morphisms
            .iter()
            .filter(move |m| m.source == source && m.target == target)
    }

    /// Every composite of recorded morphisms is recorded.
    pub fn is_closed_under_composition(&self, p: Prime) -> bool {
        let recorded: HashSet<(usize, usize, &Vec<Vec<u32>>)> =
            self.morphisms.iter().map(|m| (m.source, m.target, &m.map)).collect();
        for f in &self.morphisms {
            for g in self.morphisms.iter().filter(|g| g.source == f.target) {
                let comp: Vec<Vec<u32>> = f
                    .map
                    .iter()
                    .map(|v| {
                        let mut out = vec![0u32; self.objects[g.target].rank];
                        for (k, &c) in v.iter().enumerate() {
                            for (o, &gc) in out.iter_mut().zip(&g.map[k]) {
                                *o = p.add(*o, p.mul(c, gc));
                            }
                        }
                        out
                    })
                    .collect();
                if !recorded.contains(&(f.source, g.target, &comp)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Conjugacy classes of elementary abelian p-subgroups (ordered by rank,
/// then by element list) with the Quillen category morphisms among them.
pub fn elementary_abelians(g: &FiniteGroup, p: Prime) -> QuillenCategoryData {
    let torsion: Vec<usize> = g.p_torsion(p.value()).into_iter().filter(|&x| x != 0).collect();
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![vec![0usize]];
    all.insert(vec![0]);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let members: HashSet<usize> = s.iter().copied().collect();
            for &x in &torsion {
                if members.contains(&x) || !s.iter().all(|&y| g.commute(x, y)) {
                    continue;
                }
                let mut gens: Vec<usize> = s.clone();
                gens.push(x);
                let t = g.closure(&gens);
                if all.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        frontier = next;
    }

    let canonical = |s: &Vec<usize>| -> Vec<usize> {
        (0..g.order())
            .map(|h| {
                let mut c: Vec<usize> = s.iter().map(|&x| g.conjugate(h, x)).collect();
                c.sort_unstable();
                c
            })
            .min()
            .expect("nonempty group")
    };
    let reps: BTreeSet<(usize, Vec<usize>)> = all.iter().map(|s| (s.len(), canonical(s))).collect();
    let objects: Vec<ElemAbelianSubgroup> = reps
        .into_iter()
        .map(|(_, s)| ElemAbelianSubgroup::from_elements(g, s, p))
        .collect();

    let coords: Vec<HashMap<usize, Vec<u32>>> = objects.iter().map(|e| e.coordinates(g, p)).collect();
    let mut morphisms = Vec::new();
    for (i, e1) in objects.iter().enumerate() {
        for (j, e2) in objects.iter().enumerate() {
            if e1.rank > e2.rank {
                continue;
            }
            let mut maps: BTreeMap<Vec<Vec<u32>>, usize> = BTreeMap::new();
            for h in 0..g.order() {
                let images: Option<Vec<Vec<u32>>> = e1
                    .basis
                    .iter()
                    .map(|&b| coords[j].get(&g.conjugate(h, b)).cloned())
                    .collect();
                if let Some(m) = images {
                    maps.entry(m).or_insert(h);
                }
            }
            let mut found: Vec<(usize, Vec<Vec<u32>>)> = maps.into_iter().map(|(m, h)| (h, m)).collect();
            found.sort();
            for (h, map) in found {
                morphisms.push(QuillenMorphism {
                    source: i,
                    target: j,
                    h,
                    map,
                });
            }
        }
    }
    QuillenCategoryData { objects, morphisms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::AbelianGroup;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn klein_subgroups() {
        let v = AbelianGroup::new(p(2), vec![2, 2]).unwrap().to_finite_group();
        let q = elementary_abelians(&v, p(2));
        let ranks: Vec<usize> = q.objects.iter().map(|e| e.rank).collect();
        assert_eq!(ranks, vec![0, 1, 1, 1, 2]);
        assert!(q.is_closed_under_composition(p(2)));
        // conjugation is trivial, so only inclusions: 1 -> anything, L -> L, L -> V, V -> V
        assert_eq!(q.morphisms.len(), 5 + 3 * 2 + 1);
    }

    #[test]
    fn s3_subgroups_and_reps() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(elementary_abelians(&s3, p(2)).objects.len(), 2);
        assert_eq!(elementary_abelians(&s3, p(3)).objects.len(), 2);
        assert_eq!(elementary_abelians(&s3, p(5)).objects.len(), 1);
        assert_eq!(rep_classes(1, &s3, p(2)).len(), 2);
        assert_eq!(rep_classes(1, &s3, p(3)).len(), 2);
        let q = elementary_abelians(&s3, p(3));
        assert!(q.is_closed_under_composition(p(3)));
        // Z/3 has the automorphism x -> x^2 induced by a transposition
        assert_eq!(q.morphisms_between(1, 1).count(), 2);
    }

    #[test]
    fn cyclic_reps() {
        for q in [2u32, 3, 5] {
            let z = AbelianGroup::new(p(q), vec![q as u64]).unwrap().to_finite_group();
            let reps = rep_classes(1, &z, p(q));
            assert_eq!(reps.len(), q as usize);
            assert!(reps.iter().all(|c| c.orbit_size == 1));
        }
    }
}
