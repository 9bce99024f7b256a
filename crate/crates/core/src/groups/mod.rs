//! Finite groups by multiplication table, with the subgroup data needed for
//! Lannes's T-functor and the Quillen category.

mod abelian;
mod file;
mod quillen;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::chow::{catalog_ring, elem_abelian_ring, ChowRing};
use crate::error::{Error, Result};
use crate::fp::Prime;

pub use abelian::AbelianGroup;
pub use file::{load_group, load_group_path, GroupFile, GroupSpec};
pub use quillen::{
    commuting_tuples, elementary_abelians, rep_classes, ElemAbelianSubgroup, HomClass, QuillenCategoryData,
    QuillenMorphism,
};

/// Largest supported group order.
pub const ORDER_CAP: usize = 10_000;

/// A finite group on elements `0..n` with 0 the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {})", self.n)
    }
}

impl FiniteGroup {
    /// Validates a multiplication table: closure, identity 0, inverses,
    /// associativity.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > ORDER_CAP {
            return Err(Error::OrderCap { cap: ORDER_CAP });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(Error::NotAGroup(format!("entry ({i},{j}) = {x} is out of range")));
                }
                table.push(x as u32);
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_flat(n, table, labels)
    }

    fn from_flat(n: usize, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        for i in 0..n {
            if table[i] as usize != i || table[i * n] as usize != i {
                return Err(Error::NotAGroup("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for i in 0..n {
            let row = &table[i * n..(i + 1) * n];
            let mut seen = vec![false; n];
            for &x in row {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::NotAGroup(format!("row {i} repeats an element")));
                }
            }
            let j = row.iter().position(|&x| x == 0).expect("row is a permutation");
            if table[j * n + i] != 0 {
                return Err(Error::NotAGroup(format!("element {i} has no two-sided inverse")));
            }
            inv[i] = j as u32;
        }
        let g = FiniteGroup { n, table, inv, labels };
        g.check_associative()?;
        Ok(g)
    }

    /// Full check for small groups; otherwise Light's test on a generating set
    /// (associativity of (x g) y = x (g y) for generators g suffices).
    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        let gens: Vec<usize> = if n <= 64 { (0..n).collect() } else { self.generating_set() };
        for x in 0..n {
            for &g in &gens {
                let xg = self.mul(x, g);
                for y in 0..n {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails for ({x}, {g}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.n];
        span[0] = true;
        for x in 0..self.n {
            if !span[x] {
                gens.push(x);
                let elems = self.closure(&gens);
                span = vec![false; self.n];
                for e in elems {
                    span[e] = true;
                }
            }
        }
        gens
    }

    /// Sorted elements of the subgroup generated by `s`.
    pub fn closure(&self, s: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in s {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&i| seen[i]).collect()
    }

    /// Group generated by permutations of `0..degree`; elements are listed in
    /// breadth-first order from the identity. Composition is (gh)(x) = g(h(x)).
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::NotAGroup(format!("generator {i} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in gens {
                let h: Vec<usize> = elems[k].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&h) {
                    if elems.len() >= ORDER_CAP {
                        return Err(Error::OrderCap { cap: ORDER_CAP });
                    }
                    index.insert(h.clone(), elems.len());
                    elems.push(h);
                }
            }
            k += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let c: Vec<usize> = elems[j].iter().map(|&x| elems[i][x]).collect();
                table[i * n + j] = index[&c] as u32;
            }
        }
        let labels = elems.iter().map(|e| cycle_notation(e)).collect();
        Self::from_flat(n, table, labels)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n <= 1 {
            return Self::from_table(&[vec![0]]);
        }
        let swap: Vec<usize> = (0..n).map(|i| match i { 0 => 1, 1 => 0, i => i }).collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[swap, cycle])
    }

    pub fn trivial() -> Self {
        Self::from_table(&[vec![0]]).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, a);
        }
        x
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// h a h^{-1}
    pub fn conjugate(&self, h: usize, a: usize) -> usize {
        self.mul(self.mul(h, a), self.inv(h))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.commute(a, b)))
    }

    /// Sorted elements commuting with every element of `s`.
    pub fn centralizer_elements(&self, s: &[usize]) -> Vec<usize> {
        (0..self.n).filter(|&g| s.iter().all(|&x| self.commute(g, x))).collect()
    }

    /// C_G(S) as a group in its own right, with the element list.
    pub fn centralizer(&self, s: &[usize]) -> Subgroup {
        self.subgroup(self.centralizer_elements(s)).expect("centralizers are subgroups")
    }

    /// The subgroup on a sorted element list containing 0.
    pub fn subgroup(&self, elements: Vec<usize>) -> Result<Subgroup> {
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        if elements.first() != Some(&0) {
            return Err(Error::NotASubgroup("does not start with the identity".into()));
        }
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &elements {
            for &b in &elements {
                let c = self.mul(a, b);
                let j = *pos
                    .get(&c)
                    .ok_or_else(|| Error::NotASubgroup(format!("not closed: {a}*{b} = {c}")))?;
                table.push(j as u32);
            }
        }
        let labels = elements.iter().map(|&e| self.labels[e].clone()).collect();
        let group = FiniteGroup::from_flat(m, table, labels)?;
        Ok(Subgroup { elements, group })
    }

    /// Number of elements with x^p = 1, which is p^{rank} for abelian groups.
    pub fn p_torsion(&self, p: u32) -> Vec<usize> {
        (0..self.n).filter(|&x| self.pow(x, p as u64) == 0).collect()
    }

    /// Cyclic decomposition of the Sylow p-subgroup's p-torsion, as the
    /// p-rank, for abelian groups.
    pub fn abelian_p_rank(&self, p: u32) -> Option<usize> {
        if !self.is_abelian() {
            return None;
        }
        let mut count = self.p_torsion(p).len();
        let mut r = 0;
        while count > 1 {
            count /= p as usize;
            r += 1;
        }
        Some(r)
    }
}

/// A group together with whatever Chow ring data is known for it at a prime.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub name: String,
    pub prime: Prime,
    pub group: FiniteGroup,
    pub abelian: Option<AbelianGroup>,
    pub ring: Option<ChowRing>,
    pub faithful_degree: Option<usize>,
}

impl GroupData {
    pub fn from_abelian(a: AbelianGroup) -> Self {
        GroupData {
            name: a.to_string(),
            prime: a.prime(),
            group: a.to_finite_group(),
            ring: catalog_ring(&a).ok(),
            faithful_degree: Some(a.orders().iter().filter(|&&n| n > 1).count()),
            abelian: Some(a),
        }
    }

    pub fn from_file(file: &GroupFile, p: Prime) -> Self {
        let abelian = file.abelian(p);
        let ring = file
            .ring
            .clone()
            .filter(|r| r.prime() == p)
            .or_else(|| abelian.as_ref().and_then(|a| catalog_ring(a).ok()));
        GroupData {
            name: file.display_name(),
            prime: p,
            group: file.group.clone(),
            abelian,
            ring,
            faithful_degree: file.faithful_degree,
        }
    }

    /// CH*_G, or `MissingRing`.
    pub fn ring(&self) -> Result<ChowRing> {
        self.ring.clone().ok_or_else(|| Error::MissingRing(self.name.clone()))
    }

    /// The abelian p-group behind the data, required for restriction maps.
    pub fn abelian_p_group(&self) -> Result<&AbelianGroup> {
        match &self.abelian {
            Some(a) if catalog_ring(a).is_ok() => Ok(a),
            _ => Err(Error::MissingRing(format!(
                "restriction maps for {} (only abelian p-groups carry them)",
                self.name
            ))),
        }
    }

    /// CH*_C for a subgroup C given by its elements: polynomial on the
    /// p-rank for abelian C, the stored ring when C is all of G.
    pub fn subgroup_ring(&self, elements: &[usize], what: &str) -> Result<ChowRing> {
        let sub = self.group.subgroup(elements.to_vec())?;
        if let Some(r) = sub.group.abelian_p_rank(self.prime.value()) {
            if elements.len() == self.group.order() {
                if let Some(ring) = &self.ring {
                    return Ok(ring.clone());
                }
            }
            return Ok(elem_abelian_ring(r, self.prime));
        }
        if elements.len() == self.group.order() {
            return self.ring();
        }
        Err(Error::MissingRing(format!("{what} in {}", self.name)))
    }
}

/// A subgroup with its embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        out.push('(');
        let mut x = s;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = perm[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(FiniteGroup::from_table(&bad).is_err());
    }

    #[test]
    fn associativity_is_checked() {
        // a Latin square with identity 0 that is not a group (order 5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&t), Err(Error::NotAGroup(_))));
    }

    #[test]
    fn centralizers() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.centralizer(&[0]).group.order(), 6);
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let c = s3.centralizer(&[t]);
        assert_eq!(c.elements, vec![0, t]);
        let v = AbelianGroup::new(crate::fp::Prime::new(2).unwrap(), vec![2, 2]).unwrap().to_finite_group();
        assert_eq!(v.centralizer(&[1, 2]).group.order(), 4);
    }
}
