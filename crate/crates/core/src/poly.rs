//! Sparse polynomials over F_p in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fp::Prime;

/// An exponent vector.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        let mut p = Self::zero(m.len());
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Self::monomial(m, 1)
    }

    pub fn from_terms(p: Prime, nvars: usize, terms: impl IntoIterator<Item = (i64, Monomial)>) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (c, m) in terms {
            if m.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: m.len(),
                });
            }
            out.add_term(p, m, p.reduce(c));
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &[u32]) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Prime, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = p.add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly, p: Prime) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(p, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly, p: Prime) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(p, m.clone(), p.neg(c));
        }
        out
    }

    pub fn scale(&self, c: u32, p: Prime) -> Poly {
        if c == 0 {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, &v)| (m.clone(), p.mul(v, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, p: Prime) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, &c) in &self.terms {
            for (b, &d) in &other.terms {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(p, m, p.mul(c, d));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64, p: Prime) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, p);
            }
        }
        acc
    }

    /// Weighted degree of a monomial.
    pub fn monomial_degree(m: &[u32], weights: &[usize]) -> usize {
        m.iter().zip(weights).map(|(&e, &w)| e as usize * w).sum()
    }

    /// The common degree of all terms, `Ok(None)` for zero, an error when
    /// terms of different degrees occur.
    pub fn homogeneous_degree(&self, weights: &[usize]) -> Result<Option<usize>> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = Self::monomial_degree(m, weights);
            match deg {
                Some(d0) if d0 != d => return Err(Error::Inhomogeneous),
                _ => deg = Some(d),
            }
        }
        Ok(deg)
    }

    /// Substitutes `images[i]` for the i-th variable.
    pub fn substitute(&self, images: &[Poly], target_vars: usize, p: Prime) -> Poly {
        let mut out = Poly::zero(target_vars);
        for (m, &c) in &self.terms {
            let mut t = Poly::monomial(vec![0; target_vars], c);
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u64, p), p);
                }
            }
            out = out.add(&t, p);
        }
        out
    }

    /// Renders with the given variable names, highest degree first.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ms: Vec<(&Monomial, u32)> = self.terms().collect();
        ms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut s = String::new();
        for (i, (m, c)) in ms.into_iter().enumerate() {
            if i > 0 {
                s.push_str(" + ");
            }
            let word = monomial_string(m, names);
            match (c, word.is_empty()) {
                (c, true) => write!(s, "{c}").unwrap(),
                (1, false) => s.push_str(&word),
                (c, false) => write!(s, "{c} {word}").unwrap(),
            }
        }
        s
    }
}

fn monomial_string(m: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            e => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join(" ")
}

/// All exponent vectors of weighted degree `d`, in descending lexicographic order.
pub fn monomials_of_degree(weights: &[usize], d: usize) -> Vec<Monomial> {
    fn go(weights: &[usize], i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        if w == 0 {
            // degree-0 generators would make every degree infinite-dimensional
            cur.push(0);
            go(weights, i + 1, left, cur, out);
            cur.pop();
            return;
        }
        for e in (0..=left / w).rev() {
            cur.push(e as u32);
            go(weights, i + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Parses `c*x1^e1 x2^e2 + ...` with variables from `names`.
pub fn parse_poly(s: &str, names: &[String], p: Prime) -> Result<Poly> {
    let n = names.len();
    let mut out = Poly::zero(n);
    let text = s.replace('-', "+-");
    let mut offset = 0usize;
    for raw in text.split('+') {
        let pos = offset;
        offset += raw.len() + 1;
        let mut term = raw.trim();
        if term.is_empty() {
            if raw.is_empty() && pos == 0 {
                continue;
            }
            return Err(Error::Syntax {
                pos,
                msg: "empty term".into(),
            });
        }
        let mut coeff: i64 = 1;
        if let Some(rest) = term.strip_prefix('-') {
            coeff = -1;
            term = rest.trim();
        }
        let mut mono = vec![0u32; n];
        let (cpart, vpart) = match term.split_once('*') {
            Some((c, v)) => (Some(c.trim()), v.trim()),
            None if term.chars().all(|c| c.is_ascii_digit()) => (Some(term), ""),
            None => (None, term),
        };
        if let Some(c) = cpart {
            let v: i64 = c.parse().map_err(|_| Error::Syntax {
                pos,
                msg: format!("bad coefficient '{c}'"),
            })?;
            coeff *= v;
        }
        for factor in vpart.split_whitespace() {
            let (name, exp) = match factor.split_once('^') {
                Some((a, e)) => {
                    let e: u32 = e.trim_matches(|c| c == '{' || c == '}').parse().map_err(|_| Error::Syntax {
                        pos,
                        msg: format!("bad exponent in '{factor}'"),
                    })?;
                    (a, e)
                }
                None => (factor, 1),
            };
            let i = names.iter().position(|x| x == name).ok_or_else(|| Error::Syntax {
                pos,
                msg: format!("unknown variable '{name}'"),
            })?;
            mono[i] += exp;
        }
        out.add_term(p, mono, p.reduce(coeff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("y{i}")).collect()
    }

    #[test]
    fn arithmetic() {
        let p = Prime::new(2).unwrap();
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y, p);
        assert_eq!(s.pow(2, p), x.pow(2, p).add(&y.pow(2, p), p));
        assert!(s.sub(&s, p).is_zero());
    }

    #[test]
    fn parse_and_print() {
        let p = Prime::new(3).unwrap();
        let n = names(2);
        let f = parse_poly("2*y1^2 y2 + y2^3 - 1", &n, p).unwrap();
        assert_eq!(f.display(&n), "2 y1^2 y2 + y2^3 + 2");
        assert!(parse_poly("y3", &n, p).is_err());
        assert_eq!(f.homogeneous_degree(&[1, 1]), Err(Error::Inhomogeneous));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(&[1, 1], 4).len(), 5);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
        assert_eq!(monomials_of_degree(&[], 3).len(), 0);
        assert_eq!(monomials_of_degree(&[1, 1], 2)[0], vec![2, 0]);
    }
}
