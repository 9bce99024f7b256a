//! The even (Chow-graded) Steenrod algebra generated by the reduced powers P^a.
//!
//! A [`Word`] is a formal product P^{a_1} ... P^{a_k}; [`OpExpr`] is an F_p-linear
//! combination of words of a single degree. [`adem_reduce`] rewrites an expression
//! into admissible normal form (a_j >= p a_{j+1}) using the Adem relation
//!
//! P^a P^b = sum_k (-1)^{a+k} C((p-1)(b-k)-1, a-pk) P^{a+b-k} P^k,   a < pb.
//!
//! Degrees are Chow degrees: deg P^a = a(p-1).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::fp::{binom_mod_p, Prime};

/// A word in the reduced powers. Zero exponents (P^0 = 1) are never stored;
/// the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        Word(exponents.into_iter().filter(|&a| a != 0).collect())
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn single(a: u32) -> Self {
        Word::new([a])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the exponents.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    /// Chow degree (p-1) * sum a_j.
    pub fn degree(&self, p: Prime) -> usize {
        (p.value() as u64 - 1) as usize * self.weight() as usize
    }

    /// Positions i with a_i < p a_{i+1}.
    pub fn inadmissible_positions(&self, p: Prime) -> Vec<usize> {
        let p = p.value();
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < p * w[1])
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_admissible(&self, p: Prime) -> bool {
        let q = p.value();
        self.0.windows(2).all(|w| w[0] >= q * w[1])
    }

    /// a_1 - (p-1)(a_2 + ... + a_k); zero for the identity.
    pub fn excess(&self, p: Prime) -> Result<u32> {
        if !self.is_admissible(p) {
            return Err(Error::NotAdmissible(self.to_string()));
        }
        Ok(self.excess_unchecked(p))
    }

    pub(crate) fn excess_unchecked(&self, p: Prime) -> u32 {
        match self.0.split_first() {
            None => 0,
            Some((&a, rest)) => {
                let tail: u64 = rest.iter().map(|&x| x as u64).sum();
                (a as i64 - (p.value() as i64 - 1) * tail as i64).max(0) as u32
            }
        }
    }

    /// Concatenation `self * other` (self applied after other).
    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Canonical printing order: longer words first, then lexicographic.
    pub fn canonical_cmp(&self, other: &Word) -> Ordering {
        other.len().cmp(&self.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "P^{a}")?;
        }
        Ok(())
    }
}

/// An admissible word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleMonomial(Word);

impl AdmissibleMonomial {
    pub fn new(word: Word, p: Prime) -> Result<Self> {
        if word.is_admissible(p) {
            Ok(AdmissibleMonomial(word))
        } else {
            Err(Error::NotAdmissible(word.to_string()))
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

/// Chow degree of a word.
pub fn monomial_degree(word: &Word, p: Prime) -> usize {
    word.degree(p)
}

/// Excess of an admissible monomial.
pub fn excess(m: &AdmissibleMonomial, p: Prime) -> u32 {
    m.0.excess_unchecked(p)
}

/// A homogeneous F_p-combination of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpExpr {
    prime: Prime,
    terms: BTreeMap<Word, u32>,
}

impl OpExpr {
    pub fn zero(p: Prime) -> Self {
        OpExpr {
            prime: p,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(word: Word, p: Prime) -> Self {
        let mut e = Self::zero(p);
        e.terms.insert(word, 1);
        e
    }

    /// Builds an expression, checking degree homogeneity and dropping zero coefficients.
    pub fn from_terms(p: Prime, terms: impl IntoIterator<Item = (i64, Word)>) -> Result<Self> {
        let mut e = Self::zero(p);
        let mut degree: Option<usize> = None;
        for (c, w) in terms {
            let d = w.degree(p);
            match degree {
                Some(d0) if d0 != d => {
                    return Err(Error::MixedDegrees {
                        first: d0,
                        second: d,
                    })
                }
                _ => degree = Some(d),
            }
            e.add_term(w, p.reduce(c));
        }
        Ok(e)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> u32 {
        self.terms.get(w).copied().unwrap_or(0)
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

    /// Degree of the expression; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.degree(self.prime))
    }

    pub fn add_term(&mut self, w: Word, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.prime;
        let e = self.terms.entry(w).or_insert(0);
        *e = p.add(*e, c);
        if *e == 0 {
            let key = self
                .terms
                .iter()
                .find(|(_, &v)| v == 0)
                .map(|(k, _)| k.clone())
                .expect("zero entry present");
            self.terms.remove(&key);
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(|w| w.is_admissible(self.prime))
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(Word, u32)> {
        let mut v: Vec<(Word, u32)> = self.terms.iter().map(|(w, &c)| (w.clone(), c)).collect();
        v.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        v
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, w.is_identity()) {
                (1, _) => write!(f, "{w}")?,
                (c, true) => write!(f, "{c}")?,
                (c, false) => write!(f, "{c} {w}")?,
            }
        }
        Ok(())
    }
}

type Expansion = Rc<Vec<(Word, u32)>>;

thread_local! {
    static PAIR_CACHE: RefCell<HashMap<(u32, u32, u32), Expansion>> = RefCell::new(HashMap::new());
    static WORD_CACHE: RefCell<HashMap<(u32, Word), Expansion>> = RefCell::new(HashMap::new());
    static ADMISSIBLE_CACHE: RefCell<HashMap<(u32, u64, u32), Rc<Vec<Word>>>> = RefCell::new(HashMap::new());
}

/// The Adem expansion of P^a P^b for a < pb, as a list of (word, coefficient).
pub fn adem_pair(a: u32, b: u32, p: Prime) -> Expansion {
    let key = (p.value(), a, b);
    if let Some(e) = PAIR_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return e;
    }
    let q = p.value();
    debug_assert!(a < q * b);
    let mut out = Vec::new();
    for k in 0..=a / q {
        let top = (q as u64 - 1) * (b - k) as u64 - 1;
        let c = binom_mod_p(top, (a - q * k) as u64, p);
        if c == 0 {
            continue;
        }
        let c = if (a + k) % 2 == 1 { p.neg(c) } else { c };
        out.push((Word::new([a + b - k, k]), c));
    }
    let e = Rc::new(out);
    PAIR_CACHE.with(|c| c.borrow_mut().insert(key, e.clone()));
    e
}

fn rewrite_at(word: &Word, i: usize, p: Prime) -> Vec<(Word, u32)> {
    let ex = word.exponents();
    adem_pair(ex[i], ex[i + 1], p)
        .iter()
        .map(|(rep, c)| {
            let w = Word::new(
                ex[..i]
                    .iter()
                    .chain(rep.exponents())
                    .chain(&ex[i + 2..])
                    .copied(),
            );
            (w, *c)
        })
        .collect()
}

/// Admissible normal form of a single word (memoized, leftmost-pair strategy).
pub fn reduce_word(word: &Word, p: Prime) -> Expansion {
    if word.is_admissible(p) {
        return Rc::new(vec![(word.clone(), 1)]);
    }
    let key = (p.value(), word.clone());
    if let Some(e) = WORD_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return e;
    }
    let i = word.inadmissible_positions(p)[0];
    let mut acc = OpExpr::zero(p);
    for (w, c) in rewrite_at(word, i, p) {
        for (v, d) in reduce_word(&w, p).iter() {
            acc.add_term(v.clone(), p.mul(c, *d));
        }
    }
    let e: Expansion = Rc::new(acc.terms.into_iter().collect());
    WORD_CACHE.with(|c| c.borrow_mut().insert(key, e.clone()));
    e
}

/// Rewrites an expression into admissible normal form.
pub fn adem_reduce(e: &OpExpr) -> OpExpr {
    let p = e.prime;
    let mut out = OpExpr::zero(p);
    for (w, c) in e.terms() {
        for (v, d) in reduce_word(w, p).iter() {
            out.add_term(v.clone(), p.mul(c, *d));
        }
    }
    out
}

/// Normal form computed without memoization, choosing the rewrite position
/// with `pick` among all inadmissible positions. Used to test confluence.
pub fn adem_reduce_with(e: &OpExpr, pick: &mut dyn FnMut(&[usize]) -> usize) -> OpExpr {
    let p = e.prime;
    let mut out = OpExpr::zero(p);
    let mut work: Vec<(Word, u32)> = e.terms().map(|(w, c)| (w.clone(), c)).collect();
    while let Some((w, c)) = work.pop() {
        let pos = w.inadmissible_positions(p);
        if pos.is_empty() {
            out.add_term(w, c);
            continue;
        }
        let i = pos[pick(&pos) % pos.len()];
        for (v, d) in rewrite_at(&w, i, p) {
            work.push((v, p.mul(c, d)));
        }
    }
    out
}

/// All admissible words of Chow degree `degree`, with excess at most
/// `max_excess` when given, sorted canonically.
pub fn admissible_monomials(degree: usize, p: Prime, max_excess: Option<u32>) -> Rc<Vec<Word>> {
    let q1 = p.value() as usize - 1;
    if !degree.is_multiple_of(q1) {
        return Rc::new(Vec::new());
    }
    let weight = (degree / q1) as u64;
    let cap = max_excess.unwrap_or(u32::MAX);
    let key = (p.value(), weight, cap);
    if let Some(v) = ADMISSIBLE_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let mut all = Vec::new();
    let mut cur = Vec::new();
    gen_admissible(weight, weight, p.value() as u64, &mut cur, &mut all);
    let mut words: Vec<Word> = all
        .into_iter()
        .map(Word)
        .filter(|w| w.excess_unchecked(p) <= cap)
        .collect();
    words.sort_by(|a, b| a.canonical_cmp(b));
    let v = Rc::new(words);
    ADMISSIBLE_CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

fn gen_admissible(remaining: u64, max_first: u64, p: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if remaining == 0 {
        out.push(cur.clone());
        return;
    }
    for a in (1..=max_first.min(remaining)).rev() {
        cur.push(a as u32);
        gen_admissible(remaining - a, a / p, p, cur, out);
        cur.pop();
    }
}

/// Parses `expr := term ('+' term)*`, `term := [int '*']? factor+`,
/// `factor := 'P^' int | 'Sq^' int`. At p = 2, `Sq^{2a}` means `P^a`.
/// A `-` between terms negates the following term.
pub fn parse_operation(s: &str, p: Prime) -> Result<OpExpr> {
    let mut parser = Parser::new(s);
    let terms = parser.expr(p)?;
    OpExpr::from_terms(p, terms)
}

/// Parses a single word (`factor*`); `1` or the empty string is the identity.
pub fn parse_word(s: &str, p: Prime) -> Result<Word> {
    let t = s.trim();
    if t.is_empty() || t == "1" {
        return Ok(Word::identity());
    }
    let mut parser = Parser::new(s);
    let w = parser.word(p)?;
    parser.skip_ws();
    if let Some((pos, c)) = parser.peek() {
        return Err(Error::Syntax {
            pos,
            msg: format!("unexpected '{c}'"),
        });
    }
    Ok(w)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            chars: s.char_indices().collect(),
            i: 0,
            len: s.len(),
            _src: s,
        }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.i).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map(|(p, _)| p).unwrap_or(self.len)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if matches!(self.peek(), Some((_, d)) if d == c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let braced = self.eat('{');
        self.skip_ws();
        let start = self.i;
        while matches!(self.peek(), Some((_, c)) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected integer");
        }
        let text: String = self.chars[start..self.i].iter().map(|&(_, c)| c).collect();
        let v = text.parse::<u64>().map_err(|_| Error::Syntax {
            pos: self.chars[start].0,
            msg: "integer out of range".into(),
        })?;
        if braced && !self.eat('}') {
            return self.err("expected '}'");
        }
        Ok(v)
    }

    fn at_factor(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some((_, 'P')) | Some((_, 'S')))
    }

    fn factor(&mut self, p: Prime) -> Result<u32> {
        self.skip_ws();
        let start = self.pos();
        match self.peek() {
            Some((_, 'P')) => {
                self.i += 1;
                if !self.eat('^') {
                    return self.err("expected '^' after 'P'");
                }
                let a = self.int()?;
                u32::try_from(a).map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "exponent out of range".into(),
                })
            }
            Some((_, 'S')) => {
                self.i += 1;
                if !self.eat('q') {
                    return self.err("expected 'Sq'");
                }
                if !self.eat('^') {
                    return self.err("expected '^' after 'Sq'");
                }
                let a = self.int()?;
                if p.value() != 2 {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("Sq is only available at p = 2 (p = {p})"),
                    });
                }
                if a % 2 == 1 {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!("Sq^{a} has odd degree; only Sq^(2a) = P^a is supported"),
                    });
                }
                Ok((a / 2) as u32)
            }
            _ => self.err("expected 'P^' or 'Sq^'"),
        }
    }

    fn word(&mut self, p: Prime) -> Result<Word> {
        let mut ex = vec![self.factor(p)?];
        while self.at_factor() {
            ex.push(self.factor(p)?);
        }
        Ok(Word::new(ex))
    }

    fn term(&mut self, p: Prime, sign: i64) -> Result<(i64, Word)> {
        self.skip_ws();
        let mut coeff = sign;
        if matches!(self.peek(), Some((_, c)) if c.is_ascii_digit()) {
            let c = self.int()?;
            coeff *= (c % p.value() as u64) as i64;
            if !self.eat('*') {
                return self.err("expected '*' after coefficient");
            }
        }
        let w = self.word(p)?;
        Ok((coeff, w))
    }

    fn expr(&mut self, p: Prime) -> Result<Vec<(i64, Word)>> {
        let mut sign = if self.eat('-') { -1 } else { 1 };
        let mut out = vec![self.term(p, sign)?];
        loop {
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some((_, '+')) => sign = 1,
                Some((_, '-')) => sign = -1,
                Some((_, c)) => return self.err(format!("unexpected '{c}'")),
            }
            self.i += 1;
            out.push(self.term(p, sign)?);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn reduce_str(s: &str, q: u32) -> String {
        adem_reduce(&parse_operation(s, p(q)).unwrap()).to_string()
    }

    #[test]
    fn degrees() {
        assert_eq!(monomial_degree(&Word::single(1), p(2)), 1);
        assert_eq!(monomial_degree(&Word::new([2, 1]), p(3)), 6);
        assert_eq!(monomial_degree(&Word::identity(), p(5)), 0);
    }

    #[test]
    fn excess_examples() {
        assert_eq!(Word::new([2, 1]).excess(p(2)).unwrap(), 1);
        assert_eq!(Word::new([3, 1]).excess(p(2)).unwrap(), 2);
        for q in [2, 3, 5] {
            assert_eq!(Word::single(1).excess(p(q)).unwrap(), 1);
        }
        assert_eq!(Word::identity().excess(p(3)).unwrap(), 0);
        assert!(matches!(
            Word::new([1, 1]).excess(p(2)),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn adem_examples() {
        assert_eq!(reduce_str("P^1 P^1", 2), "0");
        assert_eq!(reduce_str("P^1 P^2", 2), "P^3");
        assert_eq!(reduce_str("P^1 P^1", 3), "2 P^2");
        assert_eq!(reduce_str("P^3 P^1", 2), "P^3 P^1");
        // Sq^2 Sq^4 = Sq^6 + Sq^5 Sq^1 regrades to P^1 P^2 = P^3 in the even part
        assert_eq!(reduce_str("Sq^2 Sq^4", 2), "P^3");
    }

    #[test]
    fn parse_examples() {
        let e = parse_operation("P^2 P^1", p(3)).unwrap();
        assert_eq!(e.coefficient(&Word::new([2, 1])), 1);
        assert_eq!(e.len(), 1);
        let e = parse_operation("Sq^4", p(2)).unwrap();
        assert_eq!(e, OpExpr::from_word(Word::single(2), p(2)));
        assert!(matches!(
            parse_operation("P^1 + P^2", p(2)),
            Err(Error::MixedDegrees { .. })
        ));
        assert!(matches!(
            parse_operation("Sq^3", p(2)),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_operation("Sq^2", p(3)),
            Err(Error::Syntax { .. })
        ));
        let err = parse_operation("P^1 + Q^2", p(2)).unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                pos: 6,
                msg: "expected 'P^' or 'Sq^'".into()
            }
        );
        let e = parse_operation("2*P^{4} - P^3 P^1", p(3)).unwrap();
        assert_eq!(e.coefficient(&Word::single(4)), 2);
        assert_eq!(e.coefficient(&Word::new([3, 1])), 2);
    }

    #[test]
    fn printing_is_canonical() {
        let e = OpExpr::from_terms(
            p(5),
            [(1, Word::single(6)), (3, Word::new([5, 1])), (1, Word::new([1, 5]))],
        )
        .unwrap();
        assert_eq!(e.to_string(), "P^1 P^5 + 3 P^5 P^1 + P^6");
        assert_eq!(OpExpr::from_word(Word::identity(), p(2)).to_string(), "1");
    }

    #[test]
    fn admissible_enumeration() {
        let q = p(2);
        let words: Vec<String> = admissible_monomials(3, q, None)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["P^2 P^1", "P^3"]);
        for d in 0..20 {
            for w in admissible_monomials(d, q, Some(2)).iter() {
                assert!(w.is_admissible(q));
                assert_eq!(w.degree(q), d);
                assert!(w.excess(q).unwrap() <= 2);
            }
        }
        assert!(admissible_monomials(3, p(3), None).is_empty());
    }
}
