//! Mod-p Chow rings of classifying spaces as unstable algebras.
//!
//! A [`ChowRing`] is a graded commutative F_p-algebra given by generators,
//! relations and the values P^a(g) on generators. The action on products
//! comes from the Cartan formula.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, Prime, Subspace};
use crate::groups::AbelianGroup;
use crate::poly::{monomials_of_degree, Monomial, Poly};
use crate::powers::{adem_reduce, OpExpr, Word};
use crate::unstable::{Above, FiniteModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Catalog,
    Ingested,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

struct DegreeData {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Subspace,
    normal: Vec<usize>,
}

#[derive(Default)]
struct Caches {
    degrees: RwLock<HashMap<usize, Arc<DegreeData>>>,
    action: RwLock<HashMap<(u32, Monomial), Poly>>,
}

/// A graded commutative F_p-algebra with an unstable action of the reduced powers.
#[derive(Clone)]
pub struct ChowRing {
    prime: Prime,
    cutoff: Option<usize>,
    generators: Vec<Generator>,
    relations: Vec<Poly>,
    steenrod: BTreeMap<(usize, u32), Poly>,
    provenance: Provenance,
    reduced: bool,
    caches: Arc<Caches>,
}

impl std::fmt::Debug for ChowRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChowRing")
            .field("prime", &self.prime)
            .field("cutoff", &self.cutoff)
            .field("generators", &self.generators)
            .field("relations", &self.relations.len())
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl PartialEq for ChowRing {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime
            && self.cutoff == other.cutoff
            && self.generators == other.generators
            && self.relations == other.relations
            && self.steenrod == other.steenrod
            && self.provenance == other.provenance
    }
}

/// F_p[y_1, ..., y_k] with |y_i| = 1 and P^1 y_i = y_i^p.
pub fn elem_abelian_ring(rank: usize, p: Prime) -> ChowRing {
    let generators = (1..=rank)
        .map(|i| Generator {
            name: format!("y{i}"),
            degree: 1,
        })
        .collect();
    ChowRing::polynomial(p, generators, Provenance::Catalog)
}

/// Chow ring of a finite abelian p-group: one degree-1 generator per cyclic factor.
pub fn catalog_ring(group: &AbelianGroup) -> Result<ChowRing> {
    let p = group.prime();
    for (i, &n) in group.orders().iter().enumerate() {
        if !is_power_of(n, p.value() as u64) || n == 1 {
            return Err(Error::validation(
                format!("abelian[{i}]"),
                format!("cyclic factor of order {n} is not a nontrivial power of {p}"),
            ));
        }
    }
    Ok(elem_abelian_ring(group.orders().len(), p))
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl ChowRing {
    fn polynomial(p: Prime, generators: Vec<Generator>, provenance: Provenance) -> Self {
        let nv = generators.len();
        let mut steenrod = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            steenrod.insert((i, g.degree as u32), Poly::var(nv, i).pow(p.value() as u64, p));
        }
        ChowRing {
            prime: p,
            cutoff: None,
            generators,
            relations: Vec::new(),
            steenrod,
            provenance,
            reduced: true,
            caches: Arc::default(),
        }
    }

    /// Same ring, validated only through `cutoff` (`None` means all degrees).
    pub fn with_cutoff(&self, cutoff: Option<usize>) -> Self {
        let mut r = self.clone();
        r.cutoff = cutoff;
        r
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    fn weights(&self) -> Vec<usize> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    /// Whether the ring is known to have no nilpotents (a polynomial ring).
    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        match self.cutoff {
            Some(c) if d > c => Err(Error::CutoffExceeded { degree: d, cutoff: c }),
            _ => Ok(()),
        }
    }

    fn degree_data(&self, d: usize) -> Result<Arc<DegreeData>> {
        self.check_degree(d)?;
        if let Some(x) = self.caches.degrees.read().unwrap().get(&d) {
            return Ok(x.clone());
        }
        let data = Arc::new(self.compute_degree(d));
        self.caches.degrees.write().unwrap().insert(d, data.clone());
        Ok(data)
    }

    fn compute_degree(&self, d: usize) -> DegreeData {
        let p = self.prime;
        let w = self.weights();
        let monomials = monomials_of_degree(&w, d);
        let index: HashMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Vec::new();
        for r in &self.relations {
            let Ok(Some(rd)) = r.homogeneous_degree(&w) else { continue };
            if rd > d {
                continue;
            }
            for m in monomials_of_degree(&w, d - rd) {
                let prod = r.mul(&Poly::monomial(m, 1), p);
                let mut v = vec![0u32; monomials.len()];
                for (mm, c) in prod.terms() {
                    v[index[mm]] = c;
                }
                span.push(v);
            }
        }
        let ideal = Subspace::from_vectors(p, monomials.len(), span);
        let normal = ideal.complement_coordinates();
        DegreeData {
            monomials,
            index,
            ideal,
            normal,
        }
    }

    pub fn dim(&self, d: usize) -> Result<usize> {
        Ok(self.degree_data(d)?.normal.len())
    }

    /// Normal monomials forming the basis of degree `d`.
    pub fn basis(&self, d: usize) -> Result<Vec<Monomial>> {
        let data = self.degree_data(d)?;
        Ok(data.normal.iter().map(|&i| data.monomials[i].clone()).collect())
    }

    pub fn degree_of(&self, f: &Poly) -> Result<Option<usize>> {
        f.homogeneous_degree(&self.weights())
    }

    /// Coordinates of a homogeneous polynomial of degree `d` in the basis of degree `d`.
    pub fn to_vector(&self, f: &Poly, d: usize) -> Result<Vec<u32>> {
        let data = self.degree_data(d)?;
        let mut v = vec![0u32; data.monomials.len()];
        for (m, c) in f.terms() {
            let i = *data.index.get(m).ok_or(Error::Inhomogeneous)?;
            v[i] = c;
        }
        Ok(data.ideal.quotient_coordinates(&v, &data.normal))
    }

    pub fn from_vector(&self, d: usize, v: &[u32]) -> Result<Poly> {
        let data = self.degree_data(d)?;
        let mut f = Poly::zero(self.nvars());
        for (&i, &c) in data.normal.iter().zip(v) {
            f.add_term(self.prime, data.monomials[i].clone(), c);
        }
        Ok(f)
    }

    /// Normal form of a homogeneous polynomial modulo the relations.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        match self.degree_of(f)? {
            None => Ok(Poly::zero(self.nvars())),
            Some(_) if self.relations.is_empty() => Ok(f.clone()),
            Some(d) => self.from_vector(d, &self.to_vector(f, d)?),
        }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.normal_form(&f.mul(g, self.prime))
    }

    pub fn pow(&self, f: &Poly, e: u64) -> Result<Poly> {
        self.normal_form(&f.pow(e, self.prime))
    }

    /// P^a on a generator, with the defaults P^{deg g} g = g^p and zero
    /// otherwise when no rule is recorded.
    fn generator_power(&self, g: usize, a: u32) -> Poly {
        let n = self.nvars();
        if a == 0 {
            return Poly::var(n, g);
        }
        if a as usize > self.generators[g].degree {
            return Poly::zero(n);
        }
        self.steenrod.get(&(g, a)).cloned().unwrap_or_else(|| {
            if a as usize == self.generators[g].degree {
                Poly::var(n, g).pow(self.prime.value() as u64, self.prime)
            } else {
                Poly::zero(n)
            }
        })
    }

    /// P^a on a monomial in the free polynomial ring, by the Cartan formula.
    fn act_monomial(&self, a: u32, m: &Monomial) -> Poly {
        let n = self.nvars();
        if a == 0 {
            return Poly::monomial(m.clone(), 1);
        }
        let deg = Poly::monomial_degree(m, &self.weights());
        if a as usize > deg {
            return Poly::zero(n);
        }
        let key = (a, m.clone());
        if let Some(x) = self.caches.action.read().unwrap().get(&key) {
            return x.clone();
        }
        let p = self.prime;
        let i = m.iter().position(|&e| e > 0).expect("positive degree monomial");
        let mut rest = m.clone();
        rest[i] -= 1;
        let gdeg = self.generators[i].degree as u32;
        let mut out = Poly::zero(n);
        for b in 0..=a.min(gdeg) {
            let left = self.generator_power(i, b);
            if left.is_zero() {
                continue;
            }
            let right = self.act_monomial(a - b, &rest);
            if right.is_zero() {
                continue;
            }
            out = out.add(&left.mul(&right, p), p);
        }
        self.caches.action.write().unwrap().insert(key, out.clone());
        out
    }

    /// P^a f for homogeneous f, reduced modulo the relations.
    pub fn total_power_act(&self, a: u32, f: &Poly) -> Result<Poly> {
        let p = self.prime;
        let Some(d) = self.degree_of(f)? else {
            return Ok(Poly::zero(self.nvars()));
        };
        self.check_degree(d + a as usize * (p.value() as usize - 1))?;
        let mut out = Poly::zero(self.nvars());
        for (m, c) in f.terms() {
            out = out.add(&self.act_monomial(a, m).scale(c, p), p);
        }
        self.normal_form(&out)
    }

    /// Applies a word, rightmost factor first.
    pub fn apply_word(&self, w: &Word, f: &Poly) -> Result<Poly> {
        let mut cur = f.clone();
        for &a in w.exponents().iter().rev() {
            cur = self.total_power_act(a, &cur)?;
        }
        Ok(cur)
    }

    pub fn apply_expr(&self, e: &OpExpr, f: &Poly) -> Result<Poly> {
        let p = self.prime;
        let mut out = Poly::zero(self.nvars());
        for (w, c) in e.terms() {
            out = out.add(&self.apply_word(w, f)?.scale(c, p), p);
        }
        Ok(out)
    }

    /// Matrix of P^a from degree `d` to degree `d + a(p-1)`.
    pub fn act_matrix(&self, a: u32, d: usize) -> Result<FpMatrix> {
        let t = d + a as usize * (self.prime.value() as usize - 1);
        let basis = self.basis(d)?;
        let rows = self.dim(t)?;
        let cols: Vec<Vec<u32>> = basis
            .into_iter()
            .map(|m| {
                let img = self.total_power_act(a, &Poly::monomial(m, 1))?;
                self.to_vector(&img, t)
            })
            .collect::<Result<_>>()?;
        Ok(FpMatrix::from_columns(self.prime, rows, &cols))
    }

    /// The ring as an unstable module through degree `top` (a window: the
    /// ring continues above). Polynomial rings carry the Frobenius detector.
    pub fn to_module(&self, top: usize) -> Result<FiniteModule> {
        self.check_degree(top)?;
        let p = self.prime;
        let q1 = p.value() as usize - 1;
        let dims: Vec<usize> = (0..=top).map(|d| self.dim(d)).collect::<Result<_>>()?;
        let mut action = BTreeMap::new();
        for d in 1..=top {
            for a in 1..=d as u32 {
                if d + a as usize * q1 > top {
                    break;
                }
                let m = self.act_matrix(a, d)?;
                if !m.is_zero() {
                    action.insert((a, d), m);
                }
            }
        }
        let names = self.names();
        let labels = (0..=top)
            .map(|d| {
                self.basis(d)
                    .map(|b| b.iter().map(|m| Poly::monomial(m.clone(), 1).display(&names)).collect())
            })
            .collect::<Result<Vec<Vec<String>>>>()?;
        let mut module = FiniteModule::from_parts(p, dims.clone(), Above::Unknown, action)?.with_labels(labels);
        if self.reduced {
            let det = dims.iter().map(|&n| FpMatrix::identity(p, n)).collect();
            module = module.with_frobenius_detector(det);
        }
        Ok(module)
    }

    /// The quotient R^{<n} as a bounded unstable module.
    pub fn truncate(&self, n: usize) -> Result<FiniteModule> {
        if n == 0 {
            return Ok(FiniteModule::zero(self.prime));
        }
        self.to_module(n - 1)?.truncate_below(n)
    }

    /// Checks homogeneity, instability, the top-power rule, compatibility
    /// of the action with the relations, and Adem consistency, through `cutoff`.
    pub fn validate(&self, cutoff: usize) -> Result<()> {
        let p = self.prime;
        let q1 = p.value() as usize - 1;
        let w = self.weights();
        let names = self.names();
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::validation(format!("$.generators[{i}].degree"), "generators must have positive degree"));
            }
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::validation(format!("$.generators[{i}].name"), format!("duplicate generator '{}'", g.name)));
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            match r.homogeneous_degree(&w) {
                Err(_) => return Err(Error::validation(format!("$.relations[{i}]"), "relation is not homogeneous")),
                Ok(None) => return Err(Error::validation(format!("$.relations[{i}]"), "relation is zero")),
                Ok(Some(d)) if d > cutoff => {
                    return Err(Error::validation(format!("$.relations[{i}]"), format!("relation degree {d} exceeds cutoff {cutoff}")))
                }
                Ok(Some(_)) => {}
            }
        }
        for (&(g, a), v) in &self.steenrod {
            let gd = self.generators[g].degree;
            let name = &self.generators[g].name;
            let path = format!("$.steenrod[P^{a}({name})]");
            if a == 0 {
                return Err(Error::validation(path, "op_index must be positive"));
            }
            if a as usize > gd {
                if !v.is_zero() {
                    return Err(Error::validation(path, format!("instability: P^{a} must vanish on degree {gd}")));
                }
                continue;
            }
            match v.homogeneous_degree(&w) {
                Err(_) => return Err(Error::validation(path, "value is not homogeneous")),
                Ok(Some(d)) if d != gd + a as usize * q1 => {
                    return Err(Error::validation(path, format!("value has degree {d}, expected {}", gd + a as usize * q1)))
                }
                _ => {}
            }
        }
        let c = self.with_cutoff(Some(cutoff));
        for (g, gen) in self.generators.iter().enumerate() {
            let a = gen.degree as u32;
            let top = gen.degree * p.value() as usize;
            let val = self.generator_power(g, a);
            let expect = Poly::var(self.nvars(), g).pow(p.value() as u64, p);
            let equal = if top <= cutoff {
                c.normal_form(&val.sub(&expect, p))?.is_zero()
            } else {
                val == expect
            };
            if !equal {
                return Err(Error::validation(
                    format!("$.steenrod[P^{a}({})]", gen.name),
                    format!(
                        "top power violated: P^{a}({}) = {} but {}^{} is required",
                        gen.name,
                        val.display(&names),
                        gen.name,
                        p
                    ),
                ));
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            let d = r.homogeneous_degree(&w)?.unwrap_or(0);
            for a in 1..=d as u32 {
                if d + a as usize * q1 > cutoff {
                    break;
                }
                let mut img = Poly::zero(self.nvars());
                for (m, k) in r.terms() {
                    img = img.add(&c.act_monomial(a, m).scale(k, p), p);
                }
                if !c.normal_form(&img)?.is_zero() {
                    return Err(Error::validation(
                        format!("$.relations[{i}]"),
                        format!("P^{a} of relation {} is {} which is not in the ideal", r.display(&names), img.display(&names)),
                    ));
                }
            }
        }
        let q = p.value();
        for d in 1..=cutoff {
            let basis = c.basis(d)?;
            for b in 1..=d as u32 {
                let mid = d + b as usize * q1;
                if mid > cutoff {
                    break;
                }
                for a in 1..q * b {
                    if mid + a as usize * q1 > cutoff {
                        break;
                    }
                    let word = Word::new([a, b]);
                    let nf = adem_reduce(&OpExpr::from_word(word.clone(), p));
                    for m in &basis {
                        let f = Poly::monomial(m.clone(), 1);
                        let lhs = c.apply_word(&word, &f)?;
                        let rhs = c.apply_expr(&nf, &f)?;
                        if lhs != rhs {
                            return Err(Error::validation(
                                "$.steenrod",
                                format!(
                                    "Adem relation fails: {word} ({}) = {} but {nf} gives {}",
                                    f.display(&names),
                                    lhs.display(&names),
                                    rhs.display(&names)
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_schema(&self, cutoff: usize) -> RingSchema {
        let terms = |f: &Poly| -> Vec<TermSchema> {
            f.terms()
                .map(|(m, c)| TermSchema {
                    coeff: c as i64,
                    monomial: m.clone(),
                })
                .collect()
        };
        RingSchema {
            prime: self.prime.value(),
            cutoff,
            generators: self.generators.clone(),
            relations: self.relations.iter().map(terms).collect(),
            steenrod: self
                .steenrod
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(&(g, a), v)| RuleSchema {
                    op_index: a,
                    gen: self.generators[g].name.clone(),
                    value: terms(v),
                })
                .collect(),
            provenance: self.provenance,
        }
    }

    pub fn to_json(&self, cutoff: usize) -> String {
        serde_json::to_string_pretty(&self.to_schema(cutoff)).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSchema {
    pub coeff: i64,
    pub monomial: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSchema {
    pub op_index: u32,
    pub gen: String,
    pub value: Vec<TermSchema>,
}

/// The on-disk ring format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSchema {
    pub prime: u32,
    pub cutoff: usize,
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub relations: Vec<Vec<TermSchema>>,
    #[serde(default)]
    pub steenrod: Vec<RuleSchema>,
    pub provenance: Provenance,
}

fn schema_poly(p: Prime, nvars: usize, terms: &[TermSchema], path: &str) -> Result<Poly> {
    for (i, t) in terms.iter().enumerate() {
        if t.monomial.len() != nvars {
            return Err(Error::validation(
                format!("{path}[{i}].monomial"),
                format!("expected {nvars} exponents, got {}", t.monomial.len()),
            ));
        }
    }
    Poly::from_terms(p, nvars, terms.iter().map(|t| (t.coeff, t.monomial.clone())))
}

/// Loads and validates a ring.
pub fn ingest_ring(text: &str) -> Result<ChowRing> {
    let schema: RingSchema = serde_json::from_str(text)?;
    ring_from_schema(&schema)
}

pub fn ring_from_schema(s: &RingSchema) -> Result<ChowRing> {
    let p = Prime::new(s.prime).map_err(|e| Error::validation("$.prime", e.to_string()))?;
    let nv = s.generators.len();
    let relations = s
        .relations
        .iter()
        .enumerate()
        .map(|(i, r)| schema_poly(p, nv, r, &format!("$.relations[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let mut steenrod = BTreeMap::new();
    for (i, rule) in s.steenrod.iter().enumerate() {
        let path = format!("$.steenrod[{i}]");
        let g = s
            .generators
            .iter()
            .position(|g| g.name == rule.gen)
            .ok_or_else(|| Error::validation(format!("{path}.gen"), format!("unknown generator '{}'", rule.gen)))?;
        let v = schema_poly(p, nv, &rule.value, &format!("{path}.value"))?;
        if steenrod.insert((g, rule.op_index), v).is_some() {
            return Err(Error::validation(path, format!("duplicate rule for P^{}({})", rule.op_index, rule.gen)));
        }
    }
    // a missing top power defaults to g^p; an explicit one is validated
    for (g, gen) in s.generators.iter().enumerate() {
        let a = gen.degree as u32;
        steenrod
            .entry((g, a))
            .or_insert_with(|| Poly::var(nv, g).pow(p.value() as u64, p));
    }
    let ring = ChowRing {
        prime: p,
        cutoff: Some(s.cutoff),
        generators: s.generators.clone(),
        relations,
        steenrod,
        provenance: s.provenance,
        reduced: false,
        caches: Arc::default(),
    };
    ring.validate(s.cutoff)?;
    let mut ring = ring;
    ring.steenrod.retain(|_, v| !v.is_zero());
    ring.reduced = ring.relations.is_empty();
    Ok(ring)
}

/// A degree-preserving algebra map given on generators.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: ChowRing,
    pub target: ChowRing,
    pub images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: ChowRing, target: ChowRing, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::DimensionMismatch {
                expected: source.nvars(),
                got: images.len(),
            });
        }
        for (g, img) in images.iter().enumerate() {
            if let Some(d) = target.degree_of(img)? {
                if d != source.generators[g].degree {
                    return Err(Error::validation(
                        format!("images[{g}]"),
                        format!("degree {d} differs from generator degree {}", source.generators[g].degree),
                    ));
                }
            }
        }
        Ok(RingMap { source, target, images })
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        let p = self.source.prime;
        self.target.normal_form(&f.substitute(&self.images, self.target.nvars(), p))
    }

    /// Matrix from the degree-d basis of the source to that of the target.
    pub fn matrix(&self, d: usize) -> Result<FpMatrix> {
        let rows = self.target.dim(d)?;
        let cols: Vec<Vec<u32>> = self
            .source
            .basis(d)?
            .into_iter()
            .map(|m| self.target.to_vector(&self.apply(&Poly::monomial(m, 1))?, d))
            .collect::<Result<_>>()?;
        Ok(FpMatrix::from_columns(self.source.prime, rows, &cols))
    }

    /// Checks f(P^a g) = P^a f(g) on generators.
    pub fn validate(&self) -> Result<()> {
        for (g, gen) in self.source.generators.iter().enumerate() {
            for a in 1..=gen.degree as u32 {
                let lhs = self.apply(&self.source.generator_power(g, a))?;
                let rhs = self.target.total_power_act(a, &self.images[g])?;
                if lhs != rhs {
                    return Err(Error::validation(
                        format!("images[{g}]"),
                        format!("map does not commute with P^{a} on {}", gen.name),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Restriction along an inclusion of abelian p-groups `h -> g`, where
/// `images[l]` gives the image of the l-th generator of `h` in the
/// coordinates of `g`. The class y_j of the j-th coordinate character of g
/// restricts to sum_l (v_{lj} m_l / n_j) u_l, with m_l, n_j the cyclic orders.
pub fn restriction_map(h: &AbelianGroup, g: &AbelianGroup, images: &[Vec<u64>]) -> Result<RingMap> {
    let p = g.prime();
    if h.prime() != p {
        return Err(Error::validation("prime", "groups over different primes"));
    }
    if !g.is_injective(h, images) {
        return Err(Error::NotASubgroup(format!("{h} -> {g} is not an injective homomorphism")));
    }
    let src = catalog_ring(g)?;
    let tgt = catalog_ring(h)?;
    let hv = tgt.nvars();
    let mut out = Vec::new();
    for (j, &n) in g.orders().iter().enumerate() {
        let mut f = Poly::zero(hv);
        for (l, &m) in h.orders().iter().enumerate() {
            let v = images[l][j] % n;
            let c = (v as u128 * m as u128 / n as u128) % p.value() as u128;
            let mut mono = vec![0; hv];
            mono[l] = 1;
            f.add_term(p, mono, c as u32);
        }
        out.push(f);
    }
    RingMap::new(src, tgt, out)
}
