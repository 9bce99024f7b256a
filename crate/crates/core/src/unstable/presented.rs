use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{FpMatrix, Prime, Subspace};
use crate::powers::{parse_word, Word};
use crate::unstable::free::{free_normal_form, free_words};
use crate::unstable::module::{Above, FiniteModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpGenerator {
    pub name: String,
    pub degree: usize,
}

/// One summand `coeff * op * gen` of a relation; `op` is admissible with
/// excess at most the degree of the generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: u32,
    pub op: Word,
    pub gen: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: usize,
    pub terms: Vec<RelationTerm>,
}

/// An unstable module given by generators and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitelyPresentedModule {
    p: Prime,
    generators: Vec<FpGenerator>,
    relations: Vec<Relation>,
}

/// Degree data of a presented module: the free part, the relation span
/// and the chosen quotient basis.
pub(crate) struct DegreePiece {
    pub free: Vec<(usize, Word)>,
    pub index: HashMap<(usize, Word), usize>,
    pub relations: Subspace,
    pub quotient: Vec<usize>,
}

impl FinitelyPresentedModule {
    /// Builds a module from raw relation terms `(coeff, word, generator index)`.
    /// Words are put in admissible form and terms that vanish in the free
    /// module are stripped.
    pub fn new(
        p: Prime,
        generators: Vec<FpGenerator>,
        relations: Vec<Vec<(i64, Word, usize)>>,
    ) -> Result<Self> {
        let mut rels = Vec::new();
        for (ri, raw) in relations.into_iter().enumerate() {
            let mut degree = None;
            let mut acc: BTreeMap<(usize, Word), u32> = BTreeMap::new();
            for (ti, (c, w, g)) in raw.into_iter().enumerate() {
                let path = format!("relations[{ri}][{ti}]");
                let gen = generators
                    .get(g)
                    .ok_or_else(|| Error::validation(format!("{path}.gen"), format!("no generator with index {g}")))?;
                let d = gen.degree + w.degree(p);
                match degree {
                    Some(d0) if d0 != d => {
                        return Err(Error::validation(
                            path,
                            format!("relation mixes degrees {d0} and {d}"),
                        ))
                    }
                    _ => degree = Some(d),
                }
                let c = p.reduce(c);
                for (u, k) in free_normal_form(&w, gen.degree, p) {
                    let e = acc.entry((g, u)).or_insert(0);
                    *e = p.add(*e, p.mul(c, k));
                }
            }
            let terms: Vec<RelationTerm> = acc
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|((gen, op), coeff)| RelationTerm { coeff, op, gen })
                .collect();
            if let (Some(degree), false) = (degree, terms.is_empty()) {
                rels.push(Relation { degree, terms });
            }
        }
        Ok(FinitelyPresentedModule {
            p,
            generators,
            relations: rels,
        })
    }

    pub fn zero(p: Prime) -> Self {
        FinitelyPresentedModule {
            p,
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// The free unstable module F(n).
    pub fn free(p: Prime, n: usize) -> Self {
        FinitelyPresentedModule {
            p,
            generators: vec![FpGenerator {
                name: "g".into(),
                degree: n,
            }],
            relations: Vec::new(),
        }
    }

    /// F_p concentrated in degree d: one generator killed by every P^a, 1 <= a <= d.
    pub fn point(p: Prime, d: usize) -> Self {
        let gens = vec![FpGenerator {
            name: "g".into(),
            degree: d,
        }];
        let rels = (1..=d as u32).map(|a| vec![(1, Word::single(a), 0)]).collect();
        Self::new(p, gens, rels).expect("homogeneous by construction")
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn generators(&self) -> &[FpGenerator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Largest degree of a generator or relation.
    pub fn presentation_degree(&self) -> Option<usize> {
        self.generators
            .iter()
            .map(|g| g.degree)
            .chain(self.relations.iter().map(|r| r.degree))
            .max()
    }

    pub(crate) fn piece(&self, d: usize) -> DegreePiece {
        let p = self.p;
        let mut free = Vec::new();
        for (gi, g) in self.generators.iter().enumerate() {
            for w in free_words(g.degree, d, p) {
                free.push((gi, w));
            }
        }
        let index: HashMap<(usize, Word), usize> =
            free.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let n = free.len();
        let mut spans = Vec::new();
        for r in &self.relations {
            if r.degree > d {
                continue;
            }
            for theta in crate::powers::admissible_monomials(d - r.degree, p, None).iter() {
                let mut v = vec![0u32; n];
                for t in &r.terms {
                    let w = theta.concat(&t.op);
                    for (u, c) in free_normal_form(&w, self.generators[t.gen].degree, p) {
                        let i = index[&(t.gen, u)];
                        v[i] = p.add(v[i], p.mul(c, t.coeff));
                    }
                }
                if v.iter().any(|&x| x != 0) {
                    spans.push(v);
                }
            }
        }
        let relations = Subspace::from_vectors(p, n, spans);
        let quotient = relations.complement_coordinates();
        DegreePiece {
            free,
            index,
            relations,
            quotient,
        }
    }

    /// dim M^d.
    pub fn dim(&self, d: usize) -> usize {
        self.piece(d).quotient.len()
    }

    /// The module through degree `cutoff` as a window; classes are
    /// represented by free basis elements `θ g`.
    pub fn compile(&self, cutoff: usize) -> FiniteModule {
        let p = self.p;
        let q1 = p.value() as usize - 1;
        let pieces: Vec<DegreePiece> = (0..=cutoff).map(|d| self.piece(d)).collect();
        let dims: Vec<usize> = pieces.iter().map(|x| x.quotient.len()).collect();
        let mut action = BTreeMap::new();
        for d in 0..=cutoff {
            for a in 1..=d as u32 {
                let t = d + a as usize * q1;
                if t > cutoff {
                    break;
                }
                if dims[d] == 0 || dims[t] == 0 {
                    continue;
                }
                let tp = &pieces[t];
                let cols: Vec<Vec<u32>> = pieces[d]
                    .quotient
                    .iter()
                    .map(|&c| {
                        let (g, theta) = &pieces[d].free[c];
                        let w = Word::single(a).concat(theta);
                        let n = self.generators[*g].degree;
                        let mut v = vec![0u32; tp.free.len()];
                        for (u, k) in free_normal_form(&w, n, p) {
                            let i = tp.index[&(*g, u)];
                            v[i] = p.add(v[i], k);
                        }
                        tp.relations.quotient_coordinates(&v, &tp.quotient)
                    })
                    .collect();
                let m = FpMatrix::from_columns(p, dims[t], &cols);
                if !m.is_zero() {
                    action.insert((a, d), m);
                }
            }
        }
        let labels = pieces
            .iter()
            .map(|x| {
                x.quotient
                    .iter()
                    .map(|&c| {
                        let (g, w) = &x.free[c];
                        let name = &self.generators[*g].name;
                        if w.is_identity() {
                            name.clone()
                        } else {
                            format!("{w} {name}")
                        }
                    })
                    .collect()
            })
            .collect();
        FiniteModule::from_parts(p, dims, Above::Unknown, action)
            .expect("free actions are unstable")
            .with_labels(labels)
    }

    /// The whole module, when it is proved to vanish above its presentation
    /// degree W or above p·W.
    pub fn bounded(&self) -> Option<FiniteModule> {
        let w = self.presentation_degree().unwrap_or(0);
        let q = self.p.value() as usize;
        self.compile_bounded(w).or_else(|_| self.compile_bounded(q * w)).ok()
    }

    /// Like [`compile`](Self::compile), declaring the module zero above `top`.
    /// This is proved, not assumed: with all generators in degrees <= top,
    /// an admissible θ g of degree above p·top factors through a class of
    /// degree in (top, p·top], so vanishing there forces vanishing above.
    pub fn compile_bounded(&self, top: usize) -> Result<FiniteModule> {
        if let Some(g) = self.generators.iter().find(|g| g.degree > top) {
            return Err(Error::CutoffExceeded { degree: g.degree, cutoff: top });
        }
        let p = self.p.value() as usize;
        let check = p * top.max(1);
        let window = self.compile(check);
        if let Some(d) = (top + 1..=check).find(|&d| window.dim(d) != Some(0)) {
            return Err(Error::CutoffExceeded { degree: d, cutoff: top });
        }
        let m = window.window_to(top + 1);
        let labels: Vec<Vec<String>> = (0..=top).map(|d| m.labels(d).map(|l| l.to_vec()).unwrap_or_default()).collect();
        let action = m.action_entries().map(|(k, v)| (*k, v.clone())).collect();
        Ok(FiniteModule::from_parts(self.p, m.dims_slice().to_vec(), Above::Zero, action)?.with_labels(labels))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let schema: ModuleSchema = serde_json::from_str(text)?;
        schema.into_module()
    }

    pub fn to_json(&self) -> String {
        let schema = ModuleSchema {
            prime: self.p.value(),
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|t| TermSchema {
                            coeff: t.coeff as i64,
                            op: if t.op.is_identity() {
                                "1".into()
                            } else {
                                t.op.to_string()
                            },
                            gen: self.generators[t.gen].name.clone(),
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&schema).expect("serializable")
    }

    /// Direct sum of presentations; generator names of `other` get a suffix
    /// when they clash.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::validation("prime", "modules over different primes"));
        }
        let shift = self.generators.len();
        let mut generators = self.generators.clone();
        for g in &other.generators {
            let mut name = g.name.clone();
            while generators.iter().any(|h| h.name == name) {
                name.push('\'');
            }
            generators.push(FpGenerator {
                name,
                degree: g.degree,
            });
        }
        let relations = self
            .relations
            .iter()
            .cloned()
            .chain(other.relations.iter().map(|r| Relation {
                degree: r.degree,
                terms: r
                    .terms
                    .iter()
                    .map(|t| RelationTerm {
                        gen: t.gen + shift,
                        ..t.clone()
                    })
                    .collect(),
            }))
            .collect();
        Ok(FinitelyPresentedModule {
            p: self.p,
            generators,
            relations,
        })
    }
}

/// A minimal presentation of a module window through degree `cutoff`:
/// generators span the indecomposables, relations span the new kernel
/// elements in each degree. Exact when the module is zero above `cutoff / p`.
pub fn presentation(m: &FiniteModule, cutoff: usize) -> Result<FinitelyPresentedModule> {
    let p = m.prime();
    let q1 = p.value() as usize - 1;
    if !m.knows(cutoff) {
        return Err(Error::CutoffExceeded {
            degree: cutoff,
            cutoff: m.window().saturating_sub(1),
        });
    }
    // generator vectors in M
    let mut gens: Vec<(usize, Vec<u32>)> = Vec::new();
    for d in 0..=cutoff {
        let n = m.dim(d).unwrap_or(0);
        if n == 0 {
            continue;
        }
        let mut dec = Vec::new();
        for a in 1..=((d / q1) as u32) {
            let s = d - a as usize * q1;
            if (a as usize) > s {
                continue;
            }
            let mat = m.act(a, s).expect("known degree");
            for c in 0..mat.cols() {
                dec.push(mat.column(c));
            }
        }
        let dec = Subspace::from_vectors(p, n, dec);
        for c in dec.complement_coordinates() {
            let mut v = vec![0; n];
            v[c] = 1;
            gens.push((d, v));
        }
    }
    let generators: Vec<FpGenerator> = gens
        .iter()
        .enumerate()
        .map(|(i, (d, _))| FpGenerator {
            name: format!("x{i}"),
            degree: *d,
        })
        .collect();
    let mut out = FinitelyPresentedModule {
        p,
        generators,
        relations: Vec::new(),
    };
    for d in 0..=cutoff {
        let piece = out.piece(d);
        if piece.free.is_empty() {
            continue;
        }
        let n = m.dim(d).unwrap_or(0);
        let cols: Vec<Vec<u32>> = piece
            .free
            .iter()
            .map(|(g, w)| {
                let (gd, gv) = &gens[*g];
                m.word_matrix(w, *gd).expect("known degree").mul_vec(gv).expect("shape")
            })
            .collect();
        let phi = FpMatrix::from_columns(p, n, &cols);
        let kernel = Subspace::from_vectors(p, piece.free.len(), phi.kernel_basis());
        let old = &piece.relations;
        let new: Vec<Vec<u32>> = {
            let mut acc = old.clone();
            let mut picked = Vec::new();
            for v in kernel.basis() {
                if !acc.contains(v) {
                    acc = acc.sum(&Subspace::from_vectors(p, piece.free.len(), [v.clone()]));
                    picked.push(v.clone());
                }
            }
            picked
        };
        for v in new {
            let terms = v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| RelationTerm {
                    coeff: c,
                    op: piece.free[i].1.clone(),
                    gen: piece.free[i].0,
                })
                .collect();
            out.relations.push(Relation { degree: d, terms });
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleSchema {
    prime: u32,
    generators: Vec<FpGenerator>,
    #[serde(default)]
    relations: Vec<Vec<TermSchema>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermSchema {
    coeff: i64,
    op: String,
    gen: String,
}

impl ModuleSchema {
    fn into_module(self) -> Result<FinitelyPresentedModule> {
        let p = Prime::new(self.prime).map_err(|e| Error::validation("$.prime", e.to_string()))?;
        for (i, g) in self.generators.iter().enumerate() {
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::validation(
                    format!("$.generators[{i}].name"),
                    format!("duplicate generator '{}'", g.name),
                ));
            }
        }
        let mut rels = Vec::new();
        for (ri, r) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for (ti, t) in r.iter().enumerate() {
                let path = format!("$.relations[{ri}][{ti}]");
                let gen = self
                    .generators
                    .iter()
                    .position(|g| g.name == t.gen)
                    .ok_or_else(|| Error::validation(format!("{path}.gen"), format!("unknown generator '{}'", t.gen)))?;
                let op = parse_word(&t.op, p).map_err(|e| Error::validation(format!("{path}.op"), e.to_string()))?;
                terms.push((t.coeff, op, gen));
            }
            rels.push(terms);
        }
        FinitelyPresentedModule::new(p, self.generators, rels).map_err(|e| match e {
            Error::Validation { path, msg } => Error::validation(format!("$.{path}"), msg),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn point_compiles_to_a_line() {
        for q in [2, 3] {
            for d in 0..5 {
                let m = FinitelyPresentedModule::point(p(q), d).compile(3 * 6);
                for e in 0..=18 {
                    assert_eq!(m.dim(e), Some((e == d) as usize));
                }
                m.validate_adem().unwrap();
            }
        }
    }

    #[test]
    fn free_module_dims_match_basis() {
        let m = FinitelyPresentedModule::free(p(2), 1).compile(16);
        let dims: Vec<usize> = (0..=16).map(|d| m.dim(d).unwrap()).collect();
        let expect: Vec<usize> = (0..=16).map(|d| [1, 2, 4, 8, 16].contains(&d) as usize).collect();
        assert_eq!(dims, expect);
        m.validate_adem().unwrap();
    }

    #[test]
    fn json_round_trip_and_errors() {
        let text = r#"{"prime": 3, "generators": [{"name": "a", "degree": 2}, {"name": "b", "degree": 4}],
                      "relations": [[{"coeff": 1, "op": "P^1", "gen": "a"}, {"coeff": 2, "op": "1", "gen": "b"}]]}"#;
        let m = FinitelyPresentedModule::from_json(text).unwrap();
        assert_eq!(m.relations().len(), 1);
        let again = FinitelyPresentedModule::from_json(&m.to_json()).unwrap();
        assert_eq!(m, again);

        let bad = r#"{"prime": 2, "generators": [{"name": "a", "degree": 1}], "relations": [[{"coeff": 1, "op": "P^1", "gen": "z"}]]}"#;
        match FinitelyPresentedModule::from_json(bad) {
            Err(Error::Validation { path, .. }) => assert_eq!(path, "$.relations[0][0].gen"),
            other => panic!("unexpected {other:?}"),
        }
        let mixed = r#"{"prime": 2, "generators": [{"name": "a", "degree": 1}],
                       "relations": [[{"coeff": 1, "op": "P^1", "gen": "a"}, {"coeff": 1, "op": "P^2", "gen": "a"}]]}"#;
        assert!(matches!(FinitelyPresentedModule::from_json(mixed), Err(Error::Validation { .. })));
        let extra = r#"{"prime": 2, "generators": [], "extra": 1}"#;
        assert!(FinitelyPresentedModule::from_json(extra).is_err());
    }

    #[test]
    fn presentation_recovers_bounded_modules() {
        let q = p(3);
        let m = FinitelyPresentedModule::point(q, 2)
            .direct_sum(&FinitelyPresentedModule::point(q, 4))
            .unwrap()
            .compile_bounded(4)
            .unwrap();
        let pres = presentation(&m, 12).unwrap();
        assert_eq!(pres.generators().len(), 2);
        let back = pres.compile_bounded(4).unwrap();
        assert_eq!(back.dims(), m.dims());
    }
}
