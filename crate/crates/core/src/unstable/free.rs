use std::collections::HashMap;

use serde::Serialize;

use crate::fp::{FpMatrix, Prime};
use crate::powers::{admissible_monomials, reduce_word, AdmissibleMonomial, Word};
use crate::unstable::module::{Above, FiniteModule};

/// Basis of F(n) in degree d: the classes θ·ι_n for admissible θ of degree
/// d - n with excess at most n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeUnstableBasis {
    pub generator_degree: usize,
    pub degree: usize,
    pub basis: Vec<AdmissibleMonomial>,
}

impl FreeUnstableBasis {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn words(&self) -> Vec<Word> {
        self.basis.iter().map(|m| m.word().clone()).collect()
    }
}

pub fn free_basis(n: usize, d: usize, p: Prime) -> FreeUnstableBasis {
    let basis = free_words(n, d, p)
        .into_iter()
        .map(|w| AdmissibleMonomial::new(w, p).expect("enumerated words are admissible"))
        .collect();
    FreeUnstableBasis {
        generator_degree: n,
        degree: d,
        basis,
    }
}

pub(crate) fn free_words(n: usize, d: usize, p: Prime) -> Vec<Word> {
    if d < n {
        return Vec::new();
    }
    let cap = u32::try_from(n).unwrap_or(u32::MAX);
    admissible_monomials(d - n, p, Some(cap)).as_ref().clone()
}

/// The class of the word `w` applied to ι_n in F(n), as (basis word, coefficient) pairs.
pub(crate) fn free_normal_form(w: &Word, n: usize, p: Prime) -> Vec<(Word, u32)> {
    reduce_word(w, p)
        .iter()
        .filter(|(v, _)| v.excess_unchecked(p) as usize <= n)
        .cloned()
        .collect()
}

/// Coordinates of `free_normal_form(w, n)` in the basis of F(n)^d.
pub(crate) fn free_coordinates(w: &Word, n: usize, index: &HashMap<Word, usize>, len: usize, p: Prime) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for (u, c) in free_normal_form(w, n, p) {
        let i = index[&u];
        v[i] = p.add(v[i], c);
    }
    v
}

fn index_of(words: &[Word]) -> HashMap<Word, usize> {
    words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect()
}

/// The even Brown–Gitler module J̃(k) through degree `cutoff`: its degree-i
/// piece is dual to F(i)^k, and P^a acts by the transpose of right
/// multiplication by P^a between free modules.
#[derive(Clone, Debug, Serialize)]
pub struct BrownGitlerModule {
    pub k: usize,
    pub cutoff: usize,
    #[serde(skip)]
    pub module: FiniteModule,
}

pub fn brown_gitler(k: usize, cutoff: usize, p: Prime) -> BrownGitlerModule {
    let q1 = p.value() as usize - 1;
    let last = k.min(cutoff);
    let bases: Vec<Vec<Word>> = (0..=last).map(|i| free_words(i, k, p)).collect();
    let indices: Vec<HashMap<Word, usize>> = bases.iter().map(|b| index_of(b)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut action = std::collections::BTreeMap::new();
    for i in 1..=last {
        for a in 1..=i as u32 {
            let t = i + a as usize * q1;
            if t > last {
                break;
            }
            if dims[i] == 0 || dims[t] == 0 {
                continue;
            }
            // R_a : F(t)^k -> F(i)^k, θ ι_t ↦ θ P^a ι_i
            let mut m = FpMatrix::zeros(p, dims[t], dims[i]);
            for (col_t, theta) in bases[t].iter().enumerate() {
                let w = theta.concat(&Word::single(a));
                let v = free_coordinates(&w, i, &indices[i], dims[i], p);
                for (row_i, &c) in v.iter().enumerate() {
                    if c != 0 {
                        m.set(col_t, row_i, c);
                    }
                }
            }
            if !m.is_zero() {
                action.insert((a, i), m);
            }
        }
    }
    let above = if cutoff >= k { Above::Zero } else { Above::Unknown };
    let labels = bases
        .iter()
        .map(|b| b.iter().map(|w| format!("({w})*")).collect())
        .collect();
    let module = FiniteModule::from_parts(p, dims, above, action)
        .expect("Brown-Gitler action is unstable")
        .with_labels(labels);
    BrownGitlerModule { k, cutoff, module }
}
