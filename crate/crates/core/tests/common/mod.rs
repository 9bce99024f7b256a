#![allow(dead_code)]

use std::path::PathBuf;

use steenrod_chow::fp::Prime;
use steenrod_chow::groups::{load_group_path, GroupData, GroupFile};
use steenrod_chow::unstable::FinitelyPresentedModule;

pub fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn group(name: &str) -> (GroupFile, GroupData) {
    let file = load_group_path(&data(&format!("groups/{name}.json"))).unwrap();
    let g = GroupData::from_file(&file, file.prime.unwrap());
    (file, g)
}

fn module_json(p: u32, gens: &[(&str, usize)], rels: &[&[(i64, &str, &str)]]) -> FinitelyPresentedModule {
    let gens: Vec<_> = gens.iter().map(|(n, d)| serde_json::json!({"name": n, "degree": d})).collect();
    let rels: Vec<_> = rels
        .iter()
        .map(|r| r.iter().map(|(c, op, g)| serde_json::json!({"coeff": c, "op": op, "gen": g})).collect::<Vec<_>>())
        .collect();
    let text = serde_json::json!({"prime": p, "generators": gens, "relations": rels}).to_string();
    FinitelyPresentedModule::from_json(&text).unwrap()
}

/// F(1) cut off above degree p: g and P^1 g.
pub fn truncated_f1(p: u32) -> FinitelyPresentedModule {
    let top = format!("P^{p} P^1");
    module_json(p, &[("g", 1)], &[&[(1, &top, "g")]])
}

/// Generators in degrees 1 and p; h has only its top power, which it
/// shares with g, and g is cut off above degree p^2.
pub fn mixed(p: u32) -> FinitelyPresentedModule {
    let mut rels: Vec<Vec<(i64, String, &str)>> = (1..p).map(|a| vec![(1, format!("P^{a}"), "h")]).collect();
    rels.push(vec![(1, format!("P^{p}"), "h"), (-1, format!("P^{p} P^1"), "g")]);
    rels.push(vec![(1, format!("P^{} P^{p} P^1", p * p), "g")]);
    let owned: Vec<Vec<(i64, &str, &str)>> =
        rels.iter().map(|r| r.iter().map(|(c, o, g)| (*c, o.as_str(), *g)).collect()).collect();
    let refs: Vec<&[(i64, &str, &str)]> = owned.iter().map(|r| r.as_slice()).collect();
    module_json(p, &[("g", 1), ("h", p as usize)], &refs)
}

/// The five bounded test modules at p, with their dimensions in degrees 0..=p^2.
pub fn test_modules(p: u32) -> Vec<(&'static str, FinitelyPresentedModule, Vec<usize>)> {
    let q = prime(p);
    let n = (p * p) as usize;
    let delta = |ds: &[usize]| {
        let mut v = vec![0; n + 1];
        for &d in ds {
            v[d] += 1;
        }
        v
    };
    let pt1 = FinitelyPresentedModule::point(q, 1);
    let pt2 = FinitelyPresentedModule::point(q, 2);
    let t = truncated_f1(p);
    let sum = pt2.direct_sum(&t).unwrap();
    vec![
        ("point1", pt1, delta(&[1])),
        ("point2", pt2, delta(&[2])),
        ("truncated_f1", t, delta(&[1, p as usize])),
        ("point2+truncated_f1", sum, delta(&[1, 2, p as usize])),
        ("mixed", mixed(p), delta(&[1, p as usize, p as usize, n])),
    ]
}

/// dim F(n)^k counted as multisets of n powers of p summing to k.
pub fn free_dim_oracle(n: usize, k: usize, p: u32) -> usize {
    fn go(n: usize, k: usize, max_e: u32, p: u64) -> usize {
        if n == 0 {
            return usize::from(k == 0);
        }
        let mut count = 0;
        for e in 0..=max_e {
            let v = p.pow(e) as usize;
            if v > k {
                break;
            }
            count += go(n - 1, k - v, e, p);
        }
        count
    }
    go(n, k, 64 / p.max(2), p as u64)
}

/// Binomial coefficient mod p by direct Pascal recursion.
pub fn binom_oracle(n: u64, k: u64, p: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut row = vec![1u32];
    for _ in 0..n {
        let mut next = vec![1u32; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % p;
        }
        row = next;
    }
    row[k as usize]
}
