//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use common::*;
use steenrod_chow::chow::elem_abelian_ring;
use steenrod_chow::groups::{load_group_path, rep_classes, AbelianGroup, FiniteGroup, GroupData};
use steenrod_chow::lannes::{ell_check, tensor_convolution_check, tv_dim_fp, tv_structural};
use steenrod_chow::localization::{bounds_report, build_lambda, f_iso_check, synthetic_totaro, Verdict};
use steenrod_chow::poly::Poly;
use steenrod_chow::powers::{adem_reduce, OpExpr, Word};
use steenrod_chow::unstable::{brown_gitler, hom_space, nilpotence_degree_fp, FinitelyPresentedModule, NilVerdict};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// Polynomials in three variables as exponent-vector maps, acted on by the
// Cartan formula with P^a y^m = C(m, a) y^(m + a(p-1)).
type Oracle = BTreeMap<[u32; 3], u32>;

fn oracle_power(a: u32, f: &Oracle, p: u32) -> Oracle {
    let mut out = Oracle::new();
    for (m, &c) in f {
        for a0 in 0..=a {
            for a1 in 0..=a - a0 {
                let a2 = a - a0 - a1;
                let split = [a0, a1, a2];
                let mut coeff = c;
                let mut target = [0u32; 3];
                for i in 0..3 {
                    coeff = coeff * binom_oracle(m[i] as u64, split[i] as u64, p) % p;
                    target[i] = m[i] + split[i] * (p - 1);
                }
                if coeff != 0 {
                    let e = out.entry(target).or_insert(0);
                    *e = (*e + coeff) % p;
                }
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn oracle_word(w: &[u32], f: &Oracle, p: u32) -> Oracle {
    w.iter().rev().fold(f.clone(), |acc, &a| oracle_power(a, &acc, p))
}

fn oracle_expr(e: &OpExpr, f: &Oracle, p: u32) -> Oracle {
    let mut out = Oracle::new();
    for (w, c) in e.terms() {
        for (m, v) in oracle_word(w.exponents(), f, p) {
            let x = out.entry(m).or_insert(0);
            *x = (*x + c * v) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn to_oracle(f: &Poly) -> Oracle {
    f.terms().map(|(m, c)| ([m[0], m[1], m[2]], c)).collect()
}

fn criterion_1() -> Outcome {
    let mut checked = 0usize;
    for p in [2u32, 3, 5] {
        let q = prime(p);
        let ring = elem_abelian_ring(3, q);
        let mut monomials = Vec::new();
        for total in 0..=12u32 {
            for i in 0..=total {
                for j in 0..=total - i {
                    monomials.push([i, j, total - i - j]);
                }
            }
        }
        for a in 0..=10u32 {
            for b in 0..=10 - a {
                let raw = OpExpr::from_word(Word::new([a, b]), q);
                let nf = adem_reduce(&raw);
                for m in &monomials {
                    let f: Oracle = [(*m, 1)].into_iter().collect();
                    let want = oracle_word(&[a, b], &f, p);
                    let got = oracle_expr(&nf, &f, p);
                    check(got == want, || format!("p={p} P^{a}P^{b} on {m:?}: normal form {nf}"))?;
                    let poly = Poly::monomial(m.to_vec(), 1);
                    let lib = ring.apply_expr(&nf, &poly).map_err(err)?;
                    check(to_oracle(&lib) == want, || format!("p={p} P^{a}P^{b} on {m:?}: library action differs"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} word/monomial pairs"))
}

fn criterion_2() -> Outcome {
    for p in [2u32, 3] {
        let a = AbelianGroup::new(prime(p), vec![p as u64]).map_err(err)?;
        let g = GroupData::from_abelian(a.clone());
        let tv = tv_structural(&g, 1).map_err(err)?;
        check(tv.components.len() == p as usize, || format!("p={p}: {} components", tv.components.len()))?;
        for k in 0..=8 {
            let d = tv.dim(k).map_err(err)?;
            check(d == p as usize, || format!("p={p}: dim in degree {k} is {d}"))?;
        }
        for r in ell_check(&a, 1, 8).map_err(err)? {
            check(r.injective && r.domain_dim == r.codomain_dim, || format!("p={p}: ℓ fails in degree {}", r.degree))?;
        }
    }
    Ok("p = 2, 3 through degree 8".into())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        let q = prime(p);
        let mut modules: Vec<(String, FinitelyPresentedModule, Box<dyn Fn(usize) -> usize>)> = Vec::new();
        for d in 1..=4 {
            modules.push((format!("F({d})"), FinitelyPresentedModule::free(q, d), Box::new(move |k| free_dim_oracle(d, k, p))));
        }
        for (name, m, dims) in test_modules(p) {
            modules.push((name.to_string(), m, Box::new(move |k| dims.get(k).copied().unwrap_or(0))));
        }
        for k in 0..=6 {
            let j = brown_gitler(k, k, q);
            for (name, m, oracle) in &modules {
                let h = hom_space(m, &j.module).map_err(err)?.dim();
                check(h == oracle(k), || format!("p={p} {name} k={k}: hom {h}, oracle {}", oracle(k)))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (module, k) pairs"))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        let ms = test_modules(p);
        for i in 0..ms.len() {
            for j in i..ms.len() {
                for r in 1..=2 {
                    let ok = tensor_convolution_check(&ms[i].1, &ms[j].1, r, 6).map_err(err)?;
                    check(ok, || format!("p={p} {} ⊗ {} r={r}", ms[i].0, ms[j].0))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (pair, rank) cases"))
}

fn criterion_5() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        let q = prime(p);
        let mut ms: Vec<(String, FinitelyPresentedModule)> =
            (0..=5).map(|d| (format!("point{d}"), FinitelyPresentedModule::point(q, d))).collect();
        for (name, m, _) in test_modules(p).into_iter().skip(2) {
            ms.push((name.to_string(), m));
        }
        for (name, m) in &ms {
            let n = nilpotence_degree_fp(m, 8);
            check(n.verdict == NilVerdict::Exact, || format!("p={p} {name}: nilpotence degree unresolved"))?;
            let mut first = None;
            for k in 0..=8 {
                if tv_dim_fp(m, 1, k).map_err(err)? != 0 {
                    first = Some(k);
                    break;
                }
            }
            check(first == Some(n.n), || format!("p={p} {name}: nil {} vs first T_V degree {first:?}", n.n))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} modules"))
}

fn abelian_list() -> Vec<&'static str> {
    vec![
        "z2", "klein", "z2cubed", "z4", "z8", "z4xz2", "z3", "z3squared", "z3cubed", "z9", "z27", "z9xz3",
    ]
}

fn criterion_6() -> Outcome {
    for name in abelian_list() {
        let (_, g) = group(name);
        let c = f_iso_check(&g, 8).map_err(err)?;
        check(c.kernel_empty() && c.image_full(), || format!("{name}: kernel or image report incomplete"))?;
        check(c.verdict != Verdict::Unresolved, || format!("{name}: unresolved"))?;
    }
    Ok(format!("{} groups, cutoff 8", abelian_list().len()))
}

// d0 and d1 scan levels through cutoff + 1.
const LAMBDA_CUTOFF: usize = 8;

fn criterion_7() -> Outcome {
    for name in abelian_list() {
        let (file, g) = group(name);
        for n in 1..=3 {
            let e = build_lambda(&g, n, LAMBDA_CUTOFF).map_err(err)?;
            check(e.legs_agree(), || format!("{name} n={n}: legs disagree"))?;
        }
        let faithful = file.faithful_degree.ok_or_else(|| format!("{name}: no faithful degree"))?;
        let b = bounds_report(&g, faithful, LAMBDA_CUTOFF).map_err(err)?;
        check(b.d0.value == 0 && b.d1.value == 0, || format!("{name}: d0 {} d1 {}", b.d0, b.d1))?;
        check(b.d0_within_bound && b.d0.value <= faithful * (faithful - 1) / 2, || format!("{name}: d0 bound"))?;
        check(b.d0.verdict != Verdict::Unresolved, || format!("{name}: unresolved"))?;
    }
    Ok(format!("{} groups, n = 1..3", abelian_list().len()))
}

fn criterion_8() -> Outcome {
    for name in abelian_list() {
        let (file, g) = group(name);
        let b = bounds_report(&g, file.faithful_degree.unwrap_or(1), 8).map_err(err)?;
        check(b.totaro_identity && b.nil_level.value == b.d0.value, || format!("{name}: d0 {} nil {}", b.d0, b.nil_level))?;
    }
    for p in [2u32, 3] {
        for d in 0..=4 {
            let t = synthetic_totaro(prime(p), 1, d, 8).map_err(err)?;
            check(t.d0.value == d && t.nil_level.value == d, || {
                format!("p={p} d={d}: d0 {} nil level {}", t.d0, t.nil_level)
            })?;
            check(t.nil_level.verdict != Verdict::Unresolved, || format!("p={p} d={d}: unresolved"))?;
        }
    }
    Ok("catalog groups and synthetic d ≤ 4".into())
}

/// Commuting p-torsion r-tuples up to conjugation, by direct enumeration.
fn orbit_count(g: &FiniteGroup, r: usize, p: u32) -> (usize, usize) {
    let torsion: Vec<usize> = (0..g.order()).filter(|&x| g.pow(x, p as u64) == 0).collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..r {
        let mut next = Vec::new();
        for t in &tuples {
            for &x in &torsion {
                if t.iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
                    let mut u = t.clone();
                    u.push(x);
                    next.push(u);
                }
            }
        }
        tuples = next;
    }
    let mut seen = HashSet::new();
    let mut orbits = 0;
    for t in &tuples {
        if seen.contains(t) {
            continue;
        }
        orbits += 1;
        for h in 0..g.order() {
            let c: Vec<usize> = t.iter().map(|&x| g.mul(g.mul(h, x), g.inv(h))).collect();
            seen.insert(c);
        }
    }
    (orbits, tuples.len())
}

fn criterion_9() -> Outcome {
    let mut paths: Vec<_> = std::fs::read_dir(data("groups")).map_err(err)?.map(|e| e.unwrap().path()).collect();
    paths.sort();
    let mut checked = 0;
    for path in paths {
        let file = load_group_path(&path).map_err(err)?;
        let g = &file.group;
        if g.order() > 24 {
            continue;
        }
        for p in [2u32, 3] {
            for r in 1..=2 {
                let classes = rep_classes(r, g, prime(p));
                let (orbits, tuples) = orbit_count(g, r, p);
                let name = path.file_stem().unwrap().to_string_lossy();
                check(classes.len() == orbits, || format!("{name} p={p} r={r}: {} classes, {orbits} orbits", classes.len()))?;
                let total: usize = classes.iter().map(|c| c.orbit_size).sum();
                check(total == tuples, || format!("{name} p={p} r={r}: orbit sizes sum to {total}, {tuples} tuples"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (group, p, r) cases"))
}

fn cli_suite(threads: &str) -> Vec<u8> {
    let g = |n: &str| data(&format!("groups/{n}.json")).display().to_string();
    let m = |n: &str| data(&format!("modules/{n}.json")).display().to_string();
    let mut runs: Vec<Vec<String>> = vec![
        vec!["adem".into(), "--prime".into(), "3".into(), "--expr".into(), "P^1 P^1 + P^2 P^3".into()],
        vec!["act".into(), "--prime".into(), "2".into(), "--rank".into(), "2".into(), "--op".into(), "P^2".into(), "--poly".into(), "y1 y2^3".into()],
        vec!["nil".into(), "--ring".into(), data("rings/f2_x_mod_x2.json").display().to_string()],
    ];
    for name in ["point2", "truncated_f1", "free1", "mixed_p3"] {
        runs.push(vec!["tv".into(), "--module".into(), m(name), "--rank".into(), "2".into(), "--cutoff".into(), "6".into()]);
        runs.push(vec!["nil".into(), "--module".into(), m(name)]);
    }
    for name in ["zp", "klein", "z4xz2", "z3squared", "s3", "d4", "q8", "a4"] {
        for r in ["1", "2"] {
            runs.push(vec!["reps".into(), "--group".into(), g(name), "--rank".into(), r.into()]);
        }
        runs.push(vec!["tv".into(), "--group".into(), g(name), "--cutoff".into(), "4".into()]);
        runs.push(vec!["quillen-check".into(), "--group".into(), g(name), "--cutoff".into(), "3".into()]);
        runs.push(vec!["localize".into(), "--group".into(), g(name), "--level".into(), "2".into(), "--cutoff".into(), "3".into()]);
        runs.push(vec!["d0".into(), "--group".into(), g(name), "--cutoff".into(), "3".into()]);
    }
    let mut bytes = Vec::new();
    for args in runs {
        for format in ["tsv", "json"] {
            let argv = std::iter::once("steenrod-chow".to_string())
                .chain(args.iter().cloned())
                .chain(["--format".into(), format.into(), "--threads".into(), threads.into()]);
            let mut out = Vec::new();
            let mut errs = Vec::new();
            let code = steenrod_chow::cli::run(argv, &mut out, &mut errs);
            bytes.extend(format!("$ {} --format {format}\nexit {code}\n", args.join(" ")).bytes());
            bytes.extend(out);
            bytes.extend(errs);
        }
    }
    bytes
}

fn criterion_10() -> Outcome {
    let first = cli_suite("1");
    let second = cli_suite("4");
    check(first == second, || "CLI output differs between runs".into())?;
    Ok(format!("{} bytes identical across runs", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("Adem normal forms act like the raw words", criterion_1, 30),
        ("T_V of B(Z/p) has p components of dimension p", criterion_2, 10),
        ("Brown-Gitler representability", criterion_3, 30),
        ("T_V commutes with tensor products", criterion_4, 60),
        ("nilpotence degree is the first nonzero T_V degree", criterion_5, 60),
        ("restriction to the Quillen limit is an F-isomorphism", criterion_6, 60),
        ("localization legs agree and d0 = d1 = 0 within bounds", criterion_7, 120),
        ("d0 equals the largest nil level", criterion_8, 120),
        ("Rep(V, G) matches brute-force orbit counts", criterion_9, 60),
        ("CLI output is deterministic", criterion_10, 120),
    ];
    let mut failures = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*budget) => Err(format!("{detail}, but over the {budget}s budget")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1}s]", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {e} [{:.1}s]", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
