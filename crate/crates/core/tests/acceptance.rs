//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line with details, and enforcing its runtime budget.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use braidcg::burau::{burau_int, burau_mod, is_congruence_member, reduce_mod, CongruenceLevel};
use braidcg::closure::{close, complement_search, find_isomorphism, structure_invariants};
use braidcg::linking::{linking_vector, pairs, phi_mod2, Mod2Vector};
use braidcg::symplectic::{invariant_forms, is_alternating_nondegenerate};
use braidcg::word::{random_word_with, BraidWord};
use num_bigint::BigInt;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn choose2(n: usize) -> usize {
    n * (n - 1) / 2
}

fn sigma_alphabet(n: usize, power: i64) -> Vec<BraidWord> {
    (1..n)
        .map(|i| BraidWord::generator(n, i).unwrap().power(power))
        .collect()
}

fn pure_alphabet(n: usize, power: i64) -> Vec<BraidWord> {
    pairs(n)
        .into_iter()
        .map(|(i, j)| BraidWord::pure_generator(n, i, j).unwrap().power(power))
        .collect()
}

fn mod_images(words: &[BraidWord], m: u64) -> Vec<braidcg::ModularMatrix> {
    words.iter().map(|w| burau_mod(w, m).unwrap()).collect()
}

struct Criterion {
    label: &'static str,
    budget: Duration,
    started: Instant,
    failures: Vec<String>,
}

impl Criterion {
    fn start(label: &'static str, budget_secs: u64) -> Self {
        Self {
            label,
            budget: Duration::from_secs(budget_secs),
            started: Instant::now(),
            failures: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(mut self) {
        let elapsed = self.started.elapsed();
        if elapsed > self.budget {
            self.failures
                .push(format!("runtime {elapsed:.2?} exceeds {:?} budget", self.budget));
        }
        if self.failures.is_empty() {
            println!("criterion {}: PASS ({elapsed:.2?})", self.label);
        } else {
            println!(
                "criterion {}: FAIL ({elapsed:.2?}) — {}",
                self.label,
                self.failures.join("; ")
            );
        }
        assert!(self.failures.is_empty(), "criterion {}: {:?}", self.label, self.failures);
    }
}

#[test]
fn criterion_01_burau_soundness() {
    let mut c = Criterion::start("1 burau-soundness", 5);
    for n in 3..=8usize {
        for i in 1..n - 1 {
            let lhs = BraidWord::new(n, vec![i as i32, i as i32 + 1, i as i32]).unwrap();
            let rhs = BraidWord::new(n, vec![i as i32 + 1, i as i32, i as i32 + 1]).unwrap();
            c.require(burau_int(&lhs) == burau_int(&rhs), || {
                format!("braid relation n={n} i={i}")
            });
        }
        for i in 1..n {
            for j in i + 2..n {
                let lhs = BraidWord::new(n, vec![i as i32, j as i32]).unwrap();
                let rhs = BraidWord::new(n, vec![j as i32, i as i32]).unwrap();
                c.require(burau_int(&lhs) == burau_int(&rhs), || {
                    format!("far commutation n={n} ({i},{j})")
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut det_failures = 0usize;
    for k in 0..1000 {
        let n = 3 + k % 6;
        let alphabet = sigma_alphabet(n, 1);
        let w = random_word_with(n, 25, &alphabet, &mut rng).unwrap();
        if burau_int(&w).det() != BigInt::from(1) {
            det_failures += 1;
        }
    }
    c.require(det_failures == 0, || format!("{det_failures} of 1000 sampled dets != 1"));
    c.finish();
}

#[test]
fn criterion_02_arnold_orders() {
    let mut c = Criterion::start("2 arnold-orders", 5);
    for n in 3..=5usize {
        let order = close(&mod_images(&sigma_alphabet(n, 1), 2), 10_000_000)
            .unwrap()
            .order();
        c.require(order == factorial(n), || {
            format!("mod-2 closure at n={n}: got {order}, want {}", factorial(n))
        });
    }
    c.finish();
}

#[test]
fn criterion_03_kordek_margalit_orders() {
    let mut c = Criterion::start("3 kordek-margalit-orders", 60);
    for (n, expected) in [(3usize, 48usize), (4, 1536), (5, 122_880)] {
        assert_eq!(expected, factorial(n) << choose2(n));
        let order = close(&mod_images(&sigma_alphabet(n, 1), 4), 10_000_000)
            .unwrap()
            .order();
        c.require(order == expected, || {
            format!("mod-4 closure at n={n}: got {order}, want {expected}")
        });
    }
    c.finish();
}

#[test]
fn criterion_04_brendle_margalit() {
    let mut c = Criterion::start("4 brendle-margalit", 30);
    for (n, expected) in [(3usize, 8usize), (4, 64), (5, 1024)] {
        assert_eq!(expected, 1usize << choose2(n));
        let g = close(&mod_images(&pure_alphabet(n, 1), 4), 10_000_000).unwrap();
        let inv = structure_invariants(&g);
        c.require(inv.order == expected, || {
            format!("pure closure order at n={n}: got {}, want {expected}", inv.order)
        });
        c.require(inv.abelian, || format!("pure closure not abelian at n={n}"));
        c.require(inv.exponent == 2, || {
            format!("pure closure exponent at n={n}: got {}", inv.exponent)
        });
    }
    c.finish();
}

#[test]
fn criterion_05_symquot() {
    for (n, ell, label) in [
        (3usize, 3u64, "5 symquot n=3 l=3"),
        (3, 5, "5 symquot n=3 l=5"),
        (4, 3, "5 symquot n=4 l=3"),
        (4, 5, "5 symquot n=4 l=5"),
    ] {
        let mut c = Criterion::start(label, 30);
        let alphabet = sigma_alphabet(n, ell as i64);
        let order = close(&mod_images(&alphabet, 2 * ell), 10_000_000)
            .unwrap()
            .order();
        c.require(order == factorial(n), || {
            format!("closure mod 2l: got {order}, want {}", factorial(n))
        });

        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut found = 0usize;
        let mut draws = 0usize;
        let mut kernel_failures = 0usize;
        while found < 500 && draws < 500_000 {
            draws += 1;
            let w = random_word_with(n, 40, &alphabet, &mut rng).unwrap();
            if w.is_pure() {
                found += 1;
                if !burau_mod(&w, 2 * ell).unwrap().is_identity() {
                    kernel_failures += 1;
                }
            }
        }
        c.require(found == 500, || format!("only {found} of 500 samples found"));
        c.require(kernel_failures == 0, || {
            format!("{kernel_failures} kernel samples nontrivial mod {}", 2 * ell)
        });
        c.finish();
    }
}

#[test]
fn criterion_06_abquot() {
    let mut c = Criterion::start("6 abquot", 60);
    for (n, ell) in [(3usize, 3u64), (4, 3)] {
        let g = close(&mod_images(&pure_alphabet(n, ell as i64), 4 * ell), 10_000_000).unwrap();
        let inv = structure_invariants(&g);
        let expected = 1usize << choose2(n);
        c.require(inv.order == expected, || {
            format!("order at (n={n}, l={ell}): got {}, want {expected}", inv.order)
        });
        c.require(inv.exponent == 2, || {
            format!("exponent at (n={n}, l={ell}): got {}", inv.exponent)
        });

        for (i, j) in pairs(n) {
            let a_ell = BraidWord::pure_generator(n, i, j).unwrap().power(ell as i64);
            c.require(
                phi_mod2(&a_ell).unwrap() == Mod2Vector::basis(n, i, j).unwrap(),
                || format!("phi basis at (n={n}, pair ({i},{j}))"),
            );
        }

        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pure = pure_alphabet(n, 1);
        let mut phi_failures = 0usize;
        let mut kernel_failures = 0usize;
        for _ in 0..200 {
            let base = random_word_with(n, 40, &pure, &mut rng).unwrap();
            let v = linking_vector(&base).unwrap();
            let mut w = base;
            for (i, j) in pairs(n) {
                if v.component(i, j).rem_euclid(2) != 0 {
                    w = w
                        .compose(&BraidWord::pure_generator(n, i, j).unwrap().inverse())
                        .unwrap();
                }
            }
            if !phi_mod2(&w).unwrap().is_zero() {
                phi_failures += 1;
            } else if !burau_mod(&w, 4).unwrap().is_identity() {
                kernel_failures += 1;
            }
        }
        c.require(phi_failures == 0, || {
            format!("{phi_failures} phi-trivial constructions failed at (n={n}, l={ell})")
        });
        c.require(kernel_failures == 0, || {
            format!("{kernel_failures} phi-trivial words nontrivial mod 4 at (n={n}, l={ell})")
        });
    }
    c.finish();
}

#[test]
fn criterion_07_fivelem() {
    let mut c = Criterion::start("7 fivelem", 120);
    for (n, ell) in [(3usize, 3u64), (3, 5), (4, 3)] {
        let g1 = close(&mod_images(&sigma_alphabet(n, 1), 4), 10_000_000).unwrap();
        let mut gens = sigma_alphabet(n, ell as i64);
        gens.extend(pure_alphabet(n, ell as i64));
        let g2 = close(&mod_images(&gens, 4 * ell), 10_000_000).unwrap();
        c.require(g1.order() == g2.order(), || {
            format!("orders disagree at (n={n}, l={ell}): {} vs {}", g1.order(), g2.order())
        });
        c.require(structure_invariants(&g1) == structure_invariants(&g2), || {
            format!("fingerprints disagree at (n={n}, l={ell})")
        });
        if n == 3 {
            c.require(g1.order() == 48, || format!("order at n=3: got {}", g1.order()));
            c.require(find_isomorphism(&g1, &g2).unwrap(), || {
                format!("no exact isomorphism at (n=3, l={ell})")
            });
        }
    }
    c.finish();
}

#[test]
fn criterion_08_nonsplit() {
    let mut c = Criterion::start("8 nonsplit", 10);
    let g = close(&mod_images(&sigma_alphabet(3, 1), 4), 10_000_000).unwrap();
    let k = close(&mod_images(&pure_alphabet(3, 1), 4), 10_000_000).unwrap();
    c.require(g.order() == 48, || format!("|G| = {}", g.order()));
    c.require(k.order() == 8, || format!("|K| = {}", k.order()));
    c.require(k.is_subgroup_of(&g), || "K not contained in G".to_string());
    c.require(
        complement_search(&g, &k, 6).unwrap().is_none(),
        || "found an order-6 complement".to_string(),
    );
    c.finish();
}

#[test]
fn criterion_09_crt() {
    let mut c = Criterion::start("9 crt", 10);
    let n = 4;
    let sigma = sigma_alphabet(n, 1);
    for (a, b) in [(2u64, 3u64), (4, 3), (2, 9)] {
        let lcm = num_integer::lcm(a, b);
        let la = CongruenceLevel::new(a).unwrap();
        let lb = CongruenceLevel::new(b).unwrap();
        let ld = CongruenceLevel::new(lcm).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut failures = 0usize;
        for k in 0..500 {
            // mix random words with constructed lcm-level members
            let w = if k % 5 == 0 {
                let u = random_word_with(n, 6, &sigma, &mut rng).unwrap();
                let i = 1 + k % (n - 1);
                let core = BraidWord::generator(n, i).unwrap().power(lcm as i64);
                u.compose(&core).unwrap().compose(&u.inverse()).unwrap()
            } else {
                random_word_with(n, 30, &sigma, &mut rng).unwrap()
            };
            let both = is_congruence_member(&w, la) && is_congruence_member(&w, lb);
            if both != is_congruence_member(&w, ld) {
                failures += 1;
            }
        }
        c.require(failures == 0, || {
            format!("{failures} of 500 biconditional failures at (a={a}, b={b})")
        });
    }
    c.finish();
}

#[test]
fn criterion_10_symplectic_witness() {
    let mut c = Criterion::start("10 symplectic-witness", 10);
    for n in [3usize, 5, 7, 9] {
        let space = invariant_forms(n).unwrap();
        let witness = space.basis().iter().find(|j| is_alternating_nondegenerate(j));
        c.require(witness.is_some(), || format!("no symplectic witness at n={n}"));
        let Some(witness) = witness else { continue };
        let alphabet = sigma_alphabet(n, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut failures = 0usize;
        for _ in 0..100 {
            let w = random_word_with(n, 30, &alphabet, &mut rng).unwrap();
            let m = burau_int(&w);
            if m.transpose().mul(witness).mul(&m) != *witness {
                failures += 1;
            }
        }
        c.require(failures == 0, || {
            format!("{failures} of 100 invariance failures at n={n}")
        });
    }
    c.finish();
}

/// The full property suites live in the `properties` test target and the
/// per-module unit tests; this criterion re-runs the sampled laws at 200
/// cases each so the acceptance run is self-contained.
#[test]
fn criterion_11_property_suites() {
    let mut c = Criterion::start("11 property-suites", 60);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures = 0usize;
    for k in 0..200 {
        let n = 3 + k % 4;
        let sigma = sigma_alphabet(n, 1);
        let w1 = random_word_with(n, 15, &sigma, &mut rng).unwrap();
        let w2 = random_word_with(n, 15, &sigma, &mut rng).unwrap();
        let prod = w1.compose(&w2).unwrap();

        // word laws
        failures += (w1.inverse().inverse() != w1) as usize;
        failures += (!w1.compose(&w1.inverse()).unwrap().free_reduce().is_empty()) as usize;
        failures +=
            (prod.permutation() != w1.permutation().then(&w2.permutation()).unwrap()) as usize;

        // representation laws
        failures += (burau_int(&prod) != burau_int(&w1).mul(&burau_int(&w2))) as usize;
        let m = 2 + (k as u64 % 11);
        failures += (burau_mod(&prod, m).unwrap() != reduce_mod(&burau_int(&prod), m).unwrap())
            as usize;
        failures += (!burau_int(&w1).mul(&burau_int(&w1.inverse())).is_identity()) as usize;

        // linking additivity on pure words
        let pure = pure_alphabet(n, 1);
        let u = random_word_with(n, 8, &pure, &mut rng).unwrap();
        let v = random_word_with(n, 8, &pure, &mut rng).unwrap();
        let sum = linking_vector(&u)
            .unwrap()
            .add(&linking_vector(&v).unwrap())
            .unwrap();
        failures += (linking_vector(&u.compose(&v).unwrap()).unwrap() != sum) as usize;

        // divisor levels
        if is_congruence_member(&u, CongruenceLevel::new(4).unwrap())
            && !is_congruence_member(&u, CongruenceLevel::new(2).unwrap())
        {
            failures += 1;
        }
    }
    c.require(failures == 0, || format!("{failures} sampled-law failures"));
    c.finish();
}
