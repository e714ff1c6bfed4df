//! Named, reproducible verifications of the quotient theorems, one command
//! per theorem, each producing a JSON report.

use std::path::PathBuf;
use std::time::Instant;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::burau::{burau_mod, is_congruence_member, CongruenceLevel, ModularMatrix};
use crate::closure::{
    close_cached, complement_search, find_isomorphism, structure_invariants, FiniteMatrixGroup,
    StructureInvariants, DEFAULT_CLOSURE_CAP,
};
use crate::error::{BraidError, Result};
use crate::linking::{linking_vector, pairs, phi_mod2, Mod2Vector};
use crate::symplectic::{invariant_forms, is_alternating_nondegenerate};
use crate::word::{random_word_with, BraidWord, Permutation};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sampling and caching knobs shared by all commands.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub samples: usize,
    pub word_length: usize,
    pub seed: u64,
    pub closure_cap: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: 500,
            word_length: 40,
            seed: 0,
            closure_cap: DEFAULT_CLOSURE_CAP,
            cache_dir: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub checks: Vec<Check>,
    /// Data outputs (e.g. a witness form) that are not pass/fail checks.
    pub artifacts: Map<String, Value>,
    pub pass: bool,
    pub runtime_seconds: f64,
    pub version: String,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// The report without its runtime field: the part that is bit-for-bit
    /// reproducible from (command, parameters, seed, version).
    pub fn canonical_json(&self) -> Value {
        let mut v = self.to_json();
        v.as_object_mut().unwrap().remove("runtime_seconds");
        v
    }
}

struct ReportBuilder {
    command: String,
    parameters: Map<String, Value>,
    checks: Vec<Check>,
    artifacts: Map<String, Value>,
    started: Instant,
}

impl ReportBuilder {
    fn new(command: &str, parameters: Map<String, Value>) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            checks: Vec::new(),
            artifacts: Map::new(),
            started: Instant::now(),
        }
    }

    /// A failing check is recorded and never aborts the remaining checks.
    fn check(&mut self, name: &str, expected: Value, observed: Value) {
        let pass = expected == observed;
        self.checks.push(Check { name: name.to_string(), expected, observed, pass });
    }

    fn artifact(&mut self, name: &str, value: Value) {
        self.artifacts.insert(name.to_string(), value);
    }

    fn finish(self) -> VerificationReport {
        let pass = self.checks.iter().all(|c| c.pass);
        VerificationReport {
            command: self.command,
            parameters: self.parameters,
            checks: self.checks,
            artifacts: self.artifacts,
            pass,
            runtime_seconds: self.started.elapsed().as_secs_f64(),
            version: TOOLKIT_VERSION.to_string(),
        }
    }
}

fn params(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
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

fn mod_images(words: &[BraidWord], m: u64) -> Result<Vec<ModularMatrix>> {
    words.iter().map(|w| burau_mod(w, m)).collect()
}

fn closure(words: &[BraidWord], m: u64, opts: &VerifyOptions) -> Result<FiniteMatrixGroup> {
    close_cached(&mod_images(words, m)?, opts.closure_cap, opts.cache_dir.as_deref())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn choose2(n: usize) -> u32 {
    (n * (n - 1) / 2) as u32
}

fn invariants_json(inv: &StructureInvariants) -> Value {
    let histogram: Vec<Value> = inv
        .order_histogram
        .iter()
        .map(|(o, c)| json!([o, c]))
        .collect();
    json!({
        "order": inv.order,
        "abelian": inv.abelian,
        "exponent": inv.exponent,
        "order_histogram": histogram,
        "center_order": inv.center_order,
        "commutator_order": inv.commutator_order,
    })
}

/// Samples words with trivial permutation over the given alphabet by
/// rejection, giving up on a sample after a bounded number of draws.
fn sample_trivial_permutation_words(
    n: usize,
    alphabet: &[BraidWord],
    count: usize,
    length: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<BraidWord>> {
    let mut out = Vec::with_capacity(count);
    let max_draws = count * factorial(n) * 20;
    let mut draws = 0usize;
    while out.len() < count && draws < max_draws {
        draws += 1;
        let w = random_word_with(n, length, alphabet, rng)?;
        if w.is_pure() {
            out.push(w);
        }
    }
    Ok(out)
}

/// `B_n/B_n[2] = S_n`: closure order mod 2 plus a sampled two-way check that
/// a word permutes trivially exactly when it dies mod 2.
pub fn verify_arnold(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if !(3..=6).contains(&n) {
        return Err(BraidError::Unsupported(format!("arnold requires 3 <= n <= 6, got {n}")));
    }
    let mut report = ReportBuilder::new(
        "arnold",
        params(&[
            ("n", json!(n)),
            ("samples", json!(opts.samples)),
            ("word_length", json!(opts.word_length)),
            ("seed", json!(opts.seed)),
        ]),
    );
    let order = closure(&sigma_alphabet(n, 1), 2, opts)?.order();
    report.check("closure_order_mod2", json!(factorial(n)), json!(order));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let sigma = sigma_alphabet(n, 1);
    let level2 = CongruenceLevel::new(2)?;
    let mut mismatches = 0usize;
    for _ in 0..opts.samples {
        let w = random_word_with(n, opts.word_length, &sigma, &mut rng)?;
        if w.is_pure() != is_congruence_member(&w, level2) {
            mismatches += 1;
        }
    }
    report.check("sampled_equivalence_failures", json!(0), json!(mismatches));

    // pure samples exercise the backward direction explicitly
    let pure = pure_alphabet(n, 1);
    let mut failures = 0usize;
    for _ in 0..opts.samples {
        let w = random_word_with(n, opts.word_length, &pure, &mut rng)?;
        if !is_congruence_member(&w, level2) {
            failures += 1;
        }
    }
    report.check("pure_sample_mod2_identity_failures", json!(0), json!(failures));
    Ok(report.finish())
}

/// `B_n[l]/B_n[2l] = S_n` for odd `l`.
pub fn verify_symquot(n: usize, ell: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    if ell % 2 == 0 {
        return Err(BraidError::EvenLevel(ell));
    }
    if !(3..=5).contains(&n) {
        return Err(BraidError::Unsupported(format!("symquot requires 3 <= n <= 5, got {n}")));
    }
    if ell == 1 {
        // level 1 degenerates to the Arnol'd statement
        let inner = verify_arnold(n.min(6), opts)?;
        let mut report = ReportBuilder::new(
            "symquot",
            params(&[
                ("n", json!(n)),
                ("ell", json!(1)),
                ("samples", json!(opts.samples)),
                ("word_length", json!(opts.word_length)),
                ("seed", json!(opts.seed)),
            ]),
        );
        for c in inner.checks {
            report.check(&c.name, c.expected, c.observed);
        }
        return Ok(report.finish());
    }
    let mut report = ReportBuilder::new(
        "symquot",
        params(&[
            ("n", json!(n)),
            ("ell", json!(ell)),
            ("samples", json!(opts.samples)),
            ("word_length", json!(opts.word_length)),
            ("seed", json!(opts.seed)),
        ]),
    );

    let level = CongruenceLevel::new(ell)?;
    let mut members = 0usize;
    let mut transpositions = 0usize;
    for i in 1..n {
        let w = BraidWord::generator(n, i)?.power(ell as i64);
        if is_congruence_member(&w, level) {
            members += 1;
        }
        if w.permutation() == Permutation::adjacent_transposition(n, i)? {
            transpositions += 1;
        }
    }
    report.check("sigma_ell_in_level_ell", json!(n - 1), json!(members));
    report.check("sigma_ell_permutation_is_transposition", json!(n - 1), json!(transpositions));

    let order = closure(&sigma_alphabet(n, ell as i64), 2 * ell, opts)?.order();
    report.check("closure_order_mod_2ell", json!(factorial(n)), json!(order));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let alphabet = sigma_alphabet(n, ell as i64);
    let samples =
        sample_trivial_permutation_words(n, &alphabet, opts.samples, opts.word_length, &mut rng)?;
    report.check("trivial_permutation_sample_count", json!(opts.samples), json!(samples.len()));
    let mut failures = 0usize;
    for w in &samples {
        if !burau_mod(w, 2 * ell)?.is_identity() {
            failures += 1;
        }
    }
    report.check("kernel_sample_failures_mod_2ell", json!(0), json!(failures));
    Ok(report.finish())
}

/// `B_n[2l]/B_n[4l] = (Z/2)^{C(n,2)}` for odd `l`.
pub fn verify_abquot(n: usize, ell: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    if ell % 2 == 0 {
        return Err(BraidError::EvenLevel(ell));
    }
    if !(3..=5).contains(&n) {
        return Err(BraidError::Unsupported(format!("abquot requires 3 <= n <= 5, got {n}")));
    }
    let mut report = ReportBuilder::new(
        "abquot",
        params(&[
            ("n", json!(n)),
            ("ell", json!(ell)),
            ("samples", json!(opts.samples)),
            ("word_length", json!(opts.word_length)),
            ("seed", json!(opts.seed)),
        ]),
    );
    let pair_list = pairs(n);
    let level2l = CongruenceLevel::new(2 * ell)?;
    let mut members = 0usize;
    let mut basis_hits = 0usize;
    for &(i, j) in &pair_list {
        let a_ell = BraidWord::pure_generator(n, i, j)?.power(ell as i64);
        if is_congruence_member(&a_ell, level2l) {
            members += 1;
        }
        if phi_mod2(&a_ell)? == Mod2Vector::basis(n, i, j)? {
            basis_hits += 1;
        }
    }
    report.check("pure_gen_ell_in_level_2ell", json!(pair_list.len()), json!(members));
    report.check("phi_of_pure_gen_ell_is_basis", json!(pair_list.len()), json!(basis_hits));

    let group = closure(&pure_alphabet(n, ell as i64), 4 * ell, opts)?;
    let inv = structure_invariants(&group);
    report.check("closure_order_mod_4ell", json!(1usize << choose2(n)), json!(inv.order));
    report.check("closure_abelian", json!(true), json!(inv.abelian));
    report.check("closure_exponent", json!(2), json!(inv.exponent));

    // phi-trivial pure words: kill the linking parity of a random pure word
    // with pure-generator corrections, then the image must die mod 4
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pure = pure_alphabet(n, 1);
    let mut phi_nonzero = 0usize;
    let mut failures = 0usize;
    for _ in 0..opts.samples {
        let base = random_word_with(n, opts.word_length, &pure, &mut rng)?;
        let v = linking_vector(&base)?;
        let mut w = base;
        for &(i, j) in &pair_list {
            let parity = v.component(i, j).rem_euclid(2);
            if parity != 0 {
                w = w.compose(&BraidWord::pure_generator(n, i, j)?.inverse())?;
            }
        }
        if !phi_mod2(&w)?.is_zero() {
            phi_nonzero += 1;
            continue;
        }
        if !burau_mod(&w, 4)?.is_identity() {
            failures += 1;
        }
    }
    report.check("phi_trivial_construction_failures", json!(0), json!(phi_nonzero));
    report.check("phi_trivial_sample_mod4_failures", json!(0), json!(failures));
    Ok(report.finish())
}

/// `B_n[l]/B_n[4l] = B_n/B_n[4]` for odd `l`, compared through orders and
/// structure fingerprints, with an exact isomorphism search at n = 3.
pub fn verify_fivelem(n: usize, ell: u64, opts: &VerifyOptions) -> Result<VerificationReport> {
    if ell % 2 == 0 {
        return Err(BraidError::EvenLevel(ell));
    }
    if ell < 3 || !(3..=4).contains(&n) {
        return Err(BraidError::Unsupported(format!(
            "fivelem requires 3 <= n <= 4 and odd ell >= 3, got n={n}, ell={ell}"
        )));
    }
    let mut report = ReportBuilder::new(
        "fivelem",
        params(&[("n", json!(n)), ("ell", json!(ell)), ("seed", json!(opts.seed))]),
    );
    let expected_order = factorial(n) * (1usize << choose2(n));

    let g1 = closure(&sigma_alphabet(n, 1), 4, opts)?;
    let mut quot_gens = sigma_alphabet(n, ell as i64);
    quot_gens.extend(pure_alphabet(n, ell as i64));
    let g2 = closure(&quot_gens, 4 * ell, opts)?;

    report.check("order_mod4", json!(expected_order), json!(g1.order()));
    report.check("order_mod_4ell", json!(expected_order), json!(g2.order()));
    let inv1 = structure_invariants(&g1);
    let inv2 = structure_invariants(&g2);
    report.check("structure_invariants", invariants_json(&inv1), invariants_json(&inv2));
    if n == 3 {
        let iso = find_isomorphism(&g1, &g2)?;
        report.check("exact_isomorphism_found", json!(true), json!(iso));
    }
    Ok(report.finish())
}

/// Non-splitness probe: no order-6 complement of the pure-braid image in the
/// order-48 image of the 3-strand braid group mod 4.
pub fn verify_nonsplit(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n != 3 {
        return Err(BraidError::ProbeNotExhaustive(factorial(n)));
    }
    let mut report = ReportBuilder::new("nonsplit", params(&[("n", json!(n))]));
    let g = closure(&sigma_alphabet(3, 1), 4, opts)?;
    let k = closure(&pure_alphabet(3, 1), 4, opts)?;
    report.check("ambient_order", json!(48), json!(g.order()));
    report.check("kernel_order", json!(8), json!(k.order()));
    report.check("kernel_contained", json!(true), json!(k.is_subgroup_of(&g)));
    let found = complement_search(&g, &k, 6)?;
    report.check("complement_found", json!(false), json!(found.is_some()));

    // control: the trivial subgroup always has a complement
    let a12 = closure(&[BraidWord::pure_generator(3, 1, 2)?], 4, opts)?;
    let trivial = complement_search(&a12, &a12, 1)?;
    report.check("control_trivial_complement", json!(true), json!(trivial.is_some()));
    Ok(report.finish())
}

/// Matrix-level CRT: membership at levels `a` and `b` together is membership
/// at `lcm(a, b)`, on random words and constructed lcm-level members.
pub fn verify_crt(
    n: usize,
    a: u64,
    b: u64,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if a < 2 || b < 2 {
        return Err(BraidError::InvalidLevel(a.min(b)));
    }
    if !(3..=8).contains(&n) {
        return Err(BraidError::Unsupported(format!("crt requires 3 <= n <= 8, got {n}")));
    }
    let lcm = a.lcm(&b);
    let mut report = ReportBuilder::new(
        "crt",
        params(&[
            ("n", json!(n)),
            ("a", json!(a)),
            ("b", json!(b)),
            ("lcm", json!(lcm)),
            ("samples", json!(opts.samples)),
            ("word_length", json!(opts.word_length)),
            ("seed", json!(opts.seed)),
        ]),
    );
    let la = CongruenceLevel::new(a)?;
    let lb = CongruenceLevel::new(b)?;
    let ld = CongruenceLevel::new(lcm)?;
    let sigma = sigma_alphabet(n, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = 0usize;
    for _ in 0..opts.samples {
        let w = random_word_with(n, opts.word_length, &sigma, &mut rng)?;
        let both = is_congruence_member(&w, la) && is_congruence_member(&w, lb);
        if both != is_congruence_member(&w, ld) {
            failures += 1;
        }
    }
    report.check("random_word_biconditional_failures", json!(0), json!(failures));

    // constructed members of the lcm level: products of conjugated powers
    let mut constructed_failures = 0usize;
    let mut non_members = 0usize;
    for _ in 0..opts.samples.min(100) {
        let mut w = BraidWord::identity(n);
        for _ in 0..3 {
            let u = random_word_with(n, 6, &sigma, &mut rng)?;
            let i: usize = rand::Rng::random_range(&mut rng, 1..n);
            let core = BraidWord::generator(n, i)?.power(lcm as i64);
            w = w.compose(&u)?.compose(&core)?.compose(&u.inverse())?;
        }
        if !(is_congruence_member(&w, la)
            && is_congruence_member(&w, lb)
            && is_congruence_member(&w, ld))
        {
            non_members += 1;
        }
        let both = is_congruence_member(&w, la) && is_congruence_member(&w, lb);
        if both != is_congruence_member(&w, ld) {
            constructed_failures += 1;
        }
    }
    report.check("constructed_member_failures", json!(0), json!(non_members));
    report.check("constructed_biconditional_failures", json!(0), json!(constructed_failures));
    Ok(report.finish())
}

/// Odd-strand symplectic witness: an integral nondegenerate alternating form
/// invariant under all generator images, re-checked on sampled words.
pub fn verify_symplectic(n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    if n % 2 == 0 {
        return Err(BraidError::Unsupported(
            "even strand count out of scope for the symplectic witness".to_string(),
        ));
    }
    if !(3..=9).contains(&n) {
        return Err(BraidError::Unsupported(format!("symplectic requires 3 <= n <= 9, got {n}")));
    }
    let mut report = ReportBuilder::new(
        "symplectic",
        params(&[("n", json!(n)), ("seed", json!(opts.seed))]),
    );
    let space = invariant_forms(n)?;
    let witness = space.basis().iter().find(|j| is_alternating_nondegenerate(j));
    report.check("nondegenerate_alternating_form_found", json!(true), json!(witness.is_some()));
    if let Some(j) = witness {
        report.artifact("witness_form", j.to_json());
        let sigma = sigma_alphabet(n, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut failures = 0usize;
        for _ in 0..100 {
            let w = random_word_with(n, opts.word_length, &sigma, &mut rng)?;
            let m = crate::burau::burau_int(&w);
            if m.transpose().mul(j).mul(&m) != *j {
                failures += 1;
            }
        }
        report.check("sampled_invariance_failures", json!(0), json!(failures));
    }
    Ok(report.finish())
}
