//! Breadth-first enumeration of finite matrix groups over Z/mZ, structure
//! invariants, complement search, and an on-disk element cache.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fs;
use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};

use num_integer::Integer;
use sha2::{Digest, Sha256};

use crate::burau::ModularMatrix;
use crate::error::{BraidError, Result};

/// Default cap on enumerated elements; everything in scope stays far below.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000_000;

const CACHE_MAGIC: &[u8] = b"BRAIDCG-GROUP-CACHE v1\n";

/// A finite subgroup of `GL(d, Z/mZ)`, fully enumerated. Elements are kept
/// sorted by canonical key, so two closures of the same group compare equal.
#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    modulus: u64,
    dimension: usize,
    generators: Vec<ModularMatrix>,
    elements: Vec<ModularMatrix>,
    index: HashMap<Vec<u8>, usize>,
}

impl FiniteMatrixGroup {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[ModularMatrix] {
        &self.generators
    }

    /// Elements in canonical key order.
    pub fn elements(&self) -> &[ModularMatrix] {
        &self.elements
    }

    pub fn identity(&self) -> ModularMatrix {
        ModularMatrix::identity(self.modulus, self.dimension)
    }

    pub fn contains(&self, m: &ModularMatrix) -> Result<bool> {
        if m.modulus() != self.modulus {
            return Err(BraidError::ModulusMismatch(m.modulus(), self.modulus));
        }
        if m.dim() != self.dimension {
            return Err(BraidError::DimensionMismatch(m.dim(), self.dimension));
        }
        Ok(self.index.contains_key(&m.canonical_key()))
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.dimension == other.dimension
            && self
                .elements
                .iter()
                .all(|e| other.contains(e).unwrap_or(false))
    }

    /// Multiplicative order of an element (which must lie in a finite group).
    pub fn element_order(&self, m: &ModularMatrix) -> usize {
        let mut acc = m.clone();
        let mut k = 1usize;
        while !acc.is_identity() {
            acc = acc.mul(m);
            k += 1;
        }
        k
    }

    /// Inverse inside the group, as the order-minus-one power.
    pub fn element_inverse(&self, m: &ModularMatrix) -> ModularMatrix {
        let mut inv = self.identity();
        let mut acc = m.clone();
        while !acc.is_identity() {
            inv = acc.clone();
            acc = acc.mul(m);
        }
        inv
    }
}

/// Enumerates the subgroup generated by `gens` by breadth-first
/// right-multiplication with the generators and their inverses.
pub fn close(gens: &[ModularMatrix], cap: usize) -> Result<FiniteMatrixGroup> {
    let (modulus, dimension) = match gens.first() {
        Some(g) => (g.modulus(), g.dim()),
        None => (2, 0),
    };
    for g in gens {
        if g.modulus() != modulus {
            return Err(BraidError::ModulusMismatch(g.modulus(), modulus));
        }
        if g.dim() != dimension {
            return Err(BraidError::DimensionMismatch(g.dim(), dimension));
        }
    }
    let mut step: Vec<ModularMatrix> = Vec::with_capacity(gens.len() * 2);
    for g in gens {
        let inv = g
            .inverse()
            .ok_or(BraidError::NonInvertibleGenerator(modulus))?;
        step.push(g.clone());
        step.push(inv);
    }

    let identity = ModularMatrix::identity(modulus, dimension);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut elements: Vec<ModularMatrix> = Vec::new();
    let mut queue: VecDeque<ModularMatrix> = VecDeque::new();
    seen.insert(identity.canonical_key());
    elements.push(identity.clone());
    queue.push_back(identity);
    while let Some(cur) = queue.pop_front() {
        for s in &step {
            let next = cur.mul(s);
            let key = next.canonical_key();
            if seen.insert(key) {
                if elements.len() >= cap {
                    return Err(BraidError::GroupTooLarge(cap));
                }
                elements.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(from_elements(modulus, dimension, gens.to_vec(), elements))
}

fn from_elements(
    modulus: u64,
    dimension: usize,
    generators: Vec<ModularMatrix>,
    mut elements: Vec<ModularMatrix>,
) -> FiniteMatrixGroup {
    elements.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.canonical_key(), i))
        .collect();
    FiniteMatrixGroup { modulus, dimension, generators, elements, index }
}

/// Isomorphism-class fingerprint of an enumerated group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureInvariants {
    pub order: usize,
    pub abelian: bool,
    pub exponent: usize,
    pub order_histogram: BTreeMap<usize, usize>,
    pub center_order: usize,
    pub commutator_order: usize,
}

pub fn structure_invariants(group: &FiniteMatrixGroup) -> StructureInvariants {
    let mut order_histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut exponent = 1usize;
    for e in group.elements() {
        let o = group.element_order(e);
        *order_histogram.entry(o).or_insert(0) += 1;
        exponent = exponent.lcm(&o);
    }
    let center_order = group
        .elements()
        .iter()
        .filter(|e| group.generators().iter().all(|g| e.mul(g) == g.mul(e)))
        .count();
    let commutator_order = derived_subgroup_order(group);
    let abelian = commutator_order == 1;
    StructureInvariants {
        order: group.order(),
        abelian,
        exponent,
        order_histogram,
        center_order,
        commutator_order,
    }
}

/// Order of the derived subgroup: the closure of generator commutators under
/// multiplication and conjugation by the group's generators.
fn derived_subgroup_order(group: &FiniteMatrixGroup) -> usize {
    let gens = group.generators();
    let identity = group.identity();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: VecDeque<ModularMatrix> = VecDeque::new();
    let push = |m: ModularMatrix, seen: &mut HashSet<Vec<u8>>, queue: &mut VecDeque<ModularMatrix>| {
        if seen.insert(m.canonical_key()) {
            queue.push_back(m);
        }
    };
    push(identity, &mut seen, &mut queue);
    let gen_invs: Vec<ModularMatrix> =
        gens.iter().map(|g| group.element_inverse(g)).collect();
    let mut seeds: Vec<ModularMatrix> = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for (j, b) in gens.iter().enumerate() {
            let comm = gen_invs[i].mul(&gen_invs[j]).mul(a).mul(b);
            seeds.push(comm);
        }
    }
    for s in seeds.iter() {
        push(s.clone(), &mut seen, &mut queue);
    }
    while let Some(cur) = queue.pop_front() {
        for s in &seeds {
            push(cur.mul(s), &mut seen, &mut queue);
        }
        for (g, ginv) in gens.iter().zip(&gen_invs) {
            push(ginv.mul(&cur).mul(g), &mut seen, &mut queue);
        }
    }
    seen.len()
}

/// Searches for a complement of `k` in `g` of order `q` among subgroups
/// generated by at most two elements of `g`. Exhaustive only for `q <= 6`
/// (every group of that order is two-generated); larger indices are refused.
pub fn complement_search(
    g: &FiniteMatrixGroup,
    k: &FiniteMatrixGroup,
    q: usize,
) -> Result<Option<FiniteMatrixGroup>> {
    if !k.is_subgroup_of(g) {
        return Err(BraidError::NotASubgroup);
    }
    if g.order() != q * k.order() {
        return Err(BraidError::BadIndex { g: g.order(), k: k.order(), q });
    }
    if q == 1 {
        return Ok(Some(from_elements(
            g.modulus(),
            g.dimension(),
            Vec::new(),
            vec![g.identity()],
        )));
    }
    if q > 6 {
        return Err(BraidError::ProbeNotExhaustive(q));
    }
    let identity = g.identity();
    let is_complement = |h: &FiniteMatrixGroup| -> bool {
        h.order() == q
            && h.elements()
                .iter()
                .all(|e| e == &identity || !k.contains(e).unwrap_or(true))
    };
    let n = g.order();
    for a in 0..n {
        for b in a..n {
            let gens = [g.elements()[a].clone(), g.elements()[b].clone()];
            let h = close(&gens, g.order() + 1);
            let Ok(h) = h else { continue };
            if is_complement(&h) {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

/// Backtracking search for an isomorphism between two enumerated groups by
/// mapping the generators of `g1` onto candidate tuples in `g2`. Gated to
/// small orders; returns whether an isomorphism exists.
pub fn find_isomorphism(g1: &FiniteMatrixGroup, g2: &FiniteMatrixGroup) -> Result<bool> {
    const GATE: usize = 100;
    if g1.order() > GATE || g2.order() > GATE {
        return Err(BraidError::Unsupported(format!(
            "exact isomorphism search gated to order <= {GATE}"
        )));
    }
    if g1.order() != g2.order() {
        return Ok(false);
    }
    let gens1 = g1.generators();
    if gens1.is_empty() {
        return Ok(g2.order() == 1);
    }
    let gen_orders: Vec<usize> = gens1.iter().map(|g| g1.element_order(g)).collect();
    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| {
            (0..g2.order())
                .filter(|&i| g2.element_order(&g2.elements()[i]) == o)
                .collect()
        })
        .collect();
    let mut images: Vec<usize> = vec![0; gens1.len()];
    search_iso(g1, g2, &candidates, &mut images, 0)
}

fn search_iso(
    g1: &FiniteMatrixGroup,
    g2: &FiniteMatrixGroup,
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
) -> Result<bool> {
    if depth == candidates.len() {
        return Ok(check_generator_map(g1, g2, images));
    }
    for &cand in &candidates[depth] {
        images[depth] = cand;
        if search_iso(g1, g2, candidates, images, depth + 1)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Extends the generator assignment over the Cayley graph of `g1` and checks
/// that it is a well-defined bijective homomorphism.
fn check_generator_map(g1: &FiniteMatrixGroup, g2: &FiniteMatrixGroup, images: &[usize]) -> bool {
    let gens1 = g1.generators();
    let gens2: Vec<&ModularMatrix> = images.iter().map(|&i| &g2.elements()[i]).collect();
    let idx1 = |m: &ModularMatrix| g1.index[&m.canonical_key()];
    let id1 = idx1(&g1.identity());
    let mut map: Vec<Option<ModularMatrix>> = vec![None; g1.order()];
    map[id1] = Some(g2.identity());
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(id1);
    let mut assigned = 1usize;
    while let Some(cur) = queue.pop_front() {
        let cur_el = &g1.elements()[cur];
        let cur_img = map[cur].clone().expect("assigned before enqueue");
        for (gen, img_gen) in gens1.iter().zip(&gens2) {
            let next = idx1(&cur_el.mul(gen));
            let next_img = cur_img.mul(img_gen);
            match &map[next] {
                Some(existing) => {
                    if *existing != next_img {
                        return false;
                    }
                }
                None => {
                    map[next] = Some(next_img);
                    assigned += 1;
                    queue.push_back(next);
                }
            }
        }
    }
    if assigned != g1.order() {
        return false;
    }
    // bijectivity
    let mut targets: HashSet<Vec<u8>> = HashSet::new();
    for img in map.iter().flatten() {
        if !g2.contains(img).unwrap_or(false) || !targets.insert(img.canonical_key()) {
            return false;
        }
    }
    // multiplicativity on all pairs
    for a in 0..g1.order() {
        for b in 0..g1.order() {
            let prod = g1.elements()[a].mul(&g1.elements()[b]);
            let want = map[idx1(&prod)].as_ref().unwrap();
            let got = map[a].as_ref().unwrap().mul(map[b].as_ref().unwrap());
            if got != *want {
                return false;
            }
        }
    }
    true
}

/// Cache file path for a generator set, keyed by modulus, dimension and the
/// canonical generator keys.
pub fn cache_path(dir: &Path, gens: &[ModularMatrix]) -> PathBuf {
    let mut hasher = Sha256::new();
    hasher.update(CACHE_MAGIC);
    for g in gens {
        let key = g.canonical_key();
        hasher.update((key.len() as u64).to_le_bytes());
        hasher.update(&key);
    }
    let digest = hasher.finalize();
    dir.join(format!("group-{}.bin", hex_string(&digest[..16])))
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Closes the generators, consulting and populating the on-disk cache.
pub fn close_cached(
    gens: &[ModularMatrix],
    cap: usize,
    cache_dir: Option<&Path>,
) -> Result<FiniteMatrixGroup> {
    let Some(dir) = cache_dir else {
        return close(gens, cap);
    };
    let path = cache_path(dir, gens);
    if let Some(group) = read_cache(&path, gens) {
        return Ok(group);
    }
    let group = close(gens, cap)?;
    let _ = write_cache(&path, &group);
    Ok(group)
}

fn read_cache(path: &Path, gens: &[ModularMatrix]) -> Option<FiniteMatrixGroup> {
    let mut file = fs::File::open(path).ok()?;
    let mut buf = Vec::new();
    file.read_to_end(&mut buf).ok()?;
    let mut at = 0usize;
    let take = |buf: &[u8], at: &mut usize, len: usize| -> Option<Vec<u8>> {
        if *at + len > buf.len() {
            return None;
        }
        let out = buf[*at..*at + len].to_vec();
        *at += len;
        Some(out)
    };
    if take(&buf, &mut at, CACHE_MAGIC.len())? != CACHE_MAGIC {
        return None;
    }
    let count = u64::from_le_bytes(take(&buf, &mut at, 8)?.try_into().ok()?) as usize;
    let key_len = u64::from_le_bytes(take(&buf, &mut at, 8)?.try_into().ok()?) as usize;
    let mut elements = Vec::with_capacity(count);
    for _ in 0..count {
        let key = take(&buf, &mut at, key_len)?;
        elements.push(ModularMatrix::from_canonical_key(&key)?);
    }
    if at != buf.len() {
        return None;
    }
    let (modulus, dimension) = match gens.first() {
        Some(g) => (g.modulus(), g.dim()),
        None => (2, 0),
    };
    if elements
        .iter()
        .any(|e| e.modulus() != modulus || e.dim() != dimension)
    {
        return None;
    }
    Some(from_elements(modulus, dimension, gens.to_vec(), elements))
}

fn write_cache(path: &Path, group: &FiniteMatrixGroup) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut out = Vec::new();
    out.extend_from_slice(CACHE_MAGIC);
    out.extend_from_slice(&(group.order() as u64).to_le_bytes());
    let key_len = group
        .elements()
        .first()
        .map(|e| e.canonical_key().len())
        .unwrap_or(0);
    out.extend_from_slice(&(key_len as u64).to_le_bytes());
    for e in group.elements() {
        out.extend_from_slice(&e.canonical_key());
    }
    let mut file = fs::File::create(path)?;
    file.write_all(&out)?;
    Ok(())
}
