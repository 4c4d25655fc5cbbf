//! (k,l)-systems, compatibility checking, the (k,l)-minimality fixpoint, and
//! a width test harness, together with builders for the hard instances.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::hom::{count_homs, enumerate_homs};
use crate::structure::Structure;
use crate::table::all_tuples;

/// A family of sets of partial maps `K -> A`, one set for every subset `K`
/// of the source domain with `|K| ≤ k` (including the empty set). Maps are
/// stored as value tuples parallel to the sorted `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KlSystem {
    pub k: usize,
    pub source_size: usize,
    pub target_size: usize,
    pub families: BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>>,
}

fn subsets_upto(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for size in 1..=k.min(n) {
        let mut stack = vec![(Vec::new(), 0usize)];
        while let Some((cur, start)) = stack.pop() {
            if cur.len() == size {
                out.push(cur);
                continue;
            }
            for e in start..n {
                let mut next = cur.clone();
                next.push(e);
                stack.push((next, e + 1));
            }
        }
    }
    out.sort();
    out.sort_by_key(|s| s.len());
    out
}

impl KlSystem {
    /// The full system: every map of every small subset.
    pub fn full(source_size: usize, target_size: usize, k: usize) -> KlSystem {
        let mut families = BTreeMap::new();
        for set in subsets_upto(source_size, k) {
            let maps: BTreeSet<Vec<usize>> =
                all_tuples(set.len(), target_size).into_iter().collect();
            families.insert(set, maps);
        }
        KlSystem {
            k,
            source_size,
            target_size,
            families,
        }
    }

    pub fn is_nontrivial(&self) -> bool {
        self.families.values().all(|m| !m.is_empty())
    }

    /// Pointwise containment.
    pub fn contained_in(&self, other: &KlSystem) -> bool {
        self.families.iter().all(|(k, maps)| {
            other
                .families
                .get(k)
                .map(|m| maps.is_subset(m))
                .unwrap_or(false)
        })
    }

    pub fn check_shape(&self, x: &Structure, a: &Structure, k: usize) -> Result<()> {
        if self.source_size != x.size() || self.target_size != a.size() || self.k != k {
            return Err(Error::ShapeMismatch(format!(
                "system is over ({}, {}) at k={}, expected ({}, {}) at k={}",
                self.source_size,
                self.target_size,
                self.k,
                x.size(),
                a.size(),
                k
            )));
        }
        for set in subsets_upto(x.size(), k) {
            let maps = self
                .families
                .get(&set)
                .ok_or_else(|| Error::ShapeMismatch(format!("missing family for {:?}", set)))?;
            for m in maps {
                if m.len() != set.len() || m.iter().any(|&v| v >= a.size()) {
                    return Err(Error::ShapeMismatch(format!(
                        "malformed map {:?} for {:?}",
                        m, set
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dump format: one line per `K`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (set, maps) in &self.families {
            let k_str: Vec<String> = set.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("K={{{}}}:", k_str.join(",")));
            for m in maps {
                let v_str: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!(" ({})", v_str.join(",")));
            }
            out.push('\n');
        }
        out
    }
}

/// One forth-property window: a set `L` with an allowed-map set `C ⊆ A^L`.
struct Window {
    /// sorted element set
    l_set: Vec<usize>,
    /// allowed maps, parallel to `l_set`
    maps: Vec<Vec<usize>>,
    /// human-readable origin for witnesses
    origin: String,
}

/// A failed forth requirement: the map `f` on `k_set` has no extension in
/// the window's allowed set whose small restrictions all lie in the system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForthViolation {
    pub k_set: Vec<usize>,
    pub map: Vec<usize>,
    pub window: String,
}

fn graph_pair(x: &Structure, a: &Structure) -> (Structure, Structure) {
    (x.graph_of(), a.graph_of())
}

/// All windows for the (k,l)-system condition and for compatibility with the
/// constraint scopes of `graph(x)`.
fn build_windows(x: &Structure, a: &Structure, l: usize) -> Vec<Window> {
    let mut windows = Vec::new();
    let n = x.size();
    let (gx, ga) = graph_pair(x, a);
    for (ri, (name, _)) in gx.signature().rels().iter().enumerate() {
        let ra = ga.rel(ri);
        for tuple in gx.rel(ri) {
            let mut l_set: Vec<usize> = tuple.clone();
            l_set.sort_unstable();
            l_set.dedup();
            let positions: Vec<usize> = tuple
                .iter()
                .map(|e| l_set.iter().position(|f| f == e).unwrap())
                .collect();
            let maps: Vec<Vec<usize>> = all_tuples(l_set.len(), a.size())
                .into_iter()
                .filter(|g| {
                    let image: Vec<usize> = positions.iter().map(|&p| g[p]).collect();
                    ra.contains(&image)
                })
                .collect();
            windows.push(Window {
                origin: format!("constraint {}{:?}", name, tuple),
                l_set,
                maps,
            });
        }
    }
    for l_set in subsets_upto(n, l) {
        if l_set.is_empty() {
            continue;
        }
        let maps = all_tuples(l_set.len(), a.size());
        windows.push(Window {
            origin: format!("free window L={:?}", l_set),
            l_set,
            maps,
        });
    }
    windows
}

/// Subsets of `l_set` with size ≤ k, as (sorted element set, positions).
fn window_subsets(l_set: &[usize], k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let m = l_set.len();
    for mask in 0usize..(1 << m) {
        if (mask.count_ones() as usize) > k {
            continue;
        }
        let positions: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let set: Vec<usize> = positions.iter().map(|&i| l_set[i]).collect();
        out.push((set, positions));
    }
    out
}

/// Check the forth property of `system` for one window under the current
/// families; returns the supported maps per subset, or a violation.
fn window_supported(
    system: &KlSystem,
    w: &Window,
    k: usize,
) -> (BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>>, Vec<Vec<usize>>) {
    let subs = window_subsets(&w.l_set, k);
    let mut valid: Vec<Vec<usize>> = Vec::new();
    'g: for g in &w.maps {
        for (set, positions) in &subs {
            let restriction: Vec<usize> = positions.iter().map(|&p| g[p]).collect();
            match system.families.get(set) {
                Some(maps) if maps.contains(&restriction) => {}
                _ => continue 'g,
            }
        }
        valid.push(g.clone());
    }
    let mut supported: BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for (set, positions) in &subs {
        let entry = supported.entry(set.clone()).or_default();
        for g in &valid {
            entry.insert(positions.iter().map(|&p| g[p]).collect());
        }
    }
    (supported, valid)
}

/// Verify that `system` is a compatible (k,l)-system for the instance:
/// the k-forth property for every `A^L` with `|L| ≤ l` and for every
/// constraint window of `graph(x)`. Returns the first violation found.
pub fn verify_system(
    x: &Structure,
    a: &Structure,
    system: &KlSystem,
    k: usize,
    l: usize,
) -> Result<Option<ForthViolation>> {
    system.check_shape(x, a, k)?;
    if k > l {
        return Err(Error::ShapeMismatch("k must be at most l".into()));
    }
    let windows = build_windows(x, a, l);
    for w in &windows {
        let (supported, _) = window_supported(system, w, k);
        for (set, maps) in &supported {
            let family = &system.families[set];
            if let Some(f) = family.iter().find(|f| !maps.contains(*f)) {
                return Ok(Some(ForthViolation {
                    k_set: set.clone(),
                    map: f.clone(),
                    window: w.origin.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// The (k,l)-minimality fixpoint: start from the full system and delete any
/// map violating a forth requirement until stable. The result is the
/// inclusion-largest compatible (k,l)-system.
pub fn kl_minimality(x: &Structure, a: &Structure, k: usize, l: usize) -> KlSystem {
    let mut system = KlSystem::full(x.size(), a.size(), k);
    let windows = build_windows(x, a, l);
    loop {
        let mut deletions: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for w in &windows {
            let (supported, _) = window_supported(&system, w, k);
            for (set, maps) in &supported {
                for f in &system.families[set] {
                    if !maps.contains(f) {
                        deletions.push((set.clone(), f.clone()));
                    }
                }
            }
        }
        if deletions.is_empty() {
            return system;
        }
        for (set, f) in deletions {
            system.families.get_mut(&set).unwrap().remove(&f);
        }
    }
}

fn bar(e: usize) -> usize {
    // elements: 0, a0..a3 = 1..4, bar0 = 5, bar a0..a3 = 6..9
    (e + 5) % 10
}

/// The 10-element instance over the `nor` signature with no homomorphism to
/// the nor template: products involving the zero pair behave like negation
/// and annihilation, the four middle elements are woven into a twisted
/// cycle, and the remaining products pick the least index not involved.
pub fn build_not23_instance() -> Structure {
    let a_idx = |i: usize| 1 + i;
    let abar_idx = |i: usize| 6 + i;
    let mut table = vec![0usize; 100];
    let set = |x: usize, y: usize, v: usize, table: &mut Vec<usize>| {
        table[x * 10 + y] = v;
    };
    for x in 0..10 {
        for y in 0..10 {
            let v = if x == 0 || y == 0 {
                // t * 0 = bar t, 0 * t = bar t
                bar(if x == 0 { y } else { x })
            } else if x == 5 || y == 5 {
                0
            } else if y == bar(x) {
                0
            } else if x == y {
                bar(x)
            } else {
                // both sides among a's and bar-a's, distinct, not barred pair
                let (xi, x_is_bar) = if x >= 6 { (x - 6, true) } else { (x - 1, false) };
                let (yi, y_is_bar) = if y >= 6 { (y - 6, true) } else { (y - 1, false) };
                match (x_is_bar, y_is_bar) {
                    (true, true) => 0,
                    (true, false) => a_idx(xi),
                    (false, true) => a_idx(yi),
                    (false, false) => match (xi, yi) {
                        (0, 1) => a_idx(2),
                        (1, 0) => a_idx(3),
                        (2, 3) => a_idx(0),
                        (3, 2) => a_idx(1),
                        _ => {
                            let k = (0..4).find(|k| *k != xi && *k != yi).unwrap();
                            a_idx(k)
                        }
                    },
                }
            };
            set(x, y, v, &mut table);
        }
    }
    let _ = abar_idx;
    Structure::algebra(
        crate::signature::Signature::of(&[("nor", 2)], &[]),
        10,
        vec![table],
    )
    .unwrap()
}

/// The explicit non-trivial (2,l)-system for [`build_not23_instance`]:
/// the zero pair is pinned, pairs of middle elements exclude one value
/// combination each, and barred pairs are non-constant. Singletons and the
/// empty set are completed by projection.
pub fn paper_p_system() -> KlSystem {
    let n = 10;
    let keep = |set: &[usize], f: &[usize]| -> bool {
        for (pos, &e) in set.iter().enumerate() {
            if e == 0 && f[pos] != 0 {
                return false;
            }
            if e == 5 && f[pos] != 1 {
                return false;
            }
        }
        if set.len() == 2 {
            let (x, y) = (set[0], set[1]);
            let (fx, fy) = (f[0], f[1]);
            let is_a = |e: usize| (1..=4).contains(&e);
            let is_abar = |e: usize| (6..=9).contains(&e);
            if is_a(x) && is_a(y) && (fx, fy) == (1, 1) {
                return false;
            }
            if is_a(x) && is_abar(y) {
                if y == bar(x) {
                    if fx == fy {
                        return false;
                    }
                } else if (fx, fy) == (1, 0) {
                    return false;
                }
            }
            if is_abar(x) && is_a(y) {
                // sorted sets put a's first, so this branch never fires
                if x == bar(y) {
                    if fx == fy {
                        return false;
                    }
                } else if (fy, fx) == (1, 0) {
                    return false;
                }
            }
            if is_abar(x) && is_abar(y) && (fx, fy) == (0, 0) {
                return false;
            }
        }
        true
    };
    let mut families = BTreeMap::new();
    for set in subsets_upto(n, 2) {
        let maps: BTreeSet<Vec<usize>> = all_tuples(set.len(), 2)
            .into_iter()
            .filter(|f| keep(&set, f))
            .collect();
        families.insert(set, maps);
    }
    KlSystem {
        k: 2,
        source_size: n,
        target_size: 2,
        families,
    }
}

/// An 8-element instance over the xor signature with no homomorphism to the
/// xor template. Elements pair up under a bar involution; both operations
/// respect a reference parity except for one twisted entry, and the
/// contradiction needs four elements at once, which (2,3)-windows cannot
/// see.
pub fn build_z_hard_instance() -> Structure {
    // elements: z = 0, a0 = 1, a1 = 2, a2 = 3, zbar = 4, abar0 = 5,
    // abar1 = 6, abar2 = 7; reference parity w: 0 on {z, a_i}, 1 on bars
    let n = 8;
    let barz = |e: usize| (e + 4) % 8;
    let w = |e: usize| if e >= 4 { 1 } else { 0 };
    let a_of = |e: usize| if e >= 5 { e - 5 } else { e - 1 }; // index 0..2
    // least index not among the two, for completion entries
    let third = |i: usize, j: usize| (0..3).find(|k| *k != i && *k != j).unwrap();
    let mut add = vec![0usize; n * n];
    let mut add1 = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            let (v0, v1);
            if x == y {
                v0 = 0; // z
                v1 = 4; // zbar
            } else if x == 0 {
                v0 = y;
                v1 = barz(y);
            } else if y == 0 {
                v0 = x;
                v1 = barz(x);
            } else if x == 4 {
                v0 = barz(y);
                v1 = y;
            } else if y == 4 {
                v0 = barz(x);
                v1 = x;
            } else if y == barz(x) {
                v0 = 4;
                v1 = 0;
            } else {
                // both among a's and bars, distinct, not a barred pair
                let (i, j) = (a_of(x), a_of(y));
                let k = third(i, j);
                let parity = w(x) + w(y);
                // completion consistent with the reference parity
                let plain = 1 + k;
                let barred = 5 + k;
                if parity % 2 == 0 {
                    v0 = plain;
                    v1 = barred;
                } else {
                    v0 = barred;
                    v1 = plain;
                }
            }
            add[x * n + y] = v0;
            add1[x * n + y] = v1;
        }
    }
    // the twist: add(a0, abar1) also lands on a2, parallel to add(a0, a1),
    // which forces a1 and abar1 to agree while the bar structure forces them
    // apart; seeing it needs the window {a0, a1, abar1, a2}
    let (a0, a1, abar1, a2) = (1usize, 2usize, 6usize, 3usize);
    debug_assert_eq!(add[a0 * n + a1], a2);
    add[a0 * n + abar1] = a2;
    add[abar1 * n + a0] = a2;
    let _ = a1;
    Structure::algebra(
        crate::signature::Signature::of(&[("add", 2), ("add1", 2)], &[]),
        n,
        vec![add, add1],
    )
    .unwrap()
}

/// Outcome of a width sweep.
#[derive(Debug, Clone)]
pub enum HarnessOutcome {
    /// Every tested instance with a nontrivial system had a homomorphism.
    Pass { tested: usize },
    /// An instance whose minimality fixpoint is nontrivial but which admits
    /// no homomorphism.
    Counterexample { instance: Structure },
}

/// Sweep instances against a template: known hard instances whose signature
/// matches, all small instances exhaustively, then random samples up to
/// `max_n`. Reports the first instance where (k,l)-minimality is nontrivial
/// but brute force finds no homomorphism.
pub fn width_harness(
    a: &Structure,
    k: usize,
    l: usize,
    max_n: usize,
    samples: usize,
    seed: u64,
) -> Result<HarnessOutcome> {
    let mut tested = 0usize;
    let mut check = |x: &Structure| -> Result<Option<HarnessOutcome>> {
        tested += 1;
        let system = kl_minimality(x, a, k, l);
        if system.is_nontrivial() && count_homs(x, a, false)? == 0 {
            return Ok(Some(HarnessOutcome::Counterexample {
                instance: x.clone(),
            }));
        }
        Ok(None)
    };

    // known hard instances, re-labelled to the template's signature
    for known in [build_not23_instance(), build_z_hard_instance()] {
        if let Some(renamed) = rename_to(&known, a) {
            if renamed.size() <= max_n.max(renamed.size()) {
                if let Some(out) = check(&renamed)? {
                    return Ok(out);
                }
            }
        }
    }

    // exhaustive small instances when the table space is tiny
    if a.signature().is_algebraic() {
        let mut table_space = 1usize;
        for (_, arity) in a.signature().funcs() {
            table_space = table_space.saturating_mul(2usize.pow(2u32.pow(*arity as u32)));
        }
        if table_space <= 65_536 {
            for x in exhaustive_algebras(a, 2) {
                if let Some(out) = check(&x)? {
                    return Ok(out);
                }
            }
        }
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let size = rng.gen_range(1..=max_n.max(1));
        let x = crate::random::random_structure(a.signature(), size, 0.3, &mut rng)?;
        if let Some(out) = check(&x)? {
            return Ok(out);
        }
    }
    Ok(HarnessOutcome::Pass { tested })
}

/// Rebuild a known instance over the template's signature when the shapes
/// match (same function arities in order, no relations).
fn rename_to(known: &Structure, template: &Structure) -> Option<Structure> {
    if !template.signature().is_algebraic() || !known.signature().is_algebraic() {
        return None;
    }
    let ka: Vec<usize> = known.signature().funcs().iter().map(|(_, a)| *a).collect();
    let ta: Vec<usize> = template
        .signature()
        .funcs()
        .iter()
        .map(|(_, a)| *a)
        .collect();
    if ka != ta {
        return None;
    }
    Structure::algebra(
        crate::signature::Signature::new(template.signature().funcs().to_vec(), vec![]).ok()?,
        known.size(),
        known.ops().iter().map(|t| t.values().to_vec()).collect(),
    )
    .ok()
}

/// All algebras over the template's signature with at most `max_size`
/// elements.
fn exhaustive_algebras(a: &Structure, max_size: usize) -> Vec<Structure> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        let arities: Vec<usize> = a.signature().funcs().iter().map(|(_, k)| *k).collect();
        let lens: Vec<usize> = arities.iter().map(|k| size.pow(*k as u32)).collect();
        let total: usize = lens.iter().map(|l| size.pow(*l as u32)).product();
        for code in 0..total {
            let mut rem = code;
            let mut ops = Vec::new();
            for len in &lens {
                let mut table = Vec::with_capacity(*len);
                for _ in 0..*len {
                    table.push(rem % size);
                    rem /= size;
                }
                ops.push(table);
            }
            out.push(
                Structure::algebra(
                    crate::signature::Signature::new(
                        a.signature().funcs().to_vec(),
                        vec![],
                    )
                    .unwrap(),
                    size,
                    ops,
                )
                .unwrap(),
            );
        }
    }
    out
}

/// All restrictions of brute-force homomorphisms survive in a minimality
/// fixpoint; used by tests.
pub fn hom_restrictions_survive(x: &Structure, a: &Structure, system: &KlSystem) -> Result<bool> {
    let homs = enumerate_homs(x, a, false)?;
    for h in &homs {
        for (set, maps) in &system.families {
            let restriction: Vec<usize> = set.iter().map(|&e| h[e]).collect();
            if !maps.contains(&restriction) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
