//! Small semi-braces up to isomorphism, isomorphism certificates, and the
//! counterexample search for nil but not nilpotent structures.
//!
//! Raw enumeration uses `a + b = a∘λ_{a⁻}(b)`: every semi-brace arises from
//! a group `(B,∘)` and a homomorphism `λ: (B,∘) → Sym(B)`, so the search
//! runs over catalog groups and their permutation actions on themselves,
//! keeping the pairs that validate.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::constructions::{from_idempotent_endomorphism, semidirect, skew_brace_of_group, trivial_semibrace, ActionTable};
use crate::error::{Error, Result};
use crate::group::{extend_homomorphism, groups_of_order, GroupTable};
use crate::semibrace::FiniteLeftSemibrace;
use crate::series::{classify, NilpotencyProfile};
use crate::table::CayleyTable;
use crate::Elem;

/// Default largest order for raw enumeration.
pub const DEFAULT_RAW_CAP: usize = 6;

/// Per-element data preserved by every isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementInvariant {
    in_e: bool,
    in_g: bool,
    mul_order: usize,
    add_orbit: usize,
    lambda_fixed: usize,
    centralizer: usize,
}

fn element_invariants(b: &FiniteLeftSemibrace) -> Vec<ElementInvariant> {
    let n = b.order();
    (0..n)
        .map(|a| {
            let mut mul_order = 1;
            let mut x = a;
            while x != 0 {
                x = b.mul(x, a);
                mul_order += 1;
            }
            let mut orbit = vec![a];
            let mut y = b.add(a, a);
            while !orbit.contains(&y) {
                orbit.push(y);
                y = b.add(y, a);
            }
            ElementInvariant {
                in_e: b.in_e(a),
                in_g: b.in_g(a),
                mul_order,
                add_orbit: orbit.len(),
                lambda_fixed: (0..n).filter(|&x| b.lambda_at(a, x) == x).count(),
                centralizer: (0..n).filter(|&x| b.mul(a, x) == b.mul(x, a)).count(),
            }
        })
        .collect()
}

/// Sorted element invariants; equal for isomorphic structures.
pub fn invariant_key(b: &FiniteLeftSemibrace) -> Vec<(bool, bool, usize, usize, usize, usize)> {
    let mut key: Vec<_> = element_invariants(b)
        .into_iter()
        .map(|v| (v.in_e, v.in_g, v.mul_order, v.add_orbit, v.lambda_fixed, v.centralizer))
        .collect();
    key.sort_unstable();
    key
}

/// Outcome of an isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoCertificate {
    /// `bijection[a]` is the image of `a`; it preserves `+` and `∘`.
    Isomorphism(Vec<Elem>),
    /// `exhausted_search` is false when an invariant already differs.
    NonIsomorphic { exhausted_search: bool, reason: String },
}

impl IsoCertificate {
    pub fn is_isomorphism(&self) -> bool {
        matches!(self, IsoCertificate::Isomorphism(_))
    }
}

/// Whether `f` is a bijection preserving both operations.
pub fn is_isomorphism(x: &FiniteLeftSemibrace, y: &FiniteLeftSemibrace, f: &[Elem]) -> bool {
    let n = x.order();
    if y.order() != n || f.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    if !f.iter().all(|&v| v < n && !std::mem::replace(&mut hit[v], true)) {
        return false;
    }
    (0..n).all(|a| (0..n).all(|b| f[x.add(a, b)] == y.add(f[a], f[b]) && f[x.mul(a, b)] == y.mul(f[a], f[b])))
}

/// Backtracks over images of the greedy generators of `(x,∘)` among
/// elements of `y` with the same invariants; each full assignment extends
/// to at most one `∘`-homomorphism, which is then checked on `+`.
pub fn are_isomorphic(x: &FiniteLeftSemibrace, y: &FiniteLeftSemibrace) -> Result<IsoCertificate> {
    if x.order() != y.order() {
        return Err(Error::OrderMismatch(x.order(), y.order()));
    }
    let (ix, iy) = (element_invariants(x), element_invariants(y));
    let (mut sx, mut sy) = (ix.clone(), iy.clone());
    sx.sort_unstable();
    sy.sort_unstable();
    if sx != sy {
        let reason = if x.idempotents().len() != y.idempotents().len() {
            format!("|E| differs: {} vs {}", x.idempotents().len(), y.idempotents().len())
        } else if x.group_elems().len() != y.group_elems().len() {
            format!("|G| differs: {} vs {}", x.group_elems().len(), y.group_elems().len())
        } else {
            "element invariants differ".to_string()
        };
        return Ok(IsoCertificate::NonIsomorphic { exhausted_search: false, reason });
    }
    let (gx, gy) = (x.mul_group_table(), y.mul_group_table());
    let gens = gx.generators();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| (0..y.order()).filter(|&c| iy[c] == ix[g]).collect())
        .collect();
    let mut images = vec![0; gens.len()];
    if let Some(f) = iso_search(x, y, &gx, &gy, &gens, &candidates, 0, &mut images) {
        return Ok(IsoCertificate::Isomorphism(f));
    }
    Ok(IsoCertificate::NonIsomorphic {
        exhausted_search: true,
        reason: "no generator assignment extends to an isomorphism".into(),
    })
}

#[allow(clippy::too_many_arguments)]
fn iso_search(
    x: &FiniteLeftSemibrace,
    y: &FiniteLeftSemibrace,
    gx: &GroupTable,
    gy: &GroupTable,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    depth: usize,
    images: &mut Vec<Elem>,
) -> Option<Vec<Elem>> {
    if depth == gens.len() {
        let f = extend_homomorphism(gx, gy, gens, images)?;
        return is_isomorphism(x, y, &f).then_some(f);
    }
    for &c in &candidates[depth] {
        if images[..depth].contains(&c) {
            continue;
        }
        images[depth] = c;
        if let Some(f) = iso_search(x, y, gx, gy, gens, candidates, depth + 1, images) {
            return Some(f);
        }
    }
    None
}

/// Whether a census covers every isomorphism class of its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Completeness {
    Complete,
    FamilyOnly,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Complete => "complete",
            Completeness::FamilyOnly => "family-only",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CensusEntry {
    /// How the representative was produced.
    pub origin: String,
    pub semibrace: FiniteLeftSemibrace,
}

#[derive(Debug, Clone)]
pub struct Census {
    pub order: usize,
    pub completeness: Completeness,
    pub entries: Vec<CensusEntry>,
    /// Candidate structures examined before deduplication.
    pub candidates: usize,
}

/// `enumerate` options: the raw-search cap and whether to skip raw search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub cap: usize,
    pub family_only: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { cap: DEFAULT_RAW_CAP, family_only: false }
    }
}

/// All semi-braces of order `n` up to isomorphism (`n ≤ cap`), or the
/// constructive families when `family_only` is set.
pub fn enumerate(n: usize, opts: EnumerationOptions) -> Result<Census> {
    if opts.family_only {
        let (entries, candidates) = families(n, &mut BTreeMap::new());
        return Ok(Census { order: n, completeness: Completeness::FamilyOnly, entries, candidates });
    }
    if n > opts.cap {
        return Err(Error::CapExceeded { order: n, cap: opts.cap });
    }
    let mut dedup = Dedup::default();
    let mut candidates = 0;
    for (name, g) in groups_of_order(n) {
        for lambda in actions_on_self(&g) {
            candidates += 1;
            let add = CayleyTable::from_fn(n, |a, b| g.op(a, lambda[g.inv(a)][b]));
            let Ok(b) = FiniteLeftSemibrace::validate_labeled(add, g.table().clone(), Some(g.labels().to_vec()))
            else {
                continue;
            };
            dedup.offer(format!("{name} with λ-action #{}", candidates), b)?;
        }
    }
    Ok(Census { order: n, completeness: Completeness::Complete, entries: dedup.entries, candidates })
}

/// Every semi-brace of order at most `max_order`, raw and complete.
pub fn corpus(max_order: usize) -> Result<Vec<CensusEntry>> {
    let opts = EnumerationOptions { cap: max_order, family_only: false };
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(enumerate(n, opts)?.entries);
    }
    Ok(out)
}

#[derive(Default)]
struct Dedup {
    entries: Vec<CensusEntry>,
    buckets: HashMap<Vec<(bool, bool, usize, usize, usize, usize)>, Vec<usize>>,
}

impl Dedup {
    fn offer(&mut self, origin: String, b: FiniteLeftSemibrace) -> Result<bool> {
        let bucket = self.buckets.entry(invariant_key(&b)).or_default();
        for &i in bucket.iter() {
            if are_isomorphic(&self.entries[i].semibrace, &b)?.is_isomorphism() {
                return Ok(false);
            }
        }
        bucket.push(self.entries.len());
        self.entries.push(CensusEntry { origin, semibrace: b });
        Ok(true)
    }
}

/// Permutations of `0..n` as image vectors.
fn permutations(n: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..n).permutations(n)
}

fn perm_order(p: &[Elem]) -> usize {
    let mut x: Vec<Elem> = p.to_vec();
    let mut k = 1;
    while x.iter().enumerate().any(|(i, &v)| i != v) {
        x = x.iter().map(|&v| p[v]).collect();
        k += 1;
    }
    k
}

/// All homomorphisms `(g,∘) → Sym(|g|)`, with `maps[a∘b] = maps[a]·maps[b]`
/// (apply `maps[b]` first).
fn actions_on_self(g: &GroupTable) -> Vec<Vec<Vec<Elem>>> {
    let n = g.order();
    let gens = g.generators();
    let perms: Vec<Vec<Elem>> = permutations(n).collect();
    let orders: Vec<usize> = perms.iter().map(|p| perm_order(p)).collect();
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let k = g.element_order(x);
            (0..perms.len()).filter(|&i| k % orders[i] == 0).collect()
        })
        .collect();
    let mut out = Vec::new();
    let sizes: Vec<usize> = choices.iter().map(Vec::len).collect();
    for pick in index_tuples(&sizes) {
        let images: Vec<&Vec<Elem>> = pick.iter().zip(&choices).map(|(&i, c)| &perms[c[i]]).collect();
        if let Some(maps) = extend_action(g, &gens, &images) {
            out.push(maps);
        }
    }
    out
}

/// Every tuple `t` with `t[i] < sizes[i]`, in lexicographic order; one
/// empty tuple when `sizes` is empty.
fn index_tuples(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut next = (!sizes.contains(&0)).then(|| vec![0; sizes.len()]);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut t = current.clone();
        for i in (0..t.len()).rev() {
            t[i] += 1;
            if t[i] < sizes[i] {
                next = Some(t);
                break;
            }
            t[i] = 0;
        }
        Some(current)
    })
}

fn extend_action(g: &GroupTable, gens: &[Elem], images: &[&Vec<Elem>]) -> Option<Vec<Vec<Elem>>> {
    let n = g.order();
    let mut maps: Vec<Option<Vec<Elem>>> = vec![None; n];
    maps[0] = Some((0..n).collect());
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(y) = queue.pop_front() {
        let my = maps[y].clone().expect("visited");
        for (&x, img) in gens.iter().zip(images) {
            let z = g.op(y, x);
            let mz: Vec<Elem> = img.iter().map(|&t| my[t]).collect();
            match &maps[z] {
                None => {
                    maps[z] = Some(mz);
                    queue.push_back(z);
                }
                Some(m) if *m != mz => return None,
                _ => {}
            }
        }
    }
    maps.into_iter().collect()
}

/// Automorphisms of a semi-brace: `∘`-automorphisms that preserve `+`.
pub fn automorphisms(b: &FiniteLeftSemibrace) -> Vec<Vec<Elem>> {
    b.mul_group_table()
        .automorphisms()
        .into_iter()
        .filter(|f| is_isomorphism(b, b, f))
        .collect()
}

type FamilyMemo = BTreeMap<usize, (Vec<CensusEntry>, usize)>;

/// Trivial, skew and φ-type structures over every catalog group of order
/// `n`, and semidirect products (including direct ones) of smaller family
/// members, deduplicated.
fn families(n: usize, memo: &mut FamilyMemo) -> (Vec<CensusEntry>, usize) {
    if let Some(hit) = memo.get(&n) {
        return hit.clone();
    }
    let mut dedup = Dedup::default();
    let mut candidates = 0;
    let mut offer = |dedup: &mut Dedup, origin: String, b: FiniteLeftSemibrace| {
        candidates += 1;
        dedup.offer(origin, b).expect("same order");
    };
    for (name, g) in groups_of_order(n) {
        offer(&mut dedup, format!("trivial({name})"), trivial_semibrace(&g));
        offer(&mut dedup, format!("skew({name})"), skew_brace_of_group(&g));
        for (k, phi) in g.endomorphisms().into_iter().enumerate() {
            if let Ok(b) = from_idempotent_endomorphism(&g, &phi) {
                offer(&mut dedup, format!("endo({name})#{k}"), b);
            }
        }
    }
    for p in (2..n).filter(|p| n % p == 0) {
        let q = n / p;
        let (acted, _) = families(p, memo);
        let (acting, _) = families(q, memo);
        for t in &acted {
            let auts = automorphisms(&t.semibrace);
            for a in &acting {
                let gens = a.semibrace.mul_group_table().generators();
                let sizes = vec![auts.len(); gens.len()];
                for pick in index_tuples(&sizes) {
                    let images: Vec<Vec<Elem>> = pick.iter().map(|&i| auts[i].clone()).collect();
                    let Ok(action) = ActionTable::generated(&a.semibrace, p, &gens, &images) else {
                        continue;
                    };
                    if let Ok(b) = semidirect(&t.semibrace, &a.semibrace, &action) {
                        offer(&mut dedup, format!("semidirect({} ⋊ {})", t.origin, a.origin), b);
                    }
                }
            }
        }
    }
    let out = (dedup.entries, candidates);
    memo.insert(n, out.clone());
    out
}

/// The two open questions the search targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    RightNilNotRightNilpotent,
    LeftNilNotLeftNilpotent,
}

impl Question {
    pub fn name(self) -> &'static str {
        match self {
            Question::RightNilNotRightNilpotent => "right_nil_not_right_nilpotent",
            Question::LeftNilNotLeftNilpotent => "left_nil_not_left_nilpotent",
        }
    }

    /// Whether the profile is a counterexample.
    pub fn separates(self, p: &NilpotencyProfile) -> bool {
        match self {
            Question::RightNilNotRightNilpotent => p.right_nil && !p.right_nilpotent,
            Question::LeftNilNotLeftNilpotent => p.left_nil && !p.left_nilpotent,
        }
    }
}

impl FromStr for Question {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right_nil" | "right_nil_not_right_nilpotent" => Ok(Question::RightNilNotRightNilpotent),
            "left_nil" | "left_nil_not_left_nilpotent" => Ok(Question::LeftNilNotLeftNilpotent),
            other => Err(Error::Unknown(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchWitness {
    pub order: usize,
    pub origin: String,
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub question: Question,
    pub orders_searched: Vec<usize>,
    pub structures_checked: usize,
    pub witness: Option<SearchWitness>,
    /// True when every order was enumerated completely and no witness exists.
    pub exhaustive: bool,
}

/// Classifies every structure of order `1..=max_order` (raw up to `cap`,
/// families beyond) and reports the first counterexample.
pub fn search_counterexample(question: Question, max_order: usize, cap: usize) -> Result<SearchReport> {
    search_with(question, max_order, cap, classify)
}

/// As [`search_counterexample`] with an injected classifier. A witness it
/// reports is re-validated from its tables with [`classify`]; a witness
/// that does not survive is an error.
pub fn search_with(
    question: Question,
    max_order: usize,
    cap: usize,
    classifier: impl Fn(&FiniteLeftSemibrace) -> Result<NilpotencyProfile>,
) -> Result<SearchReport> {
    let mut report = SearchReport {
        question,
        orders_searched: Vec::new(),
        structures_checked: 0,
        witness: None,
        exhaustive: true,
    };
    for n in 1..=max_order {
        let census = enumerate(n, EnumerationOptions { cap, family_only: n > cap })?;
        report.orders_searched.push(n);
        report.exhaustive &= census.completeness == Completeness::Complete;
        for entry in census.entries {
            report.structures_checked += 1;
            if !question.separates(&classifier(&entry.semibrace)?) {
                continue;
            }
            let b = &entry.semibrace;
            let witness = SearchWitness {
                order: n,
                origin: entry.origin,
                add: b.add_table().rows(),
                mul: b.mul_table().rows(),
            };
            let rebuilt = FiniteLeftSemibrace::validate(
                CayleyTable::from_rows(&witness.add)?,
                CayleyTable::from_rows(&witness.mul)?,
            )?;
            if !question.separates(&classify(&rebuilt)?) {
                return Err(Error::ConsistencyViolation {
                    theorem: "search-witness-revalidation",
                    witness: format!("{} of order {n} does not separate {}", witness.origin, question.name()),
                });
            }
            report.witness = Some(witness);
            report.exhaustive = false;
            return Ok(report);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{phi_sym3, sd12};
    use crate::group::catalog_group;

    #[test]
    fn index_tuples_cover_the_product() {
        assert_eq!(index_tuples(&[]).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(index_tuples(&[2, 0]).count(), 0);
        let all: Vec<_> = index_tuples(&[2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[5], vec![1, 2]);
    }

    #[test]
    fn isomorphism_certificates() {
        let b = phi_sym3();
        match are_isomorphic(&b, &b).unwrap() {
            IsoCertificate::Isomorphism(f) => assert!(is_isomorphism(&b, &b, &f)),
            other => panic!("{other:?}"),
        }
        let perm = [0, 3, 5, 1, 2, 4];
        let copy = b.relabeled(&perm).unwrap();
        match are_isomorphic(&b, &copy).unwrap() {
            IsoCertificate::Isomorphism(f) => assert!(is_isomorphism(&b, &copy, &f)),
            other => panic!("{other:?}"),
        }
        let t = trivial_semibrace(&catalog_group("S3").unwrap());
        assert_eq!(
            are_isomorphic(&b, &t).unwrap(),
            IsoCertificate::NonIsomorphic { exhausted_search: false, reason: "|E| differs: 3 vs 6".into() }
        );
        assert_eq!(are_isomorphic(&b, &sd12()), Err(Error::OrderMismatch(6, 12)));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate(1, EnumerationOptions::default()).unwrap().entries.len(), 1);
        let two = enumerate(2, EnumerationOptions::default()).unwrap();
        assert_eq!(two.completeness, Completeness::Complete);
        assert_eq!(two.entries.len(), 2);
        assert_eq!(
            enumerate(7, EnumerationOptions::default()).unwrap_err(),
            Error::CapExceeded { order: 7, cap: 6 }
        );
    }

    #[test]
    fn families_at_six_contain_phi() {
        let census = enumerate(6, EnumerationOptions { cap: 6, family_only: true }).unwrap();
        assert_eq!(census.completeness, Completeness::FamilyOnly);
        let phi = phi_sym3();
        assert!(census
            .entries
            .iter()
            .any(|e| are_isomorphic(&e.semibrace, &phi).unwrap().is_isomorphism()));
    }

    #[test]
    fn search_at_tiny_orders_is_exhaustive() {
        let r = search_counterexample(Question::RightNilNotRightNilpotent, 1, 6).unwrap();
        assert!(r.exhaustive && r.witness.is_none());
        assert_eq!(r.orders_searched, vec![1]);
        assert_eq!("left_nil".parse::<Question>().unwrap(), Question::LeftNilNotLeftNilpotent);
    }

    #[test]
    fn misclassified_witness_fails_revalidation() {
        let lying = |b: &FiniteLeftSemibrace| {
            let mut p = classify(b)?;
            if b.order() == 2 {
                p.right_nil = true;
                p.right_nilpotent = false;
            }
            Ok(p)
        };
        let err = search_with(Question::RightNilNotRightNilpotent, 3, 6, lying).unwrap_err();
        assert!(matches!(err, Error::ConsistencyViolation { theorem: "search-witness-revalidation", .. }));
    }
}
