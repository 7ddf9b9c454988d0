//! Finite groups as Cayley tables, permutations, and the subgroup machinery
//! shared by `(B,∘)` and `(G,+)`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::GroupFailure;
use crate::subset::Subset;
use crate::table::CayleyTable;
use crate::Elem;

/// A validated finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    table: CayleyTable,
    identity: Elem,
    inverses: Vec<Elem>,
    labels: Vec<String>,
}

impl GroupTable {
    /// Validates associativity, identity and inverses. Labels default to
    /// decimal indices.
    pub fn new(table: CayleyTable, labels: Option<Vec<String>>) -> Result<Self, GroupFailure> {
        let n = table.order();
        let identity = find_identity(&table).ok_or(GroupFailure::NoIdentity)?;
        if let Some((a, b, c)) = first_non_associative(&table) {
            return Err(GroupFailure::NotAssociative { a, b, c });
        }
        let mut inverses = vec![0; n];
        for (a, slot) in inverses.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| table.get(a, b) == identity && table.get(b, a) == identity)
                .ok_or(GroupFailure::MissingInverse { a })?;
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        assert_eq!(labels.len(), n, "label count must match the group order");
        Ok(GroupTable {
            table,
            identity,
            inverses,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    #[inline]
    pub fn op(&self, a: Elem, b: Elem) -> Elem {
        self.table.get(a, b)
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Greedy generating set in element order.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = Subset::singleton(self.order(), self.identity);
        for a in 0..self.order() {
            if !span.contains(a) {
                gens.push(a);
                span = self.view().generated(&gens);
            }
        }
        gens
    }

    pub fn view(&self) -> GroupView<'_> {
        GroupView {
            carrier: Subset::full(self.order()),
            identity: self.identity,
            op: Box::new(move |a, b| self.op(a, b)),
            inv: Box::new(move |a| self.inv(a)),
        }
    }

    pub fn cyclic(n: usize) -> GroupTable {
        assert!(n >= 1);
        let t = CayleyTable::from_fn(n, |a, b| (a + b) % n);
        GroupTable::new(t, None).expect("cyclic group")
    }

    /// Direct product with elements `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let m = other.order();
        let n = self.order() * m;
        let t = CayleyTable::from_fn(n, |x, y| {
            self.op(x / m, y / m) * m + other.op(x % m, y % m)
        });
        let labels = (0..n)
            .map(|x| format!("({},{})", self.labels[x / m], other.labels[x % m]))
            .collect();
        GroupTable::new(t, Some(labels)).expect("direct product of groups")
    }

    /// The group generated by permutations, elements sorted by one-line
    /// notation, product `(σ∘τ)(x) = σ(τ(x))`.
    pub fn from_permutations(gens: &[Permutation]) -> GroupTable {
        let degree = gens.iter().map(|g| g.degree()).max().unwrap_or(1);
        let gens: Vec<Permutation> = gens.iter().map(|g| g.extended(degree)).collect();
        let id = Permutation::identity(degree);
        let mut elems = vec![id.clone()];
        let mut seen: BTreeMap<Permutation, ()> = BTreeMap::new();
        seen.insert(id, ());
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let p = elems[i].compose(g);
                if seen.insert(p.clone(), ()).is_none() {
                    elems.push(p);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        elems.sort();
        let index: BTreeMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let t = CayleyTable::from_fn(elems.len(), |a, b| index[&elems[a].compose(&elems[b])]);
        let labels = elems.iter().map(|p| p.to_string()).collect();
        GroupTable::new(t, Some(labels)).expect("permutation group")
    }

    /// Relabels through `perm` (old → new).
    pub fn relabeled(&self, perm: &[Elem]) -> GroupTable {
        let mut labels = vec![String::new(); self.order()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[old].clone();
        }
        GroupTable::new(self.table.relabeled(perm), Some(labels)).expect("relabeled group")
    }

    /// Same group with its identity moved to index 0 (a transposition).
    pub fn with_identity_first(&self) -> GroupTable {
        if self.identity == 0 {
            return self.clone();
        }
        let mut perm: Vec<Elem> = (0..self.order()).collect();
        perm.swap(0, self.identity);
        self.relabeled(&perm)
    }

    /// All endomorphisms, enumerated by images of the greedy generators.
    pub fn endomorphisms(&self) -> Vec<Vec<Elem>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        self.hom_search(self, &gens, 0, &mut images, &mut out);
        out
    }

    /// All automorphisms.
    pub fn automorphisms(&self) -> Vec<Vec<Elem>> {
        self.endomorphisms()
            .into_iter()
            .filter(|f| {
                let mut seen = vec![false; f.len()];
                f.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            })
            .collect()
    }

    /// All homomorphisms from `self` into `target`.
    pub fn homomorphisms_into(&self, target: &GroupTable) -> Vec<Vec<Elem>> {
        let gens = self.generators();
        let mut out = Vec::new();
        let mut images = vec![0; gens.len()];
        self.hom_search(target, &gens, 0, &mut images, &mut out);
        out
    }

    fn hom_search(
        &self,
        target: &GroupTable,
        gens: &[Elem],
        depth: usize,
        images: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if depth == gens.len() {
            if let Some(f) = extend_homomorphism(self, target, gens, images) {
                out.push(f);
            }
            return;
        }
        let ord = self.element_order(gens[depth]);
        for y in 0..target.order() {
            if ord % target.element_order(y) == 0 {
                images[depth] = y;
                self.hom_search(target, gens, depth + 1, images, out);
            }
        }
    }
}

/// Extends generator images to a homomorphism by walking the Cayley graph;
/// `None` if the images are inconsistent.
pub fn extend_homomorphism(
    source: &GroupTable,
    target: &GroupTable,
    gens: &[Elem],
    images: &[Elem],
) -> Option<Vec<Elem>> {
    let n = source.order();
    let mut f: Vec<Option<Elem>> = vec![None; n];
    f[source.identity()] = Some(target.identity());
    let mut queue = VecDeque::from([source.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = f[x].expect("visited");
        for (&g, &fg) in gens.iter().zip(images) {
            let y = source.op(x, g);
            let fy = target.op(fx, fg);
            match f[y] {
                None => {
                    f[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(v) if v != fy => return None,
                _ => {}
            }
        }
    }
    let f: Vec<Elem> = f.into_iter().collect::<Option<_>>()?;
    let hom = (0..n).all(|a| (0..n).all(|b| f[source.op(a, b)] == target.op(f[a], f[b])));
    hom.then_some(f)
}

fn find_identity(t: &CayleyTable) -> Option<Elem> {
    let n = t.order();
    (0..n).find(|&e| (0..n).all(|x| t.get(e, x) == x && t.get(x, e) == x))
}

pub(crate) fn first_non_associative(t: &CayleyTable) -> Option<(Elem, Elem, Elem)> {
    let n = t.order();
    for a in 0..n {
        for b in 0..n {
            let ab = t.get(a, b);
            for c in 0..n {
                if t.get(ab, c) != t.get(a, t.get(b, c)) {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// A group living inside a larger universe: a carrier subset with its
/// operation and inversion.
pub struct GroupView<'a> {
    pub carrier: Subset,
    pub identity: Elem,
    pub op: Box<dyn Fn(Elem, Elem) -> Elem + 'a>,
    pub inv: Box<dyn Fn(Elem) -> Elem + 'a>,
}

impl GroupView<'_> {
    pub fn universe(&self) -> usize {
        self.carrier.universe()
    }

    /// Smallest subgroup containing `seeds` (and the identity).
    pub fn generated(&self, seeds: &[Elem]) -> Subset {
        let mut s = Subset::singleton(self.universe(), self.identity);
        let mut members = vec![self.identity];
        let mut queue: VecDeque<Elem> = VecDeque::new();
        for &x in seeds {
            if s.insert(x) {
                members.push(x);
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            let mut fresh = Vec::new();
            for &y in &members {
                for z in [(self.op)(x, y), (self.op)(y, x)] {
                    if s.insert(z) {
                        fresh.push(z);
                    }
                }
            }
            let ix = (self.inv)(x);
            if s.insert(ix) {
                fresh.push(ix);
            }
            for z in fresh {
                members.push(z);
                queue.push_back(z);
            }
        }
        s
    }

    /// First witness that `s` is not a subgroup: `(a, b)` with `a∘b ∉ s`,
    /// or `(a, a)` when the inverse of `a` is missing, or `(identity, identity)`
    /// when `s` lacks the identity.
    pub fn subgroup_failure(&self, s: &Subset) -> Option<(Elem, Elem)> {
        if !s.contains(self.identity) {
            return Some((self.identity, self.identity));
        }
        for a in s.iter() {
            if !s.contains((self.inv)(a)) {
                return Some((a, a));
            }
            for b in s.iter() {
                if !s.contains((self.op)(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// First `(g, x)` in element order with `g∘x∘g⁻ ∉ s`, for `g` in the
    /// carrier and `x ∈ s`.
    pub fn normality_failure(&self, s: &Subset) -> Option<(Elem, Elem)> {
        for g in self.carrier.iter() {
            let gi = (self.inv)(g);
            for x in s.iter() {
                if !s.contains((self.op)((self.op)(g, x), gi)) {
                    return Some((g, x));
                }
            }
        }
        None
    }

    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = (self.op)(a, b);
        (self.op)((self.op)(ab, (self.inv)(a)), (self.inv)(b))
    }

    pub fn center(&self) -> Subset {
        let trivial = Subset::singleton(self.universe(), self.identity);
        self.next_center(&trivial)
    }

    fn next_center(&self, z: &Subset) -> Subset {
        Subset::from_elems(
            self.universe(),
            self.carrier
                .iter()
                .filter(|&a| self.carrier.iter().all(|b| z.contains(self.commutator(a, b)))),
        )
    }

    /// `ζ_0 = {1}, ζ_{k+1} = {a | [a,b] ∈ ζ_k ∀b}` up to and including the
    /// first repeated term.
    pub fn upper_central_series(&self) -> Vec<Subset> {
        let mut terms = vec![Subset::singleton(self.universe(), self.identity)];
        loop {
            let next = self.next_center(terms.last().expect("nonempty"));
            let done = &next == terms.last().expect("nonempty");
            terms.push(next);
            if done {
                return terms;
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.upper_central_series()
            .last()
            .is_some_and(|z| *z == self.carrier)
    }

    /// `{a | a∘x = x∘a ∀x ∈ s}`.
    pub fn centralizer(&self, s: &Subset) -> Subset {
        Subset::from_elems(
            self.universe(),
            self.carrier
                .iter()
                .filter(|&a| s.iter().all(|x| (self.op)(a, x) == (self.op)(x, a))),
        )
    }
}

/// A permutation of `{0, .., d-1}` in one-line form; printed 1-based in
/// cycle notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    /// Parses 1-based cycle notation such as `(12)(34)`, `(1 2 3)` or `id`.
    /// Points without separators must be single digits.
    pub fn parse_cycles(s: &str, degree: usize) -> Option<Self> {
        let s = s.trim();
        let mut images: Vec<usize> = (0..degree).collect();
        if s == "id" || s == "()" {
            return Some(Permutation(images));
        }
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(')?;
            let close = open.find(')')?;
            let body = &open[..close];
            let points: Vec<usize> = if body.contains([' ', ',']) {
                body.split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().ok())
                    .collect::<Option<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize))
                    .collect::<Option<_>>()?
            };
            if points.iter().any(|&p| p == 0 || p > degree) {
                return None;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p - 1] = points[(i + 1) % points.len()] - 1;
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    fn extended(&self, degree: usize) -> Permutation {
        let mut v = self.0.clone();
        v.extend(self.0.len()..degree);
        Permutation(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let sep = if n > 9 { " " } else { "" };
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.0[x];
            }
            write!(f, "({})", cycle.join(sep))?;
        }
        if !any {
            write!(f, "id")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn perm(s: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(s, degree).expect("catalog permutation")
}

fn perm_group(degree: usize, gens: &[&str]) -> GroupTable {
    let gens: Vec<Permutation> = gens.iter().map(|g| perm(g, degree)).collect();
    GroupTable::from_permutations(&gens)
}

fn quaternion_group() -> GroupTable {
    // units ±1, ±i, ±j, ±k encoded as sign * basis
    const NAMES: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    // basis product table for 1,i,j,k: (sign, basis)
    const MUL: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let decode = |x: usize| (if x % 2 == 0 { 1i8 } else { -1 }, x / 2);
    let encode = |s: i8, b: usize| 2 * b + usize::from(s < 0);
    let t = CayleyTable::from_fn(8, |a, b| {
        let (sa, ba) = decode(a);
        let (sb, bb) = decode(b);
        let (s, basis) = MUL[ba][bb];
        encode(sa * sb * s, basis)
    });
    GroupTable::new(t, Some(NAMES.iter().map(|s| s.to_string()).collect())).expect("Q8")
}

fn dicyclic12() -> GroupTable {
    // C3 ⋊ C4, generator of C4 inverting C3; element (x, y) at 3*y + x
    let t = CayleyTable::from_fn(12, |a, b| {
        let (x1, y1) = (a % 3, a / 3);
        let (x2, y2) = (b % 3, b / 3);
        let x2 = if y1 % 2 == 1 { (3 - x2) % 3 } else { x2 };
        3 * ((y1 + y2) % 4) + (x1 + x2) % 3
    });
    let labels = (0..12).map(|a| format!("({},{})", a % 3, a / 3)).collect();
    GroupTable::new(t, Some(labels)).expect("Dic3")
}

/// Names of all groups in the embedded catalog, in catalog order.
pub const CATALOG_NAMES: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2xC2xC2", "D4",
    "Q8", "C9", "C3xC3", "C10", "D5", "C11", "C12", "C6xC2", "D6", "A4", "Dic3", "S4", "A5",
];

/// Looks up a catalog group by name; identity is always at index 0.
///
/// The catalog holds every group of order at most 12 up to isomorphism, plus
/// `S4` and `A5`. Cyclic factors are labelled additively (`0, 1, ..`),
/// permutation groups in 1-based cycle notation with `id` for the identity.
pub fn catalog_group(name: &str) -> Option<GroupTable> {
    let g = match name {
        "C1" | "C2" | "C3" | "C4" | "C5" | "C6" | "C7" | "C8" | "C9" | "C10" | "C11" | "C12" => {
            GroupTable::cyclic(name[1..].parse().ok()?)
        }
        "C2xC2" => GroupTable::cyclic(2).direct_product(&GroupTable::cyclic(2)),
        "C4xC2" => GroupTable::cyclic(4).direct_product(&GroupTable::cyclic(2)),
        "C2xC2xC2" => GroupTable::cyclic(2)
            .direct_product(&GroupTable::cyclic(2))
            .direct_product(&GroupTable::cyclic(2)),
        "C3xC3" => GroupTable::cyclic(3).direct_product(&GroupTable::cyclic(3)),
        "C6xC2" => GroupTable::cyclic(6).direct_product(&GroupTable::cyclic(2)),
        "S3" => perm_group(3, &["(12)", "(123)"]),
        "D4" => perm_group(4, &["(1234)", "(13)"]),
        "Q8" => quaternion_group(),
        "D5" => perm_group(5, &["(12345)", "(25)(34)"]),
        "D6" => perm_group(6, &["(123456)", "(26)(35)"]),
        "A4" => perm_group(4, &["(123)", "(12)(34)"]),
        "Dic3" => dicyclic12(),
        "S4" => perm_group(4, &["(1234)", "(12)"]),
        "A5" => perm_group(5, &["(12345)", "(123)"]),
        _ => return None,
    };
    Some(g.with_identity_first())
}

/// Catalog groups of the given order (all isomorphism types when `n ≤ 12`).
pub fn groups_of_order(n: usize) -> Vec<(&'static str, GroupTable)> {
    CATALOG_NAMES
        .iter()
        .filter_map(|&name| catalog_group(name).map(|g| (name, g)))
        .filter(|(_, g)| g.order() == n)
        .collect()
}
