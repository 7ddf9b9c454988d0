//! Finite left semi-braces given by a pair of Cayley tables.
//!
//! A left semi-brace is a set with a left cancellative semigroup `(B,+)` and
//! a group `(B,∘)` such that `a∘(b + c) = a∘b + a∘(a⁻ + c)`. The identity of
//! `(B,∘)` is always element `0`. Iterated sums are evaluated left to right.

use crate::error::{Error, GroupFailure, Result, ValidationError};
use crate::group::{first_non_associative, GroupTable, GroupView};
use crate::subset::Subset;
use crate::table::CayleyTable;
use crate::Elem;

/// Which of the two fundamental maps a [`MapTable`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Lambda,
    Rho,
}

/// `λ_base` or `ρ_base` as an explicit table of images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTable {
    pub kind: MapKind,
    pub base: Elem,
    pub images: Vec<Elem>,
}

impl MapTable {
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }
}

/// A validated finite left semi-brace with its decomposition data cached.
///
/// Immutable after construction; every accessor is a table lookup.
#[derive(Clone, Debug)]
pub struct FiniteLeftSemibrace {
    add: CayleyTable,
    mul: CayleyTable,
    inv: Vec<Elem>,
    idempotents: Subset,
    group_elems: Subset,
    gpart: Vec<Elem>,
    epart: Vec<Elem>,
    neg: Vec<Option<Elem>>,
    lambda: Vec<Elem>,
    rho: Vec<Elem>,
    dot: Vec<Elem>,
    labels: Vec<String>,
    relabeling: Option<Vec<Elem>>,
}

impl PartialEq for FiniteLeftSemibrace {
    fn eq(&self, other: &Self) -> bool {
        self.add == other.add && self.mul == other.mul
    }
}

impl Eq for FiniteLeftSemibrace {}

impl FiniteLeftSemibrace {
    /// Validates the axioms and caches `E`, `G`, the decomposition, `λ`, `ρ`
    /// and `·`.
    pub fn validate(add: CayleyTable, mul: CayleyTable) -> std::result::Result<Self, ValidationError> {
        Self::validate_labeled(add, mul, None)
    }

    /// As [`validate`](Self::validate), carrying presentation labels. If the
    /// `∘`-identity is not element 0 it is swapped into place and the
    /// relabeling is recorded. Witnesses in errors use input indices.
    pub fn validate_labeled(
        add: CayleyTable,
        mul: CayleyTable,
        labels: Option<Vec<String>>,
    ) -> std::result::Result<Self, ValidationError> {
        let n = add.order();
        if mul.order() != n {
            return Err(ValidationError::OrderMismatch {
                add: n,
                mul: mul.order(),
            });
        }
        if n == 0 {
            return Err(ValidationError::Empty);
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        assert_eq!(labels.len(), n, "label count must match the order");

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul.get(e, x) == x && mul.get(x, e) == x))
            .ok_or(ValidationError::NotAGroup(GroupFailure::NoIdentity))?;
        let (add, mul, labels, relabeling) = if identity == 0 {
            (add, mul, labels, None)
        } else {
            let mut perm: Vec<Elem> = (0..n).collect();
            perm.swap(0, identity);
            let mut new_labels = labels.clone();
            new_labels.swap(0, identity);
            (add.relabeled(&perm), mul.relabeled(&perm), new_labels, Some(perm))
        };
        // a transposition is its own inverse, so the same table maps back
        let back = |i: Elem| relabeling.as_ref().map_or(i, |p| p[i]);

        if let Some((a, b, c)) = first_non_associative(&mul) {
            return Err(ValidationError::NotAGroup(GroupFailure::NotAssociative {
                a: back(a),
                b: back(b),
                c: back(c),
            }));
        }
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| mul.get(a, b) == 0)
                .ok_or(ValidationError::NotAGroup(GroupFailure::MissingInverse { a: back(a) }))?;
        }

        for a in 0..n {
            let mut first_col = vec![None; n];
            for b in 0..n {
                let v = add.get(a, b);
                if let Some(prev) = first_col[v] {
                    return Err(ValidationError::NotLeftCancellative {
                        row: back(a),
                        b: back(prev),
                        c: back(b),
                    });
                }
                first_col[v] = Some(b);
            }
        }
        if let Some((a, b, c)) = first_non_associative(&add) {
            return Err(ValidationError::AddNotAssociative {
                a: back(a),
                b: back(b),
                c: back(c),
            });
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul.get(a, b);
                for c in 0..n {
                    let lhs = mul.get(a, add.get(b, c));
                    let rhs = add.get(ab, mul.get(a, add.get(inv[a], c)));
                    if lhs != rhs {
                        return Err(ValidationError::CompatibilityViolation {
                            a: back(a),
                            b: back(b),
                            c: back(c),
                        });
                    }
                }
            }
        }

        Self::assemble(add, mul, inv, labels, relabeling)
    }

    fn assemble(
        add: CayleyTable,
        mul: CayleyTable,
        inv: Vec<Elem>,
        labels: Vec<String>,
        relabeling: Option<Vec<Elem>>,
    ) -> std::result::Result<Self, ValidationError> {
        let n = add.order();
        let bad = |msg: String| Err(ValidationError::InternalInconsistency(msg));

        if let Some(b) = (0..n).find(|&b| add.get(0, b) != b) {
            return bad(format!("0 is not a left identity of + at {b}"));
        }
        let idempotents = Subset::from_elems(n, (0..n).filter(|&e| add.get(e, e) == e));
        let gpart: Vec<Elem> = (0..n).map(|b| add.get(b, 0)).collect();
        let group_elems = Subset::from_elems(n, gpart.iter().copied());

        let mut neg = vec![None; n];
        for g in group_elems.iter() {
            if group_elems.iter().any(|h| !group_elems.contains(add.get(g, h))) {
                return bad(format!("G is not closed under + at {g}"));
            }
            match group_elems.iter().find(|&h| add.get(g, h) == 0 && add.get(h, g) == 0) {
                Some(h) => neg[g] = Some(h),
                None => return bad(format!("{g} has no additive inverse in G")),
            }
        }
        let mut epart = vec![0; n];
        for b in 0..n {
            let g = gpart[b];
            let e = add.get(neg[g].expect("g in G"), b);
            if !idempotents.contains(e) || add.get(g, e) != b {
                return bad(format!("decomposition b = g_b + e_b fails at {b}"));
            }
            epart[b] = e;
        }
        if group_elems.len() * idempotents.len() != n {
            return bad(format!(
                "|G|·|E| = {}·{} ≠ {n}, decomposition not unique",
                group_elems.len(),
                idempotents.len()
            ));
        }

        let mut lambda = vec![0; n * n];
        let mut rho = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                lambda[a * n + b] = mul.get(a, add.get(inv[a], b));
                // rho stored by base: rho[b*n + a] = ρ_b(a)
                rho[b * n + a] = mul.get(inv[add.get(inv[a], b)], b);
            }
        }

        let mut s = FiniteLeftSemibrace {
            add,
            mul,
            inv,
            idempotents,
            group_elems,
            gpart,
            epart,
            neg,
            lambda,
            rho,
            dot: Vec::new(),
            labels,
            relabeling,
        };
        let mut dot = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                dot[a * n + b] = s.dot_checked(a, b).map_err(|e| match e {
                    Error::Validation(v) => v,
                    other => ValidationError::InternalInconsistency(other.to_string()),
                })?;
            }
        }
        s.dot = dot;
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    /// Identity of `(B,∘)`, written `0`.
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add.get(a, b)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul.get(a, b)
    }

    /// `a⁻`, the inverse in `(B,∘)`.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// `−g` in the group `(G,+)`. Panics when `g ∉ G`.
    #[inline]
    pub fn neg(&self, g: Elem) -> Elem {
        self.neg[g].unwrap_or_else(|| panic!("{g} is not in G"))
    }

    pub fn try_neg(&self, g: Elem) -> Result<Elem> {
        self.neg[g].ok_or(Error::NotInG(g))
    }

    pub fn add_table(&self) -> &CayleyTable {
        &self.add
    }

    pub fn mul_table(&self) -> &CayleyTable {
        &self.mul
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order());
        self.labels = labels;
        self
    }

    /// Input index → canonical index, if the identity had to be moved.
    pub fn relabeling(&self) -> Option<&[Elem]> {
        self.relabeling.as_deref()
    }

    /// The set `E` of idempotents of `(B,+)`.
    pub fn idempotents(&self) -> &Subset {
        &self.idempotents
    }

    /// The subgroup `G = B + 0` of `(B,+)`.
    pub fn group_elems(&self) -> &Subset {
        &self.group_elems
    }

    pub fn in_e(&self, b: Elem) -> bool {
        self.idempotents.contains(b)
    }

    pub fn in_g(&self, b: Elem) -> bool {
        self.group_elems.contains(b)
    }

    /// True when `(B,+)` is a group, i.e. `E = {0}`.
    pub fn is_skew_brace(&self) -> bool {
        self.idempotents.len() == 1
    }

    /// `λ_a(b) = a∘(a⁻ + b)`.
    #[inline]
    pub fn lambda_at(&self, a: Elem, b: Elem) -> Elem {
        self.lambda[a * self.order() + b]
    }

    /// `ρ_b(a) = (a⁻ + b)⁻∘b`.
    #[inline]
    pub fn rho_at(&self, b: Elem, a: Elem) -> Elem {
        self.rho[b * self.order() + a]
    }

    pub fn lambda(&self, a: Elem) -> MapTable {
        let n = self.order();
        MapTable {
            kind: MapKind::Lambda,
            base: a,
            images: self.lambda[a * n..(a + 1) * n].to_vec(),
        }
    }

    pub fn rho(&self, b: Elem) -> MapTable {
        let n = self.order();
        MapTable {
            kind: MapKind::Rho,
            base: b,
            images: self.rho[b * n..(b + 1) * n].to_vec(),
        }
    }

    /// `a·b = λ_a(a⁻) + a∘b + λ_b(b⁻)`, cached at validation.
    #[inline]
    pub fn dot(&self, a: Elem, b: Elem) -> Elem {
        self.dot[a * self.order() + b]
    }

    /// Evaluates `a·b` by its three equivalent formulas
    /// `λ_a(a⁻) + a∘b + λ_b(b⁻)`, `−g_a + a∘b − g_b` and
    /// `λ_a(b) + λ_b(b⁻)`, and fails if they disagree.
    pub fn dot_checked(&self, a: Elem, b: Elem) -> Result<Elem> {
        let ab = self.mul(a, b);
        let tail = self.lambda_at(b, self.inv(b));
        let by_definition = self.add(self.add(self.lambda_at(a, self.inv(a)), ab), tail);
        let by_group_parts = self.add(
            self.add(self.neg(self.gpart[a]), ab),
            self.neg(self.gpart[b]),
        );
        let by_lambda = self.add(self.lambda_at(a, b), tail);
        if by_definition != by_group_parts || by_definition != by_lambda {
            return Err(ValidationError::InternalInconsistency(format!(
                "a·b formulas disagree at a={a} b={b}: {by_definition}, {by_group_parts}, {by_lambda}"
            ))
            .into());
        }
        Ok(by_definition)
    }

    /// `g_b = b + 0`.
    pub fn group_part(&self, b: Elem) -> Elem {
        self.gpart[b]
    }

    /// `e_b = −g_b + b = λ_b(0)`.
    pub fn idempotent_part(&self, b: Elem) -> Elem {
        self.epart[b]
    }

    /// The unique `(g, e) ∈ G × E` with `b = g∘e`: `g = g_b`,
    /// `e = λ_{g_b⁻}(e_b)`.
    pub fn factorize_mul(&self, b: Elem) -> (Elem, Elem) {
        let g = self.gpart[b];
        (g, self.lambda_at(self.inv(g), self.epart[b]))
    }

    /// `[a, b]_+ = −a − b + a + b` in `(G,+)`.
    pub fn additive_commutator(&self, a: Elem, b: Elem) -> Result<Elem> {
        let na = self.try_neg(a)?;
        let nb = self.try_neg(b)?;
        Ok(self.add(self.add(self.add(na, nb), a), b))
    }

    /// `(B,∘)` as a group over the full carrier.
    pub fn mul_group(&self) -> GroupView<'_> {
        GroupView {
            carrier: Subset::full(self.order()),
            identity: 0,
            op: Box::new(move |a, b| self.mul(a, b)),
            inv: Box::new(move |a| self.inv(a)),
        }
    }

    /// `(G,+)` as a group inside the carrier.
    pub fn add_group(&self) -> GroupView<'_> {
        GroupView {
            carrier: self.group_elems.clone(),
            identity: 0,
            op: Box::new(move |a, b| self.add(a, b)),
            inv: Box::new(move |a| self.neg(a)),
        }
    }

    /// `(B,∘)` as a standalone group table.
    pub fn mul_group_table(&self) -> GroupTable {
        GroupTable::new(self.mul.clone(), Some(self.labels.clone())).expect("validated group")
    }

    /// Relabels through the bijection `perm` (old → new) and revalidates.
    pub fn relabeled(&self, perm: &[Elem]) -> std::result::Result<Self, ValidationError> {
        let mut labels = vec![String::new(); self.order()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[old].clone();
        }
        Self::validate_labeled(self.add.relabeled(perm), self.mul.relabeled(perm), Some(labels))
    }

    /// The sub-semi-brace carried by `s`, which must contain 0 and be closed
    /// under `+` and `∘`. Returns the structure and the embedding
    /// (sub-index → index in `self`); members keep their relative order.
    pub fn substructure(&self, s: &Subset) -> Result<(FiniteLeftSemibrace, Vec<Elem>)> {
        if !s.contains(0) {
            return Err(Error::NotClosed("missing 0".into()));
        }
        let members = s.to_vec();
        let mut pos = vec![usize::MAX; self.order()];
        for (i, &a) in members.iter().enumerate() {
            pos[a] = i;
        }
        for &a in &members {
            for &b in &members {
                for (op, v) in [("+", self.add(a, b)), ("∘", self.mul(a, b))] {
                    if !s.contains(v) {
                        return Err(Error::NotClosed(format!("{a}{op}{b}")));
                    }
                }
            }
        }
        let m = members.len();
        let add = CayleyTable::from_fn(m, |i, j| pos[self.add(members[i], members[j])]);
        let mul = CayleyTable::from_fn(m, |i, j| pos[self.mul(members[i], members[j])]);
        let labels = members.iter().map(|&a| self.labels[a].clone()).collect();
        let sub = Self::validate_labeled(add, mul, Some(labels))?;
        Ok((sub, members))
    }

    /// The skew brace `G = B + 0` and its embedding into `B`.
    pub fn group_brace(&self) -> (FiniteLeftSemibrace, Vec<Elem>) {
        self.substructure(&self.group_elems)
            .expect("G is a sub-skew brace of every semi-brace")
    }

    /// `E` as a (trivial) semi-brace and its embedding into `B`.
    pub fn idempotent_brace(&self) -> (FiniteLeftSemibrace, Vec<Elem>) {
        self.substructure(&self.idempotents)
            .expect("E is a sub-semi-brace of every semi-brace")
    }
}
