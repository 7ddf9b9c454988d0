//! Subset algebra over a semi-brace: generated subgroups, `X·Y`, the ideal
//! and left-ideal predicates, socle, generalized socle and annihilator.
//!
//! Every predicate reports the first counterexample in element order.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semibrace::FiniteLeftSemibrace;
use crate::subset::Subset;
use crate::Elem;

/// The condition an ideal test failed on.
///
/// `C1..C4` are the conditions of the ideal characterization
/// (`I + 0 ⊆ I`, `I∩G ⊴ (G,+)`, `λ_g(I) ⊆ I`, `I ⊴ (B,∘)`), `D1..D4` the
/// defining conditions, `P1..P5` the conditions phrased through `·`, and
/// `L1..L4` those of a left ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdealCondition {
    Empty,
    Subsemigroup,
    C1,
    C2,
    C3,
    C4,
    D1,
    D2,
    D3,
    D4,
    P1,
    P2,
    P3,
    P4,
    P5,
    L1,
    L2,
    L3,
    L4,
}

impl fmt::Display for IdealCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealFailure {
    pub condition: IdealCondition,
    /// Elements instantiating the failure, e.g. `[g, x, g∘x∘g⁻]`.
    pub witness: Vec<Elem>,
}

/// Outcome of an ideal test. `failure` explains the predicate the test is
/// named after: the left-ideal flag for [`is_left_ideal`], the ideal flag
/// for the others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealVerdict {
    pub is_left_ideal: bool,
    pub is_ideal: bool,
    pub failure: Option<IdealFailure>,
}

fn fail(condition: IdealCondition, witness: Vec<Elem>) -> Option<IdealFailure> {
    Some(IdealFailure { condition, witness })
}

/// `X + Y = {x + y}`.
pub fn sumset(b: &FiniteLeftSemibrace, x: &Subset, y: &Subset) -> Subset {
    let mut out = Subset::empty(b.order());
    for p in x.iter() {
        for q in y.iter() {
            out.insert(b.add(p, q));
        }
    }
    out
}

/// The subgroup of `(G,+)` generated by `x`; `{0}` for the empty set.
pub fn add_subgroup_gen(b: &FiniteLeftSemibrace, x: &Subset) -> Result<Subset> {
    if let Some(bad) = x.iter().find(|&a| !b.in_g(a)) {
        return Err(Error::NotInG(bad));
    }
    Ok(b.add_group().generated(&x.to_vec()))
}

/// The subgroup of `(B,∘)` generated by `x`.
pub fn mul_subgroup_gen(b: &FiniteLeftSemibrace, x: &Subset) -> Subset {
    b.mul_group().generated(&x.to_vec())
}

/// `X·Y`, the subgroup of `(G,+)` generated by all `x·y`.
pub fn dot_set(b: &FiniteLeftSemibrace, x: &Subset, y: &Subset) -> Result<Subset> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let mut dots = Subset::empty(b.order());
    for p in x.iter() {
        for q in y.iter() {
            dots.insert(b.dot(p, q));
        }
    }
    add_subgroup_gen(b, &dots)
}

fn plus_zero_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<Vec<Elem>> {
    i.iter()
        .find(|&x| !i.contains(b.add(x, 0)))
        .map(|x| vec![x, b.add(x, 0)])
}

fn lambda_g_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<Vec<Elem>> {
    for g in b.group_elems().iter() {
        for x in i.iter() {
            let y = b.lambda_at(g, x);
            if !i.contains(y) {
                return Some(vec![g, x, y]);
            }
        }
    }
    None
}

fn add_subgroup_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<Vec<Elem>> {
    let ig = i.intersection(b.group_elems());
    b.add_group()
        .subgroup_failure(&ig)
        .map(|(x, y)| vec![x, y])
}

fn add_normal_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<Vec<Elem>> {
    if let Some(w) = add_subgroup_failure(b, i) {
        return Some(w);
    }
    let ig = i.intersection(b.group_elems());
    b.add_group().normality_failure(&ig).map(|(g, x)| {
        let conj = b.add(b.add(g, x), b.neg(g));
        vec![g, x, conj]
    })
}

fn mul_subgroup_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<Vec<Elem>> {
    b.mul_group().subgroup_failure(i).map(|(x, y)| vec![x, y])
}

fn mul_normal_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<Vec<Elem>> {
    if let Some(w) = mul_subgroup_failure(b, i) {
        return Some(w);
    }
    b.mul_group().normality_failure(i).map(|(g, x)| {
        let conj = b.mul(b.mul(g, x), b.inv(g));
        vec![g, x, conj]
    })
}

fn subsemigroup_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<(Elem, Elem)> {
    for x in i.iter() {
        for y in i.iter() {
            if !i.contains(b.add(x, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

fn left_ideal_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<IdealFailure> {
    use IdealCondition::*;
    if let Some(w) = plus_zero_failure(b, i) {
        return fail(L1, w);
    }
    if let Some(w) = add_subgroup_failure(b, i) {
        return fail(L2, w);
    }
    if let Some(w) = lambda_g_failure(b, i) {
        return fail(L3, w);
    }
    if let Some(w) = mul_subgroup_failure(b, i) {
        return fail(L4, w);
    }
    None
}

fn thm_failure(b: &FiniteLeftSemibrace, i: &Subset) -> Option<IdealFailure> {
    use IdealCondition::*;
    if let Some(w) = plus_zero_failure(b, i) {
        return fail(C1, w);
    }
    if let Some(w) = add_normal_failure(b, i) {
        return fail(C2, w);
    }
    if let Some(w) = lambda_g_failure(b, i) {
        return fail(C3, w);
    }
    if let Some(w) = mul_normal_failure(b, i) {
        return fail(C4, w);
    }
    None
}

fn empty_verdict() -> IdealVerdict {
    IdealVerdict {
        is_left_ideal: false,
        is_ideal: false,
        failure: fail(IdealCondition::Empty, vec![]),
    }
}

/// Left ideal: `I + 0 ⊆ I`, `I∩G ≤ (G,+)`, `λ_g(I) ⊆ I` for `g ∈ G`, and
/// `I ≤ (B,∘)`.
pub fn is_left_ideal(b: &FiniteLeftSemibrace, i: &Subset) -> IdealVerdict {
    if i.is_empty() {
        return empty_verdict();
    }
    let left = left_ideal_failure(b, i);
    IdealVerdict {
        is_left_ideal: left.is_none(),
        is_ideal: left.is_none() && thm_failure(b, i).is_none(),
        failure: left,
    }
}

/// Ideal test through the characterization `I + 0 ⊆ I`, `I∩G ⊴ (G,+)`,
/// `λ_g(I) ⊆ I` for `g ∈ G`, `I ⊴ (B,∘)`.
pub fn is_ideal_thm(b: &FiniteLeftSemibrace, i: &Subset) -> IdealVerdict {
    if i.is_empty() {
        return empty_verdict();
    }
    let failure = thm_failure(b, i);
    IdealVerdict {
        is_left_ideal: left_ideal_failure(b, i).is_none(),
        is_ideal: failure.is_none(),
        failure,
    }
}

/// Ideal test by the definition: a subsemigroup of `(B,+)` that is normal
/// in `(B,∘)`, with `I∩G ⊴ (G,+)`, `ρ_b(n) ∈ I` for `n ∈ I∩G` and
/// `λ_g(e) ∈ I` for `g ∈ G`, `e ∈ I∩E`.
pub fn is_ideal_def(b: &FiniteLeftSemibrace, i: &Subset) -> IdealVerdict {
    use IdealCondition::*;
    if i.is_empty() {
        return empty_verdict();
    }
    let failure = (|| {
        if let Some((x, y)) = subsemigroup_failure(b, i) {
            return fail(Subsemigroup, vec![x, y, b.add(x, y)]);
        }
        if let Some(w) = mul_normal_failure(b, i) {
            return fail(D1, w);
        }
        if let Some(w) = add_normal_failure(b, i) {
            return fail(D2, w);
        }
        let ig = i.intersection(b.group_elems());
        for x in 0..b.order() {
            for n in ig.iter() {
                let y = b.rho_at(x, n);
                if !i.contains(y) {
                    return fail(D3, vec![x, n, y]);
                }
            }
        }
        let ie = i.intersection(b.idempotents());
        for g in b.group_elems().iter() {
            for e in ie.iter() {
                let y = b.lambda_at(g, e);
                if !i.contains(y) {
                    return fail(D4, vec![g, e, y]);
                }
            }
        }
        None
    })();
    IdealVerdict {
        is_left_ideal: left_ideal_failure(b, i).is_none(),
        is_ideal: failure.is_none(),
        failure,
    }
}

/// Ideal test through `·` for a subsemigroup `I` of `(B,+)`:
/// `I∩G ⊴ (G,+)`, `λ_g(e) ∈ I` for `e ∈ I∩E`, `I·B ⊆ I` and `B·I ⊆ I`,
/// `λ_{a⁻∘x∘a}(0) ∈ I` for `x ∈ I`, `a ∈ G ∪ E`, and `I ≤ (B,∘)`.
pub fn is_ideal_prop(b: &FiniteLeftSemibrace, i: &Subset) -> Result<IdealVerdict> {
    use IdealCondition::*;
    if i.is_empty() {
        return Ok(empty_verdict());
    }
    if let Some((x, y)) = subsemigroup_failure(b, i) {
        return Err(Error::NotASubsemigroup { a: x, b: y });
    }
    let failure = (|| {
        if let Some(w) = add_normal_failure(b, i) {
            return fail(P1, w);
        }
        let ie = i.intersection(b.idempotents());
        for g in b.group_elems().iter() {
            for e in ie.iter() {
                let y = b.lambda_at(g, e);
                if !i.contains(y) {
                    return fail(P2, vec![g, e, y]);
                }
            }
        }
        // with I∩G a subgroup, I·B ⊆ I reduces to the generators x·y
        for x in i.iter() {
            for y in 0..b.order() {
                for (p, q) in [(x, y), (y, x)] {
                    let d = b.dot(p, q);
                    if !i.contains(d) {
                        return fail(P3, vec![p, q, d]);
                    }
                }
            }
        }
        let pure = b.group_elems().union(b.idempotents());
        for a in pure.iter() {
            for x in i.iter() {
                let c = b.mul(b.mul(b.inv(a), x), a);
                let y = b.lambda_at(c, 0);
                if !i.contains(y) {
                    return fail(P4, vec![a, x, y]);
                }
            }
        }
        if let Some(w) = mul_subgroup_failure(b, i) {
            return fail(P5, w);
        }
        None
    })();
    Ok(IdealVerdict {
        is_left_ideal: left_ideal_failure(b, i).is_none(),
        is_ideal: failure.is_none(),
        failure,
    })
}

/// `a ∼_I b ⟺ a∘b⁻ ∈ I`.
pub fn related(b: &FiniteLeftSemibrace, i: &Subset, x: Elem, y: Elem) -> bool {
    i.contains(b.mul(x, b.inv(y)))
}

fn inconsistent(what: &str, a: &Subset, c: &Subset) -> Error {
    Error::InconsistentEquivalences(format!("{what}: {a:?} vs {c:?}"))
}

/// `Soc(B) = {a | ρ_a = ρ_0, λ_a = λ_0}`, cross-checked against
/// `{a ∈ G | a + b = a∘b, −a + b + a = b + 0 ∀b}` and, for skew braces,
/// against `{a | a·b = 0, b + a = a + b ∀b}`.
pub fn socle(b: &FiniteLeftSemibrace) -> Result<Subset> {
    let n = b.order();
    let literal = Subset::from_elems(
        n,
        (0..n).filter(|&a| (0..n).all(|x| b.rho_at(a, x) == b.rho_at(0, x) && b.lambda_at(a, x) == x)),
    );
    let second = Subset::from_elems(
        n,
        b.group_elems().iter().filter(|&a| {
            (0..n).all(|x| b.add(a, x) == b.mul(a, x) && b.add(b.add(b.neg(a), x), a) == b.add(x, 0))
        }),
    );
    if literal != second {
        return Err(inconsistent("socle forms", &literal, &second));
    }
    if b.is_skew_brace() {
        let skew = Subset::from_elems(
            n,
            (0..n).filter(|&a| (0..n).all(|x| b.dot(a, x) == 0 && b.add(x, a) == b.add(a, x))),
        );
        if literal != skew {
            return Err(inconsistent("skew socle form", &literal, &skew));
        }
    }
    Ok(literal)
}

/// `Zoc(B) = Soc(B) + E`, defined when `E` is an ideal. Cross-checked
/// against `{a | ρ_a = ρ_0, λ_a = λ_{e_a}}` and
/// `{a | ρ_a = ρ_{e_a}, λ_a = λ_{e_a}}`.
pub fn zoc(b: &FiniteLeftSemibrace) -> Result<Subset> {
    require_e_ideal(b)?;
    let n = b.order();
    let z = sumset(b, &socle(b)?, b.idempotents());
    let same = |a: Elem, c: Elem, rho: bool| {
        (0..n).all(|x| {
            if rho {
                b.rho_at(a, x) == b.rho_at(c, x)
            } else {
                b.lambda_at(a, x) == b.lambda_at(c, x)
            }
        })
    };
    let by_rho0 = Subset::from_elems(
        n,
        (0..n).filter(|&a| same(a, 0, true) && same(a, b.idempotent_part(a), false)),
    );
    if z != by_rho0 {
        return Err(inconsistent("Zoc via ρ_0", &z, &by_rho0));
    }
    let by_rho_e = Subset::from_elems(
        n,
        (0..n).filter(|&a| {
            let e = b.idempotent_part(a);
            same(a, e, true) && same(a, e, false)
        }),
    );
    if z != by_rho_e {
        return Err(inconsistent("Zoc via ρ_{e_a}", &z, &by_rho_e));
    }
    Ok(z)
}

/// The centre `Z(B)` of `(B,∘)`.
pub fn center(b: &FiniteLeftSemibrace) -> Subset {
    b.mul_group().center()
}

/// `ζ_0 = {0} ⊆ ζ_1 ⊆ ..` of `(B,∘)`, ending with the first repeated term.
pub fn upper_central_series(b: &FiniteLeftSemibrace) -> Vec<Subset> {
    b.mul_group().upper_central_series()
}

/// `Ann(B) = Soc(B)∩Z(B) + E∩Z(B)`. When `E` is an ideal, also checks that
/// `a·b = b·a = 0` for `a ∈ Ann(B)` and that `Ann(B)` is an ideal.
pub fn annihilator(b: &FiniteLeftSemibrace) -> Result<Subset> {
    let z = center(b);
    let ann = sumset(
        b,
        &socle(b)?.intersection(&z),
        &b.idempotents().intersection(&z),
    );
    if is_e_ideal(b)?.is_ideal {
        for a in ann.iter() {
            for x in 0..b.order() {
                if b.dot(a, x) != 0 || b.dot(x, a) != 0 {
                    return Err(Error::ConsistencyViolation {
                        theorem: "ann-dot-vanishes",
                        witness: format!("a={a} b={x}"),
                    });
                }
            }
        }
        if let Some(f) = is_ideal_thm(b, &ann).failure {
            return Err(Error::ConsistencyViolation {
                theorem: "ann-is-ideal",
                witness: format!("{} {:?}", f.condition, f.witness),
            });
        }
    }
    Ok(ann)
}

/// Witness that `E` is not normal in `(B,∘)`: `b∘e∘b⁻ ∉ E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ENormalityWitness {
    pub b: Elem,
    pub e: Elem,
    pub conjugate: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EIdealReport {
    pub is_ideal: bool,
    pub witness: Option<ENormalityWitness>,
}

/// Decides whether `E` is an ideal by five independent tests which must
/// agree: `E ⊴ (B,∘)`; `e·b = 0`; `a·b = g_a·g_b`; `e∘g = g + e`; and
/// `ρ_0` an idempotent endomorphism of `(B,∘)` with image `G` and kernel
/// `E`.
pub fn is_e_ideal(b: &FiniteLeftSemibrace) -> Result<EIdealReport> {
    let n = b.order();
    let e_set = b.idempotents();
    let g_set = b.group_elems();
    let mut witness = None;
    'outer: for x in 0..n {
        for e in e_set.iter() {
            let c = b.mul(b.mul(x, e), b.inv(x));
            if !e_set.contains(c) {
                witness = Some(ENormalityWitness { b: x, e, conjugate: c });
                break 'outer;
            }
        }
    }
    let normal = witness.is_none();
    let dot_vanishes = e_set.iter().all(|e| (0..n).all(|x| b.dot(e, x) == 0));
    let dot_on_parts = (0..n).all(|x| {
        (0..n).all(|y| b.dot(x, y) == b.dot(b.group_part(x), b.group_part(y)))
    });
    let commute = e_set
        .iter()
        .all(|e| g_set.iter().all(|g| b.mul(e, g) == b.add(g, e)));
    let rho0 = b.rho(0).images;
    let rho0_split = (0..n).all(|x| (0..n).all(|y| rho0[b.mul(x, y)] == b.mul(rho0[x], rho0[y])))
        && (0..n).all(|x| rho0[rho0[x]] == rho0[x])
        && Subset::from_elems(n, rho0.iter().copied()) == *g_set
        && Subset::from_elems(n, (0..n).filter(|&x| rho0[x] == 0)) == *e_set;
    let routes = [normal, dot_vanishes, dot_on_parts, commute, rho0_split];
    if routes.iter().any(|&r| r != normal) {
        return Err(Error::InconsistentEquivalences(format!(
            "E-ideal routes (normal, e·b=0, a·b=g_a·g_b, e∘g=g+e, ρ_0 split) = {routes:?}"
        )));
    }
    Ok(EIdealReport {
        is_ideal: normal,
        witness,
    })
}

/// `Ok(())` when `E` is an ideal, otherwise the normality witness as
/// [`Error::ENotIdeal`].
pub fn require_e_ideal(b: &FiniteLeftSemibrace) -> Result<()> {
    match is_e_ideal(b)?.witness {
        None => Ok(()),
        Some(w) => Err(Error::ENotIdeal {
            b: w.b,
            e: w.e,
            conjugate: w.conjugate,
        }),
    }
}
