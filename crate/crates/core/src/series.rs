//! Right, left and strong series, the socle, generalized socle and
//! annihilator series, z-series detection, element powers and the
//! nilpotency classification.
//!
//! Every series is iterated to an explicit fixpoint. Consequences of the
//! structure theory are re-checked on the computed terms and surface as
//! [`Error::ConsistencyViolation`] if they ever fail.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::constructions::quotient;
use crate::error::{Error, Result};
use crate::group::GroupView;
use crate::semibrace::FiniteLeftSemibrace;
use crate::subset::Subset;
use crate::subsets::{
    dot_set, is_e_ideal, is_ideal_thm, is_left_ideal, require_e_ideal, socle, sumset, zoc,
};
use crate::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Right,
    Left,
    Strong,
    Soc,
    Zoc,
    Ann,
    UpperCentral,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Right => "right",
            SeriesKind::Left => "left",
            SeriesKind::Strong => "strong",
            SeriesKind::Soc => "soc",
            SeriesKind::Zoc => "zoc",
            SeriesKind::Ann => "ann",
            SeriesKind::UpperCentral => "upper_central",
        }
    }
}

/// A chain of subsets computed up to its fixpoint. `terms[i]` is the term
/// of index `start_index + i`; `stabilized_at` is the index from which the
/// chain is constant, and the term after it was computed to confirm it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub start_index: usize,
    pub terms: Vec<Subset>,
    pub stabilized_at: usize,
}

impl SeriesReport {
    fn from_terms(kind: SeriesKind, start_index: usize, mut terms: Vec<Subset>) -> Self {
        let mut first = terms.len() - 1;
        while first > 0 && terms[first - 1] == terms[first] {
            first -= 1;
        }
        if first + 1 == terms.len() {
            let last = terms[first].clone();
            terms.push(last);
        }
        terms.truncate(first + 2);
        SeriesReport {
            kind,
            start_index,
            terms,
            stabilized_at: start_index + first,
        }
    }

    pub fn terminal(&self) -> &Subset {
        self.terms.last().expect("series has terms")
    }

    /// The term of index `k`; indices past the fixpoint give the terminal.
    pub fn term(&self, k: usize) -> &Subset {
        assert!(k >= self.start_index, "index {k} precedes the series start");
        self.terms
            .get(k - self.start_index)
            .unwrap_or_else(|| self.terminal())
    }

    /// First index whose term equals `target`.
    pub fn reaches(&self, target: &Subset) -> Option<usize> {
        self.terms
            .iter()
            .position(|t| t == target)
            .map(|i| i + self.start_index)
    }

    /// Last index worth comparing termwise against another series.
    pub fn last_index(&self) -> usize {
        self.start_index + self.terms.len() - 1
    }
}

fn violation(theorem: &'static str, witness: impl Into<String>) -> Error {
    Error::ConsistencyViolation {
        theorem,
        witness: witness.into(),
    }
}

fn sanity_bound(b: &FiniteLeftSemibrace, s: &SeriesReport) -> Result<()> {
    let bound = match s.kind {
        SeriesKind::Strong => 2 * b.order() + 2,
        _ => b.order() + 1,
    };
    if s.stabilized_at > bound {
        return Err(violation("series-length", format!("{:?} at {}", s.kind, s.stabilized_at)));
    }
    Ok(())
}

/// `B^(1) = B`, `B^(n+1) = B^(n)·B + E`. Every term is checked to be an
/// ideal.
pub fn right_series(b: &FiniteLeftSemibrace) -> Result<SeriesReport> {
    let full = Subset::full(b.order());
    let mut terms = vec![full.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        let next = sumset(b, &dot_set(b, last, &full)?, b.idempotents());
        let done = next == *last;
        terms.push(next);
        if done {
            break;
        }
    }
    let s = SeriesReport::from_terms(SeriesKind::Right, 1, terms);
    sanity_bound(b, &s)?;
    for t in &s.terms {
        if let Some(f) = is_ideal_thm(b, t).failure {
            return Err(violation("right-series-ideal", format!("{t:?}: {} {:?}", f.condition, f.witness)));
        }
    }
    Ok(s)
}

/// `B^1 = B`, `B^{n+1} = B·B^n + E`. Every term is checked to be a left
/// ideal.
pub fn left_series(b: &FiniteLeftSemibrace) -> Result<SeriesReport> {
    let full = Subset::full(b.order());
    let mut terms = vec![full.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        let next = sumset(b, &dot_set(b, &full, last)?, b.idempotents());
        let done = next == *last;
        terms.push(next);
        if done {
            break;
        }
    }
    let s = SeriesReport::from_terms(SeriesKind::Left, 1, terms);
    sanity_bound(b, &s)?;
    check_left_ideals(b, &s, "left-series-left-ideal")?;
    Ok(s)
}

fn check_left_ideals(b: &FiniteLeftSemibrace, s: &SeriesReport, theorem: &'static str) -> Result<()> {
    for t in &s.terms {
        if let Some(f) = is_left_ideal(b, t).failure {
            return Err(violation(theorem, format!("{t:?}: {} {:?}", f.condition, f.witness)));
        }
    }
    Ok(())
}

/// `B^[1] = B`, `B^[n+1] = ⟨⋃ B^[i]·B^[n+1−i]⟩_+ + E`.
///
/// A term depends on all earlier ones, so one repeat is not a fixpoint.
/// Once the terms of indices `k..=2k` coincide, every later term equals
/// them as well; the iteration stops there.
pub fn strong_series(b: &FiniteLeftSemibrace) -> Result<SeriesReport> {
    let n = b.order();
    // terms[i] holds B^[i+1]
    let mut terms = vec![Subset::full(n)];
    loop {
        let m = terms.len();
        let mut dots = Subset::empty(n);
        for i in 1..=m {
            let left = &terms[i - 1];
            let right = &terms[m - i];
            dots = dots.union(&dot_set(b, left, right)?);
        }
        let next = sumset(b, &dots, b.idempotents());
        terms.push(next);
        let last = terms.len();
        let mut k = last;
        while k > 1 && terms[k - 2] == terms[last - 1] {
            k -= 1;
        }
        if last >= 2 * k + 1 {
            break;
        }
    }
    let s = SeriesReport::from_terms(SeriesKind::Strong, 1, terms);
    sanity_bound(b, &s)?;
    check_left_ideals(b, &s, "strong-series-left-ideal")?;
    Ok(s)
}

fn soc_step(b: &FiniteLeftSemibrace, previous: &Subset) -> Result<Subset> {
    let q = quotient(b, previous)?;
    Ok(q.preimage(&socle(&q.semibrace)?))
}

/// `Soc_0 = {0}`; `Soc_k` is the preimage of `Soc(B/Soc_{k−1})`. For skew
/// braces the terms are compared with
/// `{a | a·b, [a,b]_+ ∈ Soc_{k−1} ∀b}`.
pub fn soc_series(b: &FiniteLeftSemibrace) -> Result<SeriesReport> {
    let n = b.order();
    let mut terms = vec![Subset::singleton(n, 0)];
    loop {
        let last = terms.last().expect("nonempty");
        let next = soc_step(b, last)?;
        if b.is_skew_brace() {
            let by_commutators = Subset::from_elems(
                n,
                (0..n).filter(|&a| {
                    (0..n).all(|x| {
                        last.contains(b.dot(a, x))
                            && last.contains(b.additive_commutator(a, x).expect("skew brace"))
                    })
                }),
            );
            if by_commutators != next {
                return Err(Error::InconsistentEquivalences(format!(
                    "socle series term after {last:?}: {next:?} vs {by_commutators:?}"
                )));
            }
        }
        if !last.is_subset(&next) {
            return Err(violation("soc-series-ascends", format!("{last:?} ⊄ {next:?}")));
        }
        let done = next == *last;
        terms.push(next);
        if done {
            break;
        }
    }
    let s = SeriesReport::from_terms(SeriesKind::Soc, 0, terms);
    sanity_bound(b, &s)?;
    Ok(s)
}

/// `Zoc_0 = E`, `Zoc_1 = Zoc(B)`, and for `k > 1` `Zoc_k` is the preimage
/// of `Zoc(B/Zoc_{k−1})`. Requires `E` to be an ideal. For `k > 1` each
/// term is compared with `{a | a·b, [g_a,g_b]_+ ∈ Zoc_{k−1} ∀b}`.
pub fn zoc_series(b: &FiniteLeftSemibrace) -> Result<SeriesReport> {
    require_e_ideal(b)?;
    let n = b.order();
    let mut terms = vec![b.idempotents().clone()];
    loop {
        let last = terms.last().expect("nonempty");
        let k = terms.len();
        // Zoc_1 is Zoc(B) itself: B/E is G, whose socle can be larger
        let next = if k == 1 {
            zoc(b)?
        } else {
            let q = quotient(b, last)?;
            q.preimage(&zoc(&q.semibrace)?)
        };
        if k > 1 {
            let by_dots = Subset::from_elems(
                n,
                (0..n).filter(|&a| {
                    (0..n).all(|x| {
                        let comm = b
                            .additive_commutator(b.group_part(a), b.group_part(x))
                            .expect("group parts lie in G");
                        last.contains(b.dot(a, x)) && last.contains(comm)
                    })
                }),
            );
            if next != by_dots {
                return Err(violation("zoc-by-dots", format!("k={k}: {next:?} vs {by_dots:?}")));
            }
        }
        // Zoc_1 follows a different rule, so only a later repeat is a fixpoint
        let done = k > 1 && next == *last;
        terms.push(next);
        if done {
            break;
        }
    }
    let s = SeriesReport::from_terms(SeriesKind::Zoc, 0, terms);
    sanity_bound(b, &s)?;
    for t in &s.terms {
        if !is_ideal_thm(b, t).is_ideal {
            return Err(violation("zoc-series-ideal", format!("{t:?}")));
        }
    }
    Ok(s)
}

/// `ζ_0 = {0} ⊆ ζ_1 ⊆ ..` of `(B,∘)`.
pub fn upper_central_series(b: &FiniteLeftSemibrace) -> SeriesReport {
    SeriesReport::from_terms(
        SeriesKind::UpperCentral,
        0,
        b.mul_group().upper_central_series(),
    )
}

/// `Ann_k = Soc_k∩ζ_k + E∩ζ_k` for `k ≥ 1`, up to the index where both
/// ingredient series have settled.
pub fn ann_series(
    b: &FiniteLeftSemibrace,
    soc: &SeriesReport,
    zeta: &SeriesReport,
) -> Result<SeriesReport> {
    let end = soc.stabilized_at.max(zeta.stabilized_at).max(1) + 1;
    let terms = (1..=end)
        .map(|k| {
            let z = zeta.term(k);
            sumset(b, &soc.term(k).intersection(z), &b.idempotents().intersection(z))
        })
        .collect();
    let s = SeriesReport::from_terms(SeriesKind::Ann, 1, terms);
    for w in s.terms.windows(2) {
        if !w[0].is_subset(&w[1]) {
            return Err(violation("ann-series-ascends", format!("{:?} ⊄ {:?}", w[0], w[1])));
        }
    }
    Ok(s)
}

/// A z-series `B = I_0 ⊇ .. ⊇ I_n = E`, if one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZSeries {
    pub exists: bool,
    pub chain: Option<Vec<Subset>>,
}

/// `B` has a z-series iff `E` is an ideal and `Zoc_n(B) = B` for some `n`.
/// The witness is the generalized socle series reversed. The verdict is
/// compared with the socle series of the skew brace `G`, and the witness
/// chain is checked against the definition and against `B^(i+1) ⊆ I_i`.
pub fn has_z_series(
    b: &FiniteLeftSemibrace,
    zoc: Option<&SeriesReport>,
    right: &SeriesReport,
) -> Result<ZSeries> {
    let n = b.order();
    let full = Subset::full(n);
    let e_ideal = is_e_ideal(b)?.is_ideal;
    let chain = match zoc {
        Some(z) if z.terminal().is_full() => {
            let top = z.reaches(&full).expect("terminal is B");
            let mut chain: Vec<Subset> = (z.start_index..=top).map(|k| z.term(k).clone()).collect();
            chain.reverse();
            Some(chain)
        }
        _ => None,
    };
    let (g, _) = b.group_brace();
    let g_s_series = soc_series(&g)?.terminal().is_full();
    if chain.is_some() != (e_ideal && g_s_series) {
        return Err(violation(
            "z-series-iff-s-series",
            format!("zoc reaches B: {}, E ideal: {e_ideal}, G s-series: {g_s_series}", chain.is_some()),
        ));
    }
    if let Some(chain) = &chain {
        for j in 1..chain.len() {
            let q = quotient(b, &chain[j])?;
            let upper = chain[j - 1].map(q.semibrace.order(), &q.projection);
            if !upper.is_subset(&socle(&q.semibrace)?) {
                return Err(violation("z-series-definition", format!("step {j}")));
            }
        }
        for (i, ideal) in chain.iter().enumerate() {
            if !right.term(i + 1).is_subset(ideal) {
                return Err(violation("right-series-below-z-series", format!("i={i}")));
            }
        }
    }
    Ok(ZSeries {
        exists: chain.is_some(),
        chain,
    })
}

/// Powers of one element until `0` is reached or the sequence repeats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerSequence {
    pub terms: Vec<Elem>,
    pub reaches_zero: bool,
}

fn powers(b: &FiniteLeftSemibrace, x: Elem, step: impl Fn(Elem) -> Elem) -> PowerSequence {
    let mut terms = vec![x];
    let mut seen = HashSet::from([x]);
    // after the first step every power lies in G
    for _ in 0..=b.group_elems().len() {
        let last = *terms.last().expect("nonempty");
        if last == 0 {
            return PowerSequence {
                terms,
                reaches_zero: true,
            };
        }
        let next = step(last);
        terms.push(next);
        if !seen.insert(next) && next != 0 {
            break;
        }
    }
    let reaches_zero = *terms.last().expect("nonempty") == 0;
    PowerSequence { terms, reaches_zero }
}

/// `b^(1) = b`, `b^(n+1) = b^(n)·b`.
pub fn element_right_powers(b: &FiniteLeftSemibrace, x: Elem) -> PowerSequence {
    powers(b, x, |p| b.dot(p, x))
}

/// `b^1 = b`, `b^{n+1} = b·b^n`.
pub fn element_left_powers(b: &FiniteLeftSemibrace, x: Elem) -> PowerSequence {
    powers(b, x, |p| b.dot(x, p))
}

/// The nilpotency record of a semi-brace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyProfile {
    pub right_nilpotent: bool,
    pub left_nilpotent: bool,
    pub strongly_nilpotent: bool,
    pub nilpotent: bool,
    pub right_nil: bool,
    pub left_nil: bool,
    pub has_z_series: bool,
    pub mul_group_nilpotent: bool,
    #[serde(rename = "add_group_G_nilpotent")]
    pub add_group_g_nilpotent: bool,
    #[serde(rename = "E_is_ideal")]
    pub e_is_ideal: bool,
    /// Series name → index at which it stabilized.
    pub indices: BTreeMap<String, usize>,
}

/// Every series of `B` together with its classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesBundle {
    pub right: SeriesReport,
    pub left: SeriesReport,
    pub strong: SeriesReport,
    pub soc: SeriesReport,
    pub zoc: Option<SeriesReport>,
    pub ann: SeriesReport,
    pub upper_central: SeriesReport,
    pub z_series: ZSeries,
    pub profile: NilpotencyProfile,
}

fn e_view(b: &FiniteLeftSemibrace) -> GroupView<'_> {
    GroupView {
        carrier: b.idempotents().clone(),
        identity: 0,
        op: Box::new(move |x, y| b.mul(x, y)),
        inv: Box::new(move |x| b.inv(x)),
    }
}

/// Runs every series, classifies, and checks the relations between the
/// flags and between the series of `B` and those of its skew brace `G`.
pub fn analyze_series(b: &FiniteLeftSemibrace) -> Result<SeriesBundle> {
    let n = b.order();
    let e = b.idempotents();
    let e_is_ideal = is_e_ideal(b)?.is_ideal;

    let right = right_series(b)?;
    let left = left_series(b)?;
    let strong = strong_series(b)?;
    let soc = soc_series(b)?;
    let zoc = if e_is_ideal {
        Some(zoc_series(b)?)
    } else {
        None
    };
    let upper_central = upper_central_series(b);
    let ann = ann_series(b, &soc, &upper_central)?;
    let z_series = has_z_series(b, zoc.as_ref(), &right)?;

    let right_nil = (0..n).all(|x| element_right_powers(b, x).reaches_zero);
    let left_nil = (0..n).all(|x| element_left_powers(b, x).reaches_zero);
    let mul_group_nilpotent = b.mul_group().is_nilpotent();
    let add_group_g_nilpotent = b.add_group().is_nilpotent();

    let mut indices = BTreeMap::new();
    for s in [&right, &left, &strong, &soc, &ann, &upper_central]
        .into_iter()
        .chain(zoc.as_ref())
    {
        indices.insert(s.kind.name().to_string(), s.stabilized_at);
    }
    let profile = NilpotencyProfile {
        right_nilpotent: right.terminal() == e,
        left_nilpotent: left.terminal() == e,
        strongly_nilpotent: strong.terminal() == e,
        nilpotent: ann.terminal().is_full(),
        right_nil,
        left_nil,
        has_z_series: z_series.exists,
        mul_group_nilpotent,
        add_group_g_nilpotent,
        e_is_ideal,
        indices,
    };
    let bundle = SeriesBundle {
        right,
        left,
        strong,
        soc,
        zoc,
        ann,
        upper_central,
        z_series,
        profile,
    };
    check_consistency(b, &bundle)?;
    Ok(bundle)
}

/// The nilpotency record of `B`, with all consistency checks applied.
pub fn classify(b: &FiniteLeftSemibrace) -> Result<NilpotencyProfile> {
    Ok(analyze_series(b)?.profile)
}

fn implies(p: bool, q: bool) -> bool {
    !p || q
}

fn check_consistency(b: &FiniteLeftSemibrace, s: &SeriesBundle) -> Result<()> {
    let p = &s.profile;
    let e = b.idempotents();
    let flags = format!("{p:?}");
    let require = |ok: bool, theorem: &'static str| {
        if ok {
            Ok(())
        } else {
            Err(violation(theorem, flags.clone()))
        }
    };
    require(
        p.strongly_nilpotent == (p.right_nilpotent && p.left_nilpotent),
        "strong-iff-left-and-right",
    )?;
    require(implies(p.right_nilpotent, p.e_is_ideal), "right-nilpotent-e-ideal")?;
    require(implies(p.right_nilpotent, p.right_nil), "right-nilpotent-right-nil")?;
    require(implies(p.left_nilpotent, p.left_nil), "left-nilpotent-left-nil")?;
    require(implies(p.nilpotent, p.mul_group_nilpotent), "nilpotent-mul-group-nilpotent")?;
    require(
        implies(p.add_group_g_nilpotent, p.right_nilpotent == p.has_z_series),
        "nilpotent-type-z-series",
    )?;
    require(
        implies(p.nilpotent && p.e_is_ideal, p.right_nilpotent),
        "nilpotent-e-ideal-right-nilpotent",
    )?;
    require(
        implies(
            p.nilpotent && p.e_is_ideal && p.add_group_g_nilpotent,
            p.left_nilpotent,
        ),
        "nilpotent-e-ideal-left-nilpotent",
    )?;
    require(
        implies(
            p.add_group_g_nilpotent,
            (p.strongly_nilpotent && p.mul_group_nilpotent) == (p.nilpotent && p.e_is_ideal),
        ),
        "strong-and-group-iff-nilpotent-and-e-ideal",
    )?;
    require(
        implies(
            p.add_group_g_nilpotent && p.e_is_ideal && p.mul_group_nilpotent,
            p.left_nilpotent,
        ),
        "e-ideal-mul-nilpotent-left-nilpotent",
    )?;
    let g = b.group_elems();
    let e_central = e.is_subset(&b.mul_group().centralizer(g));
    if p.add_group_g_nilpotent && e_central && e_view(b).is_nilpotent() {
        require(
            p.left_nilpotent == p.mul_group_nilpotent,
            "left-nilpotent-iff-mul-group-nilpotent",
        )?;
    }

    // descending chains contain E and shrink; the strong series dominates
    for series in [&s.right, &s.left, &s.strong] {
        for w in series.terms.windows(2) {
            if !w[1].is_subset(&w[0]) || !e.is_subset(&w[1]) {
                return Err(violation("descending-series", format!("{:?}", series.kind)));
            }
        }
    }
    let last = s.right.last_index().max(s.left.last_index()).max(s.strong.last_index());
    for k in 1..=last {
        let strong = s.strong.term(k);
        if !s.right.term(k).is_subset(strong) || !s.left.term(k).is_subset(strong) {
            return Err(violation("strong-series-dominates", format!("k={k}")));
        }
    }

    if p.e_is_ideal {
        compare_with_group_series(b, s)?;
        // (I + E)·B ⊆ I·B on every series term
        let full = Subset::full(b.order());
        for t in s.right.terms.iter().chain(&s.left.terms).chain(&s.strong.terms) {
            let lhs = dot_set(b, &sumset(b, t, e), &full)?;
            if !lhs.is_subset(&dot_set(b, t, &full)?) {
                return Err(violation("e-ideal-absorbs-e", format!("{t:?}")));
            }
        }
        if !quotient_right_nilpotent_lift(b)? {
            return Err(violation("zoc-quotient-lift", flags.clone()));
        }
    }
    Ok(())
}

fn compare_with_group_series(b: &FiniteLeftSemibrace, s: &SeriesBundle) -> Result<()> {
    let (g, emb) = b.group_brace();
    let lift = |t: &Subset| sumset(b, &t.map(b.order(), &emb), b.idempotents());
    let pairs = [
        (&s.right, right_series(&g)?, "right-series-via-g"),
        (&s.left, left_series(&g)?, "left-series-via-g"),
        (&s.strong, strong_series(&g)?, "strong-series-via-g"),
    ];
    for (ours, theirs, theorem) in &pairs {
        for k in 1..=ours.last_index().max(theirs.last_index()) {
            if *ours.term(k) != lift(theirs.term(k)) {
                return Err(violation(theorem, format!("k={k}")));
            }
        }
    }
    Ok(())
}

/// Checks on `B` that right nilpotency of `B/Zoc(B)` lifts to `B`.
/// Returns whether the implication holds.
pub fn quotient_right_nilpotent_lift(b: &FiniteLeftSemibrace) -> Result<bool> {
    require_e_ideal(b)?;
    let q = quotient(b, &zoc(b)?)?.semibrace;
    let q_right = right_series(&q)?.terminal() == q.idempotents();
    let b_right = right_series(b)?.terminal() == b.idempotents();
    Ok(implies(q_right, b_right))
}
