//! The set-theoretic Yang–Baxter solution `r(a,b) = (λ_a(b), ρ_b(a))`
//! attached to a semi-brace, and extensional checks of its properties.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semibrace::FiniteLeftSemibrace;
use crate::Elem;

/// A map `X×X → X×X` on `X = {0..n}`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionMap {
    order: usize,
    images: Vec<(Elem, Elem)>,
}

impl SolutionMap {
    /// Builds a map from `n²` images; `None` if the length or an index is
    /// out of range.
    pub fn new(order: usize, images: Vec<(Elem, Elem)>) -> Option<Self> {
        let ok = images.len() == order * order && images.iter().all(|&(x, y)| x < order && y < order);
        ok.then_some(SolutionMap { order, images })
    }

    pub fn from_fn(order: usize, f: impl Fn(Elem, Elem) -> (Elem, Elem)) -> Self {
        let images = (0..order).flat_map(|a| (0..order).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
        SolutionMap { order, images }
    }

    /// `(a,b) ↦ (b,a)`.
    pub fn flip(order: usize) -> Self {
        Self::from_fn(order, |a, b| (b, a))
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |a, b| (a, b))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn apply(&self, a: Elem, b: Elem) -> (Elem, Elem) {
        self.images[a * self.order + b]
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &SolutionMap) -> SolutionMap {
        assert_eq!(self.order, other.order, "composing maps on different sets");
        Self::from_fn(self.order, |a, b| {
            let (x, y) = other.apply(a, b);
            self.apply(x, y)
        })
    }

    pub fn images(&self) -> &[(Elem, Elem)] {
        &self.images
    }
}

/// The solution of a semi-brace.
pub fn solution_of(b: &FiniteLeftSemibrace) -> SolutionMap {
    SolutionMap::from_fn(b.order(), |x, y| (b.lambda_at(x, y), b.rho_at(y, x)))
}

/// Outcome of the exhaustive braid check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraidCheck {
    pub holds: bool,
    /// First triple `(x,y,z)` where the two sides differ.
    pub witness: Option<[Elem; 3]>,
}

/// Checks `(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r)` on every triple.
pub fn check_braid(r: &SolutionMap) -> BraidCheck {
    let n = r.order();
    let r12 = |(x, y, z): (Elem, Elem, Elem)| {
        let (u, v) = r.apply(x, y);
        (u, v, z)
    };
    let r23 = |(x, y, z): (Elem, Elem, Elem)| {
        let (v, w) = r.apply(y, z);
        (x, v, w)
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = (x, y, z);
                if r12(r23(r12(t))) != r23(r12(r23(t))) {
                    return BraidCheck { holds: false, witness: Some([x, y, z]) };
                }
            }
        }
    }
    BraidCheck { holds: true, witness: None }
}

/// `s = r|_{E×E}` over the indices of `E`; `embedding[i]` is the element
/// of `B` behind index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub map: SolutionMap,
    pub embedding: Vec<Elem>,
}

/// Restricts `r` to `E×E` and verifies `s² = s`.
pub fn restrict_to_e(b: &FiniteLeftSemibrace, r: &SolutionMap) -> Result<Restriction> {
    let embedding = b.idempotents().to_vec();
    let mut index = vec![None; b.order()];
    for (i, &e) in embedding.iter().enumerate() {
        index[e] = Some(i);
    }
    let mut images = Vec::with_capacity(embedding.len() * embedding.len());
    for &x in &embedding {
        for &y in &embedding {
            let (u, v) = r.apply(x, y);
            match (index[u], index[v]) {
                (Some(i), Some(j)) => images.push((i, j)),
                _ => return Err(Error::NotClosed(format!("r({x},{y}) = ({u},{v}) leaves E×E"))),
            }
        }
    }
    let map = SolutionMap::new(embedding.len(), images).expect("indices lie in E");
    if map.compose(&map) != map {
        return Err(Error::ConsistencyViolation {
            theorem: "restriction-idempotent",
            witness: "s∘s ≠ s".into(),
        });
    }
    Ok(Restriction { map, embedding })
}

/// Least `k ≥ 2` with `r^k = r`, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Period {
    Exact(usize),
    /// The power sequence cycles without returning to `r`.
    None,
    /// The iteration cap was reached first.
    Undetermined,
}

impl std::fmt::Display for Period {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Period::Exact(k) => write!(f, "{k}"),
            Period::None => f.write_str("none"),
            Period::Undetermined => f.write_str("undetermined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionProperties {
    pub bijective: bool,
    pub involutive: bool,
    pub idempotent: bool,
    pub left_non_degenerate: bool,
    pub right_non_degenerate: bool,
    pub period: Period,
}

/// Iteration cap for period detection: `2·n⁴`.
pub fn period_cap(order: usize) -> usize {
    2 * order.pow(4)
}

/// Walks `r, r², r³, …` until a power repeats or the cap is hit.
pub fn period(r: &SolutionMap, cap: usize) -> Period {
    let mut seen: HashMap<SolutionMap, usize> = HashMap::new();
    let mut power = r.clone();
    let mut k = 1;
    while k <= cap.max(2) {
        if let Some(&j) = seen.get(&power) {
            return if j == 1 { Period::Exact(k) } else { Period::None };
        }
        seen.insert(power.clone(), k);
        power = power.compose(r);
        k += 1;
    }
    Period::Undetermined
}

fn rows_bijective(n: usize, f: impl Fn(Elem, Elem) -> Elem) -> bool {
    (0..n).all(|a| {
        let mut hit = vec![false; n];
        (0..n).all(|b| !std::mem::replace(&mut hit[f(a, b)], true))
    })
}

pub fn properties(r: &SolutionMap) -> SolutionProperties {
    let n = r.order();
    let mut hit = vec![false; n * n];
    let bijective = r.images().iter().all(|&(x, y)| !std::mem::replace(&mut hit[x * n + y], true));
    let square = r.compose(r);
    SolutionProperties {
        bijective,
        involutive: square == SolutionMap::identity(n),
        idempotent: square == *r,
        left_non_degenerate: rows_bijective(n, |a, b| r.apply(a, b).0),
        right_non_degenerate: rows_bijective(n, |b, a| r.apply(a, b).1),
        period: period(r, period_cap(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{phi_sym3, sd12, skew_brace_of_group, trivial_semibrace};
    use crate::group::catalog_group;

    #[test]
    fn trivial_semibrace_solution() {
        let g = catalog_group("S3").unwrap();
        let b = trivial_semibrace(&g);
        let r = solution_of(&b);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(r.apply(x, y), (g.op(x, y), 0));
            }
        }
        let p = properties(&r);
        assert!(p.idempotent && !p.bijective && !p.involutive && p.left_non_degenerate);
        assert_eq!(p.period, Period::Exact(2));
        let s = restrict_to_e(&b, &r).unwrap();
        assert_eq!(s.map, r);
    }

    #[test]
    fn abelian_skew_brace_gives_the_flip() {
        let b = skew_brace_of_group(&catalog_group("C2xC2").unwrap());
        let r = solution_of(&b);
        assert_eq!(r, SolutionMap::flip(4));
        let p = properties(&r);
        assert!(p.bijective && p.involutive && !p.idempotent);
        assert_eq!(p.period, Period::Exact(3));
        let s = restrict_to_e(&b, &r).unwrap();
        assert_eq!(s.embedding, vec![0]);
    }

    #[test]
    fn fixtures_satisfy_braid() {
        for b in [phi_sym3(), sd12(), skew_brace_of_group(&catalog_group("S3").unwrap())] {
            let r = solution_of(&b);
            assert!(check_braid(&r).holds);
            assert!(properties(&r).left_non_degenerate);
            let s = restrict_to_e(&b, &r).unwrap();
            assert_eq!(s.map.order(), b.idempotents().len());
        }
    }

    #[test]
    fn corrupted_solution_fails_braid() {
        let r = solution_of(&phi_sym3());
        let mut images = r.images().to_vec();
        images.swap(1, 2);
        let bad = SolutionMap::new(6, images).unwrap();
        let check = check_braid(&bad);
        assert!(!check.holds);
        let [x, y, z] = check.witness.unwrap();
        let lhs = {
            let (u, v) = bad.apply(x, y);
            let (v, w) = bad.apply(v, z);
            let (u, v) = bad.apply(u, v);
            (u, v, w)
        };
        let rhs = {
            let (v, w) = bad.apply(y, z);
            let (u, v) = bad.apply(x, v);
            let (v, w) = bad.apply(v, w);
            (u, v, w)
        };
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn period_of_a_map_that_never_returns() {
        // r(a,b) = (0,0) for b = 0 else (a, b−1) on {0,1,2}: r² ≠ r and the
        // powers settle on a constant map
        let r = SolutionMap::from_fn(3, |a, b| if b == 0 { (0, 0) } else { (a, b - 1) });
        assert_eq!(period(&r, 100), Period::None);
        assert_eq!(period(&SolutionMap::flip(2), 3), Period::Exact(3));
        let cycle = SolutionMap::from_fn(3, |a, b| ((a + 1) % 3, b));
        assert_eq!(period(&cycle, 100), Period::Exact(4));
        assert_eq!(period(&cycle, 2), Period::Undetermined);
    }
}
