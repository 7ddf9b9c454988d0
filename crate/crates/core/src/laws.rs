//! Identities every left semi-brace satisfies, as exhaustive checks.
//!
//! Each check returns the first counterexample in element order, so a
//! `None` from every law is a certificate over the whole table.

use crate::semibrace::FiniteLeftSemibrace;
use crate::Elem;

/// A named identity and its exhaustive check.
pub struct Law {
    pub name: &'static str,
    pub check: fn(&FiniteLeftSemibrace) -> Option<Vec<Elem>>,
}

pub const LAWS: &[Law] = &[
    Law { name: "mul-as-sum", check: mul_as_sum },
    Law { name: "lambda-automorphism", check: lambda_automorphism },
    Law { name: "lambda-homomorphism", check: lambda_homomorphism },
    Law { name: "rho-anti-homomorphism", check: rho_anti_homomorphism },
    Law { name: "lambda-preserves-e", check: lambda_preserves_e },
    Law { name: "rho-lands-in-g", check: rho_lands_in_g },
    Law { name: "g-membership", check: g_membership },
    Law { name: "e-membership", check: e_membership },
    Law { name: "part-formulas", check: part_formulas },
    Law { name: "lambda-on-g", check: lambda_on_g },
    Law { name: "dot-formulas", check: dot_formulas },
    Law { name: "dot-zero", check: dot_zero },
    Law { name: "dot-over-sum", check: dot_over_sum },
    Law { name: "dot-over-product", check: dot_over_product },
    Law { name: "dot-kills-idempotents", check: dot_kills_idempotents },
    Law { name: "dot-sees-group-part", check: dot_sees_group_part },
    Law { name: "dot-plus-element", check: dot_plus_element },
    Law { name: "negated-dot", check: negated_dot },
    Law { name: "skew-dot", check: skew_dot },
];

/// Runs every law; returns `(name, witness)` for each failure.
pub fn violations(b: &FiniteLeftSemibrace) -> Vec<(&'static str, Vec<Elem>)> {
    LAWS.iter()
        .filter_map(|law| (law.check)(b).map(|w| (law.name, w)))
        .collect()
}

fn pairs(n: usize) -> impl Iterator<Item = (Elem, Elem)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (Elem, Elem, Elem)> {
    pairs(n).flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)))
}

/// `a∘b = a + λ_a(b)`.
pub fn mul_as_sum(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, y)| b.mul(x, y) != b.add(x, b.lambda_at(x, y)))
        .map(|(x, y)| vec![x, y])
}

/// Each `λ_a` is a bijection preserving `+`.
pub fn lambda_automorphism(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    let n = b.order();
    if let Some(a) = (0..n).find(|&a| !b.lambda(a).is_bijection()) {
        return Some(vec![a]);
    }
    triples(n)
        .find(|&(a, x, y)| b.lambda_at(a, b.add(x, y)) != b.add(b.lambda_at(a, x), b.lambda_at(a, y)))
        .map(|(a, x, y)| vec![a, x, y])
}

/// `λ_{a∘b} = λ_a λ_b`.
pub fn lambda_homomorphism(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    triples(b.order())
        .find(|&(x, y, z)| b.lambda_at(b.mul(x, y), z) != b.lambda_at(x, b.lambda_at(y, z)))
        .map(|(x, y, z)| vec![x, y, z])
}

/// `ρ_{a∘b} = ρ_b ρ_a`.
pub fn rho_anti_homomorphism(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    triples(b.order())
        .find(|&(x, y, z)| b.rho_at(b.mul(x, y), z) != b.rho_at(y, b.rho_at(x, z)))
        .map(|(x, y, z)| vec![x, y, z])
}

/// `λ_b(E) = E`.
pub fn lambda_preserves_e(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, e)| b.in_e(e) && !b.in_e(b.lambda_at(x, e)))
        .map(|(x, e)| vec![x, e])
}

/// `ρ_a(b) ∈ G`.
pub fn rho_lands_in_g(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, y)| !b.in_g(b.rho_at(x, y)))
        .map(|(x, y)| vec![x, y])
}

/// `b ∈ G ⟺ λ_b(0) = 0`.
pub fn g_membership(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    (0..b.order())
        .find(|&x| b.in_g(x) != (b.lambda_at(x, 0) == 0))
        .map(|x| vec![x])
}

/// `b ∈ E ⟺ ρ_c(b⁻) = 0` for every `c`.
pub fn e_membership(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    let n = b.order();
    (0..n)
        .find(|&x| b.in_e(x) != (0..n).all(|c| b.rho_at(c, b.inv(x)) == 0))
        .map(|x| vec![x])
}

/// `g_b = b + 0 = ρ_0(b⁻)⁻`, `e_b = −g_b + b = λ_b(0)`, `b = g_b + e_b`.
pub fn part_formulas(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    (0..b.order())
        .find(|&x| {
            let g = b.group_part(x);
            let e = b.idempotent_part(x);
            g != b.add(x, 0)
                || g != b.inv(b.rho_at(0, b.inv(x)))
                || e != b.add(b.neg(g), x)
                || e != b.lambda_at(x, 0)
                || b.add(g, e) != x
        })
        .map(|x| vec![x])
}

/// `λ_g(b) = −g + g∘b` for `g ∈ G`.
pub fn lambda_on_g(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(g, x)| b.in_g(g) && b.lambda_at(g, x) != b.add(b.neg(g), b.mul(g, x)))
        .map(|(g, x)| vec![g, x])
}

/// The three formulas for `a·b` agree and land in `G`.
pub fn dot_formulas(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, y)| b.dot_checked(x, y).map_or(true, |d| d != b.dot(x, y) || !b.in_g(d)))
        .map(|(x, y)| vec![x, y])
}

/// `a·0 = 0·a = 0`.
pub fn dot_zero(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    (0..b.order())
        .find(|&x| b.dot(x, 0) != 0 || b.dot(0, x) != 0)
        .map(|x| vec![x])
}

/// `a·(b + c) = a·b + b + a·c + λ_b(b⁻)`.
pub fn dot_over_sum(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    triples(b.order())
        .find(|&(x, y, z)| {
            let rhs = b.add(
                b.add(b.add(b.dot(x, y), y), b.dot(x, z)),
                b.lambda_at(y, b.inv(y)),
            );
            b.dot(x, b.add(y, z)) != rhs
        })
        .map(|(x, y, z)| vec![x, y, z])
}

/// `(a∘b)·c = a·(b·c) + b·c + a·c`.
pub fn dot_over_product(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    triples(b.order())
        .find(|&(x, y, z)| {
            let yz = b.dot(y, z);
            let rhs = b.add(b.add(b.dot(x, yz), yz), b.dot(x, z));
            b.dot(b.mul(x, y), z) != rhs
        })
        .map(|(x, y, z)| vec![x, y, z])
}

/// `a·e = 0` for `e ∈ E`.
pub fn dot_kills_idempotents(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, e)| b.in_e(e) && b.dot(x, e) != 0)
        .map(|(x, e)| vec![x, e])
}

/// `a·b = a·g_b`.
pub fn dot_sees_group_part(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, y)| b.dot(x, y) != b.dot(x, b.group_part(y)))
        .map(|(x, y)| vec![x, y])
}

/// `a·b + b = λ_a(b) + e_b`.
pub fn dot_plus_element(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, y)| b.add(b.dot(x, y), y) != b.add(b.lambda_at(x, y), b.idempotent_part(y)))
        .map(|(x, y)| vec![x, y])
}

/// `g + λ_x(−g) + 0 = −(x·g)` for `g ∈ G`.
pub fn negated_dot(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    pairs(b.order())
        .find(|&(x, g)| {
            b.in_g(g) && b.add(b.add(g, b.lambda_at(x, b.neg(g))), 0) != b.neg(b.dot(x, g))
        })
        .map(|(x, g)| vec![x, g])
}

/// For skew braces, `a·b = −a + a∘b − b`.
pub fn skew_dot(b: &FiniteLeftSemibrace) -> Option<Vec<Elem>> {
    if !b.is_skew_brace() {
        return None;
    }
    pairs(b.order())
        .find(|&(x, y)| b.dot(x, y) != b.add(b.add(b.neg(x), b.mul(x, y)), b.neg(y)))
        .map(|(x, y)| vec![x, y])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{phi_sym3, sd12, skew_brace_of_group, trivial_semibrace};
    use crate::group::catalog_group;

    #[test]
    fn fixtures_satisfy_every_law() {
        for b in [
            phi_sym3(),
            sd12(),
            trivial_semibrace(&catalog_group("Q8").unwrap()),
            skew_brace_of_group(&catalog_group("D5").unwrap()),
        ] {
            assert_eq!(violations(&b), vec![]);
        }
    }

    #[test]
    fn lambda_in_trivial_semibrace_is_left_multiplication() {
        let b = trivial_semibrace(&catalog_group("S3").unwrap());
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(b.lambda_at(x, y), b.mul(x, y));
                assert_eq!(b.rho_at(y, x), 0);
            }
        }
    }

    #[test]
    fn rho_vanishes_on_inverse_idempotents() {
        let b = phi_sym3();
        for e in b.idempotents().iter() {
            for c in 0..6 {
                assert_eq!(b.rho_at(c, b.inv(e)), 0);
            }
        }
    }
}
