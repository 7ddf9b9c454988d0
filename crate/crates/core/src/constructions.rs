//! Builders for semi-braces. Every builder hands back a validated structure.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::{GroupTable, Permutation};
use crate::semibrace::FiniteLeftSemibrace;
use crate::subset::Subset;
use crate::subsets::is_ideal_thm;
use crate::table::CayleyTable;
use crate::Elem;

fn from_group_tables(g: &GroupTable, add: CayleyTable) -> Result<FiniteLeftSemibrace> {
    Ok(FiniteLeftSemibrace::validate_labeled(
        add,
        g.table().clone(),
        Some(g.labels().to_vec()),
    )?)
}

/// `a + b = b` on the group `g`: `G = {0}`, `E = B`.
pub fn trivial_semibrace(g: &GroupTable) -> FiniteLeftSemibrace {
    let add = CayleyTable::from_fn(g.order(), |_, b| b);
    from_group_tables(&g.with_identity_first(), add).expect("trivial semi-brace")
}

/// The skew brace with `a + b = a∘b`; here `λ_a = id`.
pub fn skew_brace_of_group(g: &GroupTable) -> FiniteLeftSemibrace {
    let g = g.with_identity_first();
    from_group_tables(&g, g.table().clone()).expect("skew brace of a group")
}

/// `a + b = b∘φ(a)` for an idempotent endomorphism `φ` of `g`; then
/// `G = im φ` and `E = ker φ`.
pub fn from_idempotent_endomorphism(g: &GroupTable, phi: &[Elem]) -> Result<FiniteLeftSemibrace> {
    let n = g.order();
    assert_eq!(phi.len(), n, "φ must be given on every element");
    for a in 0..n {
        for b in 0..n {
            if phi[g.op(a, b)] != g.op(phi[a], phi[b]) {
                return Err(Error::NotEndomorphism { a, b });
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| phi[phi[x]] != phi[x]) {
        return Err(Error::NotIdempotent(x));
    }
    let add = CayleyTable::from_fn(n, |a, b| g.op(b, phi[a]));
    let (g, add) = if g.identity() == 0 {
        (g.clone(), add)
    } else {
        let mut perm: Vec<Elem> = (0..n).collect();
        perm.swap(0, g.identity());
        (g.relabeled(&perm), add.relabeled(&perm))
    };
    from_group_tables(&g, add)
}

/// Extends `φ` given on generators (`pairs` of source → image) to an
/// endomorphism of `g`. `None` if the pairs do not generate `g` or are
/// inconsistent.
pub fn endomorphism_from_pairs(g: &GroupTable, pairs: &[(Elem, Elem)]) -> Option<Vec<Elem>> {
    let gens: Vec<Elem> = pairs.iter().map(|p| p.0).collect();
    let images: Vec<Elem> = pairs.iter().map(|p| p.1).collect();
    crate::group::extend_homomorphism(g, g, &gens, &images)
}

/// Validates a skew brace given by its two group tables.
pub fn skew_brace_embed(add: CayleyTable, mul: CayleyTable) -> Result<FiniteLeftSemibrace> {
    if GroupTable::new(add.clone(), None).is_err() {
        return Err(Error::AddNotAGroup);
    }
    let b = FiniteLeftSemibrace::validate(add, mul)?;
    debug_assert!(b.is_skew_brace());
    Ok(b)
}

/// Componentwise product; `(x, y)` sits at index `x * |Y| + y`.
pub fn direct_product(x: &FiniteLeftSemibrace, y: &FiniteLeftSemibrace) -> FiniteLeftSemibrace {
    let action = ActionTable::trivial(y.order(), x.order());
    semidirect(x, y, &action).expect("direct product of semi-braces")
}

/// A homomorphism from `(Y,∘)` of the acting structure into the
/// automorphisms of the acted-on structure: `maps[y]` is the image of `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    pub actor_order: usize,
    pub target_order: usize,
    pub maps: Vec<Vec<Elem>>,
}

impl ActionTable {
    pub fn trivial(actor_order: usize, target_order: usize) -> Self {
        ActionTable {
            actor_order,
            target_order,
            maps: vec![(0..target_order).collect(); actor_order],
        }
    }

    /// Extends the images of generators of `(acting,∘)` to a full action by
    /// composition, `maps[y∘g] = maps[y] ∘ maps[g]`. The result is checked by
    /// [`validate`](Self::validate) when used.
    pub fn generated(
        acting: &FiniteLeftSemibrace,
        target_order: usize,
        gens: &[Elem],
        images: &[Vec<Elem>],
    ) -> Result<Self> {
        let n = acting.order();
        let mut maps: Vec<Option<Vec<Elem>>> = vec![None; n];
        maps[0] = Some((0..target_order).collect());
        let mut queue = VecDeque::from([0]);
        while let Some(y) = queue.pop_front() {
            let my = maps[y].clone().expect("visited");
            for (&g, img) in gens.iter().zip(images) {
                let z = acting.mul(y, g);
                let mz: Vec<Elem> = img.iter().map(|&t| my[t]).collect();
                match &maps[z] {
                    None => {
                        maps[z] = Some(mz);
                        queue.push_back(z);
                    }
                    Some(prev) if *prev != mz => return Err(Error::NotAHomomorphism { a: y, b: g }),
                    _ => {}
                }
            }
        }
        let maps = maps
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotAHomomorphism { a: 0, b: 0 })?;
        Ok(ActionTable {
            actor_order: n,
            target_order,
            maps,
        })
    }

    /// Checks every map is an automorphism of both operations of `target`
    /// and that `y ↦ maps[y]` is a homomorphism from `(acting,∘)`.
    pub fn validate(&self, acting: &FiniteLeftSemibrace, target: &FiniteLeftSemibrace) -> Result<()> {
        assert_eq!(self.actor_order, acting.order());
        assert_eq!(self.target_order, target.order());
        let n = target.order();
        for (y, m) in self.maps.iter().enumerate() {
            let bijective = Permutation::from_images(m.clone()).is_some();
            let preserves = (0..n).all(|a| {
                (0..n).all(|b| {
                    m[target.add(a, b)] == target.add(m[a], m[b])
                        && m[target.mul(a, b)] == target.mul(m[a], m[b])
                })
            });
            if !bijective || !preserves {
                return Err(Error::NotAutomorphism { actor: y });
            }
        }
        for a in 0..acting.order() {
            for b in 0..acting.order() {
                let ab = &self.maps[acting.mul(a, b)];
                if (0..n).any(|t| ab[t] != self.maps[a][self.maps[b][t]]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// `x ↦ σ∘x∘σ⁻` on `(B,∘)`.
pub fn conjugation_map(b: &FiniteLeftSemibrace, sigma: Elem) -> Vec<Elem> {
    let si = b.inv(sigma);
    (0..b.order()).map(|x| b.mul(b.mul(sigma, x), si)).collect()
}

/// Semidirect product with carrier `acted × acting`:
/// `(x₁,y₁) + (x₂,y₂) = (x₁+x₂, y₁+y₂)` and
/// `(x₁,y₁)∘(x₂,y₂) = (x₁∘σ_{y₁}(x₂), y₁∘y₂)`.
pub fn semidirect(
    acted: &FiniteLeftSemibrace,
    acting: &FiniteLeftSemibrace,
    action: &ActionTable,
) -> Result<FiniteLeftSemibrace> {
    action.validate(acting, acted)?;
    let m = acting.order();
    let n = acted.order() * m;
    let add = CayleyTable::from_fn(n, |p, q| {
        acted.add(p / m, q / m) * m + acting.add(p % m, q % m)
    });
    let mul = CayleyTable::from_fn(n, |p, q| {
        let (x1, y1) = (p / m, p % m);
        let (x2, y2) = (q / m, q % m);
        acted.mul(x1, action.maps[y1][x2]) * m + acting.mul(y1, y2)
    });
    let labels = (0..n)
        .map(|p| format!("({},{})", acted.label(p / m), acting.label(p % m)))
        .collect();
    Ok(FiniteLeftSemibrace::validate_labeled(add, mul, Some(labels))?)
}

/// Which factor of a trivial-by-skew semidirect product is acted upon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `T ⋊ A`: the skew brace `A` acts on the trivial semi-brace `T`;
    /// carrier `T × A`, `E = T × {0}` is an ideal.
    TrivialNormal,
    /// `S ⋊ T`: the trivial semi-brace acts on the skew brace; carrier
    /// `S × T`, `E = {0} × T`, which need not be an ideal.
    SkewNormal,
}

/// Semidirect product of a trivial semi-brace and a skew brace in either
/// orientation. `act` runs from the acting factor into the acted one.
pub fn semidirect_product(
    trivial: &FiniteLeftSemibrace,
    skew: &FiniteLeftSemibrace,
    act: &ActionTable,
    orientation: Orientation,
) -> Result<FiniteLeftSemibrace> {
    match orientation {
        Orientation::TrivialNormal => semidirect(trivial, skew, act),
        Orientation::SkewNormal => semidirect(skew, trivial, act),
    }
}

/// For `B` with `E` an ideal: the product `E ⋊ G` under `g ↦ λ_g|_E` and
/// the map `a ↦ (e_a, g_a)` into it.
pub fn split_by_idempotents(b: &FiniteLeftSemibrace) -> Result<(FiniteLeftSemibrace, Vec<Elem>)> {
    let (e_brace, e_emb) = b.idempotent_brace();
    let (g_brace, g_emb) = b.group_brace();
    let mut e_pos = vec![usize::MAX; b.order()];
    for (i, &e) in e_emb.iter().enumerate() {
        e_pos[e] = i;
    }
    let mut g_pos = vec![usize::MAX; b.order()];
    for (i, &g) in g_emb.iter().enumerate() {
        g_pos[g] = i;
    }
    let maps = g_emb
        .iter()
        .map(|&g| e_emb.iter().map(|&e| e_pos[b.lambda_at(g, e)]).collect())
        .collect();
    let action = ActionTable {
        actor_order: g_brace.order(),
        target_order: e_brace.order(),
        maps,
    };
    let product = semidirect_product(&e_brace, &g_brace, &action, Orientation::TrivialNormal)?;
    let m = g_brace.order();
    let f = (0..b.order())
        .map(|a| e_pos[b.idempotent_part(a)] * m + g_pos[b.group_part(a)])
        .collect();
    Ok((product, f))
}

/// A quotient semi-brace with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub semibrace: FiniteLeftSemibrace,
    /// Element of `B` → class index in the quotient.
    pub projection: Vec<Elem>,
}

impl Quotient {
    /// Preimage of a subset of the quotient.
    pub fn preimage(&self, s: &Subset) -> Subset {
        s.preimage(&self.projection)
    }
}

/// `B/I` for an ideal `I`: classes are the cosets `a∘I`, with
/// `[a]∘[b] = [a∘b]` and `[a] + [b] = [a + b]`. Well-definedness is checked
/// on every pair before the tables are built.
pub fn quotient(b: &FiniteLeftSemibrace, ideal: &Subset) -> Result<Quotient> {
    let verdict = is_ideal_thm(b, ideal);
    if !verdict.is_ideal {
        let why = verdict
            .failure
            .map(|f| format!("{:?} {:?}", f.condition, f.witness))
            .unwrap_or_default();
        return Err(Error::NotAnIdeal(why));
    }
    let n = b.order();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if class[a] == usize::MAX {
            for i in ideal.iter() {
                class[b.mul(a, i)] = reps.len();
            }
            reps.push(a);
        }
    }
    for x in 0..n {
        for y in 0..n {
            let (rx, ry) = (reps[class[x]], reps[class[y]]);
            if class[b.add(x, y)] != class[b.add(rx, ry)] || class[b.mul(x, y)] != class[b.mul(rx, ry)] {
                return Err(Error::QuotientIllDefined { a: x, b: y });
            }
        }
    }
    let k = reps.len();
    let add = CayleyTable::from_fn(k, |p, q| class[b.add(reps[p], reps[q])]);
    let mul = CayleyTable::from_fn(k, |p, q| class[b.mul(reps[p], reps[q])]);
    let labels = reps.iter().map(|&r| format!("[{}]", b.label(r))).collect();
    let semibrace = FiniteLeftSemibrace::validate_labeled(add, mul, Some(labels))?;
    Ok(Quotient {
        semibrace,
        projection: class,
    })
}

/// `Sym₃` with `a + b = b∘φ(a)`, `φ((12)) = (12)`, `φ((123)) = id`.
pub fn phi_sym3() -> FiniteLeftSemibrace {
    let s3 = crate::group::catalog_group("S3").expect("S3");
    let t = s3.index_of("(12)").expect("(12)");
    let c = s3.index_of("(123)").expect("(123)");
    let phi = endomorphism_from_pairs(&s3, &[(t, t), (c, 0)]).expect("φ extends");
    from_idempotent_endomorphism(&s3, &phi).expect("φ-type semi-brace")
}

/// The skew brace `a + b = a∘b` on `Sym₃` acted on by the trivial
/// semi-brace on `C₂`, the nontrivial element conjugating by `(23)`.
pub fn sd12() -> FiniteLeftSemibrace {
    let s3 = crate::group::catalog_group("S3").expect("S3");
    let skew = skew_brace_of_group(&s3);
    let trivial = trivial_semibrace(&crate::group::catalog_group("C2").expect("C2"));
    let sigma = skew.index_of("(23)").expect("(23)");
    let act = ActionTable::generated(&trivial, skew.order(), &[1], &[conjugation_map(&skew, sigma)])
        .expect("conjugation action");
    semidirect_product(&trivial, &skew, &act, Orientation::SkewNormal).expect("SD12")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog_group;
    use crate::subsets::is_e_ideal;

    #[test]
    fn trivial_on_c1_is_the_point() {
        let p = trivial_semibrace(&catalog_group("C1").unwrap());
        assert_eq!(p.order(), 1);
    }

    #[test]
    fn phi_type_parts_are_image_and_kernel() {
        let b = phi_sym3();
        let s3 = catalog_group("S3").unwrap();
        let t = s3.index_of("(12)").unwrap();
        let c = s3.index_of("(123)").unwrap();
        let phi = endomorphism_from_pairs(&s3, &[(t, t), (c, 0)]).unwrap();
        let image = Subset::from_elems(6, phi.iter().copied());
        let kernel = Subset::from_elems(6, (0..6).filter(|&x| phi[x] == 0));
        assert_eq!(b.group_elems(), &image);
        assert_eq!(b.idempotents(), &kernel);
        // ρ_0 = φ
        assert_eq!(b.rho(0).images, phi);
        // inside G, g + h = h∘g
        for g in b.group_elems().iter() {
            for h in b.group_elems().iter() {
                assert_eq!(b.add(g, h), b.mul(h, g));
            }
        }
        assert!(is_e_ideal(&b).unwrap().is_ideal);
    }

    #[test]
    fn identity_and_constant_endomorphisms() {
        let s3 = catalog_group("S3").unwrap();
        let id: Vec<Elem> = (0..6).collect();
        let opposite = from_idempotent_endomorphism(&s3, &id).unwrap();
        assert!(opposite.is_skew_brace());
        let constant = vec![0; 6];
        let trivial = from_idempotent_endomorphism(&s3, &constant).unwrap();
        assert_eq!(trivial, trivial_semibrace(&s3));
    }

    #[test]
    fn non_endomorphism_and_non_idempotent_rejected() {
        let s3 = catalog_group("S3").unwrap();
        let mut bad: Vec<Elem> = (0..6).collect();
        bad.swap(1, 2);
        assert!(matches!(
            from_idempotent_endomorphism(&s3, &bad),
            Err(Error::NotEndomorphism { .. }) | Err(Error::NotIdempotent(_))
        ));
        // inversion on C3 is an automorphism but not idempotent
        let c3 = catalog_group("C3").unwrap();
        assert_eq!(from_idempotent_endomorphism(&c3, &[0, 2, 1]), Err(Error::NotIdempotent(1)));
    }

    #[test]
    fn sd12_has_e_not_ideal() {
        let b = sd12();
        assert_eq!(b.order(), 12);
        assert_eq!(b.idempotents().len(), 2);
        assert_eq!(b.group_elems().len(), 6);
        assert!(!is_e_ideal(&b).unwrap().is_ideal);
    }

    #[test]
    fn semidirect_with_trivial_action_is_direct_product() {
        let c3 = trivial_semibrace(&catalog_group("C3").unwrap());
        let c2 = skew_brace_of_group(&catalog_group("C2").unwrap());
        let act = ActionTable::trivial(2, 3);
        let s = semidirect_product(&c3, &c2, &act, Orientation::TrivialNormal).unwrap();
        assert_eq!(s, direct_product(&c3, &c2));
    }

    #[test]
    fn inversion_action_gives_e_ideal() {
        let t = trivial_semibrace(&catalog_group("C3").unwrap());
        let a = trivial_semibrace(&catalog_group("C2").unwrap());
        // the trivial brace on C2 is the skew brace K_{C2}
        let a_brace = skew_brace_of_group(&catalog_group("C2").unwrap());
        let act = ActionTable::generated(&a_brace, 3, &[1], &[vec![0, 2, 1]]).unwrap();
        let s = semidirect_product(&t, &a_brace, &act, Orientation::TrivialNormal).unwrap();
        assert_eq!(s.order(), 6);
        assert!(is_e_ideal(&s).unwrap().is_ideal);
        assert_eq!(a.order(), 2);
    }

    #[test]
    fn bad_actions_rejected() {
        let s3 = skew_brace_of_group(&catalog_group("S3").unwrap());
        let c2 = trivial_semibrace(&catalog_group("C2").unwrap());
        // a transposition of two elements is not an automorphism of S3
        let mut m: Vec<Elem> = (0..6).collect();
        m.swap(1, 3);
        let act = ActionTable {
            actor_order: 2,
            target_order: 6,
            maps: vec![(0..6).collect(), m],
        };
        assert!(matches!(semidirect(&s3, &c2, &act), Err(Error::NotAutomorphism { actor: 1 })));
        // conjugation by a 3-cycle has order 3, not a homomorphism from C2
        let c = s3.index_of("(123)").unwrap();
        let act = ActionTable {
            actor_order: 2,
            target_order: 6,
            maps: vec![(0..6).collect(), conjugation_map(&s3, c)],
        };
        assert!(matches!(semidirect(&s3, &c2, &act), Err(Error::NotAHomomorphism { .. })));
    }

    #[test]
    fn direct_product_parts() {
        let k = skew_brace_of_group(&catalog_group("S3").unwrap());
        let t = trivial_semibrace(&catalog_group("C2").unwrap());
        let p = direct_product(&k, &t);
        assert_eq!(p.group_elems().len(), 6);
        assert_eq!(p.idempotents().len(), 2);
        assert!(is_e_ideal(&p).unwrap().is_ideal);
        // not of φ-type: (a,0)+(b,0) differs from (b,0)∘(a,0) somewhere
        let differs = p.group_elems().iter().any(|x| {
            p.group_elems().iter().any(|y| p.add(x, y) != p.mul(y, x))
        });
        assert!(differs);
        let point = trivial_semibrace(&catalog_group("C1").unwrap());
        assert_eq!(direct_product(&k, &point).add_table(), k.add_table());
        let big = direct_product(&phi_sym3(), &phi_sym3());
        assert_eq!(big.order(), 36);
        assert!(is_e_ideal(&big).unwrap().is_ideal);
    }

    #[test]
    fn skew_brace_embedding() {
        let c4 = catalog_group("C4").unwrap();
        let k = skew_brace_embed(c4.table().clone(), c4.table().clone()).unwrap();
        for a in 0..4 {
            assert_eq!(k.lambda(a).images, vec![0, 1, 2, 3]);
        }
        let right_zero = CayleyTable::from_fn(4, |_, b| b);
        assert_eq!(skew_brace_embed(right_zero, c4.table().clone()), Err(Error::AddNotAGroup));
        // G of the φ fixture re-embedded
        let (g, _) = phi_sym3().group_brace();
        let again = skew_brace_embed(g.add_table().clone(), g.mul_table().clone()).unwrap();
        assert_eq!(again.order(), 2);
        // λ_g(b) = −g + g∘b
        let k = skew_brace_of_group(&catalog_group("S3").unwrap());
        for g in 0..6 {
            for x in 0..6 {
                assert_eq!(k.lambda_at(g, x), k.add(k.neg(g), k.mul(g, x)));
            }
        }
    }

    #[test]
    fn quotients() {
        let b = phi_sym3();
        let whole = quotient(&b, &Subset::full(6)).unwrap();
        assert_eq!(whole.semibrace.order(), 1);
        let same = quotient(&b, &Subset::singleton(6, 0)).unwrap();
        assert_eq!(same.semibrace.order(), 6);
        assert_eq!(same.projection, (0..6).collect::<Vec<_>>());
        let by_e = quotient(&b, b.idempotents()).unwrap();
        assert_eq!(by_e.semibrace.order(), 2);
        assert!(by_e.semibrace.is_skew_brace());
        // projection is a homomorphism of both operations
        for x in 0..6 {
            for y in 0..6 {
                let q = &by_e.semibrace;
                let p = &by_e.projection;
                assert_eq!(p[b.add(x, y)], q.add(p[x], p[y]));
                assert_eq!(p[b.mul(x, y)], q.mul(p[x], p[y]));
            }
        }
        let not_ideal = Subset::from_elems(6, [0, b.index_of("(12)").unwrap()]);
        assert!(matches!(quotient(&b, &not_ideal), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn split_round_trip_on_phi_fixture() {
        let b = phi_sym3();
        let (p, f) = split_by_idempotents(&b).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(f[b.add(x, y)], p.add(f[x], f[y]));
                assert_eq!(f[b.mul(x, y)], p.mul(f[x], f[y]));
            }
        }
    }
}
