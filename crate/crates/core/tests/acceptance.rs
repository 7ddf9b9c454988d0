//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! `cargo test -p semibrace --test acceptance`

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use semibrace::constructions::{phi_sym3, sd12, skew_brace_of_group, split_by_idempotents, trivial_semibrace};
use semibrace::enumeration::{are_isomorphic, corpus, enumerate, EnumerationOptions};
use semibrace::group::{groups_of_order, CATALOG_NAMES};
use semibrace::laws::violations;
use semibrace::series::{analyze_series, SeriesBundle, SeriesReport};
use semibrace::subsets::{
    dot_set, is_e_ideal, is_ideal_def, is_ideal_prop, is_ideal_thm, is_left_ideal, mul_subgroup_gen, socle,
    sumset, zoc, IdealCondition,
};
use semibrace::ybe::{check_braid, properties, restrict_to_e, solution_of};
use semibrace::{catalog_group, FiniteLeftSemibrace, Subset};

type Outcome = Result<String, String>;

struct Entry {
    name: String,
    b: FiniteLeftSemibrace,
}

/// Every raw structure of order at most 6 plus the fixtures.
fn corpus_with_fixtures() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out: Vec<Entry> = corpus(6)
            .expect("raw corpus")
            .into_iter()
            .map(|e| Entry { name: format!("order {} {}", e.semibrace.order(), e.origin), b: e.semibrace })
            .collect();
        out.push(Entry { name: "fixture phi_sym3".into(), b: phi_sym3() });
        out.push(Entry { name: "fixture sd12".into(), b: sd12() });
        out.push(Entry { name: "fixture trivial_c2".into(), b: trivial_semibrace(&catalog_group("C2").unwrap()) });
        out
    })
}

fn raw_corpus() -> impl Iterator<Item = &'static Entry> {
    corpus_with_fixtures().iter().filter(|e| !e.name.starts_with("fixture"))
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn set(b: &FiniteLeftSemibrace, labels: &[&str]) -> Subset {
    Subset::from_elems(b.order(), labels.iter().map(|l| b.index_of(l).expect("label")))
}

fn criterion_1() -> Outcome {
    let b = phi_sym3();
    let e = b.idempotents().clone();
    ensure(b.group_elems().len() == 2 && e.len() == 3, "|G| = 2, |E| = 3")?;
    ensure(e == set(&b, &["id", "(123)", "(132)"]), "E = {id,(123),(132)}")?;
    let soc = socle(&b).map_err(|x| x.to_string())?;
    ensure(soc == Subset::singleton(6, 0), format!("Soc(B) = {{id}}, got {soc:?}"))?;
    let z = zoc(&b).map_err(|x| x.to_string())?;
    ensure(z == e, format!("Zoc(B) = E, got {z:?}"))?;
    let (g, emb) = b.group_brace();
    let soc_g = socle(&g).map_err(|x| x.to_string())?.map(6, &emb);
    let t = b.index_of("(12)").unwrap();
    ensure(sumset(&b, &soc_g, &e).contains(t) && !z.contains(t), "(12) ∈ Soc(G)+E \\ Zoc(B)")?;
    ensure(is_e_ideal(&b).map_err(|x| x.to_string())?.is_ideal, "E is an ideal")?;
    let s = analyze_series(&b).map_err(|x| x.to_string())?;
    ensure(*s.right.term(2) == e && *s.left.term(2) == e && *s.strong.term(2) == e, "B^(2) = B^2 = B^[2] = E")?;
    ensure(!s.profile.mul_group_nilpotent, "(B,∘) not nilpotent")?;
    ensure(!s.profile.nilpotent, "B not nilpotent")?;
    ensure(s.ann.terms.iter().all(|t| *t == Subset::singleton(6, 0)), "Ann_k = {id}")?;
    Ok("Φ3 matches on all ten items".into())
}

fn criterion_2() -> Outcome {
    let b = sd12();
    let r = is_e_ideal(&b).map_err(|x| x.to_string())?;
    ensure(!r.is_ideal, "E is not an ideal")?;
    let w = r.witness.ok_or("missing witness")?;
    let conj = b.label(w.conjugate);
    ensure(conj == "((132),1)", format!("witness conjugation ((132),1), got {conj}"))?;
    ensure(!b.idempotents().contains(w.conjugate), "witness lies outside E")?;
    ensure(b.mul(b.mul(w.b, w.e), b.inv(w.b)) == w.conjugate, "witness is a conjugation")?;
    let s = analyze_series(&b).map_err(|x| x.to_string())?;
    ensure(!s.profile.right_nilpotent, "not right nilpotent")?;
    Ok(format!("witness {} ∘ {} ∘ {}⁻ = {conj}", b.label(w.b), b.label(w.e), b.label(w.b)))
}

fn criterion_3() -> Outcome {
    let b = trivial_semibrace(&catalog_group("A5").unwrap());
    let c = b.index_of("(12345)").ok_or("(12345) not a label")?;
    let i = mul_subgroup_gen(&b, &Subset::singleton(60, c));
    ensure(i.len() == 5, "⟨(12345)⟩ has order 5")?;
    let full = Subset::full(60);
    ensure(dot_set(&b, &full, &i).map_err(|x| x.to_string())?.is_subset(&i), "B·I ⊆ I")?;
    ensure(dot_set(&b, &i, &full).map_err(|x| x.to_string())?.is_subset(&i), "I·B ⊆ I")?;
    let v = is_ideal_thm(&b, &i);
    ensure(!v.is_ideal, "is_ideal_thm must fail")?;
    let f = v.failure.ok_or("missing failure")?;
    ensure(f.condition == IdealCondition::C4, format!("fails on normality, got {}", f.condition))?;
    let [g, x, y] = f.witness[..] else { return Err(format!("witness shape {:?}", f.witness)) };
    ensure(i.contains(x) && !i.contains(y) && b.mul(b.mul(g, x), b.inv(g)) == y, "witness conjugates out of I")?;
    Ok(format!("C4 witness {} ∘ {} ∘ {}⁻ = {}", b.label(g), b.label(x), b.label(g), b.label(y)))
}

fn criterion_4() -> Outcome {
    let mut checked = 0usize;
    for e in raw_corpus() {
        let n = e.b.order();
        for mask in 0u32..(1 << n) {
            let s = Subset::from_elems(n, (0..n).filter(|&x| mask >> x & 1 == 1));
            let d = is_ideal_def(&e.b, &s).is_ideal;
            let t = is_ideal_thm(&e.b, &s).is_ideal;
            let p = is_ideal_prop(&e.b, &s).map(|v| v.is_ideal).unwrap_or(false);
            if !(d == t && t == p) {
                return Err(format!("{}: {s:?} def={d} thm={t} prop={p}", e.name));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets, zero disagreements"))
}

fn criterion_5() -> Outcome {
    let all = corpus_with_fixtures();
    for e in all {
        if let Some((law, w)) = violations(&e.b).into_iter().next() {
            return Err(format!("{}: {law} at {w:?}", e.name));
        }
    }
    Ok(format!("{} structures, zero violations", all.len()))
}

fn g_series_plus_e(b: &FiniteLeftSemibrace, g_series: &SeriesReport, emb: &[usize], k: usize) -> Subset {
    sumset(b, &g_series.term(k).map(b.order(), emb), b.idempotents())
}

fn check_structure_6(b: &FiniteLeftSemibrace, s: &SeriesBundle, fails: &mut [Vec<String>; 6], name: &str) {
    let mut note = |i: usize, msg: String| fails[i].push(format!("{name}: {msg}"));
    for t in &s.right.terms {
        if !is_ideal_thm(b, t).is_ideal {
            note(0, format!("B^(n) {t:?} not an ideal"));
        }
    }
    for t in s.left.terms.iter().chain(&s.strong.terms) {
        if !is_left_ideal(b, t).is_left_ideal {
            note(0, format!("{t:?} not a left ideal"));
        }
    }
    let p = &s.profile;
    if p.strongly_nilpotent != (p.left_nilpotent && p.right_nilpotent) {
        note(1, "strong vs left ∧ right".into());
    }
    if p.nilpotent && !p.mul_group_nilpotent {
        note(2, "nilpotent with (B,∘) not nilpotent".into());
    }
    if !p.e_is_ideal {
        return;
    }
    let (g, emb) = b.group_brace();
    match analyze_series(&g) {
        Ok(gs) => {
            let last = s.right.last_index().max(s.strong.last_index()).max(gs.right.last_index()).max(gs.strong.last_index());
            for k in 1..=last {
                if *s.right.term(k) != g_series_plus_e(b, &gs.right, &emb, k) {
                    note(3, format!("B^({k}) ≠ G^({k}) + E"));
                }
                if *s.strong.term(k) != g_series_plus_e(b, &gs.strong, &emb, k) {
                    note(3, format!("B^[{k}] ≠ G^[{k}] + E"));
                }
            }
        }
        Err(e) => note(3, format!("series of G: {e}")),
    }
    let Some(zoc) = &s.zoc else {
        note(4, "E ideal but no Zoc series".into());
        return;
    };
    if p.add_group_g_nilpotent && p.right_nilpotent != zoc.terminal().is_full() {
        note(4, format!("right nilpotent {} but Zoc_n reaches B {}", p.right_nilpotent, zoc.terminal().is_full()));
    }
    let last = zoc.last_index().max(s.soc.last_index());
    for k in 0..=last {
        let via_soc = sumset(b, s.soc.term(k), b.idempotents());
        if *zoc.term(k) != via_soc {
            note(5, format!("Zoc_{k} = {:?} but Soc_{k} + E = {via_soc:?}", zoc.term(k)));
        }
    }
}

fn criterion_6() -> Outcome {
    const ITEMS: [&str; 6] = [
        "(i) series terms are (left) ideals",
        "(ii) strong ⟺ left ∧ right",
        "(iii) nilpotent ⇒ (B,∘) nilpotent",
        "(iv) E ideal ⇒ termwise G-series + E",
        "(v) E ideal ∧ (G,+) nilpotent ⇒ (right nilpotent ⟺ Zoc_n = B)",
        "(vi) Zoc_n = Soc_n + E",
    ];
    let mut fails: [Vec<String>; 6] = Default::default();
    let mut layer = Vec::new();
    let all = corpus_with_fixtures();
    for e in all {
        match analyze_series(&e.b) {
            Ok(s) => check_structure_6(&e.b, &s, &mut fails, &e.name),
            Err(err) => layer.push(format!("{}: {err}", e.name)),
        }
    }
    let mut report = Vec::new();
    for (item, f) in ITEMS.iter().zip(&fails) {
        if !f.is_empty() {
            let names: BTreeSet<&str> = f.iter().filter_map(|m| m.split(": ").next()).collect();
            let names: Vec<&str> = names.into_iter().collect();
            report.push(format!("{item}: {} violation(s) in [{}], first {}", f.len(), names.join("; "), f[0]));
        }
    }
    if !layer.is_empty() {
        report.push(format!("consistency layer: {} error(s), first {}", layer.len(), layer[0]));
    }
    if report.is_empty() {
        Ok(format!("{} structures, zero violations", all.len()))
    } else {
        Err(report.join("; "))
    }
}

fn criterion_7() -> Outcome {
    let all = corpus_with_fixtures();
    for e in all {
        let r = solution_of(&e.b);
        let braid = check_braid(&r);
        ensure(braid.holds, format!("{}: braid fails at {:?}", e.name, braid.witness))?;
        restrict_to_e(&e.b, &r).map_err(|x| format!("{}: {x}", e.name))?;
    }
    let mut extra = 0;
    for name in CATALOG_NAMES.iter().filter(|n| catalog_group(n).unwrap().order() <= 12) {
        let g = catalog_group(name).unwrap();
        let t = trivial_semibrace(&g);
        let p = properties(&solution_of(&t));
        ensure(p.idempotent, format!("trivial({name}): r² ≠ r"))?;
        ensure(g.order() == 1 || !p.bijective, format!("trivial({name}) reported bijective"))?;
        if g.is_abelian() {
            let p = properties(&solution_of(&skew_brace_of_group(&g)));
            ensure(p.involutive, format!("K_{name} not involutive"))?;
        }
        extra += 1;
    }
    for e in all.iter().filter(|e| e.b.idempotents().is_full()) {
        let p = properties(&solution_of(&e.b));
        ensure(p.idempotent && (e.b.order() == 1 || !p.bijective), format!("{}: trivial structure", e.name))?;
    }
    Ok(format!("{} structures plus {extra} catalog groups, zero violations", all.len()))
}

fn criterion_8() -> Outcome {
    let mut rebuilt = 0;
    let mut total = 0;
    for e in corpus_with_fixtures() {
        if !is_e_ideal(&e.b).map_err(|x| x.to_string())?.is_ideal {
            continue;
        }
        total += 1;
        let (product, _) = split_by_idempotents(&e.b).map_err(|x| format!("{}: {x}", e.name))?;
        if are_isomorphic(&e.b, &product).map_err(|x| x.to_string())?.is_isomorphism() {
            rebuilt += 1;
        } else {
            return Err(format!("{}: E ⋊ G not isomorphic", e.name));
        }
    }
    Ok(format!("{rebuilt}/{total} rebuilt and certified"))
}

fn criterion_9() -> Outcome {
    let mut summary = Vec::new();
    for n in [2, 3] {
        let oracle = common::naive_classes(n);
        let census = enumerate(n, EnumerationOptions::default()).map_err(|x| x.to_string())?;
        let ours: BTreeSet<_> = census
            .entries
            .iter()
            .map(|e| {
                let b = &e.semibrace;
                let add = b.add_table().rows().concat();
                let mul = b.mul_table().rows().concat();
                common::canonical_form(n, &add, &mul)
            })
            .collect();
        ensure(ours.len() == census.entries.len(), format!("n={n}: enumerate emitted isomorphic duplicates"))?;
        ensure(ours == oracle, format!("n={n}: {} classes vs oracle {}", ours.len(), oracle.len()))?;
        summary.push(format!("n={n}: {} classes", ours.len()));
    }
    let groups = groups_of_order(3).len();
    Ok(format!("{} (catalog groups of order 3: {groups})", summary.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, Duration, fn() -> Outcome); 9] = [
        (1, "Φ3 fixture", Duration::from_secs(1), criterion_1),
        (2, "SD12 fixture", Duration::from_secs(1), criterion_2),
        (3, "product-closed non-ideal on A5", Duration::from_secs(5), criterion_3),
        (4, "ideal tests agree", Duration::from_secs(600), criterion_4),
        (5, "identity suite", Duration::from_secs(600), criterion_5),
        (6, "theorem regression layer", Duration::from_secs(600), criterion_6),
        (7, "YBE suite", Duration::from_secs(60), criterion_7),
        (8, "semidirect round-trip", Duration::from_secs(600), criterion_8),
        (9, "enumeration oracle", Duration::from_secs(600), criterion_9),
    ];
    // build the shared corpus outside the timed sections
    let start = Instant::now();
    let size = corpus_with_fixtures().len();
    println!("corpus: {size} structures built in {:.2?}", start.elapsed());
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > limit => Err(format!("{msg}, but took {took:.2?} > {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("criterion {id} ({name}): PASS in {took:.2?}: {msg}"),
            Err(msg) => {
                println!("criterion {id} ({name}): FAIL in {took:.2?}: {msg}");
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
