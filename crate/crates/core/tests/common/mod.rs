//! Naive double-table search, independent of the library: every pair of
//! `n × n` tables is tried against the axioms written out directly, and
//! classes are told apart by a brute-force canonical form.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type Table = Vec<usize>;

fn all_tables(n: usize) -> impl Iterator<Item = Table> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut t = vec![0; cells];
        for cell in t.iter_mut() {
            *cell = code % n;
            code /= n;
        }
        t
    })
}

fn associative(n: usize, t: &Table) -> bool {
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]])))
}

fn left_cancellative(n: usize, t: &Table) -> bool {
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| b == c || t[a * n + b] != t[a * n + c])))
}

/// A group with identity `0`.
fn group_at_zero(n: usize, t: &Table) -> bool {
    let identity = (0..n).all(|x| t[x] == x && t[x * n] == x);
    identity && associative(n, t) && (0..n).all(|a| (0..n).any(|b| t[a * n + b] == 0))
}

fn compatible(n: usize, add: &Table, mul: &Table) -> bool {
    let inv = |a: usize| (0..n).find(|&b| mul[a * n + b] == 0).unwrap();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let lhs = mul[a * n + add[b * n + c]];
                let inner = mul[a * n + add[inv(a) * n + c]];
                lhs == add[mul[a * n + b] * n + inner]
            })
        })
    })
}

/// Every labelled semi-brace on `0..n` whose `∘`-identity is `0`.
pub fn naive_semibraces(n: usize) -> Vec<(Table, Table)> {
    let adds: Vec<Table> = all_tables(n)
        .filter(|t| left_cancellative(n, t) && associative(n, t))
        .collect();
    let muls: Vec<Table> = all_tables(n).filter(|t| group_at_zero(n, t)).collect();
    let mut out = Vec::new();
    for mul in &muls {
        for add in &adds {
            if compatible(n, add, mul) {
                out.push((add.clone(), mul.clone()));
            }
        }
    }
    out
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0], n, &mut out);
    out
}

/// Lexicographically least relabeling over bijections fixing `0`.
pub fn canonical_form(n: usize, add: &Table, mul: &Table) -> (Table, Table) {
    permutations_fixing_zero(n)
        .into_iter()
        .map(|p| {
            let mut inv = vec![0; n];
            for (i, &v) in p.iter().enumerate() {
                inv[v] = i;
            }
            let relabel = |t: &Table| -> Table {
                (0..n * n).map(|k| p[t[inv[k / n] * n + inv[k % n]]]).collect()
            };
            (relabel(add), relabel(mul))
        })
        .min()
        .expect("at least the identity permutation")
}

/// Isomorphism classes of the naive search.
pub fn naive_classes(n: usize) -> BTreeSet<(Table, Table)> {
    naive_semibraces(n)
        .iter()
        .map(|(a, m)| canonical_form(n, a, m))
        .collect()
}
