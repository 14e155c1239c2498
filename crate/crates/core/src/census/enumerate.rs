//! Exhaustive enumeration of the codes of a mixed ambient.
//!
//! Howell forms are grown from the bottom row upward: each new top row takes
//! a pivot column left of every existing pivot, a pivot `p^v`, entries below
//! `p^(v_j)` above the later pivots, and free entries elsewhere. A candidate
//! is kept when `p^(mu-v)` times it already lies in the span of the rows
//! below, which is exactly the Howell closure condition. Every node of the
//! search is a distinct code.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::census::{check_budget, Predicate};
use crate::error::Result;
use crate::mixedcode::{embedded_inner, MixedAmbient, MixedCode};
use crate::modmatrix::ResidueMatrix;

struct Grower {
    amb: MixedAmbient,
    so_only: bool,
}

/// Rows stored bottom-first with their pivot column and valuation.
#[derive(Clone, Default)]
struct Stack {
    rows: Vec<Vec<u64>>,
    pivots: Vec<(usize, u32)>,
}

impl Grower {
    fn code(&self, s: &Stack) -> MixedCode {
        let m = self.amb.modulus();
        let entries = s.rows.iter().rev().flat_map(|r| r.iter().copied()).collect();
        MixedCode::from_howell_unchecked(self.amb, ResidueMatrix { m, rows: s.rows.len(), cols: self.amb.len(), entries })
    }

    fn in_span(&self, s: &Stack, mut w: Vec<u64>) -> bool {
        let m = self.amb.modulus();
        for (row, &(c, v)) in s.rows.iter().zip(&s.pivots).rev() {
            if w[c] == 0 {
                continue;
            }
            let pv = m.p_pow(v);
            if !w[c].is_multiple_of(pv) {
                return false;
            }
            let q = w[c] / pv;
            for (x, &y) in w.iter_mut().zip(row) {
                *x = m.sub(*x, m.mul(q, y));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// All admissible new top rows for the current stack.
    fn candidates(&self, s: &Stack, mut emit: impl FnMut(Vec<u64>, (usize, u32))) {
        let amb = self.amb;
        let m = amb.modulus();
        let n = amb.len();
        let limit = s.pivots.last().map_or(n, |p| p.0);
        for c in 0..limit {
            let vmin = if c < amb.n1 { 0 } else { 1 };
            for v in vmin..amb.mu {
                let mut ranges = Vec::with_capacity(n - c - 1);
                for col in c + 1..n {
                    let step = if col < amb.n1 { 1 } else { amb.p };
                    let cap = match s.pivots.iter().find(|p| p.0 == col) {
                        Some(&(_, vj)) => m.p_pow(vj),
                        None => m.value(),
                    };
                    ranges.push((col, step, cap / step));
                }
                let mut row = vec![0u64; n];
                row[c] = m.p_pow(v);
                let mut idx = vec![0u64; ranges.len()];
                loop {
                    for (k, &(col, step, _)) in ranges.iter().enumerate() {
                        row[col] = idx[k] * step;
                    }
                    if self.admissible(s, &row, v) {
                        emit(row.clone(), (c, v));
                    }
                    let mut k = 0;
                    while k < ranges.len() {
                        idx[k] += 1;
                        if idx[k] < ranges[k].2 {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == ranges.len() {
                        break;
                    }
                }
            }
        }
    }

    fn admissible(&self, s: &Stack, row: &[u64], v: u32) -> bool {
        if self.so_only {
            if embedded_inner(&self.amb, row, row) != 0 {
                return false;
            }
            if s.rows.iter().any(|r| embedded_inner(&self.amb, row, r) != 0) {
                return false;
            }
        }
        let m = self.amb.modulus();
        let scale = m.p_pow(m.mu - v);
        self.in_span(s, row.iter().map(|&x| m.mul(scale, x)).collect())
    }

    fn walk<A>(&self, s: &mut Stack, acc: &mut A, visit: &(impl Fn(&mut A, &MixedCode) + Sync)) {
        visit(acc, &self.code(s));
        let mut children = Vec::new();
        self.candidates(s, |row, piv| children.push((row, piv)));
        for (row, piv) in children {
            s.rows.push(row);
            s.pivots.push(piv);
            self.walk(s, acc, visit);
            s.rows.pop();
            s.pivots.pop();
        }
    }
}

/// Folds `visit` over every code of the ambient (or every self-orthogonal
/// code when `so_only`), in parallel over the bottom-row choices. `merge`
/// must be commutative for the result to be schedule-independent.
pub fn fold_codes<A: Send>(
    amb: MixedAmbient,
    so_only: bool,
    budget: u128,
    init: impl Fn() -> A + Sync + Send,
    visit: impl Fn(&mut A, &MixedCode) + Sync + Send,
    merge: impl Fn(A, A) -> A + Sync + Send,
) -> Result<A> {
    check_budget(&amb, budget)?;
    let g = Grower { amb, so_only };
    let mut roots = Vec::new();
    g.candidates(&Stack::default(), |row, piv| roots.push((row, piv)));
    let mut acc = init();
    visit(&mut acc, &MixedCode::zero(amb));
    let rest = roots
        .into_par_iter()
        .fold(&init, |mut a, (row, piv)| {
            let mut s = Stack { rows: vec![row], pivots: vec![piv] };
            g.walk(&mut s, &mut a, &visit);
            a
        })
        .reduce(&init, &merge);
    Ok(merge(acc, rest))
}

/// Every code of the ambient, sorted.
pub fn enumerate_codes(amb: MixedAmbient, budget: u128) -> Result<Vec<MixedCode>> {
    enumerate_matching(amb, Predicate::All, budget)
}

/// Every code satisfying `pred`, sorted.
pub fn enumerate_matching(amb: MixedAmbient, pred: Predicate, budget: u128) -> Result<Vec<MixedCode>> {
    let mut v = fold_codes(
        amb,
        pred.implies_self_orthogonal(),
        budget,
        Vec::new,
        |a, c| {
            if pred.holds(c) {
                a.push(c.clone());
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    v.sort();
    Ok(v)
}

/// Independent enumeration by closing `{0}` under adding one cyclic
/// submodule at a time; tiny ambients only.
pub fn enumerate_by_closure(amb: MixedAmbient) -> Vec<MixedCode> {
    let full = MixedCode::full(amb);
    let elements = full.codewords_embedded();
    let mut seen: HashSet<MixedCode> = HashSet::new();
    let zero = MixedCode::zero(amb);
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(c) = frontier.pop() {
        for w in &elements {
            if c.contains_embedded(w) {
                continue;
            }
            let g = c.basis.vstack(&ResidueMatrix::from_rows(amb.modulus(), amb.len(), std::slice::from_ref(w)).expect("width"));
            let next = MixedCode::from_embedded(amb, &g.expect("same shape")).expect("embedded rows");
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let sorted: BTreeSet<MixedCode> = seen.into_iter().collect();
    sorted.into_iter().collect()
}
