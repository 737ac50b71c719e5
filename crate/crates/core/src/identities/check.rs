//! Exhaustive identity checking on explicit lattices.
//!
//! Assignments are enumerated as a mixed-radix counter over element ids with
//! variable 0 most significant, so the first failure found is the
//! lexicographically least. Both sides are compiled into one shared DAG whose
//! nodes are grouped by the highest variable they read; after the counter
//! moves at position `k` only the nodes of level `>= k` are recomputed.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::term::{Identity, Relation, Term};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Default budget in term-node evaluations.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(c) => Some(c),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Var(usize),
    Meet(usize, usize),
    Join(usize, usize),
}

/// Hash-consed binary DAG for both sides of an identity, sorted by level.
#[derive(Clone, Debug)]
struct Compiled {
    ops: Vec<Op>,
    /// `start[k]`: first node whose level is `>= k`.
    start: Vec<usize>,
    lhs: usize,
    rhs: usize,
    vars: usize,
    relation: Relation,
}

struct Builder {
    ops: Vec<Op>,
    level: Vec<usize>,
    index: HashMap<Op, usize>,
}

impl Builder {
    fn intern(&mut self, op: Op) -> usize {
        if let Some(&k) = self.index.get(&op) {
            return k;
        }
        let level = match op {
            Op::Var(v) => v,
            Op::Meet(a, b) | Op::Join(a, b) => self.level[a].max(self.level[b]),
        };
        self.ops.push(op);
        self.level.push(level);
        self.index.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }

    fn add(&mut self, t: &Term) -> usize {
        match t {
            Term::Var(v) => self.intern(Op::Var(*v)),
            Term::Meet(ts) | Term::Join(ts) => {
                let is_meet = matches!(t, Term::Meet(_));
                let mut kids: Vec<usize> = ts.iter().map(|s| self.add(s)).collect();
                // commutative and associative, so a canonical order shares more
                kids.sort_unstable();
                kids.dedup();
                let mut acc = kids[0];
                for &k in &kids[1..] {
                    acc = self.intern(if is_meet {
                        Op::Meet(acc, k)
                    } else {
                        Op::Join(acc, k)
                    });
                }
                acc
            }
        }
    }
}

impl Compiled {
    fn new(id: &Identity) -> Compiled {
        let mut b = Builder {
            ops: Vec::new(),
            level: Vec::new(),
            index: HashMap::new(),
        };
        // every variable gets a node so that the counter can read it back
        for v in 0..id.vars {
            b.intern(Op::Var(v));
        }
        let lhs = b.add(&id.lhs);
        let rhs = b.add(&id.rhs);
        // stable sort by level keeps children ahead of parents
        let mut order: Vec<usize> = (0..b.ops.len()).collect();
        order.sort_by_key(|&k| b.level[k]);
        let mut new_id = vec![0; order.len()];
        for (pos, &k) in order.iter().enumerate() {
            new_id[k] = pos;
        }
        let ops = order
            .iter()
            .map(|&k| match b.ops[k] {
                Op::Var(v) => Op::Var(v),
                Op::Meet(x, y) => Op::Meet(new_id[x], new_id[y]),
                Op::Join(x, y) => Op::Join(new_id[x], new_id[y]),
            })
            .collect();
        let start = (0..=id.vars)
            .map(|k| {
                order
                    .iter()
                    .position(|&x| b.level[x] >= k)
                    .unwrap_or(order.len())
            })
            .collect();
        Compiled {
            ops,
            start,
            lhs: new_id[lhs],
            rhs: new_id[rhs],
            vars: id.vars,
            relation: id.relation,
        }
    }

    fn nodes_at_level(&self, k: usize) -> u128 {
        (self.start[k + 1] - self.start[k]) as u128
    }

    /// Node evaluations for a full scan over `size` elements.
    fn cost(&self, size: usize) -> u128 {
        (0..self.vars)
            .map(|k| {
                let runs = (size as u128).saturating_pow(k as u32 + 1);
                runs.saturating_mul(self.nodes_at_level(k))
            })
            .fold(0u128, u128::saturating_add)
    }

    fn recompute(&self, l: &FiniteLattice, a: &[usize], vals: &mut [usize], from: usize) {
        for k in from..self.ops.len() {
            vals[k] = match self.ops[k] {
                Op::Var(v) => a[v],
                Op::Meet(x, y) => l.meet(vals[x], vals[y]),
                Op::Join(x, y) => l.join(vals[x], vals[y]),
            };
        }
    }

    fn ok(&self, l: &FiniteLattice, vals: &[usize]) -> bool {
        let (u, v) = (vals[self.lhs], vals[self.rhs]);
        match self.relation {
            Relation::Leq => l.leq(u, v),
            Relation::Eq => u == v,
        }
    }

    /// Lex-least failure among assignments extending `prefix`.
    fn scan(&self, l: &FiniteLattice, prefix: &[usize]) -> Option<Counterexample> {
        let size = l.len();
        let fixed = prefix.len();
        let mut a = vec![0; self.vars];
        a[..fixed].copy_from_slice(prefix);
        let mut vals = vec![0; self.ops.len()];
        self.recompute(l, &a, &mut vals, 0);
        loop {
            if !self.ok(l, &vals) {
                return Some(Counterexample {
                    assignment: a,
                    lhs: vals[self.lhs],
                    rhs: vals[self.rhs],
                });
            }
            let mut k = self.vars;
            loop {
                if k == fixed {
                    return None;
                }
                k -= 1;
                a[k] += 1;
                if a[k] < size {
                    break;
                }
                a[k] = 0;
            }
            self.recompute(l, &a, &mut vals, self.start[k]);
        }
    }
}

/// Exhaustive check with the default budget.
pub fn holds(l: &FiniteLattice, id: &Identity, parallel: bool) -> Result<Verdict> {
    holds_with_budget(l, id, parallel, DEFAULT_BUDGET)
}

/// Exhaustive check; `parallel` shards on the two most significant variables.
/// The verdict, counterexample included, does not depend on `parallel`.
pub fn holds_with_budget(
    l: &FiniteLattice,
    id: &Identity,
    parallel: bool,
    budget: u128,
) -> Result<Verdict> {
    let c = Compiled::new(id);
    let needed = c.cost(l.len());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let found = if parallel && c.vars >= 2 {
        let size = l.len();
        (0..size * size)
            .into_par_iter()
            .map(|s| c.scan(l, &[s / size, s % size]))
            .find_map_first(|r| r)
    } else {
        c.scan(l, &[])
    };
    Ok(found.map_or(Verdict::Holds, Verdict::Fails))
}

/// Node evaluations a full scan of `id` over `l` would take.
pub fn scan_cost(l: &FiniteLattice, id: &Identity) -> u128 {
    Compiled::new(id).cost(l.len())
}
