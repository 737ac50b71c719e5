use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use super::term::{Identity, Relation, Term};
use crate::error::{Error, Result};

/// Largest `d! · ∏ m_i` accepted by [`gazpacho`].
pub const DEFAULT_BRANCH_BUDGET: u128 = 1_000_000;

/// `m⃗ = (m_1, ..., m_d)` with `d >= 2` and every `m_i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GazpachoIndex(Vec<usize>);

impl GazpachoIndex {
    pub fn new(m: Vec<usize>) -> Result<Self> {
        if m.len() < 2 || m.contains(&0) {
            return Err(Error::BadParams(format!(
                "Gazpacho index {m:?} needs d >= 2 positive entries"
            )));
        }
        Ok(GazpachoIndex(m))
    }

    /// Parses `2,1` or `(2, 1)`.
    pub fn parse(text: &str) -> Result<Self> {
        let m = text
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad Gazpacho index {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m)
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    pub fn m(&self) -> &[usize] {
        &self.0
    }

    /// `Σ m_i + d`.
    pub fn var_count(&self) -> usize {
        self.0.iter().sum::<usize>() + self.d()
    }

    /// Variable index of `a_{i,j}` (1-based `i`, `j`).
    pub fn a_var(&self, i: usize, j: usize) -> usize {
        self.0[..i - 1].iter().sum::<usize>() + j - 1
    }

    /// Variable index of `b_i`.
    pub fn b_var(&self, i: usize) -> usize {
        self.0.iter().sum::<usize>() + i - 1
    }

    /// `d! · ∏ m_i`, the number of `(σ, τ)` pairs.
    pub fn branches(&self) -> u128 {
        let fact: u128 = (1..=self.d() as u128).product();
        self.0
            .iter()
            .fold(fact, |acc, &m| acc.saturating_mul(m as u128))
    }
}

impl fmt::Display for GazpachoIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// `Gzp(m⃗)` with the default branch budget.
pub fn gazpacho(index: &GazpachoIndex) -> Result<Identity> {
    gazpacho_with_budget(index, DEFAULT_BRANCH_BUDGET)
}

/// `e ≤ e* ∨ ⋁ f_2^{σ,τ}` in the variables `a_{i,j}` (row by row) then `b_i`.
pub fn gazpacho_with_budget(index: &GazpachoIndex, budget: u128) -> Result<Identity> {
    let needed = index.branches();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let d = index.d();
    let av = |i: usize, j: usize| Term::var(index.a_var(i, j));
    let bv = |i: usize| Term::var(index.b_var(i));
    // index 0 unused so that terms are addressed 1-based like the variables
    let a: Vec<Term> = std::iter::once(Term::var(0))
        .chain((1..=d).map(|i| Term::join((1..=index.m()[i - 1]).map(|j| av(i, j)))))
        .collect();
    let b = Term::join((1..=d).map(bv));
    let ab: Vec<Term> = std::iter::once(Term::var(0))
        .chain((1..=d).map(|i| Term::join([a[i].clone(), bv(i)])))
        .collect();
    let bt: Vec<Term> = std::iter::once(Term::var(0))
        .chain((1..=d).map(|i| Term::meet([b.clone(), ab[i].clone()])))
        .collect();
    let e = Term::meet((1..=d).map(|i| ab[i].clone()));
    let e_star = Term::meet([b, e.clone()]);

    // f_i only reads σ(1..) and τ at σ(i..d); memoize on exactly that
    let mut memo: HashMap<(usize, Vec<usize>, Vec<usize>), Term> = HashMap::new();
    let mut f2s = Vec::new();
    for sigma in (1..=d).permutations(d) {
        for tau in index.m().iter().map(|&m| 1..=m).multi_cartesian_product() {
            let f2 = f_term(2, &sigma, &tau, &ab, &bt, &av, &mut memo);
            if !f2s.contains(&f2) {
                f2s.push(f2);
            }
        }
    }
    let rhs = Term::join(std::iter::once(e_star).chain(f2s));
    Identity::new(
        format!("Gzp{index}"),
        e,
        rhs,
        Relation::Leq,
        index.var_count(),
    )
}

fn f_term(
    i: usize,
    sigma: &[usize],
    tau: &[usize],
    ab: &[Term],
    bt: &[Term],
    av: &impl Fn(usize, usize) -> Term,
    memo: &mut HashMap<(usize, Vec<usize>, Vec<usize>), Term>,
) -> Term {
    let d = sigma.len();
    let s = |k: usize| sigma[k - 1];
    let key_tau: Vec<usize> = (i..=d).map(|k| tau[s(k) - 1]).collect();
    let key = (i, sigma.to_vec(), key_tau);
    if let Some(t) = memo.get(&key) {
        return t.clone();
    }
    let pivot = av(s(i), tau[s(i) - 1]);
    let mut parts = vec![
        Term::join([pivot.clone(), bt[s(1)].clone()]),
        ab[s(i)].clone(),
    ];
    for j in i + 1..=d {
        let fj = f_term(j, sigma, tau, ab, bt, av, memo);
        parts.push(Term::join([pivot.clone(), fj]));
    }
    let t = Term::meet(parts);
    memo.insert(key, t.clone());
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_layout() {
        let g = GazpachoIndex::new(vec![2, 1, 3]).unwrap();
        assert_eq!(g.var_count(), 9);
        assert_eq!(g.a_var(1, 2), 1);
        assert_eq!(g.a_var(2, 1), 2);
        assert_eq!(g.a_var(3, 3), 5);
        assert_eq!(g.b_var(1), 6);
        assert_eq!(g.branches(), 36);
        assert!(GazpachoIndex::new(vec![1]).is_err());
        assert!(GazpachoIndex::new(vec![1, 0]).is_err());
        assert_eq!(GazpachoIndex::parse("(2, 2)").unwrap().m(), &[2, 2]);
    }

    #[test]
    fn gzp11_has_four_variables() {
        let id = gazpacho(&GazpachoIndex::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(id.vars, 4);
        assert_eq!(id.relation, Relation::Leq);
    }

    #[test]
    fn branch_budget() {
        let big = GazpachoIndex::new(vec![3; 8]).unwrap();
        assert!(matches!(gazpacho(&big), Err(Error::BudgetExceeded { .. })));
    }
}
