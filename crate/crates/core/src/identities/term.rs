use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::LatticeOps;
use crate::error::{Error, Result};

/// A lattice term over variables `x0, x1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    Meet(Vec<Term>),
    Join(Vec<Term>),
}

impl Term {
    pub fn var(k: usize) -> Term {
        Term::Var(k)
    }

    /// `⋀ terms`; a single operand is returned as is.
    pub fn meet<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        let mut v: Vec<Term> = terms.into_iter().collect();
        assert!(!v.is_empty(), "empty meet");
        if v.len() == 1 {
            v.pop().unwrap()
        } else {
            Term::Meet(v)
        }
    }

    /// `⋁ terms`; a single operand is returned as is.
    pub fn join<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        let mut v: Vec<Term> = terms.into_iter().collect();
        assert!(!v.is_empty(), "empty join");
        if v.len() == 1 {
            v.pop().unwrap()
        } else {
            Term::Join(v)
        }
    }

    /// One more than the largest variable index.
    pub fn var_bound(&self) -> usize {
        match self {
            Term::Var(k) => k + 1,
            Term::Meet(ts) | Term::Join(ts) => ts.iter().map(Term::var_bound).max().unwrap_or(0),
        }
    }

    /// Number of nodes in the tree, shared subterms counted repeatedly.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Meet(ts) | Term::Join(ts) => 1 + ts.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Swaps meets and joins.
    pub fn dual(&self) -> Term {
        match self {
            Term::Var(k) => Term::Var(*k),
            Term::Meet(ts) => Term::Join(ts.iter().map(Term::dual).collect()),
            Term::Join(ts) => Term::Meet(ts.iter().map(Term::dual).collect()),
        }
    }

    /// Replaces variable `k` by variable `map[k]`.
    pub fn substitute(&self, map: &[usize]) -> Term {
        match self {
            Term::Var(k) => Term::Var(map[*k]),
            Term::Meet(ts) => Term::Meet(ts.iter().map(|t| t.substitute(map)).collect()),
            Term::Join(ts) => Term::Join(ts.iter().map(|t| t.substitute(map)).collect()),
        }
    }

    /// Evaluates in any lattice.
    pub fn eval<L: LatticeOps>(&self, l: &L, assignment: &[L::Elem]) -> Result<L::Elem> {
        if self.var_bound() > assignment.len() {
            return Err(Error::ArityMismatch {
                expected: self.var_bound(),
                got: assignment.len(),
            });
        }
        Ok(self.eval_unchecked(l, assignment))
    }

    fn eval_unchecked<L: LatticeOps>(&self, l: &L, a: &[L::Elem]) -> L::Elem {
        match self {
            Term::Var(k) => a[*k].clone(),
            Term::Meet(ts) => {
                let mut it = ts.iter().map(|t| t.eval_unchecked(l, a));
                let first = it.next().expect("non-empty meet");
                it.fold(first, |acc, x| l.meet(&acc, &x))
            }
            Term::Join(ts) => {
                let mut it = ts.iter().map(|t| t.eval_unchecked(l, a));
                let first = it.next().expect("non-empty join");
                it.fold(first, |acc, x| l.join(&acc, &x))
            }
        }
    }

    /// Parses `(meet (join x0 x1) x2)`.
    pub fn parse(text: &str) -> Result<Term> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let t = parse_at(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input after term: {:?}",
                tokens[pos]
            )));
        }
        Ok(t)
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_owned)
        .collect()
}

fn parse_at(tokens: &[String], pos: &mut usize) -> Result<Term> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("unexpected end of term".into()))?;
    *pos += 1;
    if tok != "(" {
        let k = tok
            .strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad variable {tok:?}")))?;
        return Ok(Term::Var(k));
    }
    let op = tokens
        .get(*pos)
        .ok_or_else(|| Error::Parse("missing operator".into()))?
        .clone();
    *pos += 1;
    let mut args = Vec::new();
    loop {
        match tokens.get(*pos).map(String::as_str) {
            Some(")") => {
                *pos += 1;
                break;
            }
            Some(_) => args.push(parse_at(tokens, pos)?),
            None => return Err(Error::Parse("unclosed parenthesis".into())),
        }
    }
    if args.len() < 2 {
        return Err(Error::Parse(format!("{op} needs at least two operands")));
    }
    match op.as_str() {
        "meet" => Ok(Term::Meet(args)),
        "join" => Ok(Term::Join(args)),
        _ => Err(Error::Parse(format!("unknown operator {op:?}"))),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (op, ts) = match self {
            Term::Var(k) => return write!(f, "x{k}"),
            Term::Meet(ts) => ("meet", ts),
            Term::Join(ts) => ("join", ts),
        };
        write!(f, "({op}")?;
        for t in ts {
            write!(f, " {t}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Leq,
    Eq,
}

/// `lhs ≤ rhs` or `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub relation: Relation,
    pub vars: usize,
}

#[derive(Serialize, Deserialize)]
struct IdentityFile {
    vars: usize,
    lhs: String,
    rhs: String,
    rel: Relation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl Identity {
    pub fn new(
        name: impl Into<String>,
        lhs: Term,
        rhs: Term,
        relation: Relation,
        vars: usize,
    ) -> Result<Self> {
        let needed = lhs.var_bound().max(rhs.var_bound());
        if needed > vars {
            return Err(Error::ArityMismatch {
                expected: needed,
                got: vars,
            });
        }
        Ok(Identity {
            name: name.into(),
            lhs,
            rhs,
            relation,
            vars,
        })
    }

    /// The identity that holds in `L^op` exactly when `self` holds in `L`.
    pub fn dual(&self) -> Identity {
        let (lhs, rhs) = match self.relation {
            Relation::Leq => (self.rhs.dual(), self.lhs.dual()),
            Relation::Eq => (self.lhs.dual(), self.rhs.dual()),
        };
        Identity {
            name: format!("dual {}", self.name),
            lhs,
            rhs,
            relation: self.relation,
            vars: self.vars,
        }
    }

    /// Renames variables through `map` into `vars` new variables.
    pub fn substitute(&self, map: &[usize], vars: usize) -> Result<Identity> {
        if map.len() != self.vars {
            return Err(Error::ArityMismatch {
                expected: self.vars,
                got: map.len(),
            });
        }
        Identity::new(
            format!("{} substituted", self.name),
            self.lhs.substitute(map),
            self.rhs.substitute(map),
            self.relation,
            vars,
        )
    }

    /// Both sides at one assignment.
    pub fn eval_sides<L: LatticeOps>(
        &self,
        l: &L,
        assignment: &[L::Elem],
    ) -> Result<(L::Elem, L::Elem)> {
        if assignment.len() != self.vars {
            return Err(Error::ArityMismatch {
                expected: self.vars,
                got: assignment.len(),
            });
        }
        Ok((self.lhs.eval(l, assignment)?, self.rhs.eval(l, assignment)?))
    }

    pub fn satisfied_at<L: LatticeOps>(&self, l: &L, assignment: &[L::Elem]) -> Result<bool> {
        let (u, v) = self.eval_sides(l, assignment)?;
        Ok(match self.relation {
            Relation::Leq => l.leq(&u, &v),
            Relation::Eq => u == v,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let file = IdentityFile {
            vars: self.vars,
            lhs: self.lhs.to_string(),
            rhs: self.rhs.to_string(),
            rel: self.relation,
            name: Some(self.name.clone()),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Identity> {
        let file: IdentityFile = serde_json::from_str(text)?;
        Identity::new(
            file.name.unwrap_or_else(|| "custom".into()),
            Term::parse(&file.lhs)?,
            Term::parse(&file.rhs)?,
            file.rel,
            file.vars,
        )
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Leq => "<=",
            Relation::Eq => "=",
        };
        write!(f, "{} {rel} {}", self.lhs, self.rhs)
    }
}
