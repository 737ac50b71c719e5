//! Lattice and measure files.
//!
//! A lattice is `{"n", "names", "covers"}` with covers as `[lower, upper]`
//! id pairs. Set lattices add `"ground"`, `"meet"` (`"interior"` or
//! `"intersection"`) and `"sets"`, and are read back as set lattices with
//! the same ids.
//!
//! A measure is `{"chain", "u", "target", "values"}`: chain labels, the
//! positions (from 1) in `U`, the target lattice inline, and
//! `[x, y, element]` triples for positions `x < y`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, SetMeet};
use crate::measures::PolarizedMeasure;
use crate::pairset::{PairSet, RawPairs};
use crate::weak_order::index_set;

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    n: usize,
    names: Vec<String>,
    covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ground: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meet: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sets: Option<Vec<RawPairs>>,
}

#[derive(Serialize, Deserialize)]
struct MeasureFile {
    chain: Vec<String>,
    u: Vec<usize>,
    target: LatticeFile,
    values: Vec<[usize; 3]>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn to_file(l: &FiniteLattice) -> LatticeFile {
    let sets = l.sets().map(|s| {
        s.iter()
            .map(|x| RawPairs(x.pairs().into_iter().map(|(i, j)| [i, j]).collect()))
            .collect()
    });
    LatticeFile {
        n: l.len(),
        names: l.names().to_vec(),
        covers: l.cover_pairs().into_iter().map(|(x, y)| [x, y]).collect(),
        ground: l.sets().map(|s| s[0].n()),
        meet: l.set_meet().map(|m| match m {
            SetMeet::Interior => "interior".into(),
            SetMeet::Intersection => "intersection".into(),
        }),
        sets,
    }
}

fn from_file(f: LatticeFile) -> Result<FiniteLattice> {
    if f.names.len() != f.n {
        return Err(parse_err(format!(
            "{} names for {} elements",
            f.names.len(),
            f.n
        )));
    }
    let lattice = match f.sets {
        None => FiniteLattice::from_order(f.n, f.covers.iter().map(|&[x, y]| (x, y)))?,
        Some(raw) => {
            let ground = f
                .ground
                .ok_or_else(|| parse_err("\"sets\" without \"ground\""))?;
            let meet = match f.meet.as_deref() {
                Some("interior") => SetMeet::Interior,
                Some("intersection") => SetMeet::Intersection,
                other => return Err(parse_err(format!("unknown meet rule {other:?}"))),
            };
            if raw.len() != f.n {
                return Err(parse_err(format!(
                    "{} sets for {} elements",
                    raw.len(),
                    f.n
                )));
            }
            let sets = raw
                .into_iter()
                .map(|r| {
                    r.into_pairset(ground)
                        .ok_or_else(|| parse_err("pair outside the ground set"))
                })
                .collect::<Result<Vec<PairSet>>>()?;
            let l = FiniteLattice::from_pair_sets(sets, meet)?;
            let mut covers = f.covers.clone();
            covers.sort_unstable();
            let actual: Vec<[usize; 2]> =
                l.cover_pairs().into_iter().map(|(x, y)| [x, y]).collect();
            if covers != actual {
                return Err(parse_err("covers do not match the sets"));
            }
            l
        }
    };
    Ok(lattice.with_names(f.names))
}

pub fn lattice_to_json(l: &FiniteLattice) -> String {
    serde_json::to_string_pretty(&to_file(l)).expect("plain data serializes")
}

pub fn lattice_from_json(s: &str) -> Result<FiniteLattice> {
    from_file(serde_json::from_str(s)?)
}

pub fn write_lattice(path: &Path, l: &FiniteLattice) -> Result<()> {
    std::fs::write(path, lattice_to_json(l) + "\n")?;
    Ok(())
}

pub fn read_lattice(path: &Path) -> Result<FiniteLattice> {
    lattice_from_json(&std::fs::read_to_string(path)?)
}

pub fn measure_to_json(mu: &PolarizedMeasure) -> String {
    let f = MeasureFile {
        chain: mu.labels().to_vec(),
        u: mu.u_indices(),
        target: to_file(mu.target()),
        values: mu.entries().map(|(x, y, v)| [x, y, v]).collect(),
    };
    serde_json::to_string_pretty(&f).expect("plain data serializes")
}

/// Pairs missing from `"values"` default to the bottom.
pub fn measure_from_json(s: &str) -> Result<PolarizedMeasure> {
    let f: MeasureFile = serde_json::from_str(s)?;
    let n = f.chain.len();
    if let Some(&k) = f.u.iter().find(|&&k| k == 0 || k > n) {
        return Err(parse_err(format!("U position {k} outside the chain")));
    }
    let target = Arc::new(from_file(f.target)?);
    let mut table = vec![None; n * n];
    for &[x, y, v] in &f.values {
        if !(1 <= x && x < y && y <= n) {
            return Err(parse_err(format!(
                "({x}, {y}) is not a pair of chain positions"
            )));
        }
        table[(x - 1) * n + (y - 1)] = Some(v);
    }
    let bottom = target.bottom();
    PolarizedMeasure::new(n, index_set(&f.u), target, |x, y| {
        table[(x - 1) * n + (y - 1)].unwrap_or(bottom)
    })?
    .with_labels(f.chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::n5;

    #[test]
    fn dense_round_trip() {
        let l = n5();
        let back = lattice_from_json(&lattice_to_json(&l)).unwrap();
        assert_eq!(back.cover_pairs(), l.cover_pairs());
        assert_eq!(back.names(), l.names());
        assert!(!back.is_set_lattice());
    }

    #[test]
    fn rejects_non_lattice() {
        let bowtie = r#"{"n": 6, "names": ["0","a","b","c","d","1"],
            "covers": [[0,1],[0,2],[1,3],[1,4],[2,3],[2,4],[3,5],[4,5]]}"#;
        assert!(matches!(
            lattice_from_json(bowtie),
            Err(Error::NotALattice(..))
        ));
        assert!(matches!(
            lattice_from_json("{\"n\": 2}"),
            Err(Error::Json(_))
        ));
    }
}
