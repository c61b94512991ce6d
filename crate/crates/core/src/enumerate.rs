//! Enumeration of the alcoves of `Delta_{i,d}` and `r * Delta_{i,d}`.
//!
//! Three independent routes produce the alcoves of a dilated hypersimplex:
//! through `(word, permutation)` labels, through `(composition,
//! permutation)` labels, and by brute force over every placement of one
//! mark per row boundary. Outputs are sorted, so the routes can be compared
//! as sets.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcove::{Alcove, HypersimplexSpec};
use crate::bijections::{alc_i, hypersimplex_alcove, WordsLabeler};
use crate::combinatorics::{all_words, composition_set, eulerian_set, Permutation, WeakComposition};
use crate::error::{Error, Result};
use crate::sorted::fill_from_marks;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Words,
    Pairs,
    Brute,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Words, Strategy::Pairs, Strategy::Brute];

    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::Words => "words",
            Strategy::Pairs => "pairs",
            Strategy::Brute => "brute",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "words" => Ok(Strategy::Words),
            "pairs" => Ok(Strategy::Pairs),
            "brute" => Ok(Strategy::Brute),
            other => Err(Error::InvalidParameter(format!("unknown strategy {other:?}"))),
        }
    }
}

/// The alcoves of `Delta_{i,d}`, one per permutation with `i - 1` descents.
pub fn enumerate_hypersimplex_alcoves(level: u32, dim: usize) -> Result<Vec<Alcove>> {
    HypersimplexSpec::hypersimplex(level, dim)?;
    let mut out: Vec<Alcove> = eulerian_set(dim, level as usize)?
        .iter()
        .map(hypersimplex_alcove)
        .collect();
    out.sort();
    Ok(out)
}

pub fn enumerate_dilated_alcoves(spec: &HypersimplexSpec, strategy: Strategy) -> Result<Vec<Alcove>> {
    let mut out = match strategy {
        Strategy::Words => by_words(spec)?,
        Strategy::Pairs => by_pairs(spec)?,
        Strategy::Brute => by_marks(spec),
    };
    out.par_sort_unstable();
    Ok(out)
}

fn by_words(spec: &HypersimplexSpec) -> Result<Vec<Alcove>> {
    let labeler = WordsLabeler::new(*spec)?;
    let taus = eulerian_set(spec.dim(), spec.level() as usize)?;
    let words: Vec<_> = all_words(spec.dilation(), spec.dim()).collect();
    taus.par_iter()
        .flat_map_iter(|tau| words.iter().map(|w| labeler.alcove(w, tau)))
        .collect()
}

fn by_pairs(spec: &HypersimplexSpec) -> Result<Vec<Alcove>> {
    let d = spec.dim();
    let total = spec.coordinate_sum();
    let mut labels: Vec<(WeakComposition, Permutation)> = Vec::new();
    for j in 1..=d {
        let Some(rest) = total.checked_sub(j as u32) else { continue };
        let comps = composition_set(spec.dilation() - 1, d + 1, rest)?;
        let perms = eulerian_set(d, j)?;
        for c in &comps {
            labels.extend(perms.iter().map(|p| (c.clone(), p.clone())));
        }
    }
    labels.par_iter().map(|(c, p)| alc_i(c, p, spec)).collect()
}

fn by_marks(spec: &HypersimplexSpec) -> Vec<Alcove> {
    let d = spec.dim();
    let cols = spec.coordinate_sum() as usize;
    let placements = cols.pow(d as u32);
    (0..placements)
        .into_par_iter()
        .filter_map(|code| {
            let mut marks = vec![0usize; d];
            let mut c = code;
            for m in marks.iter_mut().rev() {
                *m = c % cols + 1;
                c /= cols;
            }
            let fill = fill_from_marks(d + 1, cols, &marks).expect("marks are in range");
            (fill.max_entry as usize <= d + 1 && fill.max_multiplicity <= spec.dilation())
                .then(|| Alcove::from_sorted_rows(fill.matrix.points(d + 1), *spec))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::eulerian_number;

    #[test]
    fn first_hypersimplex_is_one_simplex() {
        for d in 1..6 {
            let all = enumerate_hypersimplex_alcoves(1, d).unwrap();
            assert_eq!(all.len(), 1);
            let verts = all[0].vertices();
            assert!(verts.iter().all(|v| v.sum() == 1));
        }
    }

    #[test]
    fn second_hypersimplex_of_dim_four() {
        assert_eq!(enumerate_hypersimplex_alcoves(2, 4).unwrap().len(), 11);
        assert!(enumerate_hypersimplex_alcoves(5, 4).is_err());
    }

    #[test]
    fn strategies_agree_on_small_specs() {
        for d in 1..=3 {
            for i in 1..=d as u32 {
                for r in 1..=3 {
                    let spec = HypersimplexSpec::new(r, i, d).unwrap();
                    let words = enumerate_dilated_alcoves(&spec, Strategy::Words).unwrap();
                    let pairs = enumerate_dilated_alcoves(&spec, Strategy::Pairs).unwrap();
                    let brute = enumerate_dilated_alcoves(&spec, Strategy::Brute).unwrap();
                    let expected = u64::from(r).pow(d as u32) * eulerian_number(d, i as usize).unwrap();
                    assert_eq!(words.len() as u64, expected, "{spec}");
                    assert_eq!(words, pairs, "{spec}");
                    assert_eq!(words, brute, "{spec}");
                }
            }
        }
    }

    #[test]
    fn dilation_one_gives_hypersimplex() {
        let spec = HypersimplexSpec::new(1, 2, 4).unwrap();
        for s in Strategy::ALL {
            assert_eq!(
                enumerate_dilated_alcoves(&spec, s).unwrap(),
                enumerate_hypersimplex_alcoves(2, 4).unwrap()
            );
        }
    }

    #[test]
    fn strategy_names_roundtrip() {
        for s in Strategy::ALL {
            assert_eq!(s.as_str().parse::<Strategy>().unwrap(), s);
        }
        assert!("lp".parse::<Strategy>().is_err());
    }
}
