//! Words, weak compositions, partitions and permutations, with the counting
//! functions the rest of the crate is built on.
//!
//! Everything is generated in lexicographic order. Permutations use 1-indexed
//! one-line notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};

/// A string of length `d` over the alphabet `{1, ..., r}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<u32>,
    alphabet: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, alphabet: u32) -> Result<Self> {
        ensure!(alphabet >= 1, InvalidParameter, "alphabet bound must be at least 1");
        if let Some(bad) = letters.iter().find(|&&l| l == 0 || l > alphabet) {
            return Err(Error::InvalidInput(format!(
                "letter {bad} is outside [1, {alphabet}]"
            )));
        }
        Ok(Word { letters, alphabet })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Position of this word in the lexicographic listing of `[r]^d`.
    pub fn rank(&self) -> usize {
        let r = self.alphabet as usize;
        self.letters
            .iter()
            .fold(0, |acc, &l| acc * r + (l as usize - 1))
    }

    /// Inverse of [`Word::rank`].
    pub fn unrank(mut rank: usize, alphabet: u32, len: usize) -> Self {
        let r = alphabet as usize;
        let mut letters = vec![1; len];
        for slot in letters.iter_mut().rev() {
            *slot = (rank % r) as u32 + 1;
            rank /= r;
        }
        Word { letters, alphabet }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.letters)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

/// All words of `[r]^d` in lexicographic order.
pub fn all_words(r: u32, d: usize) -> impl Iterator<Item = Word> {
    let total = (r as usize).checked_pow(d as u32).unwrap_or(0);
    let total = if r == 0 { 0 } else { total };
    (0..total).map(move |k| Word::unrank(k, r, d))
}

/// An ordered sequence of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeakComposition {
    parts: Vec<u32>,
}

impl WeakComposition {
    pub fn new(parts: Vec<u32>) -> Self {
        WeakComposition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// The set of weak compositions `(c_1, ..., c_d)` of `total` with every part at
/// most `bound`, in lexicographic order.
pub fn composition_set(bound: u32, parts: usize, total: u32) -> Result<Vec<WeakComposition>> {
    ensure!(parts >= 1, InvalidParameter, "number of parts must be at least 1");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts);
    fill_compositions(bound, parts, total, &mut current, &mut out);
    Ok(out)
}

fn fill_compositions(
    bound: u32,
    parts: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<WeakComposition>,
) {
    let slots_left = parts - current.len();
    if slots_left == 0 {
        if remaining == 0 {
            out.push(WeakComposition::new(current.clone()));
        }
        return;
    }
    // the remaining slots can absorb at most bound * (slots_left - 1)
    let tail_capacity = u64::from(bound) * (slots_left as u64 - 1);
    let lo = u64::from(remaining).saturating_sub(tail_capacity) as u32;
    let hi = bound.min(remaining);
    for part in lo..=hi {
        current.push(part);
        fill_compositions(bound, parts, remaining - part, current, out);
        current.pop();
    }
}

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of positive parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }
}

/// Partitions of `total` fitting in a `max_len x max_part` box.
pub fn partitions_in_box(max_part: u32, max_len: usize, total: u32) -> Vec<Partition> {
    fn go(max_part: u32, slots: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            cur.push(p);
            go(p, slots - 1, remaining - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_part, max_len, total, &mut Vec::new(), &mut out);
    out
}

/// `C(r, d, i)` through the partition-multinomial formula: every partition
/// `lambda` inside the `d x r` box with `|lambda| = i` contributes
/// `d! / (m_1! ... m_r! (d - l(lambda))!)` compositions.
pub fn composition_count_via_partitions(bound: u32, parts: usize, total: u32) -> Result<u64> {
    ensure!(parts >= 1, InvalidParameter, "number of parts must be at least 1");
    let mut sum: u64 = 0;
    for lambda in partitions_in_box(bound, parts, total) {
        let mut blocks: Vec<usize> = (1..=bound).map(|k| lambda.multiplicity(k)).collect();
        blocks.push(parts - lambda.length());
        let term = multinomial(&blocks)?;
        sum = sum.checked_add(term).ok_or(Error::Overflow("C(r,d,i)"))?;
    }
    Ok(sum)
}

pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * u128::from(n - t) / u128::from(t + 1);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

/// Multinomial coefficient `(sum blocks)! / prod(block!)`.
pub fn multinomial(blocks: &[usize]) -> Result<u64> {
    let mut placed: u64 = 0;
    let mut acc: u64 = 1;
    for &b in blocks {
        placed += b as u64;
        acc = acc
            .checked_mul(binomial(placed, b as u64)?)
            .ok_or(Error::Overflow("multinomial coefficient"))?;
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> Result<u64> {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k).ok_or(Error::Overflow("factorial")))
}

/// A permutation of `[d]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    one_line: Vec<u32>,
}

impl Permutation {
    pub fn new(one_line: Vec<u32>) -> Result<Self> {
        let d = one_line.len();
        let mut seen = vec![false; d];
        for &v in &one_line {
            ensure!(
                v >= 1 && (v as usize) <= d && !seen[v as usize - 1],
                InvalidInput,
                "{one_line:?} is not a permutation of 1..{d}"
            );
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(d: usize) -> Self {
        Permutation { one_line: (1..=d as u32).collect() }
    }

    pub fn one_line(&self) -> &[u32] {
        &self.one_line
    }

    pub fn len(&self) -> usize {
        self.one_line.len()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    /// Positions `k` (1-indexed) with `p(k) > p(k+1)`.
    pub fn descent_set(&self) -> Vec<usize> {
        self.one_line
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn descents(&self) -> usize {
        self.one_line.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Index (1-indexed) `j` of the Eulerian class containing this
    /// permutation, i.e. `des + 1`.
    pub fn eulerian_class(&self) -> usize {
        self.descents() + 1
    }

    /// 0-indexed position of the value `v`.
    pub fn position_of(&self, v: u32) -> Option<usize> {
        self.one_line.iter().position(|&x| x == v)
    }

    /// Rearranges the slice into the next permutation in lexicographic
    /// order; returns `false` once the last one has been reached.
    fn advance(v: &mut [u32]) -> bool {
        if v.len() < 2 {
            return false;
        }
        let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
            return false;
        };
        let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, &self.one_line)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Permutation::new(v).map_err(serde::de::Error::custom)
    }
}

/// Every permutation of `[d]`, lexicographically.
pub fn all_permutations(d: usize) -> Vec<Permutation> {
    let mut cur: Vec<u32> = (1..=d as u32).collect();
    let mut out = vec![Permutation { one_line: cur.clone() }];
    while Permutation::advance(&mut cur) {
        out.push(Permutation { one_line: cur.clone() });
    }
    out
}

/// Permutations of `[d]` with exactly `j - 1` descents.
pub fn eulerian_set(d: usize, j: usize) -> Result<Vec<Permutation>> {
    ensure!(d >= 1, InvalidParameter, "d must be at least 1");
    ensure!((1..=d).contains(&j), InvalidParameter, "descent class {j} outside [1, {d}]");
    Ok(all_permutations(d)
        .into_iter()
        .filter(|p| p.descents() + 1 == j)
        .collect())
}

/// The Eulerian number `A(d, j)` (permutations of `[d]` with `j - 1`
/// descents) from the recurrence `A(n, j) = j A(n-1, j) + (n-j+1) A(n-1, j-1)`.
/// Out-of-range `j` (including `j = 0`) gives zero.
pub fn eulerian_number(d: usize, j: usize) -> Result<u64> {
    if d == 0 || j == 0 || j > d {
        return Ok(0);
    }
    let mut row: Vec<u64> = vec![0, 1];
    for n in 2..=d {
        let mut next = vec![0u64; n + 1];
        for k in 1..=n {
            let stay = if k < row.len() { row[k] } else { 0 };
            let a = (k as u64).checked_mul(stay);
            let b = ((n - k + 1) as u64).checked_mul(row[k - 1]);
            next[k] = a
                .zip(b)
                .and_then(|(a, b)| a.checked_add(b))
                .ok_or(Error::Overflow("Eulerian number"))?;
        }
        row = next;
    }
    Ok(row[j])
}

pub(crate) fn write_spaced(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
