//! Labelings of alcoves by words, compositions and permutations, together
//! with their inverses, the duplication maps and the boundary word sets.

use serde::Serialize;

use crate::alcove::{Alcove, HypersimplexSpec, VertexBasis};
use crate::combinatorics::{eulerian_set, Permutation, WeakComposition, Word};
use crate::error::{ensure, Error, Result};
use crate::sorted::{fill_from_marks, LatticePoint};

/// Reads the mark columns of an alcove of `r * Delta_{1,d}` from the top row
/// boundary to the bottom one.
pub fn word1(alcove: &Alcove) -> Result<Word> {
    let spec = alcove.spec();
    ensure!(
        spec.level() == 1,
        Precondition,
        "word1 is defined on alcoves of a dilated standard simplex, got {spec}"
    );
    let letters = alcove.mark_columns().into_iter().map(|c| c as u32).collect();
    Word::new(letters, spec.dilation())
}

/// The alcove of `r * Delta_{1,d}` whose decorated matrix has its marks in
/// the columns given by `w`.
pub fn word1_inverse(w: &Word) -> Result<Alcove> {
    ensure!(!w.is_empty(), InvalidParameter, "words must have length d >= 1");
    let d = w.len();
    let spec = HypersimplexSpec::dilated_simplex(w.alphabet(), d)?;
    let marks: Vec<usize> = w.letters().iter().map(|&l| l as usize).collect();
    let fill = fill_from_marks(d + 1, w.alphabet() as usize, &marks)?;
    Ok(Alcove::from_sorted_rows(fill.matrix.points(d + 1), spec))
}

/// Coordinatewise minimum of a set of points.
pub fn comp(points: &[LatticePoint]) -> Result<WeakComposition> {
    let first = points
        .first()
        .ok_or_else(|| Error::InvalidInput("comp of an empty point set".into()))?;
    ensure!(
        points.iter().all(|p| p.dim() == first.dim()),
        InconsistentInput,
        "points must share a dimension"
    );
    let parts = (0..first.dim())
        .map(|k| points.iter().map(|p| p.coords()[k]).min().unwrap())
        .collect();
    Ok(WeakComposition::new(parts))
}

/// Marks of an alcove as `(row boundary, column)` pairs in reading order:
/// columns left to right, top to bottom within a column.
fn marks_in_reading_order(alcove: &Alcove) -> Vec<(usize, usize)> {
    let mut marks: Vec<(usize, usize)> = alcove
        .mark_columns()
        .into_iter()
        .enumerate()
        .map(|(a, b)| (a + 1, b))
        .collect();
    marks.sort_by_key(|&(a, b)| (b, a));
    marks
}

/// `comp` computed from the decorated matrix alone. With `b_k` the column
/// of the `k`-th mark in reading order and `m` the number of columns:
/// `c_1 = b_1 - 1`, `c_{d+1} = m - b_d`, and in between
/// `c_k = b_k - b_{k-1} - 1` when the `k`-th mark sits higher than the
/// previous one, `b_k - b_{k-1}` otherwise.
pub fn comp_from_marks(alcove: &Alcove) -> WeakComposition {
    let marks = marks_in_reading_order(alcove);
    let m = alcove.spec().coordinate_sum() as usize;
    let mut parts = Vec::with_capacity(marks.len() + 1);
    parts.push(marks[0].1 - 1);
    for w in marks.windows(2) {
        let ((prev_row, prev_col), (row, col)) = (w[0], w[1]);
        let higher = usize::from(row < prev_row);
        parts.push(col - prev_col - higher);
    }
    parts.push(m - marks[marks.len() - 1].1);
    WeakComposition::new(parts.into_iter().map(|p| p as u32).collect())
}

/// Row boundaries of the marks, listed in reading order.
pub fn sigma_from_marks(alcove: &Alcove) -> Permutation {
    let one_line = marks_in_reading_order(alcove)
        .into_iter()
        .map(|(a, _)| a as u32)
        .collect();
    Permutation::new(one_line).expect("one mark per row boundary gives a permutation")
}

/// The `(composition, permutation)` label of an alcove.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AlcoveLabelPair {
    pub comp: WeakComposition,
    pub perm: Permutation,
}

impl AlcoveLabelPair {
    /// The Eulerian class `j = des(perm) + 1`.
    pub fn class(&self) -> usize {
        self.perm.eulerian_class()
    }
}

/// `(comp, sigma)` of an alcove of `r * Delta_{i,d}`.
pub fn pair_i(alcove: &Alcove) -> AlcoveLabelPair {
    AlcoveLabelPair {
        comp: comp(alcove.vertices()).expect("alcoves are nonempty"),
        perm: sigma_from_marks(alcove),
    }
}

/// Translates the hypersimplex alcove of `perm` by `comp`.
pub fn alc_i(comp: &WeakComposition, perm: &Permutation, spec: &HypersimplexSpec) -> Result<Alcove> {
    let d = spec.dim();
    let r = spec.dilation();
    ensure!(perm.len() == d, InvalidLabel, "permutation {perm} is not in S_{d}");
    ensure!(comp.len() == d + 1, InvalidLabel, "composition {comp} must have {} parts", d + 1);
    ensure!(
        comp.parts().iter().all(|&c| c < r),
        InvalidLabel,
        "composition {comp} has a part larger than r - 1 = {}",
        r - 1
    );
    let j = perm.eulerian_class() as u32;
    ensure!(
        comp.total() + j == spec.coordinate_sum(),
        InvalidLabel,
        "composition total {} plus class {j} must equal i*r = {}",
        comp.total(),
        spec.coordinate_sum()
    );
    let base = hypersimplex_alcove(perm);
    let vertices = base
        .vertices()
        .iter()
        .map(|v| {
            let coords = v.coords().iter().zip(comp.parts()).map(|(x, c)| x + c).collect();
            LatticePoint::new(coords)
        })
        .collect();
    Ok(Alcove::from_sorted_rows(vertices, *spec))
}

/// `sigma` of an alcove of the undilated hypersimplex `Delta_{i,d}`.
pub fn sigma_i(alcove: &Alcove) -> Result<Permutation> {
    ensure!(
        alcove.spec().dilation() == 1,
        Precondition,
        "sigma_i is defined on alcoves of Delta_(i,d), got {}",
        alcove.spec()
    );
    Ok(sigma_from_marks(alcove))
}

/// The alcove of `Delta_{j,d}` (`j = des + 1`) labeled by `perm`: marks go
/// under the rows listed by the one-line notation, moving one column to the
/// right at every descent.
pub fn hypersimplex_alcove(perm: &Permutation) -> Alcove {
    let d = perm.len();
    let j = perm.eulerian_class();
    let mut marks = vec![0usize; d];
    let mut column = 1;
    for (k, &row) in perm.one_line().iter().enumerate() {
        if k > 0 && perm.one_line()[k - 1] > row {
            column += 1;
        }
        marks[row as usize - 1] = column;
    }
    let fill = fill_from_marks(d + 1, j, &marks).expect("marks are in range");
    let spec = HypersimplexSpec::hypersimplex(j as u32, d).expect("class is in [1, d]");
    Alcove::from_sorted_rows(fill.matrix.points(d + 1), spec)
}

/// The `(word, permutation)` label of an alcove of `r * Delta_{i,d}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AlcoveLabelWordPerm {
    pub word: Word,
    pub perm: Permutation,
}

/// Labels alcoves of `r * Delta_{i,d}` by `(word, permutation)`: the
/// permutation names the alcove `B` of `Delta_{i,d}` with `A` inside `rB`,
/// and the word is `word1` of `A` written in the vertex basis of `B`.
#[derive(Debug, Clone)]
pub struct WordsLabeler {
    spec: HypersimplexSpec,
    cells: Vec<(Permutation, VertexBasis)>,
}

impl WordsLabeler {
    pub fn new(spec: HypersimplexSpec) -> Result<Self> {
        let cells = eulerian_set(spec.dim(), spec.level() as usize)?
            .into_iter()
            .map(|tau| {
                let basis = VertexBasis::new(hypersimplex_alcove(&tau).vertices().to_vec())?;
                Ok((tau, basis))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WordsLabeler { spec, cells })
    }

    pub fn spec(&self) -> &HypersimplexSpec {
        &self.spec
    }

    pub fn label(&self, alcove: &Alcove) -> Result<AlcoveLabelWordPerm> {
        ensure!(
            alcove.spec() == &self.spec,
            Precondition,
            "alcove of {} given to a labeler for {}",
            alcove.spec(),
            self.spec
        );
        let simplex = HypersimplexSpec::dilated_simplex(self.spec.dilation(), self.spec.dim())?;
        for (tau, basis) in &self.cells {
            let Ok(coords) = alcove
                .vertices()
                .iter()
                .map(|v| basis.coordinates(v))
                .collect::<Result<Vec<_>>>()
            else {
                continue;
            };
            let inner = Alcove::new(coords, simplex)?;
            return Ok(AlcoveLabelWordPerm { word: word1(&inner)?, perm: tau.clone() });
        }
        Err(Error::Invariant(format!("no cell of {} contains the alcove {alcove}", self.spec)))
    }

    pub fn alcove(&self, word: &Word, perm: &Permutation) -> Result<Alcove> {
        ensure!(
            word.alphabet() == self.spec.dilation() && word.len() == self.spec.dim(),
            InvalidLabel,
            "word {word} is not in [{}]^{}",
            self.spec.dilation(),
            self.spec.dim()
        );
        let (_, basis) = self
            .cells
            .iter()
            .find(|(tau, _)| tau == perm)
            .ok_or_else(|| {
                Error::InvalidLabel(format!(
                    "{perm} does not have {} descents",
                    self.spec.level() - 1
                ))
            })?;
        let inner = word1_inverse(word)?;
        let mut vertices: Vec<LatticePoint> =
            inner.vertices().iter().map(|v| basis.combine(v)).collect();
        // sorted-row order is lexicographically decreasing
        vertices.sort_by(|a, b| b.cmp(a));
        Ok(Alcove::from_sorted_rows(vertices, self.spec))
    }
}

pub fn words_i(alcove: &Alcove) -> Result<AlcoveLabelWordPerm> {
    WordsLabeler::new(*alcove.spec())?.label(alcove)
}

pub fn words_i_inverse(word: &Word, perm: &Permutation, spec: &HypersimplexSpec) -> Result<Alcove> {
    WordsLabeler::new(*spec)?.alcove(word, perm)
}

/// Positions (0-indexed) of a word sorted by `(letter, position)`, the order
/// in which the marks of its decorated matrix are read.
fn reading_order(letters: &[u32]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..letters.len()).collect();
    order.sort_by_key(|&k| (letters[k], k));
    order
}

/// The `j`-th duplication map: doubles the `j`-th letter of `v` in reading
/// order, inserting the copy immediately to its right.
pub fn duplicate(j: usize, v: &Word) -> Result<Word> {
    ensure!(
        (1..=v.len()).contains(&j),
        InvalidParameter,
        "duplication index {j} outside [1, {}]",
        v.len()
    );
    let k = reading_order(v.letters())[j - 1];
    let mut letters = v.letters().to_vec();
    letters.insert(k + 1, letters[k]);
    Word::new(letters, v.alphabet())
}

/// The words of boundary alcoves of `r * Delta_{1,d}` meeting the facet
/// `x_j = 0`, in lexicographic order.
pub fn boundary_words(r: u32, d: usize, j: usize) -> Result<Vec<Word>> {
    ensure!(r >= 1 && d >= 1, InvalidParameter, "need r, d >= 1");
    ensure!((1..=d + 1).contains(&j), InvalidParameter, "facet index {j} outside [1, {}]", d + 1);
    let mut out: Vec<Word> = if j == 1 || j == d + 1 {
        crate::combinatorics::all_words(r, d)
            .filter(|w| is_boundary_word(w, j))
            .collect()
    } else {
        crate::combinatorics::all_words(r, d - 1)
            .map(|v| duplicate(j - 1, &v))
            .collect::<Result<_>>()?
    };
    out.sort();
    Ok(out)
}

pub fn is_boundary_word(w: &Word, j: usize) -> bool {
    let d = w.len();
    let l = w.letters();
    if d == 0 || j == 0 || j > d + 1 {
        return false;
    }
    if j == 1 {
        return l[0] == 1;
    }
    if j == d + 1 {
        return l[d - 1] == w.alphabet();
    }
    let order = reading_order(l);
    let (k, next) = (order[j - 2], order[j - 1]);
    next == k + 1 && l[k] == l[next]
}

/// Word of the facet alcove `A ∩ {x_j = 0}` of a boundary alcove, as an
/// alcove of `r * Delta_{1,d-1}`.
pub fn facet_word(w: &Word, j: usize) -> Result<Word> {
    ensure!(
        is_boundary_word(w, j),
        InvalidInput,
        "{w} is not the word of an alcove meeting x_{j} = 0 in a facet"
    );
    let d = w.len();
    let mut letters = w.letters().to_vec();
    let drop = if j == 1 {
        0
    } else if j == d + 1 {
        d - 1
    } else {
        reading_order(&letters)[j - 1]
    };
    letters.remove(drop);
    Word::new(letters, w.alphabet())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::all_words;

    fn pts(v: &[&[u32]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint::new(p.to_vec())).collect()
    }

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn word(v: &[u32], r: u32) -> Word {
        Word::new(v.to_vec(), r).unwrap()
    }

    fn word_example() -> Alcove {
        let spec = HypersimplexSpec::dilated_simplex(6, 4).unwrap();
        let a = pts(&[
            &[3, 1, 1, 0, 1],
            &[2, 2, 1, 0, 1],
            &[2, 2, 0, 1, 1],
            &[2, 1, 1, 1, 1],
            &[2, 1, 1, 0, 2],
        ]);
        Alcove::new(a, spec).unwrap()
    }

    fn dilated_hypersimplex_example() -> Alcove {
        let spec = HypersimplexSpec::new(4, 2, 5).unwrap();
        let a = pts(&[
            &[2, 3, 0, 1, 2, 0],
            &[2, 2, 1, 1, 2, 0],
            &[2, 2, 0, 2, 2, 0],
            &[2, 2, 0, 2, 1, 1],
            &[1, 3, 0, 2, 1, 1],
            &[1, 3, 0, 1, 2, 1],
        ]);
        Alcove::new(a, spec).unwrap()
    }

    #[test]
    fn word_example_labels() {
        let a = word_example();
        assert_eq!(word1(&a).unwrap(), word(&[3, 5, 4, 5], 6));
        assert_eq!(comp(a.vertices()).unwrap().parts(), &[2, 1, 0, 0, 1]);
        assert_eq!(comp_from_marks(&a).parts(), &[2, 1, 0, 0, 1]);
        assert_eq!(sigma_from_marks(&a), perm(&[1, 3, 2, 4]));
        assert_eq!(word1_inverse(&word(&[3, 5, 4, 5], 6)).unwrap(), a);
    }

    #[test]
    fn trivial_dilation_one() {
        let a = word1_inverse(&word(&[1, 1, 1], 1)).unwrap();
        assert_eq!(word1(&a).unwrap(), word(&[1, 1, 1], 1));
        assert_eq!(sigma_from_marks(&a), Permutation::identity(3));
    }

    #[test]
    fn word1_requires_standard_simplex() {
        let a = hypersimplex_alcove(&perm(&[1, 3, 2]));
        assert!(matches!(word1(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn comp_of_single_point_and_empty_set() {
        let p = pts(&[&[4, 0, 2]]);
        assert_eq!(comp(&p).unwrap().parts(), &[4, 0, 2]);
        assert!(matches!(comp(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn hypersimplex_example() {
        let spec = HypersimplexSpec::hypersimplex(3, 6).unwrap();
        let a = pts(&[
            &[1, 0, 1, 0, 1, 0, 0],
            &[0, 1, 1, 0, 1, 0, 0],
            &[0, 1, 0, 1, 1, 0, 0],
            &[0, 1, 0, 1, 0, 1, 0],
            &[0, 0, 1, 1, 0, 1, 0],
            &[0, 0, 1, 1, 0, 0, 1],
            &[0, 0, 1, 0, 1, 0, 1],
        ]);
        let a = Alcove::new(a, spec).unwrap();
        let s = perm(&[1, 4, 2, 6, 3, 5]);
        assert_eq!(sigma_i(&a).unwrap(), s);
        assert_eq!(hypersimplex_alcove(&s), a);
        assert_eq!(hypersimplex_alcove(&Permutation::identity(4)).vertices().len(), 5);
    }

    #[test]
    fn alc1_example_matrix() {
        let s = perm(&[1, 4, 2, 6, 3, 5]);
        let c = WeakComposition::new(vec![1, 0, 2, 0, 0, 1, 0]);
        let spec = HypersimplexSpec::dilated_simplex(7, 6).unwrap();
        let a = alc_i(&c, &s, &spec).unwrap();
        let grid = a.decorated().grid().to_vec();
        let expected: Vec<Vec<u32>> = vec![
            vec![1, 1, 3, 3, 3, 5, 6],
            vec![1, 2, 3, 3, 3, 5, 6],
            vec![1, 2, 3, 3, 4, 5, 6],
            vec![1, 2, 3, 3, 4, 6, 6],
            vec![1, 3, 3, 3, 4, 6, 6],
            vec![1, 3, 3, 3, 4, 6, 7],
            vec![1, 3, 3, 3, 5, 6, 7],
        ];
        assert_eq!(grid, expected);
        assert_eq!(pair_i(&a), AlcoveLabelPair { comp: c, perm: s });
    }

    #[test]
    fn dilated_hypersimplex_labels() {
        let a = dilated_hypersimplex_example();
        let pair = pair_i(&a);
        assert_eq!(pair.comp.parts(), &[1, 2, 0, 1, 1, 0]);
        assert_eq!(pair.perm, perm(&[4, 1, 2, 5, 3]));
        assert_eq!(comp_from_marks(&a), pair.comp);
        let label = words_i(&a).unwrap();
        assert_eq!(label.word, word(&[1, 1, 4, 2, 2], 4));
        assert_eq!(label.perm, perm(&[3, 1, 2, 4, 5]));
        assert_eq!(words_i_inverse(&label.word, &label.perm, a.spec()).unwrap(), a);
        assert_eq!(alc_i(&pair.comp, &pair.perm, a.spec()).unwrap(), a);
    }

    #[test]
    fn alc_i_rejects_bad_labels() {
        let spec = HypersimplexSpec::dilated_simplex(2, 2).unwrap();
        let id = Permutation::identity(2);
        let too_big = WeakComposition::new(vec![2, 0, 0]);
        assert!(matches!(alc_i(&too_big, &id, &spec), Err(Error::InvalidLabel(_))));
        let wrong_total = WeakComposition::new(vec![1, 1, 0]);
        assert!(matches!(alc_i(&wrong_total, &id, &spec), Err(Error::InvalidLabel(_))));
        let ok = WeakComposition::new(vec![0, 1, 0]);
        assert!(alc_i(&ok, &id, &spec).is_ok());
    }

    #[test]
    fn words_i_on_standard_simplex_is_word1() {
        let spec = HypersimplexSpec::dilated_simplex(3, 3).unwrap();
        let labeler = WordsLabeler::new(spec).unwrap();
        for w in all_words(3, 3) {
            let a = word1_inverse(&w).unwrap();
            let label = labeler.label(&a).unwrap();
            assert_eq!(label.word, w);
            assert_eq!(label.perm, Permutation::identity(3));
        }
    }

    #[test]
    fn duplication_examples() {
        let v = word(&[3, 2, 5, 4, 2, 1, 3], 5);
        assert_eq!(duplicate(3, &v).unwrap(), word(&[3, 2, 5, 4, 2, 2, 1, 3], 5));
        assert_eq!(duplicate(1, &word(&[4], 4)).unwrap(), word(&[4, 4], 4));
        let w = word(&[2, 4, 5, 6, 1], 6);
        let dup = duplicate(2, &w).unwrap();
        assert_eq!(dup, word(&[2, 2, 4, 5, 6, 1], 6));
        assert_eq!(facet_word(&dup, 3).unwrap(), w);
        assert!(duplicate(0, &v).is_err());
        assert!(duplicate(8, &v).is_err());
    }

    #[test]
    fn boundary_sets_of_g33() {
        let first = boundary_words(3, 3, 1).unwrap();
        assert_eq!(first.len(), 9);
        assert!(first.iter().all(|w| w.letters()[0] == 1));
        let second = boundary_words(3, 3, 2).unwrap();
        let expected: Vec<_> = all_words(3, 2).map(|v| duplicate(1, &v).unwrap()).collect();
        assert_eq!(second.len(), 9);
        assert!(expected.iter().all(|w| second.contains(w)));
        let last = boundary_words(3, 3, 4).unwrap();
        assert!(last.iter().all(|w| w.letters()[2] == 3));
        assert!(boundary_words(3, 3, 5).is_err());
        assert!(boundary_words(3, 3, 0).is_err());
    }

    #[test]
    fn facet_word_edges() {
        let w = word(&[1, 3, 2], 3);
        assert_eq!(facet_word(&w, 1).unwrap(), word(&[3, 2], 3));
        assert!(facet_word(&word(&[2, 3, 2], 3), 1).is_err());
        assert_eq!(facet_word(&word(&[2, 1, 3], 3), 4).unwrap(), word(&[2, 1], 3));
    }

    #[test]
    fn facet_word_inverts_duplication() {
        for r in 1..=3 {
            for d in 2..=4 {
                for v in all_words(r, d - 1) {
                    for j in 2..=d {
                        let w = duplicate(j - 1, &v).unwrap();
                        assert!(is_boundary_word(&w, j));
                        assert_eq!(facet_word(&w, j).unwrap(), v);
                    }
                }
            }
        }
    }
}
