//! Host polytopes, alcove recognition, coordinate changes and vertex bases.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::combinatorics::eulerian_number;
use crate::error::{ensure, Error, Result};
use crate::sorted::{decorate, is_sorted, multisets_from_points, DecoratedMatrix, LatticePoint};

/// Parameters of the dilated hypersimplex `r * Delta_{i,d}`: points of
/// `R^{d+1}` with coordinates in `[0, r]` summing to `i * r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HypersimplexSpec {
    dilation: u32,
    level: u32,
    dim: usize,
}

impl HypersimplexSpec {
    pub fn new(dilation: u32, level: u32, dim: usize) -> Result<Self> {
        ensure!(dim >= 1, InvalidParameter, "dimension d must be at least 1");
        ensure!(
            level >= 1 && level as usize <= dim,
            InvalidParameter,
            "level i = {level} must satisfy 1 <= i <= d = {dim}"
        );
        ensure!(dilation >= 1, InvalidParameter, "dilation r must be at least 1");
        Ok(HypersimplexSpec { dilation, level, dim })
    }

    /// The undilated hypersimplex `Delta_{i,d}`.
    pub fn hypersimplex(level: u32, dim: usize) -> Result<Self> {
        Self::new(1, level, dim)
    }

    /// The dilated standard simplex `r * Delta_{1,d}`.
    pub fn dilated_simplex(dilation: u32, dim: usize) -> Result<Self> {
        Self::new(dilation, 1, dim)
    }

    pub fn dilation(&self) -> u32 {
        self.dilation
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of coordinates, `d + 1`.
    pub fn ambient(&self) -> usize {
        self.dim + 1
    }

    pub fn coordinate_sum(&self) -> u32 {
        self.level * self.dilation
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        p.dim() == self.ambient()
            && p.sum() == self.coordinate_sum()
            && p.coords().iter().all(|&x| x <= self.dilation)
    }

    /// `r^d * A(d, i)`, the number of alcoves.
    pub fn alcove_count(&self) -> Result<u64> {
        let power = u64::from(self.dilation)
            .checked_pow(self.dim as u32)
            .ok_or(Error::Overflow("r^d"))?;
        power
            .checked_mul(eulerian_number(self.dim, self.level as usize)?)
            .ok_or(Error::Overflow("alcove count"))
    }

    pub fn polytope(&self) -> AlcovedPolytope {
        let bounds = (0..self.ambient())
            .map(|j| IntervalBound { start: j, end: j + 1, lower: 0, upper: i64::from(self.dilation) })
            .collect();
        AlcovedPolytope {
            ambient: self.ambient(),
            coordinate_sum: i64::from(self.coordinate_sum()),
            bounds,
        }
    }
}

impl fmt::Display for HypersimplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*Delta({},{})", self.dilation, self.level, self.dim)
    }
}

/// `lower <= x_{start+1} + ... + x_end <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalBound {
    pub start: usize,
    pub end: usize,
    pub lower: i64,
    pub upper: i64,
}

/// An alcoved polytope given by interval-sum bounds inside the hyperplane
/// `x_1 + ... + x_n = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlcovedPolytope {
    ambient: usize,
    coordinate_sum: i64,
    bounds: Vec<IntervalBound>,
}

impl AlcovedPolytope {
    pub fn new(ambient: usize, coordinate_sum: i64, bounds: Vec<IntervalBound>) -> Result<Self> {
        for b in &bounds {
            ensure!(
                b.start < b.end && b.end <= ambient,
                InvalidParameter,
                "interval ({}, {}] outside 0..{ambient}",
                b.start,
                b.end
            );
        }
        Ok(AlcovedPolytope { ambient, coordinate_sum, bounds })
    }

    /// Converts `b_ij <= z_i - z_j <= c_ij` (with `z_0 = 0`) in `R^{n-1}`
    /// to x-coordinates via `psi_k`, then translates by `shift * (1,...,1)`.
    /// Each entry of `z_bounds` is `(i, j, b_ij, c_ij)` with `0 <= i < j <= n-1`.
    pub fn from_z_representation(
        ambient: usize,
        z_bounds: &[(usize, usize, i64, i64)],
        k: i64,
        shift: i64,
    ) -> Result<Self> {
        let bounds = z_bounds
            .iter()
            .map(|&(i, j, b, c)| {
                ensure!(
                    i < j && j < ambient,
                    InvalidParameter,
                    "z-bound ({i}, {j}) outside 0 <= i < j <= {}",
                    ambient - 1
                );
                // z_j - z_i = x_{i+1} + ... + x_j
                let width = (j - i) as i64;
                Ok(IntervalBound {
                    start: i,
                    end: j,
                    lower: -c + shift * width,
                    upper: -b + shift * width,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient, k + shift * ambient as i64, bounds)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.coordinate_sum
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        if p.dim() != self.ambient || i64::from(p.sum()) != self.coordinate_sum {
            return false;
        }
        self.bounds.iter().all(|b| {
            let s: i64 = p.coords()[b.start..b.end].iter().map(|&x| i64::from(x)).sum();
            b.lower <= s && s <= b.upper
        })
    }
}

/// Why a point set fails to be an alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotAlcove {
    WrongCount { expected: usize, found: usize },
    WrongDimension(LatticePoint),
    OutsidePolytope(LatticePoint),
    Duplicate(LatticePoint),
    NotSorted,
}

impl NotAlcove {
    pub fn code(&self) -> &'static str {
        match self {
            NotAlcove::WrongCount { .. } => "wrong-count",
            NotAlcove::WrongDimension(_) => "wrong-dimension",
            NotAlcove::OutsidePolytope(_) => "outside-polytope",
            NotAlcove::Duplicate(_) => "duplicate-vertex",
            NotAlcove::NotSorted => "not-sorted",
        }
    }
}

impl fmt::Display for NotAlcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotAlcove::WrongCount { expected, found } => {
                write!(f, "{}: expected {expected} points, found {found}", self.code())
            }
            NotAlcove::WrongDimension(p)
            | NotAlcove::OutsidePolytope(p)
            | NotAlcove::Duplicate(p) => write!(f, "{}: {p}", self.code()),
            NotAlcove::NotSorted => write!(f, "{}: multiset collection is not sorted", self.code()),
        }
    }
}

impl std::error::Error for NotAlcove {}

/// Recognizes alcoves of an alcoved polytope with nonnegative coordinates:
/// `n` distinct points of the polytope whose multiset collection is sorted.
/// On success returns the points in sorted-row order.
pub fn check_alcove(
    points: &[LatticePoint],
    polytope: &AlcovedPolytope,
) -> std::result::Result<Vec<LatticePoint>, NotAlcove> {
    let n = polytope.ambient();
    if points.len() != n {
        return Err(NotAlcove::WrongCount { expected: n, found: points.len() });
    }
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(NotAlcove::WrongDimension(p.clone()));
    }
    if let Some(p) = points.iter().find(|p| !polytope.contains(p)) {
        return Err(NotAlcove::OutsidePolytope(p.clone()));
    }
    let mut seen: Vec<&LatticePoint> = points.iter().collect();
    seen.sort();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(NotAlcove::Duplicate(w[0].clone()));
    }
    let collection = multisets_from_points(points).map_err(|_| NotAlcove::NotSorted)?;
    let order = is_sorted(&collection).ok_or(NotAlcove::NotSorted)?;
    Ok(order.into_iter().map(|k| points[k].clone()).collect())
}

pub fn is_alcove(points: &[LatticePoint], spec: &HypersimplexSpec) -> bool {
    check_alcove(points, &spec.polytope()).is_ok()
}

/// An alcove of `r * Delta_{i,d}`, stored as its `d + 1` vertices in
/// sorted-row order (the order of the rows of its decorated matrix, which
/// is lexicographically decreasing).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alcove {
    spec: HypersimplexSpec,
    vertices: Vec<LatticePoint>,
}

impl Alcove {
    pub fn new(points: Vec<LatticePoint>, spec: HypersimplexSpec) -> Result<Self> {
        let vertices = check_alcove(&points, &spec.polytope())
            .map_err(|why| Error::InvalidInput(format!("not an alcove of {spec}: {why}")))?;
        Ok(Alcove { spec, vertices })
    }

    /// Builds an alcove from vertices already known to be valid and in
    /// sorted-row order.
    pub(crate) fn from_sorted_rows(vertices: Vec<LatticePoint>, spec: HypersimplexSpec) -> Self {
        debug_assert!(check_alcove(&vertices, &spec.polytope()).as_ref() == Ok(&vertices));
        Alcove { spec, vertices }
    }

    pub fn spec(&self) -> &HypersimplexSpec {
        &self.spec
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn decorated(&self) -> DecoratedMatrix {
        let c = multisets_from_points(&self.vertices).expect("alcove vertices are consistent");
        decorate(&c).expect("alcove rows are sorted and distinct")
    }

    /// Column of the unique mark under each of the first `d` rows.
    pub fn mark_columns(&self) -> Vec<usize> {
        self.decorated()
            .mark_columns()
            .expect("alcoves carry exactly one mark per row boundary")
    }

    /// Shares exactly `d` vertices with `other`.
    pub fn is_adjacent(&self, other: &Alcove) -> bool {
        let shared = self.vertices.iter().filter(|v| other.vertices.contains(v)).count();
        shared + 1 == self.vertices.len()
    }
}

impl Serialize for Alcove {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.vertices.serialize(s)
    }
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.vertices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Prefix sums `(x_1, x_1 + x_2, ..., x_1 + ... + x_{n-1})`.
pub fn phi(x: &[i64]) -> Vec<i64> {
    x.iter()
        .take(x.len().saturating_sub(1))
        .scan(0, |acc, &v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

/// Consecutive differences closed by `k - z_{n-1}`; inverse of [`phi`] on
/// the hyperplane of coordinate sum `k`.
pub fn psi(z: &[i64], k: i64) -> Vec<i64> {
    let mut out = Vec::with_capacity(z.len() + 1);
    let mut prev = 0;
    for &v in z {
        out.push(v - prev);
        prev = v;
    }
    out.push(k - prev);
    out
}

/// A basis of `R^n` made of the `n` vertices of an alcove, with the exact
/// inverse change-of-basis matrix.
#[derive(Debug, Clone)]
pub struct VertexBasis {
    vertices: Vec<LatticePoint>,
    // inverse[k][c]: coefficient of vertex k contributed by coordinate c
    inverse: Vec<Vec<Ratio<i64>>>,
}

impl VertexBasis {
    pub fn new(vertices: Vec<LatticePoint>) -> Result<Self> {
        let n = vertices.len();
        ensure!(n >= 1, InvalidInput, "empty vertex basis");
        ensure!(
            vertices.iter().all(|v| v.dim() == n),
            InvalidInput,
            "a vertex basis of R^{n} needs {n} vertices of dimension {n}"
        );
        // columns of the coefficient matrix are the vertices
        let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|c| (0..n).map(|k| Ratio::from_integer(i64::from(vertices[k].coords()[c]))).collect())
            .collect();
        let mut inv: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|r| (0..n).map(|c| Ratio::from_integer(i64::from(r == c))).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r][col] != Ratio::from_integer(0))
                .ok_or_else(|| Error::InvalidInput("vertices are affinely dependent".into()))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col];
            for c in 0..n {
                a[col][c] /= p;
                inv[col][c] /= p;
            }
            for r in 0..n {
                if r != col && a[r][col] != Ratio::from_integer(0) {
                    let f = a[r][col];
                    for c in 0..n {
                        let (ac, ic) = (a[col][c], inv[col][c]);
                        a[r][c] -= f * ac;
                        inv[r][c] -= f * ic;
                    }
                }
            }
        }
        Ok(VertexBasis { vertices, inverse: inv })
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    /// Nonnegative integer coefficients `l` with `sum_k l_k v_k = point`.
    pub fn coordinates(&self, point: &LatticePoint) -> Result<LatticePoint> {
        let n = self.vertices.len();
        ensure!(point.dim() == n, InvalidInput, "point {point} has wrong dimension");
        let mut out = Vec::with_capacity(n);
        for row in &self.inverse {
            let l: Ratio<i64> = row
                .iter()
                .zip(point.coords())
                .map(|(a, &x)| *a * i64::from(x))
                .sum();
            if !l.is_integer() || *l.numer() < 0 {
                return Err(Error::NotRepresentable(format!(
                    "{point} has coefficient {l} on the basis"
                )));
            }
            out.push(*l.numer() as u32);
        }
        Ok(LatticePoint::new(out))
    }

    /// `sum_k coeffs_k v_k`.
    pub fn combine(&self, coeffs: &LatticePoint) -> LatticePoint {
        let n = self.vertices.len();
        let mut out = vec![0u32; n];
        for (v, &l) in self.vertices.iter().zip(coeffs.coords()) {
            for (o, &x) in out.iter_mut().zip(v.coords()) {
                *o += l * x;
            }
        }
        LatticePoint::new(out)
    }
}

/// Rewrites `point` in the vertex basis `basis`.
pub fn vertex_basis_change(point: &LatticePoint, basis: &[LatticePoint]) -> Result<LatticePoint> {
    VertexBasis::new(basis.to_vec())?.coordinates(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[u32]]) -> Vec<LatticePoint> {
        v.iter().map(|p| LatticePoint::new(p.to_vec())).collect()
    }

    fn example_polytope() -> AlcovedPolytope {
        AlcovedPolytope::from_z_representation(3, &[(0, 1, -4, -1), (0, 2, -3, -1), (1, 2, -2, 1)], 2, 1)
            .unwrap()
    }

    #[test]
    fn recognizes_alcove_of_sum_five_polytope() {
        let p = example_polytope();
        assert_eq!(p.coordinate_sum(), 5);
        let a = pts(&[&[3, 2, 0], &[4, 1, 0], &[3, 1, 1]]);
        let ordered = check_alcove(&a, &p).unwrap();
        assert_eq!(ordered, pts(&[&[4, 1, 0], &[3, 2, 0], &[3, 1, 1]]));
        let b = pts(&[&[2, 1, 2], &[3, 0, 2], &[2, 2, 1]]);
        assert_eq!(check_alcove(&b, &p), Err(NotAlcove::NotSorted));
    }

    #[test]
    fn simplex_is_its_own_alcove() {
        for d in 1..6 {
            let spec = HypersimplexSpec::dilated_simplex(1, d).unwrap();
            let verts: Vec<_> = (0..=d)
                .map(|k| {
                    let mut v = vec![0; d + 1];
                    v[k] = 1;
                    LatticePoint::new(v)
                })
                .collect();
            assert!(is_alcove(&verts, &spec));
        }
    }

    #[test]
    fn diagnostics() {
        let spec = HypersimplexSpec::new(2, 1, 2).unwrap();
        let p = spec.polytope();
        let two = pts(&[&[2, 0, 0], &[1, 1, 0]]);
        assert_eq!(check_alcove(&two, &p).unwrap_err().code(), "wrong-count");
        let outside = pts(&[&[2, 0, 0], &[1, 1, 0], &[0, 0, 3]]);
        assert_eq!(check_alcove(&outside, &p).unwrap_err().code(), "outside-polytope");
        let dup = pts(&[&[2, 0, 0], &[1, 1, 0], &[1, 1, 0]]);
        assert_eq!(check_alcove(&dup, &p).unwrap_err().code(), "duplicate-vertex");
        let flat = pts(&[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(check_alcove(&flat, &p).unwrap_err().code(), "wrong-dimension");
        assert!(is_alcove(&pts(&[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]), &spec));
    }

    #[test]
    fn spec_validation() {
        assert!(HypersimplexSpec::new(1, 0, 3).is_err());
        assert!(HypersimplexSpec::new(1, 4, 3).is_err());
        assert!(HypersimplexSpec::new(0, 1, 3).is_err());
        assert!(HypersimplexSpec::new(1, 1, 0).is_err());
        assert_eq!(HypersimplexSpec::new(2, 2, 3).unwrap().alcove_count().unwrap(), 32);
    }

    #[test]
    fn coordinate_maps() {
        assert_eq!(phi(&[1, 0, 0, 0]), vec![1, 1, 1]);
        assert_eq!(psi(&[5, 7], 2), vec![5, 2, -5]);
        let x = vec![3, 0, 4, 1];
        assert_eq!(psi(&phi(&x), 8), x);
    }

    #[test]
    fn basis_change_of_dilated_hypersimplex_example() {
        let basis = pts(&[
            &[1, 1, 0, 0, 0, 0],
            &[1, 0, 1, 0, 0, 0],
            &[1, 0, 0, 1, 0, 0],
            &[0, 1, 0, 1, 0, 0],
            &[0, 1, 0, 0, 1, 0],
            &[0, 1, 0, 0, 0, 1],
        ]);
        let b = VertexBasis::new(basis.clone()).unwrap();
        let p = LatticePoint::new(vec![2, 3, 0, 1, 2, 0]);
        let coords = b.coordinates(&p).unwrap();
        assert_eq!(coords.coords(), &[1, 0, 1, 0, 2, 0]);
        assert_eq!(b.combine(&coords), p);
        for (k, v) in basis.iter().enumerate() {
            let scaled = LatticePoint::new(v.coords().iter().map(|x| 3 * x).collect());
            let mut e = [0; 6];
            e[k] = 3;
            assert_eq!(b.coordinates(&scaled).unwrap().coords(), &e[..]);
        }
        let outside = LatticePoint::new(vec![0, 0, 2, 0, 0, 0]);
        assert!(matches!(b.coordinates(&outside), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn singular_basis_is_rejected() {
        let basis = pts(&[&[1, 0], &[1, 0]]);
        assert!(VertexBasis::new(basis).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn psi_inverts_phi(x in proptest::collection::vec(0i64..20, 1..8)) {
            let k: i64 = x.iter().sum();
            prop_assert_eq!(psi(&phi(&x), k), x);
        }
    }
}
