//! Code parameters and their materialization: the evaluation grid
//! `X = A_1 × … × A_n`, the monomial basis of the message space and the
//! generator matrix obtained by evaluating that basis on the grid.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::linalg::Matrix;

/// Validated parameters of a code.
///
/// Subsets are kept sorted by size (stable on ties) and each subset by
/// element rank. Indices into `subsets`, `deltas`, and directions all refer
/// to this sorted order; [`CodeSpec::permutation`] maps them back to the
/// order the caller supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    field: FiniteField,
    subsets: Vec<Vec<FieldElement>>,
    deltas: Vec<u32>,
    degree_bound: u32,
    permutation: Vec<usize>,
    length: u64,
}

impl CodeSpec {
    pub fn new(
        field: FiniteField,
        subsets: Vec<Vec<FieldElement>>,
        deltas: Vec<i64>,
        degree_bound: i64,
    ) -> Result<Self> {
        if subsets.is_empty() {
            return Err(Error::NoSubsets);
        }
        if deltas.len() != subsets.len() {
            return Err(Error::DeltaCount {
                expected: subsets.len(),
                got: deltas.len(),
            });
        }
        let mut cleaned = Vec::with_capacity(subsets.len());
        for (index, mut subset) in subsets.into_iter().enumerate() {
            if let Some(bad) = subset.iter().find(|&&a| !field.contains(a)) {
                return Err(Error::NotInField {
                    rank: bad.rank() as u64,
                    order: field.order(),
                });
            }
            subset.sort_unstable();
            if let Some(w) = subset.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateElement {
                    index,
                    rank: w[0].rank(),
                });
            }
            if subset.len() < 2 {
                return Err(Error::SubsetTooSmall {
                    index,
                    size: subset.len(),
                });
            }
            cleaned.push(subset);
        }
        for (index, (&delta, subset)) in deltas.iter().zip(&cleaned).enumerate() {
            if delta < 2 {
                return Err(Error::DeltaTooSmall { index, delta });
            }
            let r = subset.len() as i64 - delta + 1;
            if r < 1 {
                return Err(Error::LocalityTooSmall { index, r });
            }
        }
        let mut permutation: Vec<usize> = (0..cleaned.len()).collect();
        permutation.sort_by_key(|&i| cleaned[i].len());
        let subsets: Vec<_> = permutation.iter().map(|&i| cleaned[i].clone()).collect();
        let deltas: Vec<u32> = permutation.iter().map(|&i| deltas[i] as u32).collect();

        let max_degree: u64 = subsets
            .iter()
            .zip(&deltas)
            .map(|(s, &delta)| (s.len() as u64 + 1 - delta as u64) - 1)
            .sum();
        if degree_bound < 0 || degree_bound as u64 > max_degree {
            return Err(Error::DegreeOutOfRange {
                d: degree_bound,
                max: max_degree,
            });
        }
        let length = subsets
            .iter()
            .try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64))
            .ok_or(Error::LengthOverflow)?;
        Ok(CodeSpec {
            field,
            subsets,
            deltas,
            degree_bound: degree_bound as u32,
            permutation,
            length,
        })
    }

    /// Every `A_i` is the whole field.
    pub fn full_space(field: FiniteField, deltas: Vec<i64>, degree_bound: i64) -> Result<Self> {
        let all: Vec<FieldElement> = field.elements().collect();
        let subsets = vec![all; deltas.len()];
        CodeSpec::new(field, subsets, deltas, degree_bound)
    }

    /// Same grid and deltas, different degree bound.
    pub fn with_degree_bound(&self, degree_bound: i64) -> Result<Self> {
        let max = self.max_degree_bound();
        if degree_bound < 0 || degree_bound as u64 > max {
            return Err(Error::DegreeOutOfRange { d: degree_bound, max });
        }
        Ok(CodeSpec {
            degree_bound: degree_bound as u32,
            ..self.clone()
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn subsets(&self) -> &[Vec<FieldElement>] {
        &self.subsets
    }

    pub fn deltas(&self) -> &[u32] {
        &self.deltas
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    /// Number of recovery directions `n`.
    pub fn availability(&self) -> usize {
        self.subsets.len()
    }

    /// `d_i = |A_i|`.
    pub fn sizes(&self) -> Vec<u32> {
        self.subsets.iter().map(|s| s.len() as u32).collect()
    }

    pub fn size(&self, i: usize) -> u32 {
        self.subsets[i].len() as u32
    }

    /// `r_i = d_i - δ_i + 1`.
    pub fn localities(&self) -> Vec<u32> {
        (0..self.availability()).map(|i| self.locality(i)).collect()
    }

    pub fn locality(&self, i: usize) -> u32 {
        self.size(i) - self.deltas[i] + 1
    }

    /// `Σ (r_i - 1)`, the largest admissible degree bound.
    pub fn max_degree_bound(&self) -> u64 {
        self.localities().iter().map(|&r| r as u64 - 1).sum()
    }

    /// Code length `m = Π d_i`.
    pub fn length(&self) -> u64 {
        self.length
    }

    /// `permutation()[i]` is the caller's index of sorted subset `i`.
    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn enumerate_points(&self) -> PointEnumeration {
        PointEnumeration::new(&self.subsets)
    }

    pub fn basis_monomials(&self) -> MonomialBasis {
        MonomialBasis::new(&self.localities(), self.degree_bound)
    }
}

/// Lexicographic enumeration of the grid, last coordinate fastest.
#[derive(Clone, Debug)]
pub struct PointEnumeration {
    subsets: Vec<Vec<FieldElement>>,
    strides: Vec<usize>,
    lookup: Vec<HashMap<FieldElement, usize>>,
    len: usize,
}

impl PointEnumeration {
    fn new(subsets: &[Vec<FieldElement>]) -> Self {
        let n = subsets.len();
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * subsets[i + 1].len();
        }
        let len = strides[0] * subsets[0].len();
        let lookup = subsets
            .iter()
            .map(|s| s.iter().enumerate().map(|(t, &a)| (a, t)).collect())
            .collect();
        PointEnumeration {
            subsets: subsets.to_vec(),
            strides,
            lookup,
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dimension(&self) -> usize {
        self.subsets.len()
    }

    /// Position offset between neighbours along direction `i`.
    pub fn stride(&self, i: usize) -> usize {
        self.strides[i]
    }

    /// Index of `P_j`'s `i`-th coordinate within `A_i`.
    pub fn coordinate_index(&self, j: usize, i: usize) -> usize {
        (j / self.strides[i]) % self.subsets[i].len()
    }

    pub fn coordinate(&self, j: usize, i: usize) -> FieldElement {
        self.subsets[i][self.coordinate_index(j, i)]
    }

    pub fn point(&self, j: usize) -> Vec<FieldElement> {
        (0..self.dimension()).map(|i| self.coordinate(j, i)).collect()
    }

    pub fn index_of(&self, point: &[FieldElement]) -> Option<usize> {
        if point.len() != self.dimension() {
            return None;
        }
        point
            .iter()
            .zip(&self.lookup)
            .zip(&self.strides)
            .try_fold(0, |acc, ((a, map), stride)| map.get(a).map(|t| acc + t * stride))
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
        (0..self.len).map(|j| self.point(j))
    }
}

/// Exponent tuples `(m_1, …, m_n)` with `m_i < r_i` and `Σ m_i ≤ d`, in
/// graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    exponents: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn new(localities: &[u32], degree_bound: u32) -> Self {
        let mut exponents = Vec::new();
        let mut cur = vec![0u32; localities.len()];
        for total in 0..=degree_bound {
            fill_graded(localities, 0, total, &mut cur, &mut exponents);
        }
        MonomialBasis { exponents }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn get(&self, t: usize) -> &[u32] {
        &self.exponents[t]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.exponents.iter().map(Vec::as_slice)
    }

    pub fn position(&self, exps: &[u32]) -> Option<usize> {
        self.exponents.iter().position(|e| e == exps)
    }
}

fn fill_graded(
    localities: &[u32],
    i: usize,
    remaining: u32,
    cur: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let n = localities.len();
    if i == n - 1 {
        if remaining < localities[i] {
            cur[i] = remaining;
            out.push(cur.clone());
        }
        return;
    }
    for e in 0..=remaining.min(localities[i] - 1) {
        cur[i] = e;
        fill_graded(localities, i + 1, remaining - e, cur, out);
    }
}

/// Generator matrix: row `t` is basis monomial `t` evaluated at every point,
/// with `0^0 = 1`.
pub fn generator_matrix(spec: &CodeSpec, points: &PointEnumeration, basis: &MonomialBasis) -> Matrix {
    let field = spec.field();
    let localities = spec.localities();
    // powers[i][a][e] = (A_i[a])^e
    let powers: Vec<Vec<Vec<FieldElement>>> = spec
        .subsets()
        .iter()
        .zip(&localities)
        .map(|(subset, &r)| {
            subset
                .iter()
                .map(|&a| (0..r).map(|e| field.pow(a, e as u64)).collect())
                .collect()
        })
        .collect();
    let mut g = Matrix::zeros(basis.len(), points.len());
    for (t, exps) in basis.iter().enumerate() {
        for j in 0..points.len() {
            let v = exps.iter().enumerate().fold(FieldElement::ONE, |acc, (i, &e)| {
                field.mul(acc, powers[i][points.coordinate_index(j, i)][e as usize])
            });
            g.set(t, j, v);
        }
    }
    g
}

/// Precomputed inverse of the generator on an information set, used to map
/// codewords back to messages.
#[derive(Debug)]
pub(crate) struct Unencoder {
    pub(crate) columns: Vec<usize>,
    pub(crate) inverse: Matrix,
}

/// A code with its grid, basis, and generator matrix materialized.
#[derive(Debug)]
pub struct LrcCode {
    spec: CodeSpec,
    points: PointEnumeration,
    basis: MonomialBasis,
    generator: Matrix,
    unencoder: OnceLock<Unencoder>,
}

impl LrcCode {
    pub fn new(spec: CodeSpec) -> Self {
        let points = spec.enumerate_points();
        let basis = spec.basis_monomials();
        let generator = generator_matrix(&spec, &points, &basis);
        LrcCode {
            spec,
            points,
            basis,
            generator,
            unencoder: OnceLock::new(),
        }
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn field(&self) -> &FiniteField {
        self.spec.field()
    }

    pub fn points(&self) -> &PointEnumeration {
        &self.points
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn unencoder(&self) -> &Unencoder {
        self.unencoder.get_or_init(|| {
            let field = self.field();
            let mut reduced = self.generator.clone();
            let columns = reduced.row_reduce(field);
            assert_eq!(columns.len(), self.dimension(), "generator rows are dependent");
            let inverse = self
                .generator
                .select_columns(&columns)
                .inverse(field)
                .expect("information set is invertible");
            Unencoder { columns, inverse }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FiniteField {
        FiniteField::new(p, 1).unwrap()
    }

    fn els(f: &FiniteField, ranks: &[u64]) -> Vec<FieldElement> {
        ranks.iter().map(|&r| f.element(r).unwrap()).collect()
    }

    #[test]
    fn table_parameters() {
        let s = CodeSpec::full_space(gf(11), vec![4, 5, 6], 4).unwrap();
        assert_eq!(s.localities(), vec![8, 7, 6]);
        assert_eq!(s.length(), 1331);
        assert_eq!(s.basis_monomials().len(), 35);
        assert!(CodeSpec::full_space(gf(11), vec![4, 5, 6], 19).is_err());
        assert!(CodeSpec::full_space(gf(11), vec![4, 5, 6], 18).is_ok());

        let f25 = FiniteField::new(5, 2).unwrap();
        let s = CodeSpec::full_space(f25, vec![6, 7], 37).unwrap();
        assert_eq!(s.localities(), vec![20, 19]);
        assert_eq!(s.length(), 625);
        assert_eq!(s.basis_monomials().len(), 380);
    }

    #[test]
    fn validation_errors() {
        let f = gf(5);
        let all = els(&f, &[0, 1, 2, 3, 4]);
        let err = CodeSpec::new(f.clone(), vec![all.clone()], vec![1], 0).unwrap_err();
        assert_eq!(err, Error::DeltaTooSmall { index: 0, delta: 1 });
        assert!(err.to_string().contains("delta must be ≥ 2"));
        let err = CodeSpec::new(f.clone(), vec![all.clone()], vec![6], 0).unwrap_err();
        assert_eq!(err, Error::LocalityTooSmall { index: 0, r: 0 });
        let err = CodeSpec::new(f.clone(), vec![els(&f, &[1, 1, 2])], vec![2], 0).unwrap_err();
        assert_eq!(err, Error::DuplicateElement { index: 0, rank: 1 });
        let err = CodeSpec::new(f.clone(), vec![els(&f, &[1])], vec![2], 0).unwrap_err();
        assert!(matches!(err, Error::SubsetTooSmall { .. }));
        let err = CodeSpec::new(f.clone(), vec![all.clone()], vec![2], -1).unwrap_err();
        assert!(matches!(err, Error::DegreeOutOfRange { d: -1, max: 3 }));
        let err = CodeSpec::new(f.clone(), vec![vec![FieldElement::ONE, FieldElement::ZERO]], vec![2, 2], 0);
        assert!(matches!(err, Err(Error::DeltaCount { .. })));
        let foreign = vec![FieldElement::ONE, gf(7).element(6).unwrap()];
        assert!(matches!(
            CodeSpec::new(f, vec![foreign], vec![2], 0),
            Err(Error::NotInField { rank: 6, order: 5 })
        ));
    }

    #[test]
    fn subsets_sorted_by_size_with_permutation() {
        let f = gf(7);
        let big = els(&f, &[6, 5, 4, 3]);
        let small = els(&f, &[3, 1]);
        let s = CodeSpec::new(f.clone(), vec![big, small], vec![3, 2], 1).unwrap();
        assert_eq!(s.sizes(), vec![2, 4]);
        assert_eq!(s.deltas(), &[2, 3]);
        assert_eq!(s.permutation(), &[1, 0]);
        assert_eq!(s.subsets()[1], els(&f, &[3, 4, 5, 6]));
    }

    #[test]
    fn point_order_is_lexicographic() {
        let f = gf(3);
        let s = CodeSpec::new(f.clone(), vec![els(&f, &[0, 1]), els(&f, &[0, 1, 2])], vec![2, 2], 0).unwrap();
        let pts = s.enumerate_points();
        let got: Vec<Vec<u32>> = pts.iter().map(|p| p.iter().map(|a| a.rank()).collect()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
        for j in 0..pts.len() {
            assert_eq!(pts.index_of(&pts.point(j)), Some(j));
        }
        assert_eq!(pts.index_of(&els(&f, &[2, 0])), None);
    }

    #[test]
    fn graded_lex_basis() {
        let b = MonomialBasis::new(&[2, 2], 1);
        let got: Vec<Vec<u32>> = b.iter().map(<[u32]>::to_vec).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        let b = MonomialBasis::new(&[3, 2], 3);
        let got: Vec<Vec<u32>> = b.iter().map(<[u32]>::to_vec).collect();
        assert_eq!(
            got,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]
        );
    }

    #[test]
    fn constant_code_when_degree_zero() {
        let f = gf(5);
        let s = CodeSpec::full_space(f.clone(), vec![3, 2], 0).unwrap();
        let code = LrcCode::new(s);
        assert_eq!(code.generator().rows(), 1);
        assert!(code.generator().row(0).iter().all(|&v| v == FieldElement::ONE));
    }

    #[test]
    fn single_direction_is_vandermonde() {
        let f = gf(7);
        let s = CodeSpec::full_space(f.clone(), vec![3], 4).unwrap();
        let code = LrcCode::new(s);
        let g = code.generator();
        assert_eq!(g.rows(), 5);
        for t in 0..5 {
            for j in 0..7 {
                let a = f.element(j as u64).unwrap();
                assert_eq!(g.get(t, j), f.pow(a, t as u64));
            }
        }
        assert_eq!(g.rank(&f), 5);
    }
}
