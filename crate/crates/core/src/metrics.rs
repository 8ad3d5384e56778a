//! Exact parameters of the codes: dimension, minimum distance, the
//! footprint weight bound, and the MDS analysis of codes restricted to a
//! single recovery line.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::code::{CodeSpec, LrcCode};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FiniteField};
use crate::linalg::Matrix;
use crate::recovery::Codeword;

/// Exhaustive enumerations stop at this many messages.
pub const BRUTE_FORCE_LIMIT: u64 = 1_000_000;

/// Column subsets checked when a local code is too big to enumerate.
const INFORMATION_SET_SAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    ClosedForm,
    Search,
    BruteForce,
    Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeMetrics {
    pub field: String,
    pub degree_bound: u32,
    pub length: u64,
    pub dimension: u64,
    pub min_distance: u64,
    pub availability: usize,
    pub sizes: Vec<u32>,
    pub localities: Vec<u32>,
    pub deltas: Vec<u32>,
    pub singleton_gap: i64,
    pub distance_method: DistanceMethod,
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// Dimension by inclusion–exclusion over all subsets `S` of the directions:
/// `Σ_S (-1)^|S| C(n + d - r_S, d - r_S)` with `r_S = Σ_{i∈S} r_i` and terms
/// with `d < r_S` dropped.
pub fn dimension_formula(spec: &CodeSpec) -> u64 {
    let n = spec.availability();
    let d = spec.degree_bound() as i64;
    let r = spec.localities();
    let mut total = BigInt::zero();
    for mask in 0u64..(1 << n) {
        let r_sum: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| r[i] as i64).sum();
        let b = d - r_sum;
        if b < 0 {
            continue;
        }
        let term = BigInt::from(binomial(n as u64 + b as u64, b as u64));
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total.to_u64().expect("dimension is a non-negative count")
}

/// Dimension as the size of the enumerated monomial basis.
pub fn dimension_by_count(spec: &CodeSpec) -> u64 {
    spec.basis_monomials().len() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceWitness {
    pub distance: u64,
    /// Exponent budget `s` with `Π (d_i - s_i)` minimal.
    pub witness: Vec<u32>,
}

/// Minimum of `Π (d_i - s_i)` over `0 ≤ s_i < r_i`, `Σ s_i ≤ d`.
pub fn min_distance_search(spec: &CodeSpec) -> DistanceWitness {
    fn go(
        sizes: &[u32],
        r: &[u32],
        i: usize,
        budget: u32,
        prod: u64,
        cur: &mut Vec<u32>,
        best: &mut DistanceWitness,
    ) {
        if i == sizes.len() {
            if prod < best.distance {
                best.distance = prod;
                best.witness = cur.clone();
            }
            return;
        }
        for s in 0..=budget.min(r[i] - 1) {
            cur.push(s);
            go(sizes, r, i + 1, budget - s, prod * (sizes[i] - s) as u64, cur, best);
            cur.pop();
        }
    }
    let mut best = DistanceWitness {
        distance: u64::MAX,
        witness: Vec::new(),
    };
    go(
        &spec.sizes(),
        &spec.localities(),
        0,
        spec.degree_bound(),
        1,
        &mut Vec::new(),
        &mut best,
    );
    best
}

/// Closed-form minimum distance, valid when the deltas are ascending:
/// write `d = Σ_{i<k} (d_i - δ_i) + ℓ` greedily with `ℓ < d_k - δ_k`; the
/// distance is `δ_0 ⋯ δ_{k-1} · (d_k - ℓ) · Π_{i>k} d_i`.
pub fn min_distance_closed(spec: &CodeSpec) -> Result<u64> {
    let deltas = spec.deltas();
    if deltas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::ClosedFormNotApplicable(deltas.to_vec()));
    }
    let sizes = spec.sizes();
    let n = sizes.len();
    let mut rest = spec.degree_bound();
    let mut k = 0;
    while k < n && sizes[k] - deltas[k] <= rest {
        rest -= sizes[k] - deltas[k];
        k += 1;
    }
    let head: u64 = deltas[..k].iter().map(|&x| x as u64).product();
    if k == n {
        debug_assert_eq!(rest, 0);
        return Ok(head);
    }
    let tail: u64 = sizes[k + 1..].iter().map(|&x| x as u64).product();
    Ok(head * (sizes[k] - rest) as u64 * tail)
}

/// Calls `visit` with every nonzero combination of `rows` whose first
/// nonzero coefficient is one, i.e. one representative per scalar class.
fn for_each_projective_combination(
    field: &FiniteField,
    rows: &Matrix,
    mut visit: impl FnMut(&[FieldElement]),
) {
    let q = field.order();
    let (k, len) = (rows.rows(), rows.cols());
    for lead in 0..k {
        let mut digits = vec![0u32; k];
        digits[lead] = 1;
        let mut word = rows.row(lead).to_vec();
        loop {
            visit(&word);
            // odometer over positions lead+1..k, last position fastest
            let mut wrapped = true;
            let mut t = k;
            while t > lead + 1 {
                t -= 1;
                let old = FieldElement::from_rank(digits[t]);
                digits[t] = (digits[t] + 1) % q;
                let diff = field.sub(FieldElement::from_rank(digits[t]), old);
                for (w, &g) in word.iter_mut().zip(rows.row(t)) {
                    *w = field.add(*w, field.mul(diff, g));
                }
                if digits[t] != 0 {
                    wrapped = false;
                    break;
                }
            }
            if wrapped {
                break;
            }
        }
        debug_assert_eq!(word.len(), len);
    }
}

fn guarded(q: u32, dimension: usize) -> Result<()> {
    let ok = (q as u64)
        .checked_pow(dimension as u32)
        .is_some_and(|total| total <= BRUTE_FORCE_LIMIT);
    if ok {
        Ok(())
    } else {
        Err(Error::BruteForceGuard {
            q,
            dimension,
            limit: BRUTE_FORCE_LIMIT,
        })
    }
}

/// Minimum weight over the row space of `rows`, by enumeration.
fn min_weight_of_rows(field: &FiniteField, rows: &Matrix) -> Result<u64> {
    guarded(field.order(), rows.rows())?;
    let mut best = u64::MAX;
    for_each_projective_combination(field, rows, |w| {
        let weight = w.iter().filter(|a| !a.is_zero()).count() as u64;
        best = best.min(weight);
    });
    Ok(best)
}

/// Minimum Hamming weight over all nonzero codewords.
pub fn brute_force_min_weight(code: &LrcCode) -> Result<u64> {
    min_weight_of_rows(code.field(), code.generator())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FootprintCheck {
    /// Graded-lex leading exponent of the message polynomial.
    pub leading: Vec<u32>,
    /// `Π (d_i - m_i)`.
    pub bound: u64,
    pub weight: u64,
    pub holds: bool,
}

/// Compares a codeword's weight with the footprint bound of its message's
/// leading monomial.
pub fn footprint_bound_check(code: &LrcCode, message: &[FieldElement]) -> Result<FootprintCheck> {
    let codeword = code.encode(message)?;
    // basis is sorted graded-lex, so the last nonzero coefficient leads
    let t = message.iter().rposition(|a| !a.is_zero()).ok_or(Error::ZeroMessage)?;
    let leading = code.basis().get(t).to_vec();
    let bound = code
        .spec()
        .sizes()
        .iter()
        .zip(&leading)
        .map(|(&d, &m)| (d - m) as u64)
        .product();
    let weight = codeword.weight() as u64;
    Ok(FootprintCheck {
        leading,
        bound,
        weight,
        holds: weight >= bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalWord {
    pub exponents: Vec<u32>,
    pub message: Vec<FieldElement>,
    pub codeword: Codeword,
}

/// Encodes `Π_i Π_{j<t_i} (X_i - a_{ij})` for a minimizing budget `t`, where
/// `a_{ij}` are the first elements of `A_i`. Its weight is the minimum
/// distance.
pub fn extremal_word(code: &LrcCode) -> Result<ExtremalWord> {
    let field = code.field();
    let spec = code.spec();
    let exponents = min_distance_search(spec).witness;
    // univariate coefficient lists, low to high
    let factors: Vec<Vec<FieldElement>> = spec
        .subsets()
        .iter()
        .zip(&exponents)
        .map(|(subset, &t)| {
            subset[..t as usize].iter().fold(vec![FieldElement::ONE], |poly, &a| {
                let mut next = vec![FieldElement::ZERO; poly.len() + 1];
                for (e, &c) in poly.iter().enumerate() {
                    next[e + 1] = field.add(next[e + 1], c);
                    next[e] = field.sub(next[e], field.mul(c, a));
                }
                next
            })
        })
        .collect();
    let mut message = vec![FieldElement::ZERO; code.dimension()];
    for (pos, exps) in code.basis().iter().enumerate() {
        if exps.iter().zip(&exponents).all(|(e, t)| e <= t) {
            message[pos] = exps
                .iter()
                .zip(&factors)
                .fold(FieldElement::ONE, |acc, (&e, f)| field.mul(acc, f[e as usize]));
        }
    }
    let codeword = code.encode(&message)?;
    Ok(ExtremalWord {
        exponents,
        message,
        codeword,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCodeReport {
    pub direction: usize,
    /// Coordinates of the line in every direction except `direction`.
    pub alpha: Vec<u32>,
    pub positions: Vec<usize>,
    pub length: u32,
    pub dimension: u32,
    pub expected_dimension: u32,
    pub min_distance: u32,
    pub expected_min_distance: u32,
    pub distance_method: DistanceMethod,
    /// Column subsets of size `dimension` verified to have full rank.
    pub information_sets_checked: usize,
    pub is_mds: bool,
    pub matches_theorem: bool,
}

/// Transversal coordinates of position `j` with respect to direction `i`.
pub fn transversal_of(code: &LrcCode, j: usize, i: usize) -> Vec<FieldElement> {
    let mut p = code.points().point(j);
    p.remove(i);
    p
}

/// Restricts the code to the direction-`i` line with transversal
/// coordinates `alpha` and measures the restricted code.
pub fn local_code(code: &LrcCode, i: usize, alpha: &[FieldElement]) -> Result<LocalCodeReport> {
    let spec = code.spec();
    let n = spec.availability();
    if i >= n {
        return Err(Error::DirectionOutOfRange {
            direction: i,
            availability: n,
        });
    }
    if alpha.len() != n - 1 {
        return Err(Error::TransversalArity {
            expected: n - 1,
            got: alpha.len(),
        });
    }
    let others = (0..n).filter(|&t| t != i);
    for (&a, t) in alpha.iter().zip(others) {
        if !spec.subsets()[t].contains(&a) {
            return Err(Error::TransversalCoordinate {
                index: t,
                rank: a.rank(),
            });
        }
    }
    let field = code.field();
    let positions: Vec<usize> = spec.subsets()[i]
        .iter()
        .map(|&beta| {
            let mut p = alpha.to_vec();
            p.insert(i, beta);
            code.points().index_of(&p).expect("point lies on the grid")
        })
        .collect();
    let restricted = code.generator().select_columns(&positions).row_space_basis(field);
    let length = positions.len() as u32;
    let dimension = restricted.rows() as u32;
    let e = spec.degree_bound().min(spec.locality(i) - 1);
    let expected_dimension = e + 1;
    let expected_min_distance = length - e;

    let (min_distance, distance_method, information_sets_checked) =
        match min_weight_of_rows(field, &restricted) {
            Ok(w) => (w as u32, DistanceMethod::BruteForce, 0),
            Err(Error::BruteForceGuard { .. }) => {
                // a dependent k-subset of columns leaves a nonzero codeword
                // vanishing there, so length - k bounds the distance
                match check_information_sets(field, &restricted, i, alpha) {
                    Some(count) => (expected_min_distance, DistanceMethod::Formula, count),
                    None => (length - dimension, DistanceMethod::Formula, 0),
                }
            }
            Err(err) => return Err(err),
        };
    Ok(LocalCodeReport {
        direction: i,
        alpha: alpha.iter().map(|a| a.rank()).collect(),
        positions,
        length,
        dimension,
        expected_dimension,
        min_distance,
        expected_min_distance,
        distance_method,
        information_sets_checked,
        is_mds: dimension + min_distance == length + 1,
        matches_theorem: dimension == expected_dimension && min_distance == expected_min_distance,
    })
}

/// A code of dimension `k` has distance `length - k + 1` exactly when every
/// `k` columns of its generator are independent. Checks a deterministic
/// sample of column subsets; `None` if one is dependent.
fn check_information_sets(
    field: &FiniteField,
    rows: &Matrix,
    direction: usize,
    alpha: &[FieldElement],
) -> Option<usize> {
    let k = rows.rows();
    let len = rows.cols();
    let seed = alpha
        .iter()
        .fold(direction as u64, |acc, a| acc.wrapping_mul(0x100000001b3).wrapping_add(a.rank() as u64));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for _ in 0..INFORMATION_SET_SAMPLES {
        let mut cols = sample(&mut rng, len, k).into_vec();
        cols.sort_unstable();
        if rows.select_columns(&cols).rank(field) < k {
            return None;
        }
    }
    Some(INFORMATION_SET_SAMPLES)
}

/// Length, dimension, distance and Singleton gap of a code.
pub fn metrics(spec: &CodeSpec) -> CodeMetrics {
    let dimension = dimension_formula(spec);
    debug_assert_eq!(dimension, dimension_by_count(spec));
    let (min_distance, distance_method) = match min_distance_closed(spec) {
        Ok(v) => (v, DistanceMethod::ClosedForm),
        Err(_) => (min_distance_search(spec).distance, DistanceMethod::Search),
    };
    let length = spec.length();
    CodeMetrics {
        field: spec.field().descriptor(),
        degree_bound: spec.degree_bound(),
        length,
        dimension,
        min_distance,
        availability: spec.availability(),
        sizes: spec.sizes(),
        localities: spec.localities(),
        deltas: spec.deltas().to_vec(),
        singleton_gap: (length as i128 + 1 - dimension as i128 - min_distance as i128) as i64,
        distance_method,
    }
}
