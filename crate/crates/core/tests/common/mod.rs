#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use varlrc::{CodeSpec, FieldElement, FiniteField};

pub const SWEEP_ORDERS: [u64; 7] = [3, 4, 5, 7, 8, 9, 11];

pub fn field(q: u64) -> FiniteField {
    q.to_string().parse().unwrap()
}

/// `size` consecutive ranks (cyclically) starting at `offset`.
fn window(f: &FiniteField, offset: u32, size: u32) -> Vec<FieldElement> {
    let q = f.order();
    (0..size).map(|t| f.element(((offset + t) % q) as u64).unwrap()).collect()
}

/// Every admissible (deltas, d) for the given subsets.
fn all_parameters(f: &FiniteField, subsets: &[Vec<FieldElement>], out: &mut Vec<CodeSpec>) {
    let sizes: Vec<i64> = subsets.iter().map(|s| s.len() as i64).collect();
    let mut deltas = vec![2i64; sizes.len()];
    loop {
        let max_d: i64 = sizes.iter().zip(&deltas).map(|(s, dl)| s - dl).sum();
        for d in 0..=max_d {
            out.push(CodeSpec::new(f.clone(), subsets.to_vec(), deltas.clone(), d).unwrap());
        }
        let mut t = 0;
        loop {
            if t == deltas.len() {
                return;
            }
            deltas[t] += 1;
            if deltas[t] <= sizes[t] {
                break;
            }
            deltas[t] = 2;
            t += 1;
        }
    }
}

/// Deterministic family of valid specs over q ∈ {3,4,5,7,8,9,11},
/// n ∈ {1,2,3}, whole-field and proper subsets, all deltas and degree bounds.
pub fn sweep() -> Vec<CodeSpec> {
    let mut out = Vec::new();
    for &q in &SWEEP_ORDERS {
        let f = field(q);
        let q32 = q as u32;
        // n = 1
        all_parameters(&f, &[window(&f, 0, q32)], &mut out);
        let proper = (q32 - 1).max(2);
        all_parameters(&f, &[window(&f, 1, proper)], &mut out);
        // n = 2
        if q <= 5 {
            all_parameters(&f, &[window(&f, 0, q32), window(&f, 0, q32)], &mut out);
        } else {
            all_parameters(&f, &[window(&f, 2, 4), window(&f, q32 - 1, 3)], &mut out);
        }
        // n = 3
        if q <= 4 {
            let full = window(&f, 0, q32);
            all_parameters(&f, &[full.clone(), full.clone(), full], &mut out);
        } else {
            all_parameters(&f, &[window(&f, 0, 2), window(&f, 3, 3), window(&f, q32 - 2, 3)], &mut out);
        }
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_message(f: &FiniteField, len: usize, rng: &mut impl Rng) -> Vec<FieldElement> {
    (0..len)
        .map(|_| f.element(rng.gen_range(0..f.order()) as u64).unwrap())
        .collect()
}

pub fn random_nonzero_message(f: &FiniteField, len: usize, rng: &mut impl Rng) -> Vec<FieldElement> {
    loop {
        let m = random_message(f, len, rng);
        if m.iter().any(|a| !a.is_zero()) {
            return m;
        }
    }
}

/// Independent count of exponent tuples with `0 ≤ m_i < r_i`, `Σ m_i ≤ d`.
pub fn count_box_tuples(localities: &[u32], d: u32) -> u64 {
    let mut idx = vec![0u32; localities.len()];
    let mut count = 0;
    loop {
        if idx.iter().sum::<u32>() <= d {
            count += 1;
        }
        let mut t = 0;
        loop {
            if t == idx.len() {
                return count;
            }
            idx[t] += 1;
            if idx[t] < localities[t] {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

/// Minimum of `Π (d_i - s_i)` by plain odometer over the whole box.
pub fn min_product_oracle(sizes: &[u32], localities: &[u32], d: u32) -> u64 {
    let mut idx = vec![0u32; sizes.len()];
    let mut best = u64::MAX;
    loop {
        if idx.iter().sum::<u32>() <= d {
            let p: u64 = sizes.iter().zip(&idx).map(|(&s, &e)| (s - e) as u64).product();
            best = best.min(p);
        }
        let mut t = 0;
        loop {
            if t == idx.len() {
                return best;
            }
            idx[t] += 1;
            if idx[t] < localities[t] {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

pub fn table1(d: i64) -> CodeSpec {
    CodeSpec::full_space(field(11), vec![4, 5, 6], d).unwrap()
}

pub fn table2(d: i64) -> CodeSpec {
    CodeSpec::full_space(field(25), vec![6, 7], d).unwrap()
}
