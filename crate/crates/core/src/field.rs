//! Arithmetic in GF(p^k).
//!
//! Elements are stored by their canonical rank: the coefficient vector
//! `(c_0, ..., c_{k-1})` of the residue polynomial read as a base-`p` integer
//! `Σ c_t p^t`. Rank 0 is the additive identity and rank 1 the multiplicative
//! identity in every field. Multiplication and inversion go through
//! discrete log/antilog tables built once per field; orders are bounded by
//! 2^16, so the tables stay small.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Fields at or below this order get a dense addition table.
const DENSE_ADD_ORDER: u32 = 256;

/// An element of some [`FiniteField`], identified by its canonical rank.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub(crate) fn from_rank(rank: u32) -> Self {
        FieldElement(rank)
    }

    pub fn rank(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u16>>,
}

/// The finite field GF(p^k).
///
/// Cloning is cheap; all clones share one set of tables.
#[derive(Clone)]
pub struct FiniteField {
    t: Arc<Tables>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.k == other.t.k
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.descriptor())
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.descriptor())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut rank: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(rank % p);
        rank /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p), both low-to-high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let deg_m = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > deg_m {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - deg_m;
            for (t, &mc) in m[..deg_m].iter().enumerate() {
                let sub = (lead as u64 * mc as u64 % p as u64) as u32;
                r[shift + t] = (r[shift + t] + p - sub) % p;
            }
        }
    }
    r.resize(deg_m, 0);
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
    poly_rem(&prod, m, p)
}

/// Irreducibility of a monic polynomial by trial division with every monic
/// polynomial of degree 1..=deg/2.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = (m.len() - 1) as u32;
    for e in 1..=deg / 2 {
        for low in 0..p.pow(e) {
            let mut divisor = digits(low, p, e);
            divisor.push(1);
            if poly_rem(m, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds GF(p^k) with the first monic irreducible modulus, candidates
    /// ordered by the rank of their low coefficients `(c_0, ..., c_{k-1})`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, k });
        };
        let (p, q) = (p as u32, q as u32);

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut m = digits(low, p, k);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .ok_or(Error::NoIrreducible { p, k })?
        };

        let (exp, log) = Self::log_tables(p, k, q, &modulus)?;

        let neg: Vec<u32> = (0..q)
            .map(|a| undigits(&digits(a, p, k).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p))
            .collect();

        let mut tables = Tables {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            neg,
            add: None,
        };
        if q <= DENSE_ADD_ORDER {
            let mut add = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    add.push(digitwise_add(&tables, a, b) as u16);
                }
            }
            tables.add = Some(add);
        }
        Ok(FiniteField { t: Arc::new(tables) })
    }

    /// Powers of the first primitive element (in rank order).
    fn log_tables(p: u32, k: u32, q: u32, modulus: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
        let order = (q - 1) as usize;
        for g in 1..q {
            let g_poly = digits(g, p, k);
            let mut exp = Vec::with_capacity(order);
            let mut cur = digits(1, p, k);
            loop {
                exp.push(undigits(&cur, p));
                cur = poly_mulmod(&cur, &g_poly, modulus, p);
                if undigits(&cur, p) == 1 || exp.len() > order {
                    break;
                }
            }
            if exp.len() == order {
                let mut log = vec![0u32; q as usize];
                for (e, &v) in exp.iter().enumerate() {
                    log[v as usize] = e as u32;
                }
                return Ok((exp, log));
            }
        }
        Err(Error::NoIrreducible { p, k })
    }

    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, low to high, monic of degree k.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// `"p"` for prime fields, `"p^k"` otherwise.
    pub fn descriptor(&self) -> String {
        if self.t.k == 1 {
            self.t.p.to_string()
        } else {
            format!("{}^{}", self.t.p, self.t.k)
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.t.q
    }

    pub fn element(&self, rank: u64) -> Result<FieldElement> {
        if rank < self.t.q as u64 {
            Ok(FieldElement(rank as u32))
        } else {
            Err(Error::NotInField {
                rank,
                order: self.t.q,
            })
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.t.k as usize || coeffs.iter().any(|&c| c >= self.t.p) {
            return Err(Error::Parse(format!(
                "coefficient tuple {coeffs:?} is not an element of {self}"
            )));
        }
        Ok(FieldElement(undigits(coeffs, self.t.p)))
    }

    /// Coefficients of `a`, low to high, always `k` of them.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0, self.t.p, self.t.k)
    }

    /// All elements in increasing rank.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        match &self.t.add {
            Some(table) => FieldElement(table[(a.0 * self.t.q + b.0) as usize] as u32),
            None => FieldElement(digitwise_add(&self.t, a.0, b.0)),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.t.q - 1;
        let e = (self.t.log[a.0 as usize] + self.t.log[b.0 as usize]) % order;
        FieldElement(self.t.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let order = self.t.q - 1;
        let e = (order - self.t.log[a.0 as usize]) % order;
        Ok(FieldElement(self.t.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.t.q - 1) as u64;
        let l = self.t.log[a.0 as usize] as u64 * (e % order) % order;
        FieldElement(self.t.exp[l as usize])
    }

    /// Renders `a` as its rank, or as a coefficient tuple `(c0,c1,..)` when
    /// `verbose` is set and the field is an extension.
    pub fn format_element(&self, a: FieldElement, verbose: bool) -> String {
        if verbose && self.t.k > 1 {
            let cs: Vec<String> = self.coeffs(a).iter().map(u32::to_string).collect();
            format!("({})", cs.join(","))
        } else {
            a.0.to_string()
        }
    }

    /// Parses a rank integer or a coefficient tuple `(c0,c1,..)`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("bad coefficient tuple {s:?}: {e}")))?;
            return self.from_coeffs(&coeffs);
        }
        let rank: u64 = s
            .parse()
            .map_err(|e| Error::Parse(format!("bad field element {s:?}: {e}")))?;
        self.element(rank)
    }
}

fn digitwise_add(t: &Tables, a: u32, b: u32) -> u32 {
    if t.k == 1 {
        return (a + b) % t.p;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..t.k {
        out += ((a % t.p + b % t.p) % t.p) * place;
        a /= t.p;
        b /= t.p;
        place *= t.p;
    }
    out
}

impl FromStr for FiniteField {
    type Err = Error;

    /// Accepts `"p"`, `"p^k"`, or a prime power order such as `"25"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadFieldDescriptor(s.to_string());
        let s = s.trim();
        match s.split_once('^') {
            Some((p, k)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let k: u32 = k.trim().parse().map_err(|_| bad())?;
                FiniteField::new(p, k)
            }
            None => {
                let q: u64 = s.parse().map_err(|_| bad())?;
                let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or_else(bad)?;
                let mut rest = q;
                let mut k = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    k += 1;
                }
                if rest != 1 {
                    return Err(bad());
                }
                FiniteField::new(p, k)
            }
        }
    }
}
