//! Encoding, recovery sets, and erasure repair.
//!
//! Position `j` of a codeword holds the message polynomial evaluated at
//! grid point `P_j`. The recovery set of `j` in direction `i` is the axis-`i`
//! line through `P_j`; along it the polynomial is univariate of degree below
//! `r_i`, so any `r_i` known entries on the line determine the rest.

use serde::Serialize;

use crate::code::LrcCode;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::{solve, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Codeword(Vec<FieldElement>);

impl Codeword {
    pub fn new(entries: Vec<FieldElement>) -> Self {
        Codeword(entries)
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn into_entries(self) -> Vec<FieldElement> {
        self.0
    }
}

/// A word in which some positions are known to be lost.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ErasedWord(Vec<Option<FieldElement>>);

impl ErasedWord {
    pub fn new(entries: Vec<Option<FieldElement>>) -> Self {
        ErasedWord(entries)
    }

    pub fn entries(&self) -> &[Option<FieldElement>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<FieldElement> {
        self.0[j]
    }

    pub fn is_erased(&self, j: usize) -> bool {
        self.0[j].is_none()
    }

    pub fn erase(&mut self, j: usize) {
        self.0[j] = None;
    }

    pub fn erased_positions(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j].is_none()).collect()
    }

    pub fn erasure_count(&self) -> usize {
        self.0.iter().filter(|e| e.is_none()).count()
    }

    /// The full codeword, if nothing is erased.
    pub fn to_codeword(&self) -> Option<Codeword> {
        self.0.iter().copied().collect::<Option<Vec<_>>>().map(Codeword)
    }
}

impl From<&Codeword> for ErasedWord {
    fn from(c: &Codeword) -> Self {
        ErasedWord(c.0.iter().copied().map(Some).collect())
    }
}

/// The axis-`direction` line through position `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoverySet {
    pub direction: usize,
    pub center: usize,
    /// Ascending; always contains `center`.
    pub positions: Vec<usize>,
    /// Number of known entries needed to recover the rest (`r_i`).
    pub locality: u32,
    /// Minimum distance of the code restricted to the set (`δ_i`).
    pub tolerance: u32,
}

/// Summary of a [`LrcCode::recover_all`] run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecoveryReport {
    /// Scans over the erased positions; zero when nothing was erased.
    pub passes: usize,
    pub repaired: usize,
    pub repairs_per_direction: Vec<usize>,
    pub attempts_per_direction: Vec<usize>,
    /// Positions still erased at the fixpoint.
    pub stuck: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoveryOutcome {
    Complete(Codeword),
    Partial(ErasedWord),
}

impl RecoveryOutcome {
    pub fn is_complete(&self) -> bool {
        matches!(self, RecoveryOutcome::Complete(_))
    }

    pub fn to_erased_word(&self) -> ErasedWord {
        match self {
            RecoveryOutcome::Complete(c) => c.into(),
            RecoveryOutcome::Partial(w) => w.clone(),
        }
    }
}

impl LrcCode {
    /// `message · G`; coefficient `t` multiplies basis monomial `t`.
    pub fn encode(&self, message: &[FieldElement]) -> Result<Codeword> {
        if message.len() != self.dimension() {
            return Err(Error::MessageLength {
                expected: self.dimension(),
                got: message.len(),
            });
        }
        if let Some(bad) = message.iter().find(|&&a| !self.field().contains(a)) {
            return Err(Error::NotInField {
                rank: bad.rank() as u64,
                order: self.field().order(),
            });
        }
        Ok(Codeword(self.generator().left_mul(self.field(), message)))
    }

    /// Recovers the message of a codeword; fails for words outside the code.
    pub fn unencode(&self, word: &Codeword) -> Result<Vec<FieldElement>> {
        self.check_len(word.len())?;
        let field = self.field();
        let un = self.unencoder();
        let restricted: Vec<FieldElement> = un.columns.iter().map(|&c| word.0[c]).collect();
        let message = un.inverse.left_mul(field, &restricted);
        if self.encode(&message)? == *word {
            Ok(message)
        } else {
            Err(Error::NotACodeword)
        }
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.length() {
            return Err(Error::WordLength {
                expected: self.length(),
                got,
            });
        }
        Ok(())
    }

    fn check_position(&self, j: usize, i: usize) -> Result<()> {
        if j >= self.length() {
            return Err(Error::PositionOutOfRange {
                position: j,
                length: self.length(),
            });
        }
        if i >= self.spec().availability() {
            return Err(Error::DirectionOutOfRange {
                direction: i,
                availability: self.spec().availability(),
            });
        }
        Ok(())
    }

    pub fn recovery_set(&self, j: usize, i: usize) -> Result<RecoverySet> {
        self.check_position(j, i)?;
        Ok(RecoverySet {
            direction: i,
            center: j,
            positions: self.line(j, i).collect(),
            locality: self.spec().locality(i),
            tolerance: self.spec().deltas()[i],
        })
    }

    fn line(&self, j: usize, i: usize) -> impl Iterator<Item = usize> {
        let pts = self.points();
        let stride = pts.stride(i);
        let base = j - pts.coordinate_index(j, i) * stride;
        (0..self.spec().size(i) as usize).map(move |t| base + t * stride)
    }

    /// Value at position `j` interpolated from the `r_i` lowest-indexed known
    /// entries of its direction-`i` line, excluding `j` itself.
    ///
    /// Entry `j` may be present; the result then serves as a consistency check.
    pub fn recover_entry(&self, word: &ErasedWord, j: usize, i: usize) -> Result<FieldElement> {
        self.check_len(word.len())?;
        self.check_position(j, i)?;
        let field = self.field();
        let pts = self.points();
        let r = self.spec().locality(i) as usize;
        let known: Vec<(FieldElement, FieldElement)> = self
            .line(j, i)
            .filter(|&pos| pos != j)
            .filter_map(|pos| word.get(pos).map(|v| (pts.coordinate(pos, i), v)))
            .take(r)
            .collect();
        if known.len() < r {
            let available = self
                .line(j, i)
                .filter(|&pos| pos != j && !word.is_erased(pos))
                .count();
            return Err(Error::InsufficientData {
                direction: i,
                available,
                required: r,
            });
        }
        let vandermonde = Matrix::from_rows(
            known
                .iter()
                .map(|&(beta, _)| (0..r).map(|t| field.pow(beta, t as u64)).collect())
                .collect(),
        );
        let values: Vec<FieldElement> = known.iter().map(|&(_, v)| v).collect();
        let coeffs = solve(field, &vandermonde, &values).expect("distinct nodes give a nonsingular system");
        let beta = pts.coordinate(j, i);
        Ok(coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &e| field.add(field.mul(acc, beta), e)))
    }

    /// Peeling repair: scan erased positions in ascending order, try each
    /// direction in order, and repeat until a full pass repairs nothing.
    pub fn recover_all(&self, word: &ErasedWord) -> Result<(RecoveryOutcome, RecoveryReport)> {
        self.check_len(word.len())?;
        let n = self.spec().availability();
        let mut work = word.clone();
        let mut report = RecoveryReport {
            repairs_per_direction: vec![0; n],
            attempts_per_direction: vec![0; n],
            ..Default::default()
        };
        let mut erased = work.erased_positions();
        while !erased.is_empty() {
            report.passes += 1;
            let mut still = Vec::new();
            for &j in &erased {
                let mut fixed = false;
                for i in 0..n {
                    report.attempts_per_direction[i] += 1;
                    match self.recover_entry(&work, j, i) {
                        Ok(v) => {
                            work.0[j] = Some(v);
                            report.repairs_per_direction[i] += 1;
                            fixed = true;
                            break;
                        }
                        Err(Error::InsufficientData { .. }) => {}
                        Err(e) => return Err(e),
                    }
                }
                if !fixed {
                    still.push(j);
                }
            }
            let progress = still.len() < erased.len();
            report.repaired += erased.len() - still.len();
            erased = still;
            if !progress {
                break;
            }
        }
        report.stuck = erased;
        let outcome = match work.to_codeword() {
            Some(c) => RecoveryOutcome::Complete(c),
            None => RecoveryOutcome::Partial(work),
        };
        Ok((outcome, report))
    }
}
