//! Based rings: a finite basis with nonnegative integer structure
//! constants, a unit supported on a subset of the basis, and a duality
//! anti-involution compatible with the trace functional.

mod characters;
mod spectrum;
mod validate;

use thiserror::Error;

use crate::exact::ExactError;

pub(crate) use characters::match_multisets;
pub use characters::{
    characters_numeric, codegrees_via_characters, fp_dimension, CharacterTable,
    CODEGREE_MATCH_TOLERANCE, DEFAULT_TOLERANCE,
};
pub(crate) use spectrum::{alpha_from, commute_pairwise};
pub use spectrum::{codegree_spectrum, CodegreeSpectrum, SpectrumOptions};
pub use validate::{validate, Axiom, AxiomCheck, ValidationReport, MAX_WITNESSES};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("malformed ring data: {0}")]
    Malformed(String),
    #[error("basis element {index} has no dual")]
    NoDual { index: usize },
    #[error("basis element {index} has several dual candidates {candidates:?}")]
    AmbiguousDual {
        index: usize,
        candidates: Vec<usize>,
    },
    #[error("basis index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("ring failed validation: {0}")]
    Invalid(String),
    #[error("alpha element has a zero eigenvalue; the ring is not semisimple")]
    ZeroEigenvalue,
    #[error("ring is not commutative")]
    NotCommutative,
    #[error("eigen-decomposition failed: {0}")]
    EigenFailure(String),
    #[error("codegree cross-check mismatch: {0}")]
    CodegreeMismatch(String),
    #[error("no character is positive on the whole basis")]
    NoPerronCharacter,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A based ring of rank `r`. `n(i, j, k)` is the coefficient of `b_k` in
/// `b_i b_j`.
///
/// Construction only checks shapes and index ranges; the ring axioms are
/// checked by [`validate`]. Operations documented as requiring a valid ring
/// assume it has passed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedRing {
    labels: Vec<String>,
    structure: Vec<i64>,
    unit: Vec<usize>,
    dual: Vec<usize>,
}

impl BasedRing {
    /// Builds a ring from a nested `rank x rank x rank` tensor. When `dual`
    /// is `None` it is derived from the trace condition.
    pub fn new(
        labels: Vec<String>,
        structure: Vec<Vec<Vec<i64>>>,
        unit: Vec<usize>,
        dual: Option<Vec<usize>>,
    ) -> Result<Self, RingError> {
        let rank = labels.len();
        if structure.len() != rank
            || structure
                .iter()
                .any(|m| m.len() != rank || m.iter().any(|row| row.len() != rank))
        {
            return Err(RingError::Malformed(format!(
                "structure constants must be a {rank}x{rank}x{rank} array"
            )));
        }
        let flat = structure.into_iter().flatten().flatten().collect();
        Self::from_flat(labels, flat, unit, dual)
    }

    /// Like [`BasedRing::new`] with the tensor flattened as `(i * r + j) * r + k`.
    pub fn from_flat(
        labels: Vec<String>,
        structure: Vec<i64>,
        unit: Vec<usize>,
        dual: Option<Vec<usize>>,
    ) -> Result<Self, RingError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(RingError::Malformed("rank must be positive".into()));
        }
        if structure.len() != rank * rank * rank {
            return Err(RingError::Malformed(format!(
                "expected {} structure constants, got {}",
                rank * rank * rank,
                structure.len()
            )));
        }
        if unit.is_empty() {
            return Err(RingError::Malformed("unit set is empty".into()));
        }
        let mut sorted_unit = unit;
        sorted_unit.sort_unstable();
        sorted_unit.dedup();
        if let Some(&bad) = sorted_unit.iter().find(|&&u| u >= rank) {
            return Err(RingError::IndexOutOfRange { index: bad, rank });
        }
        let mut ring = BasedRing {
            labels,
            structure,
            unit: sorted_unit,
            dual: (0..rank).collect(),
        };
        match dual {
            Some(d) => {
                if d.len() != rank {
                    return Err(RingError::Malformed(format!(
                        "dual has length {}, expected {rank}",
                        d.len()
                    )));
                }
                if let Some(&bad) = d.iter().find(|&&x| x >= rank) {
                    return Err(RingError::IndexOutOfRange { index: bad, rank });
                }
                ring.dual = d;
            }
            None => ring.dual = ring.derive_dual()?,
        }
        Ok(ring)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_set(&self) -> &[usize] {
        &self.unit
    }

    pub fn dual(&self) -> &[usize] {
        &self.dual
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize, k: usize) -> i64 {
        let r = self.rank();
        self.structure[(i * r + j) * r + k]
    }

    pub fn structure_flat(&self) -> &[i64] {
        &self.structure
    }

    /// Nested `N[i][j][k]`.
    pub fn structure_nested(&self) -> Vec<Vec<Vec<i64>>> {
        let r = self.rank();
        self.structure
            .chunks(r * r)
            .map(|m| m.chunks(r).map(<[i64]>::to_vec).collect())
            .collect()
    }

    /// `tau(b_i b_j)`: the coefficient sum of `b_i b_j` over the unit set.
    pub fn trace_of_product(&self, i: usize, j: usize) -> i64 {
        self.unit.iter().map(|&k| self.n(i, j, k)).sum()
    }

    /// For each `i`, the unique `j` with `tau(b_i b_j) = 1`.
    pub fn derive_dual(&self) -> Result<Vec<usize>, RingError> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let candidates: Vec<usize> = (0..r)
                    .filter(|&j| self.trace_of_product(i, j) == 1)
                    .collect();
                match candidates.as_slice() {
                    [j] => Ok(*j),
                    [] => Err(RingError::NoDual { index: i }),
                    _ => Err(RingError::AmbiguousDual {
                        index: i,
                        candidates,
                    }),
                }
            })
            .collect()
    }

    /// Returns a copy with one structure constant replaced.
    pub fn with_entry(&self, i: usize, j: usize, k: usize, value: i64) -> BasedRing {
        let r = self.rank();
        let mut out = self.clone();
        out.structure[(i * r + j) * r + k] = value;
        out
    }

    /// Returns a copy with a different duality map (not checked).
    pub fn with_dual(&self, dual: Vec<usize>) -> BasedRing {
        assert_eq!(dual.len(), self.rank(), "dual length must equal rank");
        BasedRing {
            dual,
            ..self.clone()
        }
    }
}

#[cfg(test)]
pub(crate) mod test_rings {
    use super::BasedRing;

    pub fn fibonacci() -> BasedRing {
        BasedRing::new(
            vec!["1".into(), "X".into()],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]],
            vec![0],
            None,
        )
        .unwrap()
    }

    pub fn cyclic(n: usize) -> BasedRing {
        let mut flat = vec![0i64; n * n * n];
        for i in 0..n {
            for j in 0..n {
                flat[(i * n + j) * n + (i + j) % n] = 1;
            }
        }
        BasedRing::from_flat(
            (0..n).map(|i| format!("g{i}")).collect(),
            flat,
            vec![0],
            None,
        )
        .unwrap()
    }
}
