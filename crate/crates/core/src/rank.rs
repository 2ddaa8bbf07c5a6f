//! Vectors over F_{2^m} with rank-metric semantics.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::BitMatrix;
use crate::subspace::Subspace;

/// A length-n vector over F_{2^m}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RkVector {
    field: Field,
    coords: Vec<FieldElement>,
}

/// Factorization v = ê·E with ê a basis of Supp(v) and E a full-rank
/// w x n binary matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportDecomposition {
    pub basis: Vec<FieldElement>,
    pub matrix: BitMatrix,
}

impl SupportDecomposition {
    pub fn weight(&self) -> usize {
        self.basis.len()
    }

    pub fn recompose(&self, field: &Field) -> RkVector {
        combine(field, &self.basis, &self.matrix)
    }
}

/// The vector whose j-th coordinate is Σ_i basis[i]·matrix[i][j].
pub fn combine(field: &Field, basis: &[FieldElement], matrix: &BitMatrix) -> RkVector {
    assert_eq!(
        basis.len(),
        matrix.rows(),
        "basis length must match matrix rows"
    );
    let mut coords = vec![FieldElement::ZERO; matrix.cols()];
    for (i, &b) in basis.iter().enumerate() {
        for j in matrix.ones_in_row(i) {
            coords[j] += b;
        }
    }
    RkVector {
        field: *field,
        coords,
    }
}

impl RkVector {
    pub fn new(field: &Field, coords: Vec<FieldElement>) -> Result<Self> {
        for c in &coords {
            field.element(*c)?;
        }
        Ok(RkVector {
            field: *field,
            coords,
        })
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        RkVector {
            field: *field,
            coords: vec![FieldElement::ZERO; n],
        }
    }

    /// e_k: one at position k, zero elsewhere.
    pub fn unit(field: &Field, n: usize, k: usize) -> Self {
        let mut v = Self::zero(field, n);
        v.coords[k] = FieldElement::ONE;
        v
    }

    pub fn random<R: RngCore + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Self {
        RkVector {
            field: *field,
            coords: (0..n).map(|_| field.random(rng)).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    pub(crate) fn check_compatible(&self, other: &RkVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RkVector) -> Result<RkVector> {
        self.check_compatible(other)?;
        Ok(RkVector {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// Multiplies every coordinate by `gamma`.
    pub fn scale(&self, gamma: FieldElement) -> RkVector {
        RkVector {
            field: self.field,
            coords: self
                .coords
                .iter()
                .map(|&c| self.field.mul(gamma, c))
                .collect(),
        }
    }

    /// The m x n binary matrix whose column j holds the coefficients of
    /// coordinate j over {1, z, ..., z^(m-1)}.
    pub fn unfold(&self) -> BitMatrix {
        BitMatrix::from_fn(self.field.m(), self.len(), |i, j| self.coords[j].bit(i))
    }

    /// Inverse of [`RkVector::unfold`].
    pub fn fold(field: &Field, matrix: &BitMatrix) -> Result<Self> {
        if matrix.rows() != field.m() {
            return Err(Error::LengthMismatch {
                expected: field.m(),
                found: matrix.rows(),
            });
        }
        let mut coords = vec![FieldElement::ZERO; matrix.cols()];
        for i in 0..matrix.rows() {
            for j in matrix.ones_in_row(i) {
                coords[j].flip_bit(i);
            }
        }
        Ok(RkVector {
            field: *field,
            coords,
        })
    }

    /// Supp(v), the F_2-span of the coordinates.
    pub fn support(&self) -> Subspace {
        Subspace::from_generators(self.field.m(), self.coords.iter().copied())
    }

    /// Rank weight: rank of the unfolded matrix, computed as dim Supp(v).
    pub fn rank_weight(&self) -> usize {
        self.support().dim()
    }

    /// Canonical decomposition: ê is the RREF basis of Supp(v), and column j
    /// of E holds the coordinates of v_j over ê.
    pub fn support_decompose(&self) -> Result<SupportDecomposition> {
        let support = self.support();
        if support.dim() == 0 {
            return Err(Error::ZeroVector);
        }
        let pivots: Vec<usize> = support.pivots().collect();
        let matrix = BitMatrix::from_fn(support.dim(), self.len(), |i, j| {
            self.coords[j].bit(pivots[i])
        });
        Ok(SupportDecomposition {
            basis: support.basis().to_vec(),
            matrix,
        })
    }
}

/// Samples a vector of rank weight exactly `w`: ê by rejection until its w
/// entries are independent, E by rejection until it has rank w, then v = ê·E.
pub fn sample_rank_vector<R: RngCore + ?Sized>(
    field: &Field,
    n: usize,
    w: usize,
    rng: &mut R,
) -> Result<RkVector> {
    let max = field.m().min(n);
    if w > max {
        return Err(Error::WeightOutOfRange { w, max });
    }
    if w == 0 {
        return Ok(RkVector::zero(field, n));
    }
    let basis = loop {
        let candidate: Vec<FieldElement> = (0..w).map(|_| field.random(rng)).collect();
        if Subspace::from_generators(field.m(), candidate.iter().copied()).dim() == w {
            break candidate;
        }
    };
    let matrix = loop {
        let candidate = BitMatrix::random(w, n, rng);
        if candidate.rank() == w {
            break candidate;
        }
    };
    Ok(combine(field, &basis, &matrix))
}
