//! F_2-subspaces of F_{2^m}, kept in canonical reduced row echelon form.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::BitMatrix;

/// An F_2-linear subspace of F_{2^m}.
///
/// The basis is the RREF of any generating set, with each element read as a
/// row over the columns {1, z, ..., z^(m-1)}: every basis element has a
/// leading one at its pivot (its lowest set coefficient), no other basis
/// element has that coefficient set, and elements are sorted by pivot. Two
/// subspaces are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    m: usize,
    basis: Vec<FieldElement>,
}

impl Subspace {
    pub fn zero(m: usize) -> Self {
        Subspace {
            m,
            basis: Vec::new(),
        }
    }

    /// Canonical span of `generators`.
    pub fn from_generators<I>(m: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = FieldElement>,
    {
        let mut s = Self::zero(m);
        for g in generators {
            s.insert(g);
        }
        s
    }

    /// The whole of F_{2^m}.
    pub fn full(m: usize) -> Self {
        Self::from_generators(m, (0..m).map(FieldElement::monomial))
    }

    pub fn ambient_m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.basis
            .iter()
            .map(|b| b.lowest_bit().expect("basis rows are nonzero"))
    }

    /// Basis as a dim x m bit matrix.
    pub fn basis_matrix(&self) -> BitMatrix {
        BitMatrix::from_fn(self.dim(), self.m, |i, j| self.basis[i].bit(j))
    }

    /// Reduces `v` modulo the basis; zero iff `v` is in the subspace.
    pub fn reduce(&self, mut v: FieldElement) -> FieldElement {
        for b in &self.basis {
            if v.bit(b.lowest_bit().unwrap()) {
                v += *b;
            }
        }
        v
    }

    pub fn contains(&self, v: FieldElement) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` over the basis, or `None` if `v` is outside.
    /// With a reduced basis the coordinate on row i is just the bit of `v`
    /// at that row's pivot.
    pub fn coordinates(&self, v: FieldElement) -> Option<Vec<bool>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().map(|p| v.bit(p)).collect())
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: FieldElement) -> bool {
        debug_assert!(v.degree().is_none_or(|d| d < self.m));
        let v = self.reduce(v);
        let Some(p) = v.lowest_bit() else {
            return false;
        };
        for b in &mut self.basis {
            if b.bit(p) {
                *b += v;
            }
        }
        let at = self.basis.partition_point(|b| b.lowest_bit().unwrap() < p);
        self.basis.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.m, other.m, "ambient dimension mismatch");
        let mut s = self.clone();
        for &v in &other.basis {
            s.insert(v);
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|&v| other.contains(v))
    }

    /// U ∩ V by the Zassenhaus block method: row reduce
    /// [[U, U], [V, 0]]; rows whose left block vanishes carry a basis of the
    /// intersection in their right block.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.m, other.m, "ambient dimension mismatch");
        let m = self.m;
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(m);
        }
        let rows = self.dim() + other.dim();
        let mut block = BitMatrix::zeros(rows, 2 * m);
        for (i, u) in self.basis.iter().enumerate() {
            for j in (0..m).filter(|&j| u.bit(j)) {
                block.set(i, j, true);
                block.set(i, m + j, true);
            }
        }
        for (i, v) in other.basis.iter().enumerate() {
            for j in (0..m).filter(|&j| v.bit(j)) {
                block.set(self.dim() + i, j, true);
            }
        }
        let ech = block.rref();
        let sum_dim = ech.pivots.iter().take_while(|&&c| c < m).count();
        let generators = (sum_dim..ech.rank).map(|r| {
            let mut e = FieldElement::ZERO;
            for j in 0..m {
                if ech.matrix.get(r, m + j) {
                    e.flip_bit(j);
                }
            }
            e
        });
        Subspace::from_generators(m, generators)
    }

    /// {γ·u : u ∈ U}.
    pub fn scale(&self, field: &Field, gamma: FieldElement) -> Result<Subspace> {
        if field.m() != self.m {
            return Err(Error::FieldMismatch);
        }
        if gamma.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Subspace::from_generators(
            self.m,
            self.basis.iter().map(|&b| field.mul(gamma, b)),
        ))
    }
}
