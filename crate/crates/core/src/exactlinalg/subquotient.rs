use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::smith::{smith_normal_form, LinearSolver, SmithDecomposition};
use super::Coeff;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z / B` presented as a quotient of a
/// lattice `Z ⊆ Z^n` (given by a basis) by a sublattice `B ⊆ Z` (given by
/// generators), in invariant-factor coordinates.
///
/// Coordinates are listed torsion first (`t_1 | t_2 | ...`), then free
/// summands, which carry the factor `0`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    lattice: IntMatrix,
    lattice_solver: LinearSolver,
    relations: SmithDecomposition,
    kept: Vec<usize>,
    factors: Vec<BigInt>,
    generators: IntMatrix,
}

impl Subquotient {
    /// `lattice` holds a basis of `Z` in its columns; the columns of
    /// `boundaries` must lie in `Z`.
    pub fn new(lattice: IntMatrix, boundaries: &IntMatrix) -> Result<Self> {
        let ambient = lattice.rows();
        if boundaries.rows() != ambient {
            return Err(Error::DimensionMismatch(
                "boundary generators live in a different ambient".into(),
            ));
        }
        let lattice_solver = LinearSolver::new(&lattice);
        let r = lattice.cols();
        let mut rel_cols = Vec::with_capacity(boundaries.cols());
        for col in boundaries.columns() {
            match lattice_solver.solve(&col)? {
                Some(y) => rel_cols.push(y),
                None => {
                    return Err(Error::NotACycle(
                        "boundary generator outside the cycle lattice".into(),
                    ))
                }
            }
        }
        let rel = IntMatrix::from_columns(r, &rel_cols);
        let relations = smith_normal_form(&rel);
        let mut kept = Vec::new();
        let mut factors = Vec::new();
        for i in 0..r {
            let d = relations.diag(i);
            if !d.is_one() {
                kept.push(i);
                factors.push(d);
            }
        }
        let gen_basis = &lattice * &relations.u_inv;
        let generators = gen_basis.select_columns(&kept);
        Ok(Subquotient {
            ambient,
            lattice,
            lattice_solver,
            relations,
            kept,
            factors,
            generators,
        })
    }

    /// `ker a / im b` over the integers.
    pub fn integral(a: &IntMatrix, b: &IntMatrix) -> Result<Self> {
        if a.cols() != b.rows() {
            return Err(Error::DimensionMismatch(
                "incoming and outgoing maps do not compose".into(),
            ));
        }
        let snf = smith_normal_form(a);
        let idx: Vec<usize> = (snf.rank()..a.cols()).collect();
        Self::new(snf.v.select_columns(&idx), b)
    }

    /// `ker(a ⊗ F_p) / im(b ⊗ F_p)`, realised over the integers as
    /// `{z : a z ≡ 0} / (im b + p Z^n)`.
    pub fn modular(a: &IntMatrix, b: &IntMatrix, p: u64) -> Result<Self> {
        if a.cols() != b.rows() {
            return Err(Error::DimensionMismatch(
                "incoming and outgoing maps do not compose".into(),
            ));
        }
        let n = a.cols();
        let pb = BigInt::from(p);
        let snf = smith_normal_form(a);
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let vi = snf.v.column(i);
            let di = snf.diag(i);
            if di.is_zero() || di.is_multiple_of(&pb) {
                cols.push(vi);
            } else {
                cols.push(vi.into_iter().map(|x| x * &pb).collect());
            }
        }
        let lattice = IntMatrix::from_columns(n, &cols);
        let bound = b.hstack(&IntMatrix::identity(n).scale(&pb))?;
        Self::new(lattice, &bound)
    }

    /// Dispatches on the coefficient ring.
    pub fn of(a: &IntMatrix, b: &IntMatrix, coeff: Coeff) -> Result<Self> {
        match coeff {
            Coeff::Integers => Self::integral(a, b),
            Coeff::Mod(p) => Self::modular(a, b, p),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// One entry per coordinate; `0` marks a free summand.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|d| !d.is_zero())
            .cloned()
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.factors.len()
    }

    /// Ambient representative of the `i`-th generator.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.column(i)
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    /// Reduces a coordinate vector modulo the invariant factors.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .zip(&self.factors)
            .map(|(c, d)| {
                if d.is_zero() {
                    c.clone()
                } else {
                    c.mod_floor(d)
                }
            })
            .collect()
    }

    /// Canonical coordinates of the class of `z`, which must lie in the lattice.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in an ambient of dimension {}",
                z.len(),
                self.ambient
            )));
        }
        let y = self
            .lattice_solver
            .solve(z)?
            .ok_or_else(|| Error::NotACycle("vector is not in the cycle lattice".into()))?;
        let w = self.relations.u.mul_vec(&y);
        let coords: Vec<BigInt> = self.kept.iter().map(|&i| w[i].clone()).collect();
        Ok(self.reduce(&coords))
    }

    /// An ambient representative of the class with the given coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.factors.len(), "coordinate length");
        self.generators.mul_vec(coords)
    }

    pub fn contains(&self, z: &[BigInt]) -> Result<bool> {
        if z.len() != self.ambient {
            return Err(Error::DimensionMismatch("ambient dimension".into()));
        }
        Ok(self.lattice_solver.solve(z)?.is_some())
    }

    /// Whether `z` represents the zero class.
    pub fn is_zero_class(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(Zero::is_zero))
    }

    /// Additive order of the class with the given coordinates (`None` if infinite).
    pub fn order_of(&self, coords: &[BigInt]) -> Option<BigInt> {
        let mut order = BigInt::one();
        for (c, d) in coords.iter().zip(&self.factors) {
            if c.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            let o = d / c.gcd(d);
            order = order.lcm(&o);
        }
        Some(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::matrix::bigvec;

    #[test]
    fn cyclic_quotient() {
        // Z / 5Z
        let a = IntMatrix::zeros(0, 1);
        let b = IntMatrix::from_rows(&[vec![5]]);
        let sq = Subquotient::integral(&a, &b).unwrap();
        assert_eq!(sq.invariant_factors(), &bigvec(&[5])[..]);
        assert_eq!(sq.coordinates(&bigvec(&[7])).unwrap(), bigvec(&[2]));
        assert_eq!(sq.order_of(&bigvec(&[2])), Some(BigInt::from(5)));
    }

    #[test]
    fn free_and_torsion() {
        // Z^2 / <(2,0)>  ≅ Z/2 ⊕ Z
        let a = IntMatrix::zeros(0, 2);
        let b = IntMatrix::from_rows(&[vec![2], vec![0]]);
        let sq = Subquotient::integral(&a, &b).unwrap();
        assert_eq!(sq.free_rank(), 1);
        assert_eq!(sq.torsion(), bigvec(&[2]));
    }

    #[test]
    fn modular_reduction() {
        // complex Z --2--> Z --0--> : H with Z/2 coefficients at the middle is Z/2
        let a = IntMatrix::from_rows(&[vec![0]]);
        let b = IntMatrix::from_rows(&[vec![2]]);
        let sq = Subquotient::modular(&a, &b, 2).unwrap();
        assert_eq!(sq.invariant_factors(), &bigvec(&[2])[..]);
        let sq3 = Subquotient::modular(&a, &b, 3).unwrap();
        assert!(sq3.is_trivial());
        // outgoing multiplication by 2 is zero mod 2: both ends survive
        let a = IntMatrix::from_rows(&[vec![2]]);
        let b = IntMatrix::zeros(1, 0);
        let sq = Subquotient::modular(&a, &b, 2).unwrap();
        assert_eq!(sq.invariant_factors(), &bigvec(&[2])[..]);
        assert_eq!(sq.coordinates(&bigvec(&[3])).unwrap(), bigvec(&[1]));
    }

    #[test]
    fn rejects_non_cycles() {
        let a = IntMatrix::from_rows(&[vec![1, 0]]);
        let b = IntMatrix::zeros(2, 0);
        let sq = Subquotient::integral(&a, &b).unwrap();
        assert!(sq.coordinates(&bigvec(&[1, 0])).is_err());
        assert!(sq.coordinates(&bigvec(&[0, 4])).is_ok());
    }
}
