use crate::error::{Error, Result};
use crate::field::{Complex, OrderedField, Scalar};

use super::congruence::{classify_symmetric, Definiteness};
use super::elimination::determinant;
use super::Matrix;

/// A validated Hermitian matrix over `K(i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianForm<F> {
    entries: Matrix<Complex<F>>,
}

/// `phi = a + i b` with `a` symmetric and `b` skew-symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSplit<F> {
    pub a: Matrix<F>,
    pub b: Matrix<F>,
}

impl<F: OrderedField> RealSplit<F> {
    pub fn recombine(&self) -> Matrix<Complex<F>> {
        let n = self.a.rows();
        Matrix::from_fn(n, n, |i, j| Complex::new(self.a[(i, j)].clone(), self.b[(i, j)].clone()))
    }
}

impl<F: OrderedField> HermitianForm<F> {
    pub fn new(entries: Matrix<Complex<F>>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "hermitian form must be square, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        let n = entries.rows();
        for i in 0..n {
            for j in i..n {
                if !entries[(i, j)].sub(&entries[(j, i)].conj()).is_zero()? {
                    return Err(Error::HermitianViolation { row: i, col: j });
                }
            }
        }
        Ok(HermitianForm { entries })
    }

    pub fn from_rows(rows: Vec<Vec<Complex<F>>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn from_split(a: &Matrix<F>, b: &Matrix<F>) -> Result<Self> {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::DimensionMismatch("real and imaginary parts differ in shape".into()));
        }
        Self::new(RealSplit { a: a.clone(), b: b.clone() }.recombine())
    }

    /// `G^H G`, always nonnegative definite.
    pub fn gram(g: &Matrix<Complex<F>>) -> Result<Self> {
        Self::new(g.adjoint().mul(g)?)
    }

    pub fn n(&self) -> usize {
        self.entries.rows()
    }

    pub fn entries(&self) -> &Matrix<Complex<F>> {
        &self.entries
    }

    pub fn entry(&self, j: usize, k: usize) -> &Complex<F> {
        &self.entries[(j, k)]
    }

    /// Real diagonal entry `phi_kk`.
    pub fn diag(&self, k: usize) -> &F {
        &self.entries[(k, k)].re
    }

    pub fn split(&self) -> RealSplit<F> {
        RealSplit {
            a: self.entries.map(|z| z.re.clone()),
            b: self.entries.map(|z| z.im.clone()),
        }
    }

    /// Real `2n x 2n` symmetric matrix `[[a, -b], [b, a]]`; its quadratic
    /// form on `(x, y)` equals `phi(x + i y, x + i y)`.
    pub fn embedding(&self) -> Matrix<F> {
        let n = self.n();
        Matrix::from_fn(2 * n, 2 * n, |r, c| {
            let z = &self.entries[(r % n, c % n)];
            match (r < n, c < n) {
                (true, true) | (false, false) => z.re.clone(),
                (true, false) => z.im.neg(),
                (false, true) => z.im.clone(),
            }
        })
    }

    /// `sum conj(v_j) phi_jk v_k`, which is real.
    pub fn evaluate(&self, v: &[Complex<F>]) -> Result<F> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a form of size {}",
                v.len(),
                self.n()
            )));
        }
        let pv = self.entries.mul_vec(v)?;
        let mut acc = Complex::<F>::zero();
        for (x, y) in v.iter().zip(&pv) {
            acc = acc.add(&x.conj().mul(y));
        }
        if !acc.is_real()? {
            return Err(Error::Inconsistency("hermitian form took a non-real value".into()));
        }
        Ok(acc.re)
    }

    pub fn classify(&self) -> Result<Definiteness<Complex<F>>> {
        let n = self.n();
        Ok(match classify_symmetric(&self.embedding())? {
            Definiteness::Indefinite { witness: col } => Definiteness::Indefinite {
                witness: (0..n).map(|j| Complex::new(col[j].clone(), col[n + j].clone())).collect(),
            },
            Definiteness::PositiveDefinite => Definiteness::PositiveDefinite,
            Definiteness::NonNegDefinite => Definiteness::NonNegDefinite,
        })
    }

    /// Determinant of `phi`, real because `phi` is Hermitian.
    pub fn det(&self) -> Result<F> {
        let d = determinant(&self.entries)?;
        if !d.is_real()? {
            return Err(Error::Inconsistency("hermitian determinant is not real".into()));
        }
        Ok(d.re)
    }

    pub fn trace(&self) -> F {
        (0..self.n()).fold(F::zero(), |acc, k| acc.add(self.diag(k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn c(re: i64, im: i64) -> Complex<Rational> {
        Complex::new(Rational::from_i64(re), Rational::from_i64(im))
    }

    #[test]
    fn validates_hermitian_symmetry() {
        assert!(HermitianForm::from_rows(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(1, 0)]]).is_ok());
        assert_eq!(
            HermitianForm::from_rows(vec![vec![c(1, 0), c(0, 1)], vec![c(0, 1), c(1, 0)]]),
            Err(Error::HermitianViolation { row: 0, col: 1 })
        );
        assert_eq!(
            HermitianForm::from_rows(vec![vec![c(1, 1)]]),
            Err(Error::HermitianViolation { row: 0, col: 0 })
        );
    }

    #[test]
    fn embedding_preserves_values() {
        let phi = HermitianForm::from_rows(vec![vec![c(2, 0), c(1, 3)], vec![c(1, -3), c(5, 0)]]).unwrap();
        let v = vec![c(1, 2), c(-3, 1)];
        let direct = phi.evaluate(&v).unwrap();
        let e = phi.embedding();
        let x: Vec<Rational> = v.iter().map(|z| z.re.clone()).chain(v.iter().map(|z| z.im.clone())).collect();
        let ex = e.mul_vec(&x).unwrap();
        let embedded = x.iter().zip(&ex).fold(Rational::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
        assert_eq!(direct, embedded);
    }

    #[test]
    fn classification_and_witness() {
        let nnd = HermitianForm::from_rows(vec![vec![c(1, 0), c(0, 1)], vec![c(0, -1), c(1, 0)]]).unwrap();
        assert_eq!(nnd.classify().unwrap(), Definiteness::NonNegDefinite);
        assert_eq!(nnd.det().unwrap(), Rational::zero());
        let bad = HermitianForm::from_rows(vec![vec![c(1, 0), c(0, 2)], vec![c(0, -2), c(1, 0)]]).unwrap();
        match bad.classify().unwrap() {
            Definiteness::Indefinite { witness } => {
                assert_eq!(bad.evaluate(&witness).unwrap().sign(), crate::series::SignValue::Negative)
            }
            other => panic!("expected indefinite, got {other:?}"),
        }
        let pd = HermitianForm::from_rows(vec![vec![c(2, 0), c(0, 1)], vec![c(0, -1), c(2, 0)]]).unwrap();
        assert!(pd.classify().unwrap().is_positive_definite());
    }
}
