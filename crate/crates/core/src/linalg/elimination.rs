//! Fraction-free (Bareiss) elimination. Every division performed is exact in
//! the ring generated by the matrix entries, so series entries with finite
//! support stay exact.

use crate::error::Result;
use crate::field::Scalar;

use super::Matrix;

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n {
        let mut pivot = None;
        for (p, row) in a.iter().enumerate().skip(k) {
            if !row[k].is_zero()? {
                pivot = Some(p);
                break;
            }
        }
        let Some(p) = pivot else {
            return Ok(T::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Row-echelon structure of a matrix: which original rows and which columns
/// carry the pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

pub fn echelon<T: Scalar>(m: &Matrix<T>) -> Result<Echelon> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_rows();
    let mut ids: Vec<usize> = (0..rows).collect();
    let mut prev = T::one();
    let mut r = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..cols {
        if r == rows {
            break;
        }
        let mut pivot = None;
        for (p, row) in a.iter().enumerate().skip(r) {
            if !row[col].is_zero()? {
                pivot = Some(p);
                break;
            }
        }
        let Some(p) = pivot else { continue };
        a.swap(p, r);
        ids.swap(p, r);
        for i in r + 1..rows {
            for j in col + 1..cols {
                let num = a[r][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[r][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][col] = T::zero();
        }
        prev = a[r][col].clone();
        pivot_cols.push(col);
        r += 1;
    }
    Ok(Echelon {
        rank: r,
        pivot_rows: ids[..r].to_vec(),
        pivot_cols,
    })
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> Result<usize> {
    Ok(echelon(m)?.rank)
}

/// Basis of the right null space `{x : M x = 0}`.
///
/// Each basis vector comes from Cramer's rule on a maximal nonsingular minor,
/// so no division is needed beyond exact Bareiss steps. Vectors are scaled so
/// that their first nonzero entry is the unit part of itself.
pub fn kernel<T: Scalar>(m: &Matrix<T>) -> Result<Vec<Vec<T>>> {
    let ech = echelon(m)?;
    let n = m.cols();
    let rows = &ech.pivot_rows;
    let minor = m.submatrix(rows, &ech.pivot_cols);
    let base = determinant(&minor)?;
    let mut basis = Vec::new();
    for f in (0..n).filter(|c| !ech.pivot_cols.contains(c)) {
        let mut v = vec![T::zero(); n];
        v[f] = base.clone();
        for (i, &pc) in ech.pivot_cols.iter().enumerate() {
            let mut cols = ech.pivot_cols.clone();
            cols[i] = f;
            v[pc] = determinant(&m.submatrix(rows, &cols))?.neg();
        }
        basis.push(normalize(v)?);
    }
    Ok(basis)
}

/// Makes the first nonzero entry one when that division is exact for every
/// entry, and otherwise divides by its unit part.
pub fn normalize<T: Scalar>(v: Vec<T>) -> Result<Vec<T>> {
    for x in &v {
        if !x.is_zero()? {
            let scaled = v.iter().map(|y| y.div_exact(x)).collect::<Result<Vec<_>>>()?;
            if scaled.iter().zip(&v).all(|(s, y)| s.mul(x) == *y) {
                return Ok(scaled);
            }
            let u = x.unit_part();
            return v.iter().map(|y| y.div(&u)).collect();
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use num_bigint::BigInt;

    fn rat_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
        .unwrap()
    }

    fn cofactor(m: &Matrix<Rational>) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::from_integer(1.into());
        }
        let mut acc = Rational::from_integer(0.into());
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = &m[(0, j)] * cofactor(&m.submatrix(&rows, &cols));
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&Matrix::<Rational>::identity(4)).unwrap(), Rational::from_integer(1.into()));
        assert_eq!(
            determinant(&rat_matrix(&[&[0, 1], &[-1, 0]])).unwrap(),
            Rational::from_integer(1.into())
        );
        assert_eq!(
            determinant(&rat_matrix(&[&[1, 2], &[2, 4]])).unwrap(),
            Rational::from_integer(0.into())
        );
    }

    #[test]
    fn matches_cofactor_expansion() {
        let m = rat_matrix(&[&[0, 3, -2, 5], &[4, 0, 1, -1], &[2, -7, 0, 3], &[1, 1, 1, 0]]);
        assert_eq!(determinant(&m).unwrap(), cofactor(&m));
        assert_eq!(cofactor(&m), Rational::from_integer(BigInt::from(170)));
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&rat_matrix(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(k.len(), 1);
        let r = |x: i64| Rational::from_integer(x.into());
        assert_eq!(k[0], vec![r(1), r(-1)]);
        assert!(kernel(&Matrix::<Rational>::identity(3)).unwrap().is_empty());
    }
}
