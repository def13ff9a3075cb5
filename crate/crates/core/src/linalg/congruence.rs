//! Congruence diagonalisation `Dᵀ S D = diag(..)` of symmetric matrices over
//! an ordered field. Uses symmetric pivoting, fraction-free elimination of
//! `[S | I]`, and a hyperbolic split when every remaining diagonal entry
//! vanishes.

use crate::error::{Error, Result};
use crate::field::{OrderedField, Scalar};
use crate::series::SignValue;

use super::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct Congruence<F> {
    /// Columns are the new basis vectors.
    pub transform: Matrix<F>,
    pub diagonal: Vec<F>,
    pub rank: usize,
}

/// Entries of the diagonal are products of consecutive leading minors, so no
/// division is ever performed on the result.
pub fn congruence_fraction_free<F: OrderedField>(s: &Matrix<F>) -> Result<Congruence<F>> {
    let (pre, rank, _) = pivot_plan(s)?;
    let n = s.rows();
    let sp = pre.transpose().mul(s)?.mul(&pre)?;

    let mut aug: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut row = sp.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            row
        })
        .collect();
    let mut prev = F::one();
    let mut minors = Vec::with_capacity(rank);
    for k in 0..rank {
        let pivot = aug[k][k].clone();
        if pivot.is_zero()? {
            return Err(Error::Inconsistency("pivot plan produced a zero leading minor".into()));
        }
        for i in k + 1..n {
            for j in k + 1..2 * n {
                let num = pivot.mul(&aug[i][j]).sub(&aug[i][k].mul(&aug[k][j]));
                aug[i][j] = num.div_exact(&prev)?;
            }
            aug[i][k] = F::zero();
        }
        minors.push(pivot.clone());
        prev = pivot;
    }
    for row in aug.iter().skip(rank) {
        for x in &row[rank..n] {
            if !x.is_zero()? {
                return Err(Error::Inconsistency("nonzero entry beyond the rank".into()));
            }
        }
    }

    let t = Matrix::from_fn(n, n, |i, j| aug[i][n + j].clone());
    let transform = pre.mul(&t.transpose())?;
    let diagonal = (0..n)
        .map(|k| {
            if k >= rank {
                F::zero()
            } else if k == 0 {
                minors[0].clone()
            } else {
                minors[k - 1].mul(&minors[k])
            }
        })
        .collect();
    Ok(Congruence { transform, diagonal, rank })
}

/// Same congruence with column `k` scaled by the inverse of the preceding
/// leading minor, giving diagonal entries `m_k / m_{k-1}`.
pub fn congruence_diagonalize<F: OrderedField>(s: &Matrix<F>) -> Result<Congruence<F>> {
    let ff = congruence_fraction_free(s)?;
    let n = s.rows();
    let mut minors = Vec::with_capacity(ff.rank);
    // diagonal_k = m_{k-1} m_k, m_{-1} = 1
    for k in 0..ff.rank {
        let m = if k == 0 {
            ff.diagonal[0].clone()
        } else {
            ff.diagonal[k].div(&minors[k - 1])?
        };
        minors.push(m);
    }
    let mut transform = ff.transform.clone();
    let mut diagonal = ff.diagonal.clone();
    for k in 0..n {
        let scale = if k == 0 || ff.rank == 0 {
            continue;
        } else if k < ff.rank {
            minors[k - 1].clone()
        } else {
            minors[ff.rank - 1].clone()
        };
        for i in 0..n {
            transform[(i, k)] = transform[(i, k)].div(&scale)?;
        }
        if k < ff.rank {
            diagonal[k] = minors[k].div(&scale)?;
        }
    }
    Ok(Congruence { transform, diagonal, rank: ff.rank })
}

/// Finds a congruence `E` (products of symmetric swaps and hyperbolic
/// splits) after which the first `rank` leading minors are nonzero. Also
/// returns those minors.
fn pivot_plan<F: OrderedField>(s: &Matrix<F>) -> Result<(Matrix<F>, usize, Vec<F>)> {
    s.check_symmetric()?;
    let n = s.rows();
    let mut w = s.to_rows();
    let mut e = Matrix::<F>::identity(n);
    let mut prev = F::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        if w[k][k].is_zero()? {
            let mut diag = None;
            for i in k + 1..n {
                if !w[i][i].is_zero()? {
                    diag = Some(i);
                    break;
                }
            }
            let chosen = match diag {
                Some(i) => i,
                None => {
                    let Some((i, j)) = off_diagonal(&w, k)? else {
                        return Ok((e, k, minors));
                    };
                    // e_i <- e_i + e_j makes the (i, i) entry 2 w_ij
                    for r in k..n {
                        let v = w[r][i].add(&w[r][j]);
                        w[r][i] = v;
                    }
                    for c in k..n {
                        let v = w[i][c].add(&w[j][c]);
                        w[i][c] = v;
                    }
                    for r in 0..n {
                        let v = e[(r, i)].add(&e[(r, j)]);
                        e[(r, i)] = v;
                    }
                    i
                }
            };
            if chosen != k {
                w.swap(chosen, k);
                for row in w.iter_mut() {
                    row.swap(chosen, k);
                }
                for r in 0..n {
                    let tmp = e[(r, k)].clone();
                    e[(r, k)] = e[(r, chosen)].clone();
                    e[(r, chosen)] = tmp;
                }
            }
        }
        let pivot = w[k][k].clone();
        for i in k + 1..n {
            for j in i..n {
                let num = pivot.mul(&w[i][j]).sub(&w[i][k].mul(&w[k][j]));
                let v = num.div_exact(&prev)?;
                w[j][i] = v.clone();
                w[i][j] = v;
            }
        }
        for i in k + 1..n {
            w[i][k] = F::zero();
            w[k][i] = F::zero();
        }
        minors.push(pivot.clone());
        prev = pivot;
    }
    Ok((e, n, minors))
}

fn off_diagonal<F: Scalar>(w: &[Vec<F>], k: usize) -> Result<Option<(usize, usize)>> {
    let n = w.len();
    for i in k..n {
        for j in i + 1..n {
            if !w[i][j].is_zero()? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Signature-style classification of a real symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum Definiteness<V> {
    PositiveDefinite,
    NonNegDefinite,
    /// `witness` is a vector on which the form is negative.
    Indefinite { witness: Vec<V> },
}

impl<V> Definiteness<V> {
    pub fn is_nonneg(&self) -> bool {
        !matches!(self, Definiteness::Indefinite { .. })
    }

    pub fn is_positive_definite(&self) -> bool {
        matches!(self, Definiteness::PositiveDefinite)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "positive_definite",
            Definiteness::NonNegDefinite => "nonneg_definite",
            Definiteness::Indefinite { .. } => "indefinite",
        }
    }
}

pub fn classify_symmetric<F: OrderedField>(s: &Matrix<F>) -> Result<Definiteness<F>> {
    // The diagonal is m_{k-1} m_k, so the signs follow from the minors alone;
    // the transform is only built when a witness is needed.
    let (_, rank, minors) = pivot_plan(s)?;
    let mut prev = SignValue::Positive;
    for m in &minors {
        let sign = m.sign();
        if sign == SignValue::IndeterminateAtTruncation {
            m.is_zero()?;
        }
        if sign != prev {
            let c = congruence_fraction_free(s)?;
            let k = c
                .diagonal
                .iter()
                .position(|d| d.sign() == SignValue::Negative)
                .ok_or_else(|| Error::Inconsistency("sign change without a negative diagonal entry".into()))?;
            return Ok(Definiteness::Indefinite { witness: c.transform.column(k) });
        }
        prev = sign;
    }
    Ok(if rank == s.rows() {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::NonNegDefinite
    })
}
