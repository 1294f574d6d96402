use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lattice::{AqElement, LatticeMonomial};
use crate::qcoeff::QFraction;

/// Coordinates of the columns (and optional extra column) in the monomial basis.
fn coordinate_matrix(columns: &[&AqElement]) -> Result<Vec<Vec<QFraction>>> {
    let mut rows: BTreeMap<&LatticeMonomial, usize> = BTreeMap::new();
    for c in columns {
        for (m, _) in c.terms() {
            let n = rows.len();
            rows.entry(m).or_insert(n);
        }
    }
    let mut mat = vec![vec![QFraction::zero(); columns.len()]; rows.len()];
    for (j, c) in columns.iter().enumerate() {
        for (m, x) in c.terms() {
            mat[rows[m]][j] = QFraction::from_qlaurent(x)?;
        }
    }
    Ok(mat)
}

/// Row-reduces in place; returns pivot columns (only among the first `ncols`).
fn row_reduce(mat: &mut [Vec<QFraction>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip().expect("nonzero pivot");
        for x in mat[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..mat[i].len() {
                    let d = &f * &mat[r][j];
                    mat[i][j] = &mat[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over `Q(q)` of the span of the given elements.
pub fn rank(columns: &[AqElement]) -> Result<usize> {
    let refs: Vec<&AqElement> = columns.iter().collect();
    let mut mat = coordinate_matrix(&refs)?;
    Ok(row_reduce(&mut mat, columns.len()).len())
}

/// Unique `c` with `sum c_j columns_j = target`, over `Q(q)`.
pub fn solve(columns: &[AqElement], target: &AqElement) -> Result<Vec<QFraction>> {
    let mut refs: Vec<&AqElement> = columns.iter().collect();
    refs.push(target);
    let mut mat = coordinate_matrix(&refs)?;
    let n = columns.len();
    let pivots = row_reduce(&mut mat, n);
    if pivots.len() < n {
        return Err(Error::SingularSystem);
    }
    if mat.iter().skip(n).any(|row| !row[n].is_zero()) {
        return Err(Error::Inconsistent);
    }
    Ok((0..n).map(|i| mat[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::QLaurent;

    #[test]
    fn small_systems() {
        let a = AqElement::x(0);
        let b = AqElement::y(0);
        let t = &a.scale(&QLaurent::q_pow(2)) - &b;
        let c = solve(&[a.clone(), b.clone()], &t).unwrap();
        assert_eq!(c, vec![QFraction::q_pow(2), QFraction::from_int(-1)]);
        assert!(matches!(solve(&[a.clone(), a.scale_int(3)], &a), Err(Error::SingularSystem)));
        assert!(matches!(solve(std::slice::from_ref(&a), &b), Err(Error::Inconsistent)));
        assert_eq!(rank(&[a.clone(), b.clone(), &a + &b]).unwrap(), 2);
    }

    #[test]
    fn q_dependent_rank() {
        // x y and y x are proportional over Q(q)
        let xy = &AqElement::x(0) * &AqElement::y(0);
        let yx = &AqElement::y(0) * &AqElement::x(0);
        assert_eq!(rank(&[xy, yx]).unwrap(), 1);
    }
}
