//! Gaussian elimination over a [`Field`] on dense row vectors.

use crate::gf::{Elem, Field};

/// Reduced row echelon form of a matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Elem>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the echelon rows; the result is zero iff `v` lies in the row span.
    pub fn reduce(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                axpy(field, &mut v, field.neg(c), row);
            }
        }
        v
    }

    pub fn contains(&self, field: &Field, v: &[Elem]) -> bool {
        self.reduce(field, v).iter().all(|&c| c == 0)
    }
}

/// `y += a * x`
pub fn axpy(field: &Field, y: &mut [Elem], a: Elem, x: &[Elem]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = field.add(*yi, field.mul(a, xi));
    }
}

pub fn rref(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Echelon {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = field.neg(row[c]);
                axpy(field, row, f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots, cols }
}

pub fn rank(field: &Field, rows: &[Vec<Elem>], cols: usize) -> usize {
    rref(field, rows, cols).rank()
}

pub fn is_independent(field: &Field, rows: &[Vec<Elem>], cols: usize) -> bool {
    rank(field, rows, cols) == rows.len()
}

/// Solves `A x = b` where the rows of `A` are the given vectors.
///
/// Returns the solution with every free variable set to zero, or `None` if
/// the system is inconsistent.
pub fn solve(field: &Field, a: &[Vec<Elem>], b: &[Elem], cols: usize) -> Option<Vec<Elem>> {
    let aug: Vec<Vec<Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let e = rref(field, &aug, cols + 1);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (row, &pc) in e.rows.iter().zip(&e.pivots) {
        x[pc] = row[cols];
    }
    Some(x)
}

/// Basis of `{x : A x = 0}`, one vector per free column in increasing order.
pub fn nullspace(field: &Field, a: &[Vec<Elem>], cols: usize) -> Vec<Vec<Elem>> {
    let e = rref(field, a, cols);
    let mut is_pivot = vec![false; cols];
    for &pc in &e.pivots {
        is_pivot[pc] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn solve_and_nullspace_gf3() {
        let f = make_field(3, 1).unwrap();
        let a = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 2]];
        let b = vec![2, 1];
        let x = solve(&f, &a, &b, 4).unwrap();
        for (row, &bi) in a.iter().zip(&b) {
            assert_eq!(f.dot(row, &x), bi);
        }
        let ns = nullspace(&f, &a, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                assert_eq!(f.dot(row, v), 0);
            }
        }
        assert!(is_independent(&f, &ns, 4));
    }

    #[test]
    fn inconsistent_system() {
        let f = make_field(2, 1).unwrap();
        let a = vec![vec![1, 1], vec![1, 1]];
        assert!(solve(&f, &a, &[0, 1], 2).is_none());
        assert_eq!(rank(&f, &a, 2), 1);
    }

    #[test]
    fn span_membership() {
        let f = make_field(5, 1).unwrap();
        let e = rref(&f, &[vec![1, 2, 3], vec![0, 1, 4]], 3);
        // 2*(1,2,3) - 4*(0,1,4) over GF(5)
        assert!(e.contains(&f, &[2, 0, 0]));
        assert!(!e.contains(&f, &[0, 0, 1]));
    }
}
