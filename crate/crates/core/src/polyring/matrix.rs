use super::field::Field;
use super::poly::Poly;
use super::ring::{PolyRing, RingRef};
use super::PolyError;

/// Dense row-major matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly<F>>) -> Result<Self, PolyError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(PolyError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let ring = entries[0].ring().clone();
        if entries.iter().any(|e| !PolyRing::same(e.ring(), &ring)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Poly<F>>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(PolyError::Shape("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.entries[0].ring()
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Poly<F>] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Stack `top` above `self`.
    pub fn stack_row(&self, top: Vec<Poly<F>>) -> Result<Self, PolyError> {
        if top.len() != self.cols {
            return Err(PolyError::Shape("row length differs from column count".into()));
        }
        let mut entries = top;
        entries.extend(self.entries.iter().cloned());
        Self::new(self.rows + 1, self.cols, entries)
    }

    /// Determinant of the square submatrix on the given rows and columns,
    /// by Laplace expansion along the first selected row.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Poly<F> {
        debug_assert_eq!(rows.len(), cols.len());
        let ring = self.ring();
        match rows.len() {
            0 => Poly::one(ring),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Poly::zero(ring);
                let r0 = rows[0];
                for (k, &c) in cols.iter().enumerate() {
                    let e = self.get(r0, c);
                    if e.is_zero() {
                        continue;
                    }
                    let rest_cols: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let sub = self.minor(&rows[1..], &rest_cols);
                    let term = e.mul(&sub).expect("same ring");
                    acc = if k % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    }
                    .expect("same ring");
                }
                acc
            }
        }
    }

    /// All nonzero `k x k` minors, rows and columns in lexicographic order
    /// of their index sets.
    pub fn minors(&self, k: usize) -> Result<Vec<Poly<F>>, PolyError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(PolyError::Shape(format!(
                "minor size {k} out of range for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Vec::new();
        for rs in subsets(self.rows, k) {
            for cs in subsets(self.cols, k) {
                let m = self.minor(&rs, &cs);
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{MonomialOrder, Rationals};
    use crate::textio::parse_polynomial;

    fn setup() -> RingRef<Rationals> {
        PolyRing::new(Rationals, &["a", "b", "c", "d"], MonomialOrder::GrevLex).unwrap()
    }

    #[test]
    fn two_by_two_determinant() {
        let r = setup();
        let e = |s| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::from_rows(vec![vec![e("a"), e("b")], vec![e("c"), e("d")]]).unwrap();
        assert_eq!(m.minors(2).unwrap(), vec![e("a*d - b*c")]);
        assert_eq!(m.minors(1).unwrap().len(), 4);
        assert!(m.minors(3).is_err());
        assert!(m.minors(0).is_err());
    }

    #[test]
    fn repeated_rows_give_no_minor() {
        let r = setup();
        let e = |s| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::from_rows(vec![vec![e("a"), e("b")], vec![e("a"), e("b")]]).unwrap();
        assert!(m.minors(2).unwrap().is_empty());
    }

    #[test]
    fn three_by_three_symmetric_determinant() {
        let r = PolyRing::new(Rationals, &["p0", "p1", "p2", "p3"], MonomialOrder::GrevLex).unwrap();
        let e = |s| parse_polynomial(s, &r).unwrap();
        let m = PolyMatrix::from_rows(vec![
            vec![e("p0"), e("p1"), e("p3")],
            vec![e("p1"), e("p0"), e("p2")],
            vec![e("p3"), e("p2"), e("p0")],
        ])
        .unwrap();
        assert_eq!(
            m.minors(3).unwrap(),
            vec![e("p0^3 - p0*p1^2 - p0*p2^2 + 2*p1*p2*p3 - p0*p3^2")]
        );
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }
}
