//! Dense exact elimination over any [`Field`].

use super::field::Field;

/// Rank by fraction-free elimination: the pivot is the first row with a
/// nonzero entry in the leftmost unprocessed column, and rows below are
/// updated as `pivot * row - entry * pivot_row`.
pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let (top, rest) = m.split_at_mut(r + 1);
        let prow = &top[r];
        let pval = prow[c].clone();
        for row in rest.iter_mut() {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                let scaled = field.mul(&pval, &row[j]);
                row[j] = field.sub(&scaled, &field.mul(&factor, &prow[j]));
            }
        }
        r += 1;
    }
    r
}

/// Determinant of a square matrix by elimination with inverses.
pub fn determinant<F: Field>(field: &F, matrix: &[Vec<F::Elem>]) -> F::Elem {
    let n = matrix.len();
    let mut m: Vec<Vec<F::Elem>> = matrix.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !field.is_zero(&m[i][c])) else {
            return field.zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &m[c][c]);
        let inv = field.inv(&m[c][c]).expect("pivot is nonzero");
        for i in c + 1..n {
            if field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = field.mul(&m[i][c], &inv);
            for j in c..n {
                let d = field.mul(&factor, &m[c][j]);
                m[i][j] = field.sub(&m[i][j], &d);
            }
        }
    }
    det
}

/// Basis of `{x : M x = 0}` for `M` with `ncols` columns.
pub fn nullspace<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len()).find(|&i| !field.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, piv);
        let inv = field.inv(&m[r][c]).expect("pivot is nonzero");
        for j in 0..ncols {
            m[r][j] = field.mul(&m[r][j], &inv);
        }
        for i in 0..m.len() {
            if i == r || field.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..ncols {
                let d = field.mul(&factor, &m[r][j]);
                m[i][j] = field.sub(&m[i][j], &d);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![field.zero(); ncols];
        x[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = field.neg(&m[row][free]);
        }
        basis.push(x);
    }
    basis
}

/// Row-echelon basis grown one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: F, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let factor = v[*p].clone();
            for j in *p..self.dim {
                let d = f.mul(&factor, &row[j]);
                v[j] = f.sub(&v[j], &d);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !self.field.is_zero(x)) else {
            return false;
        };
        let inv = self.field.inv(&v[p]).expect("leading entry is nonzero");
        for x in v.iter_mut().skip(p) {
            *x = self.field.mul(x, &inv);
        }
        self.rows.push((p, v));
        true
    }
}
