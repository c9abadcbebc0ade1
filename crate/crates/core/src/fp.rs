//! Dense exact linear algebra over the prime field F_p.
//!
//! Everything here is deterministic: row reduction always pivots on the
//! leftmost column using the first available row, so reduced forms (and
//! therefore every downstream basis) are canonical.

/// Multiplicative inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "zero has no inverse mod {p}");
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i64 % p as i64, p as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i64) as u32
}

/// Dot product of two coefficient vectors mod p.
pub fn dot_mod(a: &[u32], b: &[u32], p: u32) -> u32 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc += (*x as u64) * (*y as u64);
    }
    (acc % p as u64) as u32
}

/// `dst += c * src` componentwise mod p.
pub fn add_scaled(dst: &mut [u32], src: &[u32], c: u32, p: u32) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = ((*d as u64 + c as u64 * *s as u64) % p as u64) as u32;
    }
}

pub fn scale(v: &mut [u32], c: u32, p: u32) {
    for x in v.iter_mut() {
        *x = ((*x as u64 * c as u64) % p as u64) as u32;
    }
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.into_iter().map(|x| x % p));
        }
        FpMatrix {
            p,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot_mod(self.row(i), v, self.p))
            .collect()
    }

    /// In-place reduced row echelon form; returns the rank.
    pub fn rref(&mut self) -> usize {
        let (p, rows, cols) = (self.p, self.rows, self.cols);
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(src) = (pivot_row..rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..cols {
                    self.data.swap(src * cols + j, pivot_row * cols + j);
                }
            }
            let inv = inv_mod(self.get(pivot_row, col), p);
            for j in col..cols {
                let v = self.get(pivot_row, j);
                self.set(pivot_row, j, ((v as u64 * inv as u64) % p as u64) as u32);
            }
            for r in 0..rows {
                if r != pivot_row && self.get(r, col) != 0 {
                    let c = p - self.get(r, col);
                    for j in col..cols {
                        let v = (self.get(r, j) as u64 + c as u64 * self.get(pivot_row, j) as u64)
                            % p as u64;
                        self.data[r * cols + j] = v as u32;
                    }
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Row space as a canonical subspace of F_p^cols.
    pub fn row_space(&self) -> FpSubspace {
        let rows: Vec<Vec<u32>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        FpSubspace::from_rows(self.p, self.cols, rows)
    }

    /// Basis of the kernel `{ x : M x = 0 }`, one vector per free column,
    /// ordered by ascending free column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.clone();
        let rank = m.rref();
        let mut pivot_col_of_row = Vec::with_capacity(rank);
        let mut is_pivot = vec![false; self.cols];
        for r in 0..rank {
            let col = (0..self.cols)
                .find(|&c| m.get(r, c) != 0)
                .expect("rref row");
            pivot_col_of_row.push(col);
            is_pivot[col] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivot_col_of_row.iter().enumerate() {
                let c = m.get(r, free);
                if c != 0 {
                    v[pc] = p - c;
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A subspace of F_p^n held as a canonical reduced-row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpSubspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u32>>, // rref, no zero rows, sorted by pivot column
}

impl FpSubspace {
    pub fn empty(p: u32, ambient: usize) -> Self {
        FpSubspace {
            p,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        let mut s = Self::empty(p, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.basis.push(v);
        }
        s
    }

    pub fn from_rows(p: u32, ambient: usize, rows: Vec<Vec<u32>>) -> Self {
        let mut s = Self::empty(p, ambient);
        for r in rows {
            s.insert(&r);
        }
        s
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn pivot(row: &[u32]) -> Option<usize> {
        row.iter().position(|&x| x != 0)
    }

    /// Reduce `v` against the basis; the remainder is zero iff `v` lies in
    /// the subspace.
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|&x| x % p).collect();
        for b in &self.basis {
            let pc = Self::pivot(b).expect("basis rows are nonzero");
            if w[pc] != 0 {
                let c = p - w[pc];
                add_scaled(&mut w, b, c, p);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        is_zero_vec(&self.reduce(v))
    }

    /// Insert a vector, keeping the basis in canonical rref form.
    /// Returns true when the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = Self::pivot(&w) else {
            return false;
        };
        let inv = inv_mod(w[pc], p);
        scale(&mut w, inv, p);
        // back-eliminate the new pivot from the existing rows
        for b in &mut self.basis {
            if b[pc] != 0 {
                let c = p - b[pc];
                add_scaled(b, &w, c, p);
            }
        }
        let pos = self
            .basis
            .iter()
            .position(|b| Self::pivot(b).expect("nonzero") > pc)
            .unwrap_or(self.basis.len());
        self.basis.insert(pos, w);
        true
    }

    pub fn merge(&mut self, other: &FpSubspace) {
        assert_eq!(self.ambient, other.ambient);
        for b in &other.basis {
            self.insert(b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inverse_mod_small_primes() {
        for p in [2u32, 3, 5, 7, 251] {
            for a in 1..p {
                assert_eq!((a as u64 * inv_mod(a, p) as u64) % p as u64, 1);
            }
        }
    }

    #[test]
    fn rref_canonical_and_rank() {
        let mut m = FpMatrix::from_rows(3, 3, vec![vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1]]);
        let rank = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(m.row(0), &[1, 2, 0]);
        assert_eq!(m.row(1), &[0, 0, 1]);
    }

    #[test]
    fn nullspace_vectors_are_killed() {
        let m = FpMatrix::from_rows(5, 4, vec![vec![1, 2, 3, 4], vec![0, 1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
    }

    #[test]
    fn subspace_insert_is_canonical() {
        let mut a = FpSubspace::empty(3, 3);
        a.insert(&[1, 1, 0]);
        a.insert(&[0, 1, 1]);
        let mut b = FpSubspace::empty(3, 3);
        b.insert(&[2, 2, 0]);
        b.insert(&[1, 2, 1]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&[1, 0, 2]));
        assert!(!a.contains(&[0, 0, 1]));
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(rows in proptest::collection::vec(
            proptest::collection::vec(0u32..3, 4), 0..6)) {
            let mut m = FpMatrix::from_rows(3, 4, rows);
            let r1 = m.rref();
            let copy = m.clone();
            let r2 = m.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(m, copy);
        }

        #[test]
        fn subspace_membership_closed_under_sum(
            rows in proptest::collection::vec(proptest::collection::vec(0u32..5, 5), 1..5),
            c in 0u32..5)
        {
            let s = FpSubspace::from_rows(5, 5, rows.clone());
            // any scaled sum of generators stays inside
            let mut v = vec![0u32; 5];
            for r in &rows {
                add_scaled(&mut v, r, c, 5);
            }
            prop_assert!(s.contains(&v));
        }
    }
}
