//! Small dense complex matrices.
//!
//! Everything in this crate lives in at most 16 dimensions (four qubits), so
//! matrices are plain row-major `Vec`s and every operation returns a fresh
//! value. The one concession to speed is [`sandwich`], which skips structural
//! zeros of the outer operator: lifted Kraus operators and strategy operators
//! have only a handful of non-zeros per row.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Absolute tolerance used when comparing algebraic identities.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidLength {
                expected: 1,
                found: 0,
            });
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidLength {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// The projector `|v⟩⟨v|`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut data = Vec::with_capacity(n * n);
        for a in v {
            for b in v {
                data.push(a * b.conj());
            }
        }
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.cols + col]
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                op: "add",
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dims() != other.dims() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - self†`.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&adjoint(self))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: self.dims(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    fn row_nonzeros(&self) -> Vec<Vec<(usize, C64)>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter_map(|j| {
                        let z = self.get(i, j);
                        (z != C64::new(0.0, 0.0)).then_some((j, z))
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product; entry `(i·b.rows + k, j·b.cols + l)` is `a(i,j)·b(k,l)`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut data = vec![C64::new(0.0, 0.0); rows * cols];
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a.get(i, j);
            for k in 0..b.rows {
                for l in 0..b.cols {
                    data[(i * b.rows + k) * cols + j * b.cols + l] = aij * b.get(k, l);
                }
            }
        }
    }
    ComplexMatrix { rows, cols, data }
}

/// Left-to-right Kronecker product of a non-empty list of factors.
pub fn kron_all<'a, I>(factors: I) -> Option<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    let mut iter = factors.into_iter();
    let first = iter.next()?.clone();
    Some(iter.fold(first, |acc, m| kron(&acc, m)))
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            left: a.dims(),
            right: b.dims(),
        });
    }
    let mut out = ComplexMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik == C64::new(0.0, 0.0) {
                continue;
            }
            let row = &mut out.data[i * b.cols..(i + 1) * b.cols];
            for (o, bkj) in row.iter_mut().zip(&b.data[k * b.cols..(k + 1) * b.cols]) {
                *o += aik * bkj;
            }
        }
    }
    Ok(out)
}

/// Conjugate transpose.
pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    let mut data = Vec::with_capacity(a.data.len());
    for j in 0..a.cols {
        for i in 0..a.rows {
            data.push(a.get(i, j).conj());
        }
    }
    ComplexMatrix {
        rows: a.cols,
        cols: a.rows,
        data,
    }
}

pub fn trace(a: &ComplexMatrix) -> Result<C64> {
    Ok(diagonal(a)?.into_iter().sum())
}

pub fn diagonal(a: &ComplexMatrix) -> Result<Vec<C64>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    Ok((0..a.rows).map(|i| a.get(i, i)).collect())
}

/// `op · m · op†`.
pub fn sandwich(op: &ComplexMatrix, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(op.rows, op.rows);
    sandwich_accumulate(op, m, &mut out)?;
    Ok(out)
}

/// Adds `op · m · op†` into `acc`, exploiting the row sparsity of `op`.
pub(crate) fn sandwich_accumulate(
    op: &ComplexMatrix,
    m: &ComplexMatrix,
    acc: &mut ComplexMatrix,
) -> Result<()> {
    if !m.is_square() || op.cols != m.rows {
        return Err(Error::DimensionMismatch {
            op: "sandwich",
            left: op.dims(),
            right: m.dims(),
        });
    }
    if acc.dims() != (op.rows, op.rows) {
        return Err(Error::DimensionMismatch {
            op: "sandwich",
            left: (op.rows, op.rows),
            right: acc.dims(),
        });
    }
    let n = m.cols;
    let nz = op.row_nonzeros();

    // left[i][l] = Σ_k op(i,k) m(k,l)
    let mut left = vec![C64::new(0.0, 0.0); op.rows * n];
    for (i, row_nz) in nz.iter().enumerate() {
        let dst = &mut left[i * n..(i + 1) * n];
        for &(k, v) in row_nz {
            for (d, mk) in dst.iter_mut().zip(&m.data[k * n..(k + 1) * n]) {
                *d += v * mk;
            }
        }
    }
    // acc[i][j] += Σ_l left[i][l] conj(op(j,l))
    for i in 0..op.rows {
        let li = &left[i * n..(i + 1) * n];
        for (j, row_nz) in nz.iter().enumerate() {
            let mut s = C64::new(0.0, 0.0);
            for &(l, v) in row_nz {
                s += li[l] * v.conj();
            }
            acc.data[i * op.rows + j] += s;
        }
    }
    Ok(())
}

/// Pauli matrices and the 2x2 identity.
pub mod pauli {
    use super::{ComplexMatrix, C64};

    pub fn identity() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        ComplexMatrix::new(2, 2, vec![o, l, l, o]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        let o = C64::new(0.0, 0.0);
        ComplexMatrix::new(2, 2, vec![o, -C64::i(), C64::i(), o]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn random_matrix(n: usize, entries: &[(f64, f64)]) -> ComplexMatrix {
        ComplexMatrix::new(
            n,
            n,
            entries.iter().map(|&(re, im)| C64::new(re, im)).collect(),
        )
        .unwrap()
    }

    fn matrix_strategy(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |e| random_matrix(n, &e))
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![c(1.0); 3]),
            Err(Error::InvalidLength {
                expected: 4,
                found: 3
            })
        ));
        assert_eq!(
            ComplexMatrix::new(1, 1, vec![C64::new(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&pauli::identity(), &pauli::identity()),
            ComplexMatrix::identity(4)
        );

        let xx = kron(&pauli::x(), &pauli::x());
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i + j == 3 { 1.0 } else { 0.0 };
                assert_eq!(xx.get(i, j), c(expected));
            }
        }

        // amplitude damping E0 at p = 0.5, entered by hand
        let e0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.5f64.sqrt()]).unwrap();
        let k = kron(&e0, &e0);
        let expected = [1.0, 0.5f64.sqrt(), 0.5f64.sqrt(), 0.5];
        let d = diagonal(&k).unwrap();
        for (got, want) in d.iter().zip(expected) {
            assert!((got - c(want)).norm() <= 1e-15);
        }
        assert!(k.max_abs_diff(&ComplexMatrix::from_diagonal(&expected.map(c))) <= 1e-15);
    }

    #[test]
    fn matmul_examples() {
        assert_eq!(matmul(&pauli::identity(), &pauli::x()).unwrap(), pauli::x());
        assert_eq!(matmul(&pauli::x(), &pauli::x()).unwrap(), pauli::identity());

        let p: f64 = 0.37;
        let e1 = ComplexMatrix::from_real(2, 2, &[0.0, p.sqrt(), 0.0, 0.0]).unwrap();
        let prod = matmul(&e1, &adjoint(&e1)).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[p, 0.0, 0.0, 0.0]).unwrap();
        assert!(prod.max_abs_diff(&expected) < 1e-15);

        let wide = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            matmul(&wide, &wide),
            Err(Error::DimensionMismatch { op: "matmul", .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(adjoint(&pauli::identity()), pauli::identity());
        assert_eq!(adjoint(&pauli::x()), pauli::x());
        // depolarizing E2 is proportional to sigma_y, hence Hermitian
        let e2 = pauli::y().scale_real((0.4f64 / 3.0).sqrt());
        assert_eq!(adjoint(&e2), e2);
        let wide = ComplexMatrix::zeros(2, 3);
        assert_eq!(adjoint(&wide).dims(), (3, 2));
    }

    #[test]
    fn trace_and_diagonal() {
        assert_eq!(trace(&ComplexMatrix::identity(4)).unwrap(), c(4.0));
        assert_eq!(trace(&pauli::x()).unwrap(), c(0.0));
        let v = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        assert!((trace(&ComplexMatrix::outer(&v)).unwrap() - c(1.0)).norm() < 1e-15);

        assert_eq!(diagonal(&pauli::identity()).unwrap(), vec![c(1.0), c(1.0)]);
        let mut ket = vec![c(0.0); 8];
        ket[0] = c(1.0);
        let mut expected = vec![c(0.0); 8];
        expected[0] = c(1.0);
        assert_eq!(diagonal(&ComplexMatrix::outer(&ket)).unwrap(), expected);

        // GHZ at theta = pi/2: cos^2(pi/4) = sin^2(pi/4) = 1/2
        let h = std::f64::consts::FRAC_PI_4;
        ket[0] = c(h.cos());
        ket[7] = c(h.sin());
        let d = diagonal(&ComplexMatrix::outer(&ket)).unwrap();
        assert!((d[0] - c(0.5)).norm() < 1e-15);
        assert!((d[7] - c(0.5)).norm() < 1e-15);
        assert!(d[1..7].iter().all(|z| z.norm() == 0.0));

        let wide = ComplexMatrix::zeros(2, 3);
        assert_eq!(trace(&wide), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert!(diagonal(&wide).is_err());
    }

    #[test]
    fn kron_dimensions_for_operator_sizes() {
        for a in [2usize, 4, 8] {
            for b in [2usize, 4, 8] {
                if a * b > 16 {
                    continue;
                }
                let k = kron(&ComplexMatrix::identity(a), &ComplexMatrix::zeros(b, b));
                assert_eq!(k.dims(), (a * b, a * b));
            }
        }
        let k = kron(&ComplexMatrix::zeros(2, 3), &ComplexMatrix::zeros(4, 1));
        assert_eq!(k.dims(), (8, 3));
    }

    #[test]
    fn sandwich_matches_dense_products() {
        let op = kron(&pauli::y(), &pauli::x())
            .add(&ComplexMatrix::identity(4))
            .unwrap();
        let m = random_matrix(
            4,
            &(0..16)
                .map(|k| ((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos()))
                .collect::<Vec<_>>(),
        );
        let dense = matmul(&matmul(&op, &m).unwrap(), &adjoint(&op)).unwrap();
        assert!(sandwich(&op, &m).unwrap().max_abs_diff(&dense) < 1e-14);
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in matrix_strategy(2), b in matrix_strategy(2), c in matrix_strategy(2)) {
            let left = kron(&kron(&a, &b), &c);
            let right = kron(&a, &kron(&b, &c));
            prop_assert_eq!(left.dims(), (8, 8));
            // each entry is the same triple product; only the multiplication order differs
            prop_assert!(left.max_abs_diff(&right) <= 1e-15);
        }

        #[test]
        fn adjoint_is_an_involution(a in matrix_strategy(4)) {
            prop_assert_eq!(adjoint(&adjoint(&a)), a);
        }

        #[test]
        fn trace_is_cyclic(a in matrix_strategy(8), b in matrix_strategy(8)) {
            let ab = trace(&matmul(&a, &b).unwrap()).unwrap();
            let ba = trace(&matmul(&b, &a).unwrap()).unwrap();
            prop_assert!((ab - ba).norm() <= 1e-13);
        }

        #[test]
        fn sandwich_agrees_with_matmul(op in matrix_strategy(4), m in matrix_strategy(4)) {
            let dense = matmul(&matmul(&op, &m).unwrap(), &adjoint(&op)).unwrap();
            prop_assert!(sandwich(&op, &m).unwrap().max_abs_diff(&dense) <= 1e-13);
        }
    }
}
