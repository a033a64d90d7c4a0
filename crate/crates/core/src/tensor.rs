//! Dense complex linear algebra on small matrices (dimension ≤ 2⁸).
//!
//! Everything is double-precision complex in row-major order. The tolerance
//! ladder used across the crate: 1e-12 for algebraic identities on exact
//! inputs, 1e-10 for composed numerics.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;
use num_traits::Float;

use crate::{Error, Result};

/// Complex double-precision scalar.
pub type C64 = Complex64;

/// Frobenius-norm tolerance for the `hermitian` flag.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Frobenius-norm tolerance for the `unitary` flag.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance under which `herm_expm` accepts its generator as Hermitian.
pub const EXPM_INPUT_TOL: f64 = 1e-10;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&r| C64::new(r, 0.0)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    /// Frobenius norm `√Σ|a_ij|²`.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entrywise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.entries.len(), other.entries.len());
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖H − H†‖_F < tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.sub(&self.dagger()).map_or(false, |d| d.frobenius_norm() < tol)
    }

    /// `‖U†U − I‖_F < tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let gram = self.dagger().mul(self).expect("square");
        gram.sub(&Self::identity(self.rows))
            .map_or(false, |d| d.frobenius_norm() < tol)
    }

    /// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
    ///
    /// Returns `(eigenvalues, V)` with `self == V · diag(λ) · V†` and `V`
    /// unitary. The input is symmetrized before iterating, so callers should
    /// gate on [`ComplexMatrix::is_hermitian`] first if exactness matters.
    pub fn eigh(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: self.cols,
            });
        }
        let n = self.rows;
        // Work on (H + H†)/2 so roundoff in the input cannot stall the sweep.
        let mut a = self
            .add(&self.dagger())
            .expect("square")
            .scale(C64::new(0.5, 0.0));
        let mut v = ComplexMatrix::identity(n);
        let scale = a.frobenius_norm().max(1.0);
        let tol = 1e-14 * scale;

        for _sweep in 0..60 {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() < tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let alpha = a[(p, q)];
                    let r = alpha.norm();
                    if r < tol / (n as f64) {
                        continue;
                    }
                    let phase = alpha / r;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (2.0 * r);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // G affects columns p and q:
                    //   G[p][p] = c          G[p][q] = s
                    //   G[q][p] = -s·φ̄      G[q][q] = c·φ̄
                    let gqp = -s * phase.conj();
                    let gqq = c * phase.conj();
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c + akq * gqp;
                        a[(k, q)] = akp * s + akq * gqq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c + aqk * gqp.conj();
                        a[(q, k)] = apk * s + aqk * gqq.conj();
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c + vkq * gqp;
                        v[(k, q)] = vkp * s + vkq * gqq;
                    }
                }
            }
        }

        let eigvals = (0..n).map(|i| a[(i, i)].re).collect();
        Ok((eigvals, v))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Kronecker product `a ⊗ b`; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ia in 0..a.rows() {
        for ja in 0..a.cols() {
            let f = a[(ia, ja)];
            if f == C64::new(0.0, 0.0) {
                continue;
            }
            for ib in 0..b.rows() {
                for jb in 0..b.cols() {
                    out[(ia * b.rows() + ib, ja * b.cols() + jb)] = f * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// `exp(i·phi·h)` for Hermitian `h`, via eigendecomposition
/// `V · diag(e^{i·phi·λ}) · V†`. Rejects generators with
/// `‖H − H†‖_F ≥ 1e-10`; the result is unitary up to roundoff.
pub fn herm_expm(h: &ComplexMatrix, phi: f64) -> Result<ComplexMatrix> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.rows(),
            actual: h.cols(),
        });
    }
    let deviation = h.sub(&h.dagger())?.frobenius_norm();
    if deviation >= EXPM_INPUT_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let (eigvals, v) = h.eigh()?;
    let n = h.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let w = C64::from_polar(1.0, phi * eigvals[k]);
        for i in 0..n {
            let vik = v[(i, k)] * w;
            for j in 0..n {
                out[(i, j)] += vik * v[(j, k)].conj();
            }
        }
    }
    Ok(out)
}

/// `‖AB − BA‖_F` for square matrices of equal dimension.
pub fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            actual: b.rows(),
        });
    }
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    Ok(ab.sub(&ba)?.frobenius_norm())
}

/// `true` iff `‖U†U − I‖_F < tol`.
pub fn unitarity_check(u: &ComplexMatrix, tol: f64) -> bool {
    u.is_unitary(tol)
}

/// Single-qubit Pauli I.
pub fn pauli_i() -> ComplexMatrix {
    ComplexMatrix::identity(2)
}

/// Single-qubit Pauli X.
pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("shape")
}

/// Single-qubit Pauli Y.
pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::new(
        2,
        2,
        vec![
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ],
    )
    .expect("shape")
}

/// Single-qubit Pauli Z.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).expect("shape")
}

/// Two-qubit SWAP.
pub fn swap_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ],
    )
    .expect("shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let e = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = e;
                m[(j, i)] = e.conj();
            }
        }
        m
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i4 = kron(&pauli_i(), &pauli_i());
        assert!(i4.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn kron_xx_is_the_antidiagonal_reversal() {
        // X⊗X reverses a 4-vector, i.e. rotates the 2x2 image by 180°.
        let xx = kron(&pauli_x(), &pauli_x());
        let v = [1.0, 2.0, 3.0, 4.0].map(|r| C64::new(r, 0.0));
        let rotated = xx.matvec(&v).unwrap();
        for (k, amp) in rotated.iter().enumerate() {
            assert!((amp - v[3 - k]).norm() < 1e-15);
        }
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 { 1.0 } else { 0.0 };
                assert!((xx[(i, j)] - C64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn kron_zz_flips_the_sign_of_01() {
        let zz = kron(&pauli_z(), &pauli_z());
        let ket01 = [0.0, 1.0, 0.0, 0.0].map(|r| C64::new(r, 0.0));
        let out = zz.matvec(&ket01).unwrap();
        for (k, amp) in out.iter().enumerate() {
            let want = if k == 1 { -1.0 } else { 0.0 };
            assert!((amp - C64::new(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn kron_mixed_product_and_associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(2, &mut rng);
            let b = random_matrix(2, &mut rng);
            let c = random_matrix(2, &mut rng);
            let d = random_matrix(2, &mut rng);
            // (A⊗B)(C⊗D) = AC ⊗ BD
            let lhs = kron(&a, &b).mul(&kron(&c, &d)).unwrap();
            let rhs = kron(&a.mul(&c).unwrap(), &b.mul(&d).unwrap());
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
            // (A⊗B)⊗C = A⊗(B⊗C)
            let left = kron(&kron(&a, &b), &c);
            let right = kron(&a, &kron(&b, &c));
            assert!(left.max_abs_diff(&right) < 1e-12);
        }
    }

    #[test]
    fn herm_expm_zero_angle_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(8, &mut rng);
        let u = herm_expm(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn herm_expm_of_z_is_diagonal_phases() {
        let phi = 0.37;
        let u = herm_expm(&pauli_z(), phi).unwrap();
        assert!((u[(0, 0)] - C64::from_polar(1.0, phi)).norm() < 1e-12);
        assert!((u[(1, 1)] - C64::from_polar(1.0, -phi)).norm() < 1e-12);
        assert!(u[(0, 1)].norm() < 1e-12);
        assert!(u[(1, 0)].norm() < 1e-12);
    }

    #[test]
    fn herm_expm_matches_closed_form_for_root_two_generator() {
        // H = I⊗I⊗Z + I⊗X⊗X squares to 2·I, so
        // exp(iφH) = cos(√2 φ)·I + i·sin(√2 φ)·H/√2.
        let h = kron(&kron(&pauli_i(), &pauli_i()), &pauli_z())
            .add(&kron(&kron(&pauli_i(), &pauli_x()), &pauli_x()))
            .unwrap();
        let h2 = h.mul(&h).unwrap();
        assert!(h2.max_abs_diff(&ComplexMatrix::identity(8).scale(C64::new(2.0, 0.0))) < 1e-14);

        let phi = core::f64::consts::FRAC_PI_2;
        let root2 = 2.0_f64.sqrt();
        let expected = ComplexMatrix::identity(8)
            .scale(C64::new((root2 * phi).cos(), 0.0))
            .add(&h.scale(C64::new(0.0, (root2 * phi).sin() / root2)))
            .unwrap();
        let got = herm_expm(&h, phi).unwrap();
        assert!(got.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn herm_expm_rejects_non_hermitian_input() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = C64::new(0.5, 0.0);
        match herm_expm(&m, 1.0) {
            Err(Error::NotHermitian { .. }) => {}
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn herm_expm_one_parameter_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let h = random_hermitian(8, &mut rng);
            let phi = rng.gen_range(-3.0..3.0);
            let psi = rng.gen_range(-3.0..3.0);
            let prod = herm_expm(&h, phi)
                .unwrap()
                .mul(&herm_expm(&h, psi).unwrap())
                .unwrap();
            let direct = herm_expm(&h, phi + psi).unwrap();
            assert!(prod.sub(&direct).unwrap().frobenius_norm() < 1e-10);
        }
    }

    #[test]
    fn exponentials_of_commuting_generators_commute() {
        // Commuting pairs built as polynomials of a common Hermitian matrix.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let m = random_hermitian(8, &mut rng);
        let m2 = m.mul(&m).unwrap();
        let x = m.scale(C64::new(0.7, 0.0)).add(&m2).unwrap();
        let y = m2
            .scale(C64::new(-0.3, 0.0))
            .add(&m.scale(C64::new(1.9, 0.0)))
            .unwrap()
            .add(&ComplexMatrix::identity(8).scale(C64::new(0.4, 0.0)))
            .unwrap();
        assert!(commutator_norm(&x, &y).unwrap() < 1e-12);
        for _ in 0..20 {
            let phi = rng.gen_range(-4.0..4.0);
            let u = herm_expm(&x, phi).unwrap();
            assert!(commutator_norm(&u, &y).unwrap() < 1e-10);
        }
    }

    #[test]
    fn commutator_norm_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let any = random_matrix(4, &mut rng);
        assert!(commutator_norm(&ComplexMatrix::identity(4), &any).unwrap() < 1e-14);

        // Disjoint supports commute: [X⊗I, I⊗X] = 0.
        let xi = kron(&pauli_x(), &pauli_i());
        let ix = kron(&pauli_i(), &pauli_x());
        assert!(commutator_norm(&xi, &ix).unwrap() < 1e-14);

        // ‖XZ − ZX‖_F = ‖2XZ‖_F = 2√2.
        let got = commutator_norm(&pauli_x(), &pauli_z()).unwrap();
        assert!((got - 2.0 * 2.0_f64.sqrt()).abs() < 1e-12);

        let m3 = ComplexMatrix::identity(3);
        assert!(commutator_norm(&m3, &any).is_err());
    }

    #[test]
    fn unitarity_check_examples() {
        assert!(unitarity_check(&ComplexMatrix::identity(4), 1e-10));
        // Scaling breaks unitarity: 2·I is not a valid circuit operation.
        let twice = ComplexMatrix::identity(4).scale(C64::new(2.0, 0.0));
        assert!(!unitarity_check(&twice, 1e-10));
    }

    #[test]
    fn herm_expm_outputs_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let n = 1 << rng.gen_range(1..=4usize);
            let h = random_hermitian(n, &mut rng);
            let phi = rng.gen_range(-6.0..6.0);
            let u = herm_expm(&h, phi).unwrap();
            assert!(unitarity_check(&u, 1e-10));
        }
    }

    #[test]
    fn eigh_reconstructs_the_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for &n in &[2usize, 5, 16, 64] {
            let h = random_hermitian(n, &mut rng);
            let (vals, vecs) = h.eigh().unwrap();
            assert!(vecs.is_unitary(1e-10));
            let mut lambda = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                lambda[(i, i)] = C64::new(vals[i], 0.0);
            }
            let recon = vecs.mul(&lambda).unwrap().mul(&vecs.dagger()).unwrap();
            assert!(recon.sub(&h).unwrap().frobenius_norm() < 1e-10 * (n as f64));
        }
    }
}
