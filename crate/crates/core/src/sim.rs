//! Statevector simulation: prepare |0…0⟩, apply unitaries to qubit subsets,
//! and evaluate expectation values of Pauli observables as ⟨ψ|O|ψ⟩.
//!
//! Convention: qubit 0 is the **most significant** bit of the basis index,
//! matching left-to-right tensor notation (X⊗I⊗I acts on qubit 0). All
//! expectation values are exact; there is no sampling or shot noise.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::tensor::{kron, pauli_i, pauli_x, pauli_y, pauli_z, C64, ComplexMatrix};
use crate::{Error, Result};

/// Maximum supported qubit count.
pub const MAX_QUBITS: usize = 8;

/// Pure state of `n` qubits as 2ⁿ complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Prepares |0…0⟩ on `n` qubits, 1 ≤ n ≤ 8.
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n));
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = C64::new(1.0, 0.0);
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    /// Wraps raw amplitudes; the length must be a power of two in range.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let dim = amplitudes.len();
        let n = dim.trailing_zeros() as usize;
        if dim == 0 || dim != (1 << n) || n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidData(String::from(
                "amplitude count must be 2^n with 1 <= n <= 8",
            )));
        }
        Ok(Self {
            num_qubits: n,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Σ|amplitude|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Bit position (from the least significant end) of `qubit` in a basis
    /// index, under the qubit-0-is-MSB convention.
    fn bit_pos(&self, qubit: usize) -> usize {
        self.num_qubits - 1 - qubit
    }

    /// Applies a 2ᵏ×2ᵏ unitary to the ordered qubit list `targets`
    /// (targets[0] is the most significant qubit of the gate's local basis),
    /// embedding identity on all other qubits.
    pub fn apply_unitary(&mut self, u: &ComplexMatrix, targets: &[usize]) -> Result<()> {
        let k = targets.len();
        if !u.is_square() || u.rows() != (1 << k) {
            return Err(Error::DimensionMismatch {
                expected: 1 << k,
                actual: u.rows(),
            });
        }
        for (idx, &t) in targets.iter().enumerate() {
            if t >= self.num_qubits {
                return Err(Error::BadTargets(alloc::format!(
                    "qubit {t} out of range for {} qubits",
                    self.num_qubits
                )));
            }
            if targets[..idx].contains(&t) {
                return Err(Error::BadTargets(alloc::format!("repeated qubit {t}")));
            }
        }

        let n = self.num_qubits;
        let dim_local = 1usize << k;
        let target_positions: Vec<usize> = targets.iter().map(|&t| self.bit_pos(t)).collect();
        let target_mask: usize = target_positions.iter().map(|&p| 1usize << p).sum();

        let mut gathered = vec![C64::new(0.0, 0.0); dim_local];
        // Iterate over every assignment of the non-target qubits.
        let mut base = 0usize;
        loop {
            // Global indices for each local basis state over this base.
            for (l, slot) in gathered.iter_mut().enumerate() {
                let mut idx = base;
                for (j, &pos) in target_positions.iter().enumerate() {
                    if (l >> (k - 1 - j)) & 1 == 1 {
                        idx |= 1 << pos;
                    }
                }
                *slot = self.amplitudes[idx];
            }
            for row in 0..dim_local {
                let mut acc = C64::new(0.0, 0.0);
                for (col, &g) in gathered.iter().enumerate() {
                    acc += u[(row, col)] * g;
                }
                let mut idx = base;
                for (j, &pos) in target_positions.iter().enumerate() {
                    if (row >> (k - 1 - j)) & 1 == 1 {
                        idx |= 1 << pos;
                    }
                }
                self.amplitudes[idx] = acc;
            }
            // Advance `base` to the next value whose target bits are all zero.
            base = (base | target_mask) + 1;
            base &= !target_mask;
            if base >= (1 << n) {
                break;
            }
        }
        Ok(())
    }

    /// ⟨ψ|O|ψ⟩ for a Pauli observable; the string length must match the
    /// qubit count. The result is real with |result| ≤ Σ|coefficients|.
    pub fn expectation(&self, obs: &PauliObservable) -> Result<f64> {
        let mut total = 0.0;
        for term in &obs.terms {
            if term.word.len() != self.num_qubits {
                return Err(Error::DimensionMismatch {
                    expected: self.num_qubits,
                    actual: term.word.len(),
                });
            }
            total += term.coefficient * self.term_expectation(&term.word);
        }
        Ok(total)
    }

    fn term_expectation(&self, word: &[Pauli]) -> f64 {
        let n = self.num_qubits;
        let mut flip_mask = 0usize;
        for (q, p) in word.iter().enumerate() {
            if matches!(p, Pauli::X | Pauli::Y) {
                flip_mask |= 1 << (n - 1 - q);
            }
        }
        let mut acc = C64::new(0.0, 0.0);
        for (i, &amp) in self.amplitudes.iter().enumerate() {
            if amp == C64::new(0.0, 0.0) {
                continue;
            }
            let mut phase = C64::new(1.0, 0.0);
            for (q, p) in word.iter().enumerate() {
                let bit = (i >> (n - 1 - q)) & 1;
                match p {
                    Pauli::I | Pauli::X => {}
                    Pauli::Y => {
                        phase *= if bit == 0 {
                            C64::new(0.0, 1.0)
                        } else {
                            C64::new(0.0, -1.0)
                        };
                    }
                    Pauli::Z => {
                        if bit == 1 {
                            phase = -phase;
                        }
                    }
                }
            }
            let j = i ^ flip_mask;
            acc += self.amplitudes[j].conj() * phase * amp;
        }
        acc.re
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauli(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn matrix(self) -> ComplexMatrix {
        match self {
            Pauli::I => pauli_i(),
            Pauli::X => pauli_x(),
            Pauli::Y => pauli_y(),
            Pauli::Z => pauli_z(),
        }
    }
}

/// One weighted Pauli string.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coefficient: f64,
    pub word: Vec<Pauli>,
}

/// Real-weighted sum of Pauli strings; Hermitian by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliObservable {
    terms: Vec<PauliTerm>,
}

impl PauliObservable {
    /// Observable with a single term, e.g. `single("XXZZ", 1.0)`.
    pub fn single(word: &str, coefficient: f64) -> Result<Self> {
        Ok(Self {
            terms: vec![PauliTerm {
                coefficient,
                word: parse_word(word)?,
            }],
        })
    }

    pub fn from_terms(terms: Vec<(f64, &str)>) -> Result<Self> {
        let terms = terms
            .into_iter()
            .map(|(coefficient, word)| {
                Ok(PauliTerm {
                    coefficient,
                    word: parse_word(word)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    /// Qubit count of the first term (all terms share it in valid use).
    pub fn num_qubits(&self) -> usize {
        self.terms.first().map_or(0, |t| t.word.len())
    }

    /// Dense matrix Σ cᵢ·Pᵢ, the slow-path oracle for [`StateVector::expectation`].
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.num_qubits();
        let mut out = ComplexMatrix::zeros(1 << n, 1 << n);
        for term in &self.terms {
            let word: String = term.word.iter().map(|p| p.to_char()).collect();
            let m = pauli_matrix(&word, term.coefficient)?;
            out = out.add(&m)?;
        }
        Ok(out)
    }
}

fn parse_word(word: &str) -> Result<Vec<Pauli>> {
    word.chars().map(Pauli::from_char).collect()
}

/// Kronecker product of single-qubit Pauli matrices times `coefficient`,
/// with the first letter on qubit 0 (the most significant factor).
pub fn pauli_matrix(word: &str, coefficient: f64) -> Result<ComplexMatrix> {
    let letters = parse_word(word)?;
    if letters.is_empty() {
        return Err(Error::InvalidData(String::from("empty Pauli string")));
    }
    let mut m = letters[0].matrix();
    for p in &letters[1..] {
        m = kron(&m, &p.matrix());
    }
    Ok(m.scale(Complex64::new(coefficient, 0.0)))
}
