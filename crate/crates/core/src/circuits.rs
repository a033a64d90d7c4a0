//! Circuit intermediate representation and the data-embedding architectures:
//! product-RY, two-feature RZ·RY, graph-controlled-RY, and amplitude
//! embeddings (normalized and unnormalized), plus the three-qubit symmetric
//! line-classifier circuit. [`estimate`] evaluates a full circuit to the
//! expectation value of its observable.
//!
//! Rotation conventions: `R_A(θ) = exp(−iθA/2)` for A ∈ {X, Y, Z}; CRY is the
//! controlled form of `R_Y`. Estimates built from these gates are 2π-periodic
//! in every angle while the rotations themselves are 4π-periodic.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

use crate::sim::{pauli_matrix, PauliObservable, StateVector};
use crate::tensor::{commutator_norm, C64, ComplexMatrix};
use crate::{Error, Result};

/// Rotation axis of a parameterized gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// `R_A(θ) = exp(−iθA/2)` as a dense 2×2 matrix.
pub fn rotation_matrix(axis: Axis, theta: f64) -> ComplexMatrix {
    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();
    let entries = match axis {
        Axis::X => vec![
            C64::new(c, 0.0),
            C64::new(0.0, -s),
            C64::new(0.0, -s),
            C64::new(c, 0.0),
        ],
        Axis::Y => vec![
            C64::new(c, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(c, 0.0),
        ],
        Axis::Z => vec![
            C64::from_polar(1.0, -theta / 2.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::from_polar(1.0, theta / 2.0),
        ],
    };
    ComplexMatrix::new(2, 2, entries).expect("shape")
}

/// Controlled rotation on (control, target), control as the local MSB.
pub fn controlled_rotation_matrix(axis: Axis, theta: f64) -> ComplexMatrix {
    let r = rotation_matrix(axis, theta);
    let mut m = ComplexMatrix::identity(4);
    for i in 0..2 {
        for j in 0..2 {
            m[(2 + i, 2 + j)] = r[(i, j)];
        }
    }
    m
}

/// Exponential gate `exp(i·angle·H)` with the eigendecomposition of the
/// Hermitian generator cached at construction.
#[derive(Debug, Clone)]
pub struct GeneratorExp {
    generator: ComplexMatrix,
    eigvals: Vec<f64>,
    eigvecs: ComplexMatrix,
}

impl GeneratorExp {
    pub fn new(generator: ComplexMatrix) -> Result<Self> {
        if !generator.is_hermitian(crate::tensor::EXPM_INPUT_TOL) {
            let deviation = generator.sub(&generator.dagger())?.frobenius_norm();
            return Err(Error::NotHermitian { deviation });
        }
        let (eigvals, eigvecs) = generator.eigh()?;
        Ok(Self {
            generator,
            eigvals,
            eigvecs,
        })
    }

    pub fn generator(&self) -> &ComplexMatrix {
        &self.generator
    }

    /// `exp(i·angle·H)` from the cached eigenpairs.
    pub fn unitary(&self, angle: f64) -> ComplexMatrix {
        let n = self.generator.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = C64::from_polar(1.0, angle * self.eigvals[k]);
            for i in 0..n {
                let vik = self.eigvecs[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.eigvecs[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// One gate in a circuit. Rotation angles are assembled as
/// `offset + θ[param] + x[data]`, taking only the pieces that are present.
#[derive(Debug, Clone)]
pub enum Gate {
    /// Fixed unitary on the listed qubits.
    Fixed {
        matrix: ComplexMatrix,
        targets: Vec<usize>,
    },
    Rotation {
        axis: Axis,
        qubit: usize,
        param: Option<usize>,
        data: Option<usize>,
        offset: f64,
    },
    ControlledRotation {
        axis: Axis,
        control: usize,
        target: usize,
        param: usize,
    },
    /// `exp(i·θ[param]·H)` on the listed qubits.
    Exp {
        gate: GeneratorExp,
        targets: Vec<usize>,
        param: usize,
    },
}

impl Gate {
    fn max_param_slot(&self) -> Option<usize> {
        match self {
            Gate::Fixed { .. } => None,
            Gate::Rotation { param, .. } => *param,
            Gate::ControlledRotation { param, .. } => Some(*param),
            Gate::Exp { param, .. } => Some(*param),
        }
    }

    fn apply(&self, state: &mut StateVector, theta: &[f64], x: &[f64]) -> Result<()> {
        match self {
            Gate::Fixed { matrix, targets } => state.apply_unitary(matrix, targets),
            Gate::Rotation {
                axis,
                qubit,
                param,
                data,
                offset,
            } => {
                let mut angle = *offset;
                if let Some(p) = param {
                    angle += theta[*p];
                }
                if let Some(d) = data {
                    angle += *x.get(*d).ok_or(Error::DimensionMismatch {
                        expected: d + 1,
                        actual: x.len(),
                    })?;
                }
                state.apply_unitary(&rotation_matrix(*axis, angle), &[*qubit])
            }
            Gate::ControlledRotation {
                axis,
                control,
                target,
                param,
            } => state.apply_unitary(
                &controlled_rotation_matrix(*axis, theta[*param]),
                &[*control, *target],
            ),
            Gate::Exp {
                gate,
                targets,
                param,
            } => state.apply_unitary(&gate.unitary(theta[*param]), targets),
        }
    }
}

/// Data-embedding architectures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingArch {
    /// `⊗ᵢ R_Y(θᵢ + xᵢ)|0⟩`; one parameter and one feature per qubit.
    ProductRy { num_qubits: usize },
    /// Qubit `i` receives `R_Y(θᵢ + x_{i mod 2})` then
    /// `R_Z(θ_{i+n} + x_{(i+1) mod 2})`; 2n parameters, 2 features.
    RzRy2Feature { num_qubits: usize },
    /// For each edge (i,j) with i≠j a CRY(θᵢ) from i to j; for each self-loop
    /// an R_Y(θᵢ) on i. Edges are applied in lexicographic (i,j) order.
    GraphCry { num_nodes: usize },
    /// Normalized amplitude embedding of a 2^k vector on the first k qubits;
    /// remaining qubits stay |0⟩.
    Amplitude {
        data_qubits: usize,
        num_qubits: usize,
    },
    /// Amplitude embedding followed by `layers` rounds of per-qubit
    /// `R_Y(θ)`·`R_Z(θ)` rotations (the learnable intertwiner).
    AmplitudeThenUnitary {
        data_qubits: usize,
        num_qubits: usize,
        layers: usize,
    },
}

impl EmbeddingArch {
    pub fn num_qubits(&self) -> usize {
        match self {
            EmbeddingArch::ProductRy { num_qubits }
            | EmbeddingArch::RzRy2Feature { num_qubits }
            | EmbeddingArch::Amplitude { num_qubits, .. }
            | EmbeddingArch::AmplitudeThenUnitary { num_qubits, .. } => *num_qubits,
            EmbeddingArch::GraphCry { num_nodes } => *num_nodes,
        }
    }

    pub fn num_params(&self) -> usize {
        match self {
            EmbeddingArch::ProductRy { num_qubits } => *num_qubits,
            EmbeddingArch::RzRy2Feature { num_qubits } => 2 * num_qubits,
            EmbeddingArch::GraphCry { num_nodes } => *num_nodes,
            EmbeddingArch::Amplitude { .. } => 0,
            EmbeddingArch::AmplitudeThenUnitary {
                num_qubits, layers, ..
            } => 2 * num_qubits * layers,
        }
    }
}

/// The data consumed by an embedding: a feature vector or a graph edge list.
#[derive(Debug, Clone, Copy)]
pub enum EmbedInput<'a> {
    Vector(&'a [f64]),
    Edges(&'a [(usize, usize)]),
}

impl<'a> EmbedInput<'a> {
    fn vector(&self) -> Result<&'a [f64]> {
        match self {
            EmbedInput::Vector(v) => Ok(v),
            EmbedInput::Edges(_) => Err(Error::InvalidData(String::from(
                "expected a feature vector, got a graph",
            ))),
        }
    }

    fn edges(&self) -> Result<&'a [(usize, usize)]> {
        match self {
            EmbedInput::Edges(e) => Ok(e),
            EmbedInput::Vector(_) => Err(Error::InvalidData(String::from(
                "expected a graph, got a feature vector",
            ))),
        }
    }
}

/// Prepares the embedded state for the given architecture.
pub fn embed(arch: &EmbeddingArch, theta: &[f64], input: &EmbedInput) -> Result<StateVector> {
    if theta.len() != arch.num_params() {
        return Err(Error::DimensionMismatch {
            expected: arch.num_params(),
            actual: theta.len(),
        });
    }
    match arch {
        EmbeddingArch::ProductRy { num_qubits } => {
            let x = input.vector()?;
            if x.len() != *num_qubits {
                return Err(Error::DimensionMismatch {
                    expected: *num_qubits,
                    actual: x.len(),
                });
            }
            let mut state = StateVector::zero(*num_qubits)?;
            for q in 0..*num_qubits {
                state.apply_unitary(&rotation_matrix(Axis::Y, theta[q] + x[q]), &[q])?;
            }
            Ok(state)
        }
        EmbeddingArch::RzRy2Feature { num_qubits } => {
            let x = input.vector()?;
            if x.len() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    actual: x.len(),
                });
            }
            let n = *num_qubits;
            let mut state = StateVector::zero(n)?;
            for q in 0..n {
                state.apply_unitary(&rotation_matrix(Axis::Y, theta[q] + x[q % 2]), &[q])?;
                state.apply_unitary(&rotation_matrix(Axis::Z, theta[q + n] + x[(q + 1) % 2]), &[q])?;
            }
            Ok(state)
        }
        EmbeddingArch::GraphCry { num_nodes } => {
            let mut edges = input.edges()?.to_vec();
            edges.sort_unstable();
            edges.dedup();
            embed_graph_edges_ordered(*num_nodes, theta, &edges)
        }
        EmbeddingArch::Amplitude {
            data_qubits,
            num_qubits,
        } => {
            let x = input.vector()?;
            amplitude_state(x, *data_qubits, *num_qubits)
        }
        EmbeddingArch::AmplitudeThenUnitary {
            data_qubits,
            num_qubits,
            layers,
        } => {
            let x = input.vector()?;
            let mut state = amplitude_state(x, *data_qubits, *num_qubits)?;
            let n = *num_qubits;
            let mut slot = 0;
            for _ in 0..*layers {
                for q in 0..n {
                    state.apply_unitary(&rotation_matrix(Axis::Y, theta[slot]), &[q])?;
                    state.apply_unitary(&rotation_matrix(Axis::Z, theta[slot + 1]), &[q])?;
                    slot += 2;
                }
            }
            Ok(state)
        }
    }
}

/// Graph-CRY embedding with the edges applied exactly in the order given.
/// [`embed`] sorts lexicographically first; this entry point exposes the
/// order so relabeling covariance can be checked under order transport.
pub fn embed_graph_edges_ordered(
    num_nodes: usize,
    theta: &[f64],
    edges: &[(usize, usize)],
) -> Result<StateVector> {
    if theta.len() != num_nodes {
        return Err(Error::DimensionMismatch {
            expected: num_nodes,
            actual: theta.len(),
        });
    }
    let mut state = StateVector::zero(num_nodes)?;
    for &(i, j) in edges {
        if i >= num_nodes || j >= num_nodes {
            return Err(Error::InvalidData(alloc::format!(
                "edge ({i}, {j}) outside 0..{num_nodes}"
            )));
        }
        if i == j {
            state.apply_unitary(&rotation_matrix(Axis::Y, theta[i]), &[i])?;
        } else {
            state.apply_unitary(&controlled_rotation_matrix(Axis::Y, theta[i]), &[i, j])?;
        }
    }
    Ok(state)
}

fn amplitude_state(x: &[f64], data_qubits: usize, num_qubits: usize) -> Result<StateVector> {
    if x.len() != (1 << data_qubits) {
        return Err(Error::DimensionMismatch {
            expected: 1 << data_qubits,
            actual: x.len(),
        });
    }
    if num_qubits < data_qubits {
        return Err(Error::QubitCountOutOfRange(num_qubits));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::InvalidData(String::from(
            "cannot amplitude-embed the zero vector",
        )));
    }
    let pad = 1usize << (num_qubits - data_qubits);
    let mut amplitudes = vec![C64::new(0.0, 0.0); 1 << num_qubits];
    for (k, &v) in x.iter().enumerate() {
        amplitudes[k * pad] = C64::new(v / norm, 0.0);
    }
    StateVector::from_amplitudes(amplitudes)
}

/// The unnormalized amplitude embedding `T̂(x) = (x₀, …, x_{d−1})` as raw
/// complex amplitudes. Linear; the zero vector maps to zero.
pub fn unnormalized_embed_vector(x: &[f64]) -> Vec<C64> {
    x.iter().map(|&v| C64::new(v, 0.0)).collect()
}

/// A full circuit: embedding, optional parameterized gates, a fixed invariant
/// tail, and the measured observable.
#[derive(Debug, Clone)]
pub struct CircuitSpec {
    pub num_qubits: usize,
    pub embedding: EmbeddingArch,
    pub param_gates: Vec<Gate>,
    pub invariant_gates: Vec<Gate>,
    pub observable: PauliObservable,
    num_params: usize,
}

impl CircuitSpec {
    pub fn new(
        embedding: EmbeddingArch,
        param_gates: Vec<Gate>,
        invariant_gates: Vec<Gate>,
        observable: PauliObservable,
    ) -> Result<Self> {
        let num_qubits = embedding.num_qubits();
        if observable.num_qubits() != num_qubits {
            return Err(Error::DimensionMismatch {
                expected: num_qubits,
                actual: observable.num_qubits(),
            });
        }
        let mut num_params = embedding.num_params();
        for g in &param_gates {
            if let Some(slot) = g.max_param_slot() {
                num_params = num_params.max(slot + 1);
            }
        }
        for g in &invariant_gates {
            if g.max_param_slot().is_some() {
                return Err(Error::InvalidConfig(String::from(
                    "invariant gates must be parameter-free",
                )));
            }
        }
        Ok(Self {
            num_qubits,
            embedding,
            param_gates,
            invariant_gates,
            observable,
            num_params,
        })
    }

    pub fn num_params(&self) -> usize {
        self.num_params
    }

    /// Multiplies the invariant tail out to a dense matrix (for commutant
    /// certification).
    pub fn invariant_unitary_matrix(&self) -> Result<ComplexMatrix> {
        gate_list_matrix(self.num_qubits, &self.invariant_gates)
    }
}

/// Dense matrix of a parameter-free gate list, columns built by applying the
/// gates to each basis state.
pub fn gate_list_matrix(num_qubits: usize, gates: &[Gate]) -> Result<ComplexMatrix> {
    let dim = 1usize << num_qubits;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[col] = C64::new(1.0, 0.0);
        let mut state = StateVector::from_amplitudes(amps)?;
        for g in gates {
            g.apply(&mut state, &[], &[])?;
        }
        for (row, &a) in state.amplitudes().iter().enumerate() {
            m[(row, col)] = a;
        }
    }
    Ok(m)
}

/// Runs the full pipeline — embed, parameterized gates, invariant tail — and
/// returns the expectation value of the observable. Deterministic.
pub fn estimate(spec: &CircuitSpec, theta: &[f64], input: &EmbedInput) -> Result<f64> {
    if theta.len() != spec.num_params {
        return Err(Error::DimensionMismatch {
            expected: spec.num_params,
            actual: theta.len(),
        });
    }
    let embed_params = spec.embedding.num_params();
    let mut state = embed(&spec.embedding, &theta[..embed_params], input)?;
    let x = match input {
        EmbedInput::Vector(v) => *v,
        EmbedInput::Edges(_) => &[],
    };
    for g in &spec.param_gates {
        g.apply(&mut state, theta, x)?;
    }
    for g in &spec.invariant_gates {
        g.apply(&mut state, theta, x)?;
    }
    state.expectation(&spec.observable)
}

/// The two commuting-with-the-symmetry generators of the §-style line
/// classifier: `I⊗I⊗Z + I⊗X⊗X` and `I⊗I⊗Z + X⊗I⊗X` on three qubits.
fn line_generators() -> Result<(ComplexMatrix, ComplexMatrix)> {
    let h1 = pauli_matrix("IIZ", 1.0)?.add(&pauli_matrix("IXX", 1.0)?)?;
    let h2 = pauli_matrix("IIZ", 1.0)?.add(&pauli_matrix("XIX", 1.0)?)?;
    // Both generators commute with the symmetry representation X⊗I⊗I, I⊗X⊗I.
    for h in [&h1, &h2] {
        for w in ["XII", "IXI"] {
            let norm = commutator_norm(h, &pauli_matrix(w, 1.0)?)?;
            assert!(norm < 1e-12, "line generator fails to commute with {w}");
        }
    }
    Ok((h1, h2))
}

/// Three-qubit line-classifier circuit with one shared trainable parameter:
/// amplitude-embed the 2×2 image on qubits 0–1, keep qubit 2 as the |0⟩
/// readout, apply `e^{iφ(IIZ+IXX)}` then `e^{iφ(IIZ+XIX)}`, and measure Z on
/// the readout. Evaluate with `estimate(&spec, &[phi], …)`.
pub fn line_classifier_circuit() -> Result<CircuitSpec> {
    let (h1, h2) = line_generators()?;
    CircuitSpec::new(
        EmbeddingArch::Amplitude {
            data_qubits: 2,
            num_qubits: 3,
        },
        vec![
            Gate::Exp {
                gate: GeneratorExp::new(h1)?,
                targets: vec![0, 1, 2],
                param: 0,
            },
            Gate::Exp {
                gate: GeneratorExp::new(h2)?,
                targets: vec![0, 1, 2],
                param: 0,
            },
        ],
        Vec::new(),
        PauliObservable::single("IIZ", 1.0)?,
    )
}

/// Trainable variant of the line classifier with two independent parameters
/// and a fixed R_X(π/2) on the readout between the two exponentials. The
/// shared-parameter circuit is fully symmetric under exchanging the two data
/// qubits, which maps vertical lines to horizontal ones, so its estimate
/// cannot separate the classes; the readout rotation plus independent angles
/// breaks exactly that degeneracy while staying inside the symmetric gate
/// set.
pub fn line_training_circuit() -> Result<CircuitSpec> {
    let (h1, h2) = line_generators()?;
    CircuitSpec::new(
        EmbeddingArch::Amplitude {
            data_qubits: 2,
            num_qubits: 3,
        },
        vec![
            Gate::Exp {
                gate: GeneratorExp::new(h1)?,
                targets: vec![0, 1, 2],
                param: 0,
            },
            Gate::Rotation {
                axis: Axis::X,
                qubit: 2,
                param: None,
                data: None,
                offset: core::f64::consts::FRAC_PI_2,
            },
            Gate::Exp {
                gate: GeneratorExp::new(h2)?,
                targets: vec![0, 1, 2],
                param: 1,
            },
        ],
        Vec::new(),
        PauliObservable::single("IIZ", 1.0)?,
    )
}
