//! The built-in experiments: data generators, data-space group actions,
//! Hilbert-space representations, embedding architecture, invariant unitary,
//! and observable — everything needed to train and check each circuit.
//!
//! | name        | data                  | group  | qubits | params |
//! |-------------|-----------------------|--------|--------|--------|
//! | line2x2     | 2×2 line images       | C₂×C₂  | 3      | 2      |
//! | c2          | 2×2 line images       | C₂     | 4      | 4      |
//! | c2c2        | 2×2 line images       | C₂×C₂  | 4      | 4      |
//! | d4          | points in [−1.5,1.5]² | D₄     | 4      | 8      |
//! | s6          | digraphs on 6 nodes   | S₆     | 6      | 6      |
//! | intertwiner | 2×2 line images       | C₂×C₂  | 2      | 4      |

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::circuits::{
    estimate, line_training_circuit, CircuitSpec, EmbedInput, EmbeddingArch, Gate,
};
use crate::groups::{
    is_invariant, GroupElement, GroupImage, GroupPresentation, Representation, INVARIANT_TOL,
};
use crate::learner::TrainConfig;
use crate::sim::{pauli_matrix, PauliObservable};
use crate::{Error, Result};

/// Number of nodes in the S₆ graph experiment.
pub const GRAPH_NODES: usize = 6;
/// Independent inclusion probability for each ordered node pair.
pub const GRAPH_EDGE_PROB: f64 = 0.4;

/// A directed graph on six nodes; self-loops allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphData {
    edges: Vec<(usize, usize)>,
}

impl GraphData {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &edges {
            if i >= GRAPH_NODES || j >= GRAPH_NODES {
                return Err(Error::GraphParse(alloc::format!(
                    "edge ({i}, {j}) outside 0..{GRAPH_NODES}"
                )));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Relabels nodes: every edge (i, j) becomes (σ(i), σ(j)).
    pub fn relabeled(&self, sigma: &[usize]) -> Self {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(i, j)| (sigma[i], sigma[j]))
            .collect();
        edges.sort_unstable();
        Self { edges }
    }

    /// Connectedness of the underlying undirected graph (self-loops ignored).
    pub fn is_connected(&self) -> bool {
        let mut adj = [[false; GRAPH_NODES]; GRAPH_NODES];
        for &(i, j) in &self.edges {
            if i != j {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
        let mut seen = [false; GRAPH_NODES];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, reachable) in adj[v].iter().enumerate() {
                if *reachable && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Parses the adjacency-list text format, one node per line: `i: j k l`.
    pub fn parse_adjacency(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (node_str, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::GraphParse(alloc::format!("missing ':' in '{line}'")))?;
            let node: usize = node_str
                .trim()
                .parse()
                .map_err(|_| Error::GraphParse(alloc::format!("bad node '{node_str}'")))?;
            for tok in rest.split_whitespace() {
                let dst: usize = tok
                    .parse()
                    .map_err(|_| Error::GraphParse(alloc::format!("bad neighbor '{tok}'")))?;
                edges.push((node, dst));
            }
        }
        Self::new(edges)
    }

    /// Renders the adjacency-list text format accepted by
    /// [`GraphData::parse_adjacency`].
    pub fn to_adjacency_string(&self) -> String {
        let mut out = String::new();
        for node in 0..GRAPH_NODES {
            out.push_str(&alloc::format!("{node}:"));
            for &(i, j) in &self.edges {
                if i == node {
                    out.push_str(&alloc::format!(" {j}"));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Random digraph: each ordered pair independently with `GRAPH_EDGE_PROB`.
    pub fn sample(rng: &mut ChaCha8Rng) -> Self {
        let mut edges = Vec::new();
        for i in 0..GRAPH_NODES {
            for j in 0..GRAPH_NODES {
                if rng.gen_range(0.0..1.0) < GRAPH_EDGE_PROB {
                    edges.push((i, j));
                }
            }
        }
        Self { edges }
    }
}

/// One data point: a feature vector or a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum DataPoint {
    Vector(Vec<f64>),
    Graph(GraphData),
}

impl DataPoint {
    pub fn embed_input(&self) -> EmbedInput<'_> {
        match self {
            DataPoint::Vector(v) => EmbedInput::Vector(v),
            DataPoint::Graph(g) => EmbedInput::Edges(g.edges()),
        }
    }
}

/// A sampled data point with its (possibly unused) ±1 class label.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub point: DataPoint,
    pub label: f64,
}

/// The data-space image of one generator.
#[derive(Debug, Clone, PartialEq)]
pub enum DataAction {
    /// Coordinate permutation of a feature vector.
    PermuteVector(Vec<usize>),
    /// 2×2 linear map on a planar point, row-major.
    Linear2([[f64; 2]; 2]),
    /// Node relabeling of a graph.
    RelabelGraph(Vec<usize>),
}

impl DataAction {
    pub fn apply(&self, point: &DataPoint) -> Result<DataPoint> {
        match (self, point) {
            (DataAction::PermuteVector(perm), DataPoint::Vector(v)) => {
                if perm.len() != v.len() {
                    return Err(Error::DimensionMismatch {
                        expected: perm.len(),
                        actual: v.len(),
                    });
                }
                let mut out = vec![0.0; v.len()];
                for (i, &dest) in perm.iter().enumerate() {
                    out[dest] = v[i];
                }
                Ok(DataPoint::Vector(out))
            }
            (DataAction::Linear2(m), DataPoint::Vector(v)) => {
                if v.len() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        actual: v.len(),
                    });
                }
                Ok(DataPoint::Vector(vec![
                    m[0][0] * v[0] + m[0][1] * v[1],
                    m[1][0] * v[0] + m[1][1] * v[1],
                ]))
            }
            (DataAction::RelabelGraph(sigma), DataPoint::Graph(g)) => {
                Ok(DataPoint::Graph(g.relabeled(sigma)))
            }
            _ => Err(Error::InvalidData(String::from(
                "data action does not match data kind",
            ))),
        }
    }
}

/// What the training loss optimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    /// Squared invariance gap `(h(V(g)x) − h(x))²` over sampled generators.
    Equivariance,
    /// Mean squared error of the estimate against ±1 labels.
    Classification,
}

/// A fully wired experiment.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub name: String,
    pub circuit: CircuitSpec,
    pub w_rep: Representation,
    /// Data-space generator actions, parallel to `w_rep.group.generators`.
    pub actions: Vec<DataAction>,
    pub defaults: TrainConfig,
    pub task: Task,
    /// When set, the S₆ experiment trains on this one graph instead of
    /// resampling per batch element.
    pub fixed_graph: Option<GraphData>,
}

impl ExperimentSpec {
    pub fn num_params(&self) -> usize {
        self.circuit.num_params()
    }

    pub fn num_generators(&self) -> usize {
        self.actions.len()
    }

    /// Evaluates the circuit estimate at `theta` on one data point.
    pub fn estimate(&self, theta: &[f64], point: &DataPoint) -> Result<f64> {
        estimate(&self.circuit, theta, &point.embed_input())
    }

    /// Applies the data-space action of one generator.
    pub fn apply_generator(&self, gen_idx: usize, point: &DataPoint) -> Result<DataPoint> {
        self.actions
            .get(gen_idx)
            .ok_or_else(|| Error::UnknownGenerator(alloc::format!("#{gen_idx}")))?
            .apply(point)
    }

    /// Applies the data-space action of a group element (a generator word,
    /// leftmost factor acting last, matching `rep_matrix`).
    pub fn apply_element(&self, element: &GroupElement, point: &DataPoint) -> Result<DataPoint> {
        let mut out = point.clone();
        for &gen_idx in element.word.iter().rev() {
            out = self.apply_generator(gen_idx, &out)?;
        }
        Ok(out)
    }

    /// Draws `n` data points with labels from the experiment's distribution.
    pub fn sample_data(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<Sample> {
        (0..n)
            .map(|k| match self.name.as_str() {
                "d4" => {
                    let p = vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)];
                    let label = if checkerboard_label(&p).expect("in-domain sample") == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    Sample {
                        point: DataPoint::Vector(p),
                        label,
                    }
                }
                "s6" => {
                    let graph = match &self.fixed_graph {
                        Some(g) => g.clone(),
                        None => GraphData::sample(rng),
                    };
                    let label = if graph.is_connected() { 1.0 } else { -1.0 };
                    Sample {
                        point: DataPoint::Graph(graph),
                        label,
                    }
                }
                _ => {
                    let (image, vertical) = gen_line_image(k, rng);
                    Sample {
                        point: DataPoint::Vector(image.to_vec()),
                        label: if vertical { 1.0 } else { -1.0 },
                    }
                }
            })
            .collect()
    }
}

/// One 2×2 grayscale line image, flattened row-major to (a, b, c, d).
/// Line pixels are drawn from U[0.7, 1.0], background from U[0.0, 0.3];
/// labels alternate with `index` so any batch is balanced.
fn gen_line_image(index: usize, rng: &mut ChaCha8Rng) -> ([f64; 4], bool) {
    let vertical = index % 2 == 0;
    let which = rng.gen_range(0..2usize);
    let line_pixels: [usize; 2] = if vertical {
        [which, which + 2] // one column
    } else {
        [2 * which, 2 * which + 1] // one row
    };
    let mut image = [0.0; 4];
    for (i, px) in image.iter_mut().enumerate() {
        *px = if line_pixels.contains(&i) {
            rng.gen_range(0.7..1.0)
        } else {
            rng.gen_range(0.0..0.3)
        };
    }
    (image, vertical)
}

/// Balanced batch of labeled 2×2 line images; `true` marks vertical lines.
pub fn gen_line_images(n: usize, rng: &mut ChaCha8Rng) -> Vec<([f64; 4], bool)> {
    (0..n).map(|k| gen_line_image(k, rng)).collect()
}

/// Class of a point in the centered 3×3 checkerboard on [−1.5, 1.5]²:
/// the parity of ⌊x+1.5⌋ + ⌊y+1.5⌋ with cells clamped to {0, 1, 2}.
pub fn checkerboard_label(p: &[f64]) -> Result<u8> {
    if p.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: p.len(),
        });
    }
    if p.iter().any(|&v| !(-1.5..=1.5).contains(&v)) {
        return Err(Error::InvalidData(alloc::format!(
            "point ({}, {}) outside [-1.5, 1.5]^2",
            p[0],
            p[1]
        )));
    }
    let cell = |v: f64| -> i64 { (((v + 1.5) as i64).max(0)).min(2) };
    Ok(((cell(p[0]) + cell(p[1])) % 2) as u8)
}

fn y_layer(num_qubits: usize) -> Result<Gate> {
    let word: String = core::iter::repeat('Y').take(num_qubits).collect();
    Ok(Gate::Fixed {
        matrix: pauli_matrix(&word, 1.0)?,
        targets: (0..num_qubits).collect(),
    })
}

fn perm_gate(perm: &[usize]) -> Gate {
    Gate::Fixed {
        matrix: crate::groups::qubit_perm_matrix(perm),
        targets: (0..perm.len()).collect(),
    }
}

fn default_config(experiment: &str) -> TrainConfig {
    TrainConfig {
        experiment: experiment.to_string(),
        ..TrainConfig::default()
    }
}

/// Names of the built-in experiments.
pub fn experiment_names() -> &'static [&'static str] {
    &["line2x2", "c2", "c2c2", "d4", "s6", "intertwiner"]
}

/// Builds the fully wired spec for a built-in experiment. The invariant
/// unitary and the observable are certified against the Hilbert-space
/// representation at construction.
pub fn make_experiment(name: &str) -> Result<ExperimentSpec> {
    let spec = match name {
        "c2" => {
            let group = GroupPresentation::new("c2", &["F"], Some(2))?;
            let w_rep = Representation::new(
                group,
                vec![GroupImage::Permutation(vec![1, 0, 3, 2])],
            )?;
            let circuit = CircuitSpec::new(
                EmbeddingArch::ProductRy { num_qubits: 4 },
                Vec::new(),
                Vec::new(),
                PauliObservable::single("XXZZ", 1.0)?,
            )?;
            ExperimentSpec {
                name: name.to_string(),
                circuit,
                w_rep,
                actions: vec![DataAction::PermuteVector(vec![1, 0, 3, 2])],
                defaults: default_config(name),
                task: Task::Equivariance,
                fixed_graph: None,
            }
        }
        "c2c2" => {
            let group = GroupPresentation::new("c2c2", &["Fv", "Fh"], Some(4))?;
            let w_rep = Representation::new(
                group,
                vec![
                    GroupImage::Permutation(vec![1, 0, 3, 2]),
                    GroupImage::Permutation(vec![2, 3, 0, 1]),
                ],
            )?;
            let circuit = CircuitSpec::new(
                EmbeddingArch::ProductRy { num_qubits: 4 },
                Vec::new(),
                vec![y_layer(4)?],
                PauliObservable::single("ZZZZ", 1.0)?,
            )?;
            ExperimentSpec {
                name: name.to_string(),
                circuit,
                w_rep,
                actions: vec![
                    DataAction::PermuteVector(vec![1, 0, 3, 2]),
                    DataAction::PermuteVector(vec![2, 3, 0, 1]),
                ],
                defaults: default_config(name),
                task: Task::Equivariance,
                fixed_graph: None,
            }
        }
        "d4" => {
            let group = GroupPresentation::new("d4", &["r", "F"], Some(8))?;
            let w_rep = Representation::new(
                group,
                vec![
                    GroupImage::Permutation(vec![3, 0, 1, 2]),
                    GroupImage::Permutation(vec![1, 0, 3, 2]),
                ],
            )?;
            let circuit = CircuitSpec::new(
                EmbeddingArch::RzRy2Feature { num_qubits: 4 },
                Vec::new(),
                vec![y_layer(4)?, perm_gate(&[2, 3, 0, 1])],
                PauliObservable::single("ZZZZ", 1.0)?,
            )?;
            ExperimentSpec {
                name: name.to_string(),
                circuit,
                w_rep,
                actions: vec![
                    DataAction::Linear2([[0.0, -1.0], [1.0, 0.0]]),
                    DataAction::Linear2([[0.0, 1.0], [1.0, 0.0]]),
                ],
                defaults: default_config(name),
                task: Task::Equivariance,
                fixed_graph: None,
            }
        }
        "s6" => {
            let group = GroupPresentation::new("s6", &["t", "c"], Some(720))?;
            let transposition = vec![1, 0, 2, 3, 4, 5];
            let six_cycle = vec![1, 2, 3, 4, 5, 0];
            let w_rep = Representation::new(
                group,
                vec![
                    GroupImage::Permutation(transposition.clone()),
                    GroupImage::Permutation(six_cycle.clone()),
                ],
            )?;
            let circuit = CircuitSpec::new(
                EmbeddingArch::GraphCry {
                    num_nodes: GRAPH_NODES,
                },
                Vec::new(),
                vec![y_layer(GRAPH_NODES)?],
                PauliObservable::single("ZZZZZZ", 1.0)?,
            )?;
            ExperimentSpec {
                name: name.to_string(),
                circuit,
                w_rep,
                actions: vec![
                    DataAction::RelabelGraph(transposition),
                    DataAction::RelabelGraph(six_cycle),
                ],
                defaults: default_config(name),
                task: Task::Equivariance,
                fixed_graph: None,
            }
        }
        "line2x2" => {
            let group = GroupPresentation::new("c2c2", &["Fv", "Fh"], Some(4))?;
            let w_rep = Representation::new(
                group,
                vec![
                    GroupImage::Unitary(pauli_matrix("IXI", 1.0)?),
                    GroupImage::Unitary(pauli_matrix("XII", 1.0)?),
                ],
            )?;
            ExperimentSpec {
                name: name.to_string(),
                circuit: line_training_circuit()?,
                w_rep,
                actions: vec![
                    DataAction::PermuteVector(vec![1, 0, 3, 2]),
                    DataAction::PermuteVector(vec![2, 3, 0, 1]),
                ],
                defaults: default_config(name),
                task: Task::Classification,
                fixed_graph: None,
            }
        }
        "intertwiner" => {
            let group = GroupPresentation::new("c2c2", &["Fv", "Fh"], Some(4))?;
            let w_rep = Representation::new(
                group,
                vec![
                    GroupImage::Unitary(pauli_matrix("IX", 1.0)?),
                    GroupImage::Unitary(pauli_matrix("XI", 1.0)?),
                ],
            )?;
            let circuit = CircuitSpec::new(
                EmbeddingArch::AmplitudeThenUnitary {
                    data_qubits: 2,
                    num_qubits: 2,
                    layers: 1,
                },
                Vec::new(),
                Vec::new(),
                PauliObservable::single("XX", 1.0)?,
            )?;
            ExperimentSpec {
                name: name.to_string(),
                circuit,
                w_rep,
                actions: vec![
                    DataAction::PermuteVector(vec![1, 0, 3, 2]),
                    DataAction::PermuteVector(vec![2, 3, 0, 1]),
                ],
                defaults: default_config(name),
                task: Task::Equivariance,
                fixed_graph: None,
            }
        }
        other => return Err(Error::UnknownExperiment(other.to_string())),
    };
    certify_invariance(&spec)?;
    Ok(spec)
}

/// Checks the construction invariant: the invariant unitary and the
/// observable both commute with every generator of the Hilbert-space
/// representation.
fn certify_invariance(spec: &ExperimentSpec) -> Result<()> {
    let u_inv = spec.circuit.invariant_unitary_matrix()?;
    let obs = spec.circuit.observable.to_matrix()?;
    for (label, m) in [("invariant unitary", &u_inv), ("observable", &obs)] {
        let (ok, worst) = is_invariant(&spec.w_rep, m, INVARIANT_TOL)?;
        if !ok {
            return Err(Error::InvalidConfig(alloc::format!(
                "{label} of '{}' fails the commutant check (norm {worst:e})",
                spec.name,
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::enumerate_group;
    use rand::SeedableRng;

    #[test]
    fn all_experiments_construct_and_certify() {
        for name in experiment_names() {
            let spec = make_experiment(name).unwrap();
            assert_eq!(spec.name, *name);
            assert_eq!(spec.num_generators(), spec.w_rep.group.generators.len());
        }
        assert!(matches!(
            make_experiment("nope"),
            Err(Error::UnknownExperiment(_))
        ));
    }

    #[test]
    fn experiment_group_orders() {
        let c2 = make_experiment("c2").unwrap();
        assert_eq!(enumerate_group(&c2.w_rep, 4).unwrap().len(), 2);
        let d4 = make_experiment("d4").unwrap();
        assert_eq!(enumerate_group(&d4.w_rep, 16).unwrap().len(), 8);
    }

    #[test]
    fn s6_tensor_power_observable_is_invariant() {
        let s6 = make_experiment("s6").unwrap();
        let y6 = pauli_matrix("YYYYYY", 1.0).unwrap();
        let (ok, worst) = is_invariant(&s6.w_rep, &y6, 1e-9).unwrap();
        assert!(ok, "commutator norm {worst}");
    }

    #[test]
    fn data_actions_satisfy_the_group_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        // d4: r⁴ = F² = (rF)² = identity.
        let d4 = make_experiment("d4").unwrap();
        for _ in 0..100 {
            let p = DataPoint::Vector(vec![
                rng.gen_range(-1.5..1.5),
                rng.gen_range(-1.5..1.5),
            ]);
            for word in [
                vec![0usize, 0, 0, 0],
                vec![1, 1],
                vec![0, 1, 0, 1],
            ] {
                let moved = d4
                    .apply_element(&GroupElement::from_indices(&word), &p)
                    .unwrap();
                let DataPoint::Vector(v) = &moved else { panic!() };
                let DataPoint::Vector(orig) = &p else { panic!() };
                for (a, b) in v.iter().zip(orig.iter()) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
        // c2c2: Fv² = Fh² = identity on images.
        let c2c2 = make_experiment("c2c2").unwrap();
        for _ in 0..100 {
            let samples = c2c2.sample_data(1, &mut rng);
            let p = &samples[0].point;
            for g in 0..2 {
                let twice = c2c2
                    .apply_generator(g, &c2c2.apply_generator(g, p).unwrap())
                    .unwrap();
                assert_eq!(&twice, p);
            }
        }
        // s6: t² = c⁶ = identity on graphs.
        let s6 = make_experiment("s6").unwrap();
        for _ in 0..50 {
            let p = DataPoint::Graph(GraphData::sample(&mut rng));
            for word in [vec![0usize, 0], vec![1usize; 6]] {
                let moved = s6
                    .apply_element(&GroupElement::from_indices(&word), &p)
                    .unwrap();
                assert_eq!(moved, p);
            }
        }
    }

    #[test]
    fn line_images_have_line_structure_preserved_by_the_symmetries() {
        fn structure(v: &[f64]) -> Option<bool> {
            let bright: Vec<usize> = (0..4).filter(|&i| v[i] >= 0.7).collect();
            match bright.as_slice() {
                [a, b] if b - a == 2 => Some(true),  // a column
                [a, b] if b - a == 1 && a % 2 == 0 => Some(false), // a row
                _ => None,
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(107);
        let images = gen_line_images(100, &mut rng);
        let vertical_count = images.iter().filter(|(_, v)| *v).count();
        assert_eq!(vertical_count, 50);
        for (img, vertical) in &images {
            assert_eq!(structure(img), Some(*vertical));
            // 180° rotation and both flips keep the orientation.
            let rot = [img[3], img[2], img[1], img[0]];
            let flip_v = [img[1], img[0], img[3], img[2]];
            let flip_h = [img[2], img[3], img[0], img[1]];
            for moved in [rot, flip_v, flip_h] {
                assert_eq!(structure(&moved), Some(*vertical));
            }
        }
    }

    #[test]
    fn checkerboard_center_and_symmetry() {
        assert_eq!(checkerboard_label(&[0.0, 0.0]).unwrap(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(109);
        let rot = DataAction::Linear2([[0.0, -1.0], [1.0, 0.0]]);
        let flip = DataAction::Linear2([[0.0, 1.0], [1.0, 0.0]]);
        for _ in 0..1000 {
            let p = vec![rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)];
            let label = checkerboard_label(&p).unwrap();
            for action in [&rot, &flip] {
                let DataPoint::Vector(q) = action.apply(&DataPoint::Vector(p.clone())).unwrap()
                else {
                    panic!()
                };
                assert_eq!(checkerboard_label(&q).unwrap(), label);
            }
        }
        assert!(checkerboard_label(&[2.0, 0.0]).is_err());
    }

    #[test]
    fn d4_samples_stay_in_the_square_and_s6_edges_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(113);
        let d4 = make_experiment("d4").unwrap();
        for s in d4.sample_data(200, &mut rng) {
            let DataPoint::Vector(v) = s.point else { panic!() };
            assert!(v.iter().all(|x| (-1.5..=1.5).contains(x)));
        }
        let s6 = make_experiment("s6").unwrap();
        for s in s6.sample_data(50, &mut rng) {
            let DataPoint::Graph(g) = s.point else { panic!() };
            assert!(g
                .edges()
                .iter()
                .all(|&(i, j)| i < GRAPH_NODES && j < GRAPH_NODES));
        }
    }

    #[test]
    fn relabeling_preserves_connectedness() {
        let mut rng = ChaCha8Rng::seed_from_u64(127);
        let s6 = make_experiment("s6").unwrap();
        for _ in 0..100 {
            let g = GraphData::sample(&mut rng);
            let connected = g.is_connected();
            for _ in 0..10 {
                // Random permutation as a word in the generators.
                let len = rng.gen_range(0..12usize);
                let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..2usize)).collect();
                let moved = s6
                    .apply_element(
                        &GroupElement::from_indices(&word),
                        &DataPoint::Graph(g.clone()),
                    )
                    .unwrap();
                let DataPoint::Graph(h) = moved else { panic!() };
                assert_eq!(h.is_connected(), connected);
            }
        }
    }

    #[test]
    fn adjacency_text_round_trips_the_reference_graph() {
        let text = "0: 3 0 5 4\n1: 1 5 3 0 2\n2: 5 3 2 4\n3: 5\n4: 4 2\n5: 2 5 1 3\n";
        let g = GraphData::parse_adjacency(text).unwrap();
        assert_eq!(g.edges().len(), 4 + 5 + 4 + 1 + 2 + 4);
        assert!(g.edges().contains(&(0, 0)));
        assert!(g.edges().contains(&(3, 5)));
        let round = GraphData::parse_adjacency(&g.to_adjacency_string()).unwrap();
        assert_eq!(round, g);

        assert!(GraphData::parse_adjacency("0 3 4\n").is_err());
        assert!(GraphData::parse_adjacency("0: 9\n").is_err());
    }

    #[test]
    fn fixed_graph_mode_repeats_the_same_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(131);
        let mut s6 = make_experiment("s6").unwrap();
        let g = GraphData::sample(&mut rng);
        s6.fixed_graph = Some(g.clone());
        for s in s6.sample_data(10, &mut rng) {
            assert_eq!(s.point, DataPoint::Graph(g.clone()));
        }
    }
}
