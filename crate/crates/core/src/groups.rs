//! Finite groups presented by generators: unitary and permutation
//! representations, breadth-first closure enumeration, SWAP-network
//! compilation of permutations, twirling, and commutant checks.
//!
//! Permutations are stored as content maps: `perm[i]` is the qubit that
//! receives the state currently on qubit `i`. Permutation representations
//! stay in this exact integer form until a matrix is actually needed, so
//! closure and deduplication over S₆ (720 elements) are exact.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::tensor::{commutator_norm, C64, ComplexMatrix, UNITARY_TOL};
use crate::{Error, Result};

/// Matrix-equality tolerance used to deduplicate unitary closures.
pub const DEDUP_TOL: f64 = 1e-9;
/// Commutant tolerance for `is_invariant` in experiment wiring.
pub const INVARIANT_TOL: f64 = 1e-9;

/// A finite group named by its generator labels.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    pub name: String,
    pub generators: Vec<String>,
    pub known_order: Option<usize>,
}

impl GroupPresentation {
    pub fn new(name: &str, generators: &[&str], known_order: Option<usize>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::InvalidConfig(alloc::format!(
                    "duplicate generator label '{g}'"
                )));
            }
        }
        Ok(Self {
            name: String::from(name),
            generators: generators.iter().map(|&g| String::from(g)).collect(),
            known_order,
        })
    }

    pub fn generator_index(&self, label: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == label)
            .ok_or_else(|| Error::UnknownGenerator(String::from(label)))
    }
}

/// Image of a group element: a dense unitary, or a qubit permutation kept in
/// integer form.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupImage {
    Unitary(ComplexMatrix),
    /// Content map on qubits: qubit `i`'s state moves to qubit `perm[i]`.
    Permutation(Vec<usize>),
}

impl GroupImage {
    /// Hilbert dimension of the image.
    pub fn dim(&self) -> usize {
        match self {
            GroupImage::Unitary(m) => m.rows(),
            GroupImage::Permutation(p) => 1 << p.len(),
        }
    }

    /// Product `self · other` (so `other` acts first on a ket).
    pub fn compose(&self, other: &GroupImage) -> Result<GroupImage> {
        match (self, other) {
            (GroupImage::Permutation(a), GroupImage::Permutation(b)) => {
                if a.len() != b.len() {
                    return Err(Error::DimensionMismatch {
                        expected: a.len(),
                        actual: b.len(),
                    });
                }
                Ok(GroupImage::Permutation(b.iter().map(|&k| a[k]).collect()))
            }
            _ => {
                let m = self.to_matrix().mul(&other.to_matrix())?;
                Ok(GroupImage::Unitary(m))
            }
        }
    }

    /// Dense matrix form.
    pub fn to_matrix(&self) -> ComplexMatrix {
        match self {
            GroupImage::Unitary(m) => m.clone(),
            GroupImage::Permutation(p) => qubit_perm_matrix(p),
        }
    }

    fn approx_eq(&self, other: &GroupImage, tol: f64) -> bool {
        match (self, other) {
            (GroupImage::Permutation(a), GroupImage::Permutation(b)) => a == b,
            (a, b) => a.to_matrix().max_abs_diff(&b.to_matrix()) < tol,
        }
    }
}

/// A representation: one image per generator, closed over products.
#[derive(Debug, Clone)]
pub struct Representation {
    pub group: GroupPresentation,
    pub dim: usize,
    gen_images: Vec<GroupImage>,
}

impl Representation {
    /// Validates that every generator image is unitary at 1e-10 and that the
    /// image count matches the presentation.
    pub fn new(group: GroupPresentation, gen_images: Vec<GroupImage>) -> Result<Self> {
        if group.generators.len() != gen_images.len() {
            return Err(Error::DimensionMismatch {
                expected: group.generators.len(),
                actual: gen_images.len(),
            });
        }
        let dim = gen_images
            .first()
            .map(GroupImage::dim)
            .ok_or_else(|| Error::InvalidConfig(String::from("representation has no generators")))?;
        for img in &gen_images {
            if img.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: img.dim(),
                });
            }
            if let GroupImage::Unitary(m) = img {
                if !m.is_unitary(UNITARY_TOL) {
                    return Err(Error::NotUnitary {
                        deviation: m
                            .dagger()
                            .mul(m)
                            .and_then(|g| g.sub(&ComplexMatrix::identity(dim)))
                            .map(|d| d.frobenius_norm())
                            .unwrap_or(f64::NAN),
                    });
                }
            }
            if let GroupImage::Permutation(p) = img {
                validate_permutation(p)?;
            }
        }
        Ok(Self { group, dim, gen_images })
    }

    pub fn generator_images(&self) -> &[GroupImage] {
        &self.gen_images
    }

    pub fn generator_image(&self, label: &str) -> Result<&GroupImage> {
        Ok(&self.gen_images[self.group.generator_index(label)?])
    }

    fn identity_image(&self) -> GroupImage {
        match &self.gen_images[0] {
            GroupImage::Permutation(p) => GroupImage::Permutation((0..p.len()).collect()),
            GroupImage::Unitary(_) => GroupImage::Unitary(ComplexMatrix::identity(self.dim)),
        }
    }
}

/// A group element as a word over generator indices; the empty word is the
/// identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub word: Vec<usize>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self { word: Vec::new() }
    }

    pub fn from_indices(word: &[usize]) -> Self {
        Self { word: word.to_vec() }
    }

    pub fn labels(&self, group: &GroupPresentation) -> Vec<String> {
        self.word
            .iter()
            .map(|&i| group.generators[i].clone())
            .collect()
    }
}

/// An enumerated element together with its image.
#[derive(Debug, Clone)]
pub struct GroupMember {
    pub element: GroupElement,
    pub image: GroupImage,
}

fn validate_permutation(perm: &[usize]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::NotAPermutation);
        }
        seen[p] = true;
    }
    Ok(())
}

/// Basis-index map induced by a qubit content map: the bit of qubit `k`
/// (qubit 0 = MSB) moves to qubit `perm[k]`.
pub fn qubit_perm_index_map(perm: &[usize], index: usize) -> usize {
    let n = perm.len();
    let mut out = 0usize;
    for (k, &dest) in perm.iter().enumerate() {
        let bit = (index >> (n - 1 - k)) & 1;
        out |= bit << (n - 1 - dest);
    }
    out
}

/// Dense 2ⁿ×2ⁿ matrix of a qubit permutation.
pub fn qubit_perm_matrix(perm: &[usize]) -> ComplexMatrix {
    let dim = 1 << perm.len();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for j in 0..dim {
        m[(qubit_perm_index_map(perm, j), j)] = C64::new(1.0, 0.0);
    }
    m
}

fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0usize; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Decomposes a permutation (content map on `{0,…,n−1}`) into SWAP factors.
///
/// The returned pairs are in matrix-product order: the realized operator is
/// `SWAP(out[0]) · SWAP(out[1]) · … `, with the last factor acting first on a
/// ket. Each cycle `(c₀ c₁ … c_{m−1})` of the permutation contributes the
/// factors `(c₀,c₁), (c₁,c₂), …, (c_{m−2},c_{m−1})`.
pub fn perm_to_swap_network(perm: &[usize]) -> Result<Vec<(usize, usize)>> {
    validate_permutation(perm)?;
    let n = perm.len();
    let mut visited = vec![false; n];
    let mut swaps = Vec::new();
    for start in 0..n {
        if visited[start] || perm[start] == start {
            visited[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut next = perm[start];
        while next != start {
            visited[next] = true;
            cycle.push(next);
            next = perm[next];
        }
        for pair in cycle.windows(2) {
            swaps.push((pair[0], pair[1]));
        }
    }
    Ok(swaps)
}

/// Breadth-first closure over generator words, deduplicating images
/// (exactly for permutations, entrywise `< 1e-9` for unitaries). Fails if the
/// closure exceeds `max_order`.
pub fn enumerate_group(rep: &Representation, max_order: usize) -> Result<Vec<GroupMember>> {
    let mut members = vec![GroupMember {
        element: GroupElement::identity(),
        image: rep.identity_image(),
    }];
    let mut frontier: Vec<usize> = vec![0];
    while !frontier.is_empty() {
        let mut next_frontier = Vec::new();
        for &idx in &frontier {
            for (gen_idx, gen_image) in rep.gen_images.iter().enumerate() {
                let image = members[idx].image.compose(gen_image)?;
                let known = members.iter().any(|m| m.image.approx_eq(&image, DEDUP_TOL));
                if !known {
                    let mut word = members[idx].element.word.clone();
                    word.push(gen_idx);
                    members.push(GroupMember {
                        element: GroupElement { word },
                        image,
                    });
                    if members.len() > max_order {
                        return Err(Error::ClosureExceeded { max_order });
                    }
                    next_frontier.push(members.len() - 1);
                }
            }
        }
        frontier = next_frontier;
    }
    if let Some(order) = rep.group.known_order {
        if members.len() != order {
            return Err(Error::ClosureExceeded { max_order: order });
        }
    }
    Ok(members)
}

/// Ordered product of generator images along the element's word.
pub fn rep_matrix(rep: &Representation, element: &GroupElement) -> Result<ComplexMatrix> {
    let mut image = rep.identity_image();
    for &idx in &element.word {
        let gen = rep
            .gen_images
            .get(idx)
            .ok_or_else(|| Error::UnknownGenerator(alloc::format!("#{idx}")))?;
        image = image.compose(gen)?;
    }
    Ok(image.to_matrix())
}

/// Conjugation `W X W†` for a permutation image, by index relabeling.
fn conjugate_by_perm(x: &ComplexMatrix, perm: &[usize]) -> ComplexMatrix {
    let inv = invert_permutation(perm);
    let dim = x.rows();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let pi = qubit_perm_index_map(&inv, i);
        for j in 0..dim {
            out[(i, j)] = x[(pi, qubit_perm_index_map(&inv, j))];
        }
    }
    out
}

/// The twirl `(1/|G|) Σ_g W(g) X W(g)†` of a Hermitian operator; the result
/// is Hermitian and commutes with every `W(g)`.
pub fn twirl(rep: &Representation, x: &ComplexMatrix) -> Result<ComplexMatrix> {
    if x.rows() != rep.dim || x.cols() != rep.dim {
        return Err(Error::DimensionMismatch {
            expected: rep.dim,
            actual: x.rows(),
        });
    }
    if !x.is_hermitian(1e-10) {
        let dev = x.sub(&x.dagger())?.frobenius_norm();
        return Err(Error::NotHermitian { deviation: dev });
    }
    let default_limit = rep.group.known_order.unwrap_or(1024);
    let members = enumerate_group(rep, default_limit)?;
    let mut sum = ComplexMatrix::zeros(rep.dim, rep.dim);
    for member in &members {
        let term = match &member.image {
            GroupImage::Permutation(p) => conjugate_by_perm(x, p),
            GroupImage::Unitary(w) => w.mul(x)?.mul(&w.dagger())?,
        };
        sum = sum.add(&term)?;
    }
    Ok(sum.scale(C64::new(1.0 / members.len() as f64, 0.0)))
}

/// Checks `[W(s), A] ≈ 0` for every generator `s`; by the homomorphism
/// property this implies invariance under the full group. Returns the verdict
/// together with the largest commutator norm found.
pub fn is_invariant(rep: &Representation, a: &ComplexMatrix, tol: f64) -> Result<(bool, f64)> {
    let worst = commutant_certificate(rep, a)?;
    Ok((worst < tol, worst))
}

/// The largest `‖[W(s), A]‖_F` over the generators.
pub fn commutant_certificate(rep: &Representation, a: &ComplexMatrix) -> Result<f64> {
    if a.rows() != rep.dim || a.cols() != rep.dim {
        return Err(Error::DimensionMismatch {
            expected: rep.dim,
            actual: a.rows(),
        });
    }
    let mut worst = 0.0f64;
    for img in &rep.gen_images {
        let norm = commutator_norm(&img.to_matrix(), a)?;
        worst = worst.max(norm);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::pauli_matrix;
    use crate::tensor::herm_expm;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c2_rep() -> Representation {
        let group = GroupPresentation::new("c2", &["F"], Some(2)).unwrap();
        Representation::new(group, vec![GroupImage::Permutation(vec![1, 0, 3, 2])]).unwrap()
    }

    fn d4_rep() -> Representation {
        let group = GroupPresentation::new("d4", &["r", "F"], Some(8)).unwrap();
        Representation::new(
            group,
            vec![
                GroupImage::Permutation(vec![3, 0, 1, 2]),
                GroupImage::Permutation(vec![1, 0, 3, 2]),
            ],
        )
        .unwrap()
    }

    fn s6_rep() -> Representation {
        let group = GroupPresentation::new("s6", &["t", "c"], Some(720)).unwrap();
        Representation::new(
            group,
            vec![
                GroupImage::Permutation(vec![1, 0, 2, 3, 4, 5]),
                GroupImage::Permutation(vec![1, 2, 3, 4, 5, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn swap_network_of_identity_is_empty() {
        assert!(perm_to_swap_network(&[0, 1, 2, 3]).unwrap().is_empty());
    }

    #[test]
    fn swap_network_of_the_six_cycle_is_the_adjacent_chain() {
        let six_cycle = [1, 2, 3, 4, 5, 0];
        let swaps = perm_to_swap_network(&six_cycle).unwrap();
        assert_eq!(swaps, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn swap_network_of_a_transposition_is_one_swap() {
        let perm = [1, 0, 2, 3, 4, 5];
        assert_eq!(perm_to_swap_network(&perm).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn swap_network_rejects_non_bijections() {
        assert!(matches!(
            perm_to_swap_network(&[0, 0, 1]),
            Err(Error::NotAPermutation)
        ));
    }

    /// Multiplies a SWAP list (matrix-product order) as a symbol permutation.
    fn swaps_to_perm(n: usize, swaps: &[(usize, usize)]) -> Vec<usize> {
        let mut content: Vec<usize> = (0..n).collect();
        for &(a, b) in swaps.iter().rev() {
            content.swap(a, b);
        }
        // content[w] = original wire whose state now sits on wire w
        invert_permutation(&content)
    }

    #[test]
    fn swap_networks_realize_their_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let n = rng.gen_range(2..=6usize);
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let swaps = perm_to_swap_network(&perm).unwrap();
            assert_eq!(swaps_to_perm(n, &swaps), perm);

            // Matrix check: product of SWAP factors equals the permutation matrix.
            let dim = 1 << n;
            let mut prod = ComplexMatrix::identity(dim);
            for &(a, b) in &swaps {
                let mut factor_perm: Vec<usize> = (0..n).collect();
                factor_perm.swap(a, b);
                prod = prod.mul(&qubit_perm_matrix(&factor_perm)).unwrap();
            }
            assert!(prod.max_abs_diff(&qubit_perm_matrix(&perm)) < 1e-12);
        }
    }

    #[test]
    fn all_s6_elements_have_valid_swap_networks() {
        let members = enumerate_group(&s6_rep(), 720).unwrap();
        assert_eq!(members.len(), 720);
        for member in &members {
            let GroupImage::Permutation(p) = &member.image else {
                panic!("S6 rep should stay in permutation form");
            };
            let swaps = perm_to_swap_network(p).unwrap();
            assert_eq!(swaps_to_perm(6, &swaps), *p);
        }
    }

    #[test]
    fn closure_orders_match_the_groups() {
        assert_eq!(enumerate_group(&c2_rep(), 4).unwrap().len(), 2);
        assert_eq!(enumerate_group(&d4_rep(), 16).unwrap().len(), 8);
    }

    #[test]
    fn closure_detects_non_finite_generators() {
        let group = GroupPresentation::new("bad", &["g"], None).unwrap();
        let u = herm_expm(&crate::tensor::pauli_z(), 0.7).unwrap();
        let rep = Representation::new(group, vec![GroupImage::Unitary(u)]).unwrap();
        assert!(matches!(
            enumerate_group(&rep, 10),
            Err(Error::ClosureExceeded { max_order: 10 })
        ));
    }

    #[test]
    fn twirl_fixes_the_identity() {
        let id = ComplexMatrix::identity(16);
        let t = twirl(&d4_rep(), &id).unwrap();
        assert!(t.max_abs_diff(&id) < 1e-12);
    }

    #[test]
    fn twirl_of_zi_under_swap_averages_the_pair() {
        let group = GroupPresentation::new("c2-swap", &["s"], Some(2)).unwrap();
        let rep =
            Representation::new(group, vec![GroupImage::Permutation(vec![1, 0])]).unwrap();
        let zi = pauli_matrix("ZI", 1.0).unwrap();
        let iz = pauli_matrix("IZ", 1.0).unwrap();
        let want = zi.add(&iz).unwrap().scale(C64::new(0.5, 0.0));
        let got = twirl(&rep, &zi).unwrap();
        assert!(got.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn twirl_of_ziii_under_the_double_swap() {
        let got = twirl(&c2_rep(), &pauli_matrix("ZIII", 1.0).unwrap()).unwrap();
        let want = pauli_matrix("ZIII", 0.5)
            .unwrap()
            .add(&pauli_matrix("IZII", 0.5).unwrap())
            .unwrap();
        assert!(got.max_abs_diff(&want) < 1e-12);
    }

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

    #[test]
    fn twirl_output_is_hermitian_invariant_and_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for rep in [c2_rep(), d4_rep()] {
            for _ in 0..5 {
                let x = random_hermitian(rep.dim, &mut rng);
                let t = twirl(&rep, &x).unwrap();
                assert!(t.sub(&t.dagger()).unwrap().frobenius_norm() < 1e-10);
                let (ok, worst) = is_invariant(&rep, &t, 1e-9).unwrap();
                assert!(ok, "commutator norm {worst}");
                let tt = twirl(&rep, &t).unwrap();
                assert!(tt.sub(&t).unwrap().frobenius_norm() < 1e-9);
            }
        }
    }

    #[test]
    fn twirl_rejects_non_hermitian_input() {
        let mut m = ComplexMatrix::identity(16);
        m[(0, 1)] = C64::new(0.3, 0.1);
        assert!(matches!(
            twirl(&c2_rep(), &m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn invariance_examples() {
        // Z on one qubit does not commute with the S6 qubit permutations.
        let z0 = pauli_matrix("ZIIIII", 1.0).unwrap();
        let (ok, worst) = is_invariant(&s6_rep(), &z0, 1e-9).unwrap();
        assert!(!ok);
        assert!(worst > 1e-3);

        // The central permutation SWAP02·SWAP13 commutes with the D4 generators.
        let central = qubit_perm_matrix(&[2, 3, 0, 1]);
        let (ok, worst) = is_invariant(&d4_rep(), &central, 1e-9).unwrap();
        assert!(ok, "commutator norm {worst}");
    }

    #[test]
    fn generator_invariance_matches_full_group_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for rep in [c2_rep(), d4_rep()] {
            let members = enumerate_group(&rep, 16).unwrap();
            for _ in 0..5 {
                let x = random_hermitian(rep.dim, &mut rng);
                let t = twirl(&rep, &x).unwrap();
                for probe in [&x, &t] {
                    let (gen_ok, _) = is_invariant(&rep, probe, 1e-9).unwrap();
                    let full_worst = members
                        .iter()
                        .map(|m| commutator_norm(&m.image.to_matrix(), probe).unwrap())
                        .fold(0.0f64, f64::max);
                    assert_eq!(gen_ok, full_worst < 1e-9);
                }
            }
        }
    }

    #[test]
    fn rep_matrix_examples() {
        let rep = d4_rep();
        let id = rep_matrix(&rep, &GroupElement::identity()).unwrap();
        assert!(id.max_abs_diff(&ComplexMatrix::identity(16)) < 1e-14);

        // r² equals the 180° permutation (0 2)(1 3).
        let rr = rep_matrix(&rep, &GroupElement::from_indices(&[0, 0])).unwrap();
        let oracle = qubit_perm_matrix(&[3, 0, 1, 2])
            .mul(&qubit_perm_matrix(&[3, 0, 1, 2]))
            .unwrap();
        assert!(rr.max_abs_diff(&oracle) < 1e-14);
        assert!(rr.max_abs_diff(&qubit_perm_matrix(&[2, 3, 0, 1])) < 1e-14);

        // F² is the identity for the involutive generator.
        let ff = rep_matrix(&rep, &GroupElement::from_indices(&[1, 1])).unwrap();
        assert!(ff.max_abs_diff(&ComplexMatrix::identity(16)) < 1e-14);
    }

    #[test]
    fn perm_conjugation_matches_matrix_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..10 {
            let x = random_hermitian(16, &mut rng);
            let perm = vec![3, 0, 1, 2];
            let w = qubit_perm_matrix(&perm);
            let dense = w.mul(&x).unwrap().mul(&w.dagger()).unwrap();
            let fast = conjugate_by_perm(&x, &perm);
            assert!(dense.max_abs_diff(&fast) < 1e-12);
        }
    }
}
