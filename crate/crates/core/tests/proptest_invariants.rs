//! Property-based invariants: information-theoretic inequalities, joint
//! distribution algebra, and rigid-rotation invariance, over randomized
//! inputs.

use proptest::prelude::*;

use qctx_core::dist::PairTable;
use qctx_core::entropy::{conditional_entropy, shannon_entropy};
use qctx_core::graph::{
    build_tree_jpd, CommutationGraph, JointDistribution, PairwiseMarginals,
};
use qctx_core::quantum::{
    complete_basis, inner, norm, outcome_probability, rotate_to_state, random_state,
    build_pentagon_family, FamilyParams, PureState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random 2x2 probability table (cells normalized to sum 1).
fn pair_table() -> impl Strategy<Value = PairTable> {
    proptest::array::uniform4(1e-6..1.0f64).prop_map(|raw| {
        let s: f64 = raw.iter().sum();
        PairTable::from_cells(raw[0] / s, raw[1] / s, raw[2] / s, raw[3] / s)
            .expect("normalized cells form a table")
    })
}

/// A random exclusive table: p(1,1) = 0.
fn exclusive_table() -> impl Strategy<Value = PairTable> {
    proptest::array::uniform3(1e-6..1.0f64).prop_map(|raw| {
        let s: f64 = raw.iter().sum();
        PairTable::from_cells(raw[0] / s, raw[1] / s, raw[2] / s, 0.0)
            .expect("normalized cells form a table")
    })
}

/// A random joint distribution over `k` labeled variables.
fn joint(k: usize) -> impl Strategy<Value = JointDistribution> {
    proptest::collection::vec(1e-9..1.0f64, 1 << k).prop_map(move |raw| {
        let s: f64 = raw.iter().sum();
        let cells = raw.into_iter().map(|c| c / s).collect();
        JointDistribution::new((0..k).collect(), cells).expect("normalized cells")
    })
}

proptest! {
    /// H(A|B) <= H(AB): conditioning is a difference of entropies and the
    /// subtracted marginal entropy is nonnegative.
    #[test]
    fn conditional_entropy_bounded_by_joint(t in pair_table()) {
        let cells = t.cells();
        let joint = shannon_entropy(&[cells[0][0], cells[0][1], cells[1][0], cells[1][1]])
            .unwrap();
        prop_assert!(conditional_entropy(&t) <= joint + 1e-12);
    }

    /// Conditioning never increases entropy: H(A|B) <= H(A).
    #[test]
    fn conditioning_reduces_entropy(t in pair_table()) {
        let ha = shannon_entropy(&t.marginal_first()).unwrap();
        prop_assert!(conditional_entropy(&t) <= ha + 1e-12);
    }

    /// For exclusive pairs, the conditional entropy collapses to the
    /// B = 0 branch: H(A|B) = p(B=0) H(A|B=0).
    #[test]
    fn exclusive_pairs_condition_on_the_empty_branch(t in exclusive_table()) {
        let pb = t.marginal_second();
        let branch = shannon_entropy(&[t.prob(0, 0) / pb[0], t.prob(1, 0) / pb[0]]).unwrap();
        prop_assert!((conditional_entropy(&t) - pb[0] * branch).abs() < 1e-12);
    }

    /// Marginalizing a joint distribution agrees with brute-force
    /// summation over the dropped variables.
    #[test]
    fn marginalization_matches_brute_force(j in joint(5), keep_mask in 1u8..31) {
        let keep: Vec<usize> = (0..5).filter(|v| keep_mask & (1 << v) != 0).collect();
        let m = j.marginalize(&keep).unwrap();
        for cell in 0..(1usize << keep.len()) {
            let mut brute = 0.0;
            for full in 0..(1usize << 5) {
                let projected = keep
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (pos, v)| acc | (((full >> v) & 1) << pos));
                if projected == cell {
                    brute += j.prob(full);
                }
            }
            prop_assert!((m.prob(cell) - brute).abs() < 1e-12);
        }
    }

    /// A tree-structured joint built from pairwise marginals reproduces
    /// exactly the edge tables it was built from. Trees are generated by
    /// attaching each vertex to a random earlier parent.
    #[test]
    fn tree_jpd_reproduces_edge_tables(
        parents in proptest::collection::vec(0usize..1_000_000, 9),
        seed in 0u64..1_000_000,
    ) {
        let n = parents.len() + 1;
        let edges: Vec<(usize, usize)> = parents
            .iter()
            .enumerate()
            .map(|(i, p)| (p % (i + 1), i + 1))
            .collect();
        let graph = CommutationGraph::new(n, &edges).unwrap();

        // Derive consistent marginals from one random master joint.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let master = qctx_core::graph::random_jpd(&(0..n).collect::<Vec<_>>(), &mut rng)
            .unwrap();
        let mut marginals = PairwiseMarginals::new(n);
        for &(i, j) in &edges {
            marginals.insert(i, j, master.pair_marginal(i, j).unwrap()).unwrap();
        }

        let built = build_tree_jpd(&graph, &marginals).unwrap();
        for &(i, j) in &edges {
            let rebuilt = built.pair_marginal(i, j).unwrap();
            let input = marginals.get(i, j).unwrap();
            for a in 0..2 {
                for b in 0..2 {
                    prop_assert!((rebuilt.prob(a, b) - input.prob(a, b)).abs() < 1e-9);
                }
            }
        }
    }

    /// Born probabilities over any completed orthonormal basis sum to one.
    #[test]
    fn born_rule_sums_to_one_over_a_basis(seed in 0u64..1_000_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(&mut rng);
        let first = random_state(&mut rng);
        let basis = complete_basis(first.amplitudes());
        // The completion is orthonormal...
        for (i, u) in basis.iter().enumerate() {
            prop_assert!((norm(u) - 1.0).abs() < 1e-12);
            for v in &basis[i + 1..] {
                prop_assert!(inner(u, v).norm() < 1e-12);
            }
        }
        // ...so the three outcome probabilities are exhaustive.
        let total: f64 = basis
            .iter()
            .map(|u| inner(u, psi.amplitudes()).norm_sqr())
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    /// Rigid rotation to a random target state preserves every Born
    /// probability of a pentagon configuration.
    #[test]
    fn rotations_preserve_born_probabilities(
        theta in -1.5..1.5f64,
        phi in 0.0..0.78f64,
        seed in 0u64..1_000_000,
    ) {
        let config = build_pentagon_family(&FamilyParams::new(theta, phi).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = random_state(&mut rng);
        let rotated = rotate_to_state(&config, &target).unwrap();
        prop_assert!(
            (inner(rotated.state().amplitudes(), target.amplitudes()).norm() - 1.0).abs()
                < 1e-12
        );
        for i in 0..5 {
            let before = outcome_probability(config.state(), &config.projectors()[i]);
            let after = outcome_probability(rotated.state(), &rotated.projectors()[i]);
            prop_assert!((before - after).abs() < 1e-12);
        }
    }
}

/// Entropy itself is deterministic: the same table always produces the
/// same floating-point value (guards against accidental internal
/// randomness or ordering effects).
#[test]
fn entropy_is_reproducible() {
    let t = PairTable::from_cells(0.1, 0.2, 0.3, 0.4).unwrap();
    let reference = conditional_entropy(&t);
    for _ in 0..100 {
        assert_eq!(conditional_entropy(&t).to_bits(), reference.to_bits());
    }
}

/// PureState construction rejects unnormalized amplitudes but accepts the
/// rescaling constructor for any nonzero vector.
#[test]
fn normalization_contract() {
    let raw = [1.0.into(), 2.0.into(), (-2.0).into()];
    assert!(PureState::new(raw).is_err());
    let rescaled = PureState::normalized(raw).unwrap();
    assert!((norm(rescaled.amplitudes()) - 1.0).abs() < 1e-12);
}
