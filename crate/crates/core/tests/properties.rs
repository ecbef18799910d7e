//! Cross-module invariants, checked exhaustively at small sizes and by
//! property testing at larger ones.

mod common;

use std::collections::BTreeSet;

use num_complex::Complex64;
use proptest::prelude::*;

use clspace::exec::Execution;
use clspace::graph::{graph_with_edge_mask, pair_count, pair_list};
use clspace::numerics::{conv_membership, maximize, Domain, MaximizeOptions};
use clspace::poly::{build_peak_poly, ell1_peak_poly};
use clspace::scalar::{rat, Moduli, Rat, Value, Vector};
use clspace::space::{graph_of_norm, reisner_check, Field, SignedSupport};
use clspace::survey::reisner_survivors;
use clspace::{Graph, Space};

use common::{adjacency, hull_member_oracle, multisets, naive_maximal_cliques};

use num_traits::{One, Signed, Zero};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, bits)| {
        let pairs = pair_list(n);
        let mask = bits & ((1u64 << pair_count(n)) - 1);
        graph_with_edge_mask(n, mask, &pairs)
    })
}

proptest! {
    #[test]
    fn complement_is_involution(g in arb_graph(8)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn cliques_match_naive_scan(g in arb_graph(7)) {
        let got: Vec<u32> = g.maximal_cliques().iter().map(|c| c.mask()).collect();
        prop_assert_eq!(got, naive_maximal_cliques(&adjacency(&g), g.n()));
        let full = (1u32 << g.n()) - 1;
        prop_assert_eq!(
            g.clique_number(),
            common::naive_clique_number(&adjacency(&g), full)
        );
    }

    #[test]
    fn cliques_are_cliques_and_incomparable(g in arb_graph(8)) {
        let cliques = g.maximal_cliques();
        for (i, a) in cliques.iter().enumerate() {
            for u in a.iter() {
                for v in a.iter() {
                    prop_assert!(u == v || g.has_edge(u, v));
                }
            }
            for (j, b) in cliques.iter().enumerate() {
                if i != j {
                    prop_assert!(!a.is_subset_of(*b));
                }
            }
        }
    }

    #[test]
    fn stable_sets_are_complement_cliques(g in arb_graph(8)) {
        let via_complement: Vec<u32> =
            g.complement().maximal_cliques().iter().map(|c| c.mask()).collect();
        let direct: Vec<u32> = g.maximal_stable_sets().iter().map(|c| c.mask()).collect();
        prop_assert_eq!(direct, via_complement);
    }

    #[test]
    fn clique_number_at_most_chromatic(g in arb_graph(10)) {
        prop_assert!(g.clique_number() <= g.chromatic_number());
    }

    #[test]
    fn bipartite_graphs_are_perfect(
        n in 2usize..=10,
        split in any::<u16>(),
        bits in any::<u64>(),
    ) {
        // random bipartition, random cross edges only
        let side = |v: usize| split & (1 << v) != 0;
        let pairs = pair_list(n);
        let mut edges = Vec::new();
        for (p, &(i, j)) in pairs.iter().enumerate() {
            if side(i) != side(j) && bits & (1 << (p % 64)) != 0 {
                edges.push((i, j));
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        prop_assert!(g.is_perfect().unwrap().perfect);
    }

    #[test]
    fn chromatic_branch_and_bound_matches_naive(g in arb_graph(7)) {
        let adj = adjacency(&g);
        let full = (1u32 << g.n()) - 1;
        prop_assert_eq!(
            g.chromatic_number(),
            common::naive_chromatic_number(&adj, full, 1)
        );
    }

    #[test]
    fn eval_is_homogeneous(
        idx in proptest::collection::vec(0usize..3, 1..=3),
        coords in proptest::collection::vec((-6i64..=6, 1i64..=5), 3),
        t in (-8i64..=8, 1i64..=5),
    ) {
        let p = ell1_peak_poly(3, &idx).unwrap();
        let x: Vec<Rat> = coords.into_iter().map(|(a, b)| rat(a, b)).collect();
        let t = rat(t.0, t.1);
        let scaled = Vector::from_rationals(x.clone()).scale_rational(&t);
        let lhs = p.eval_exact(scaled.exact_coords().unwrap()).unwrap();
        let mut t_pow = Rat::one();
        for _ in 0..p.degree() {
            t_pow *= &t;
        }
        let rhs = p
            .eval_exact(Vector::from_rationals(x).exact_coords().unwrap())
            .unwrap()
            .scale(&t_pow);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hull_membership_matches_oracle(
        dim in 1usize..=4,
        gen_count in 1usize..=5,
        raw_gens in proptest::collection::vec(proptest::collection::vec(0u8..=1, 4), 1..=5),
        point in proptest::collection::vec((0i64..=6, 1i64..=6), 4),
    ) {
        let gens: Vec<Vec<Rat>> = raw_gens
            .iter()
            .take(gen_count)
            .map(|g| g.iter().take(dim).map(|&b| rat(b as i64, 1)).collect())
            .collect();
        prop_assume!(!gens.is_empty());
        prop_assume!(gens.iter().all(|g| g.len() == dim));
        let p: Vec<Rat> = point.into_iter().take(dim).map(|(a, b)| rat(a, b)).collect();
        prop_assume!(p.len() == dim);
        let simplex = conv_membership(&p, &gens).unwrap();
        prop_assert_eq!(simplex.is_some(), hull_member_oracle(&p, &gens));
        if let Some(combo) = simplex {
            // weights reproduce the point exactly
            let mut sum = Rat::zero();
            for w in &combo.weights {
                prop_assert!(!w.is_negative());
                sum += w;
            }
            prop_assert!(sum.is_one());
        }
    }
}

/// Exhaustive clique-enumeration agreement on every graph with up to 4
/// vertices; the proptest above samples the range up to 7.
#[test]
fn cliques_match_naive_scan_exhaustively_small() {
    for n in 1..=4usize {
        let pairs = pair_list(n);
        for mask in 0..(1u64 << pair_count(n)) {
            let g = graph_with_edge_mask(n, mask, &pairs);
            let got: Vec<u32> = g.maximal_cliques().iter().map(|c| c.mask()).collect();
            assert_eq!(got, naive_maximal_cliques(&adjacency(&g), n));
        }
    }
}

/// Every Reisner space on up to 5 vertices: extreme points pair to modulus
/// one against dual extreme points, and `‖e_i + e_j‖` is 2 on edges and 1
/// otherwise.
#[test]
fn duality_pairing_on_all_reisner_spaces() {
    for n in 1..=5usize {
        for g in reisner_survivors(n, Execution::default()).unwrap() {
            let space = Space::from_graph(g.clone(), Field::Real).unwrap();
            let primal = space.extreme_points();
            let dual = space.dual_extreme_points();
            for x in &primal.representatives {
                let xv = x.to_vector(n);
                let xc = xv.exact_coords().unwrap();
                for f in &dual.representatives {
                    let fv = f.to_vector(n);
                    let fc = fv.exact_coords().unwrap();
                    let mut pairing = Rat::zero();
                    for j in 0..n {
                        pairing += &fc[j].re * &xc[j].re;
                    }
                    assert_eq!(pairing.abs(), Rat::one(), "graph {:?}", g.edges());
                }
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = Vector::basis(n, i).add(&Vector::basis(n, j)).unwrap();
                    let expected = if g.has_edge(i, j) { 2 } else { 1 };
                    assert_eq!(space.norm(&v).unwrap(), Value::Exact(rat(expected, 1)));
                }
            }
        }
    }
}

proptest! {
    /// The clique-max norm is absolute, monotone, normalized, and agrees
    /// with its dual-extreme-point pairing formula.
    #[test]
    fn norm_is_absolute_monotone_normalized(
        mask in 0u64..64,
        coords in proptest::collection::vec((-9i64..=9, 1i64..=7), 4),
    ) {
        let pairs = pair_list(4);
        let g = graph_with_edge_mask(4, mask, &pairs);
        prop_assume!(reisner_check(&g).unwrap().passes());
        let space = Space::from_graph(g, Field::Real).unwrap();

        let x: Vec<Rat> = coords.into_iter().map(|(a, b)| rat(a, b)).collect();
        let v = Vector::from_rationals(x.clone());
        let norm = match space.norm(&v).unwrap() {
            Value::Exact(q) => q,
            _ => unreachable!("rational input stays exact"),
        };

        // absolute: norm(|x|) = norm(x)
        let abs_v = Vector::from_rationals(x.iter().map(|q| q.abs()).collect());
        prop_assert_eq!(space.norm(&abs_v).unwrap(), Value::Exact(norm.clone()));

        // normalized: every basis vector has norm one
        for j in 0..4 {
            prop_assert_eq!(
                space.norm(&Vector::basis(4, j)).unwrap(),
                Value::Exact(Rat::one())
            );
        }

        // monotone: shrinking one coordinate modulus cannot grow the norm
        let mut shrunk = x.clone();
        shrunk[0] = &shrunk[0] / rat(2, 1);
        let smaller = match space.norm(&Vector::from_rationals(shrunk)).unwrap() {
            Value::Exact(q) => q,
            _ => unreachable!(),
        };
        prop_assert!(smaller <= norm);

        // norm equals the maximal pairing against dual extreme points
        let mut best = Rat::zero();
        for f in space.dual_extreme_points().representatives {
            let fv = f.to_vector(4);
            let fc = fv.exact_coords().unwrap();
            let mut pairing = Rat::zero();
            for j in 0..4 {
                pairing += &fc[j].re * &x[j];
            }
            best = best.max(pairing.abs());
        }
        prop_assert_eq!(best, norm.clone());

        // dual norm equals the maximal pairing against extreme points
        let dual = match space.dual_norm(&v).unwrap() {
            Value::Exact(q) => q,
            _ => unreachable!(),
        };
        let mut best = Rat::zero();
        for e in space.extreme_points().representatives {
            let ev = e.to_vector(4);
            let ec = ev.exact_coords().unwrap();
            let mut pairing = Rat::zero();
            for j in 0..4 {
                pairing += &ec[j].re * &x[j];
            }
            best = best.max(pairing.abs());
        }
        prop_assert_eq!(best, dual);
    }
}

/// Norm → graph → norm roundtrip at a size the exhaustive acceptance sweep
/// does not cover one by one in this file.
#[test]
fn roundtrip_spot_checks() {
    for n in 1..=4usize {
        for g in reisner_survivors(n, Execution::default()).unwrap() {
            let space = Space::from_graph(g.clone(), Field::Real).unwrap();
            let recovered = graph_of_norm(n, |v| space.norm(v)).unwrap();
            assert_eq!(recovered, g);
        }
    }
}

/// Exact prediction identity for the assembled peak polynomial, all spaces
/// n <= 3 and both usable degrees.
#[test]
fn peak_poly_prediction_identity_small() {
    for n in 1..=3usize {
        for g in reisner_survivors(n, Execution::default()).unwrap() {
            let space = Space::from_graph(g, Field::Real).unwrap();
            let indicators = space.nonneg_extreme_indicators();
            for m in 2..=3usize {
                for ys in multisets(&indicators, m) {
                    let (q, pred) = build_peak_poly(&space, &ys).unwrap();
                    let at = q
                        .eval_exact(pred.point.exact_coords().unwrap())
                        .unwrap();
                    assert!(at.im.is_zero());
                    assert_eq!(at.re, pred.predicted_norm);
                }
            }
        }
    }
}

/// Complex-mode attainment: the maximizer wanders the unimodular orbit, and
/// phase alignment must still cluster it onto the claimed point.
#[test]
fn complex_attainment_clusters_after_alignment() {
    let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
    let space = Space::from_graph(g, Field::Complex).unwrap();
    let ys = vec![
        Vector::from_ints(&[1, 0, 1]),
        Vector::from_ints(&[0, 1, 0]),
    ];
    let (q, pred) = build_peak_poly(&space, &ys).unwrap();
    let report = clspace::analysis::verify_attainment(
        &space,
        &q,
        &pred,
        1e-6,
        5e-2,
        &MaximizeOptions::seeded(0, 64),
        "p3-complex",
    )
    .unwrap();
    assert!(report.precondition_ok);
    assert!(
        report.pass,
        "excess {} cluster {}",
        report.excess, report.cluster_distance
    );
}

/// Every nonnegative extreme-point indicator is itself a complex extreme
/// point, certified with unit weight on itself.
#[test]
fn indicators_are_complex_extreme() {
    for n in 1..=4usize {
        for g in reisner_survivors(n, Execution::default()).unwrap() {
            let space = Space::from_graph(g, Field::Complex).unwrap();
            for a in space.nonneg_extreme_indicators() {
                let report =
                    clspace::analysis::complex_extreme_membership(&space, &a).unwrap();
                assert!(report.member);
                let weights = report.combination.unwrap().weights;
                assert!(weights.iter().all(|w| w.is_one() || w.is_zero()));
            }
        }
    }
}

/// Signed supports materialize to unit vectors whose support matches.
#[test]
fn signed_support_vectors() {
    let s: clspace::bitset::VertexSet = [0, 2].into_iter().collect();
    let rep = SignedSupport {
        support: s,
        signs: vec![1, -1],
    };
    let v = rep.to_vector(4);
    let c = v.exact_coords().unwrap();
    assert_eq!(c[0].re, rat(1, 1));
    assert_eq!(c[2].re, rat(-1, 1));
    assert!(c[1].is_zero() && c[3].is_zero());
}

/// Float fallback: vectors with irrational coordinate moduli still get a
/// norm, tagged float.
#[test]
fn float_fallback_norm() {
    let g = Graph::complete(2).unwrap();
    let space = Space::from_graph(g, Field::Complex).unwrap();
    let v = Vector::Exact(vec![
        clspace::ExactComplex::new(rat(1, 1), rat(1, 1)),
        clspace::ExactComplex::zero(),
    ]);
    match space.norm(&v).unwrap() {
        Value::Float(x) => assert!((x - 2f64.sqrt()).abs() < 1e-12),
        Value::Exact(_) => panic!("expected float fallback"),
    }
    match v.moduli() {
        Moduli::Float(_) => {}
        Moduli::Exact(_) => panic!("modulus of 1+i is irrational"),
    }
}

/// The maximizer respects the execution strategy bit for bit.
#[test]
fn maximize_execution_strategies_agree() {
    let g = Graph::complete(2).unwrap();
    let space = Space::from_graph(g, Field::Real).unwrap();
    let q = ell1_peak_poly(2, &[0, 1]).unwrap();
    let obj = |x: &[Complex64]| q.eval_f64(x).norm();
    let mut seq_opts = MaximizeOptions::seeded(11, 16);
    seq_opts.execution = Execution::Sequential;
    let seq = maximize(&Domain::ball(&space), obj, &seq_opts).unwrap();
    let par = maximize(&Domain::ball(&space), obj, &MaximizeOptions::seeded(11, 16)).unwrap();
    assert_eq!(seq.value.to_bits(), par.value.to_bits());
    let ordered: Vec<u64> = seq.trace.iter().map(|r| r.value.to_bits()).collect();
    let ordered_par: Vec<u64> = par.trace.iter().map(|r| r.value.to_bits()).collect();
    assert_eq!(ordered, ordered_par);
}

/// Deduplication in the attaining-point enumeration is by value, not by
/// multiset identity.
#[test]
fn attaining_points_deduplicate() {
    let g = Graph::edgeless(2).unwrap();
    let space = Space::from_graph(g, Field::Real).unwrap();
    // one indicator: all multisets average to the same point
    let pts = clspace::analysis::strongly_attaining_points(&space, 3, 100).unwrap();
    assert_eq!(pts.points.len(), 1);

    let set: BTreeSet<String> = pts
        .points
        .iter()
        .map(|p| format!("{:?}", p))
        .collect();
    assert_eq!(set.len(), pts.points.len());
}
