mod support;

use hrcolor::constructions::catalog;
use hrcolor::{
    check_highly, check_highly_with_threads, check_hr, check_resistant, lemma_disjunction,
    sample_check, ColorSet, Graph, Multicoloring, VertexSet,
};
use proptest::prelude::*;
use support::{instance, permutation, Plain};

fn with_attackers(max_n: usize, max_k: usize, max_a: usize) -> impl Strategy<Value = (Graph, Multicoloring, usize)> {
    instance(1, max_n, max_k).prop_flat_map(move |(g, kappa)| {
        let n = g.num_vertices();
        (Just(g), Just(kappa), 1..=max_a.min(n))
    })
}

/// Colorings where every vertex holds few colors, so HR holds more often.
fn sparse(max_n: usize, max_k: usize) -> impl Strategy<Value = (Graph, Multicoloring, usize)> {
    (2..=max_n, 2..=max_k).prop_flat_map(|(n, k)| {
        (
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2),
            prop::collection::vec(0..k, n),
            1..=n.min(3),
        )
            .prop_map(move |(e, c, a)| {
                let (g, _) = support::build(n, &e, k, &vec![0; n]);
                let kappa = Multicoloring::new(k, c.iter().map(|&c| ColorSet::EMPTY.with(c)).collect()).unwrap();
                (g, kappa, a)
            })
    })
}

fn to_vec(w: &Option<VertexSet>) -> Option<Vec<usize>> {
    w.as_ref().map(VertexSet::to_vec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn matches_naive_reference((g, kappa, a) in with_attackers(10, 5, 3)) {
        let report = check_highly(&g, &kappa, a).unwrap();
        let (hr, res) = Plain::from_lib(&g, &kappa).check(a);
        prop_assert_eq!(to_vec(&report.hr_witness), hr.clone());
        prop_assert_eq!(to_vec(&report.resistance_witness), res.clone());
        prop_assert_eq!(report.hr_holds, hr.is_none());
        prop_assert_eq!(report.resistant, res.is_none());
        prop_assert_eq!(report.highly_resistant, hr.is_none() && res.is_none());

        let (hr_ok, hr_w) = check_hr(&g, &kappa, a).unwrap();
        prop_assert_eq!((hr_ok, to_vec(&hr_w)), (report.hr_holds, hr));
        let (res_ok, res_w) = check_resistant(&g, &kappa, a).unwrap();
        prop_assert_eq!((res_ok, to_vec(&res_w)), (report.resistant, res));
    }

    #[test]
    fn sparse_matches_naive_reference((g, kappa, a) in sparse(10, 5)) {
        let report = check_highly(&g, &kappa, a).unwrap();
        let (hr, res) = Plain::from_lib(&g, &kappa).check(a);
        prop_assert_eq!(to_vec(&report.hr_witness), hr);
        prop_assert_eq!(to_vec(&report.resistance_witness), res);
    }

    #[test]
    fn thread_count_does_not_change_report((g, kappa, a) in with_attackers(14, 5, 4)) {
        let one = check_highly_with_threads(&g, &kappa, a, 1).unwrap();
        prop_assert_eq!(&check_highly_with_threads(&g, &kappa, a, 3).unwrap(), &one);
        prop_assert_eq!(&check_highly_with_threads(&g, &kappa, a, 0).unwrap(), &one);
    }

    #[test]
    fn verdicts_hold_for_fewer_attackers((g, kappa, a) in sparse(10, 5)) {
        let (hr, _) = check_hr(&g, &kappa, a).unwrap();
        let (res, _) = check_resistant(&g, &kappa, a).unwrap();
        for b in 1..a {
            if hr {
                prop_assert!(check_hr(&g, &kappa, b).unwrap().0);
            }
            if res {
                prop_assert!(check_resistant(&g, &kappa, b).unwrap().0);
            }
        }
    }

    #[test]
    fn extensions_preserve_passing_verdicts((g, kappa, a) in sparse(9, 4)) {
        if check_highly(&g, &kappa, a).unwrap().highly_resistant {
            let bigger = g.add_isolated_vertex();
            prop_assert!(check_highly(&bigger, &kappa.extend_vertex(), a).unwrap().highly_resistant);
            prop_assert!(check_highly(&g, &kappa.extend_palette().unwrap(), a).unwrap().highly_resistant);
        }
    }

    #[test]
    fn hr_fails_when_every_color_used_and_k_at_most_a((g, kappa, a) in with_attackers(10, 4, 10)) {
        if kappa.uses_every_color() && kappa.palette_size() <= a {
            prop_assert!(!check_hr(&g, &kappa, a).unwrap().0);
        }
    }

    #[test]
    fn hr_is_hereditary_on_induced_subgraphs(
        (g, kappa, a) in sparse(10, 5),
        keep_bits in prop::collection::vec(any::<bool>(), 10),
    ) {
        if check_hr(&g, &kappa, a).unwrap().0 {
            let n = g.num_vertices();
            let keep = VertexSet::from_vertices(n, (0..n).filter(|&v| keep_bits[v])).unwrap();
            if keep.len() >= a {
                let sub = g.induced_subgraph(&keep).unwrap();
                prop_assert!(check_hr(&sub, &kappa.restrict(&keep), a).unwrap().0);
            }
        }
    }

    #[test]
    fn verdicts_survive_vertex_relabeling((g, kappa, a) in with_attackers(10, 5, 3), seed in any::<u64>()) {
        let perm = permutation(g.num_vertices(), seed);
        let h = g.relabel(&perm).unwrap();
        let lambda = kappa.relabel_vertices(&perm).unwrap();
        let r1 = check_highly(&g, &kappa, a).unwrap();
        let r2 = check_highly(&h, &lambda, a).unwrap();
        prop_assert_eq!((r1.hr_holds, r1.resistant), (r2.hr_holds, r2.resistant));
    }

    #[test]
    fn sampled_failures_are_real((g, kappa, a) in with_attackers(10, 5, 3), seed in any::<u64>()) {
        let s = sample_check(&g, &kappa, a, 300, seed).unwrap();
        let full = check_highly(&g, &kappa, a).unwrap();
        if s.hr_failures > 0 {
            prop_assert!(!full.hr_holds);
        }
        if s.resistance_failures > 0 {
            prop_assert!(!full.resistant);
        }
        if let Some(w) = &s.first_hr_failure {
            prop_assert!(kappa.has_all_colors(w));
        }
    }

    #[test]
    fn disjunction_matches_separate_checks((g, kappa, a) in with_attackers(10, 5, 3), r in 1usize..=3) {
        let r = r.min(g.num_vertices());
        let expected = !check_hr(&g, &kappa, a).unwrap().0 || !check_resistant(&g, &kappa, r).unwrap().0;
        prop_assert_eq!(lemma_disjunction(&g, &kappa, a, r).unwrap(), expected);
    }
}

#[test]
fn catalog_entries_pass_for_fewer_attackers() {
    for entry in catalog() {
        let inst = &entry.instance;
        let a = inst.attackers.unwrap();
        for b in 1..=a {
            assert!(
                check_highly(&inst.graph, &inst.coloring, b).unwrap().highly_resistant,
                "{:?} with b={b}",
                inst.name
            );
        }
    }
}

#[test]
fn empty_palette_and_bad_attackers_are_errors() {
    let g = Graph::complete(2);
    let kappa = Multicoloring::from_one_based(1, [vec![1], vec![]]).unwrap();
    assert!(check_highly(&g, &kappa, 0).is_err());
    assert!(check_highly(&g, &kappa, 3).is_err());
    let short = Multicoloring::from_one_based(1, [vec![1]]).unwrap();
    assert!(check_highly(&g, &short, 1).is_err());
    let empty = Multicoloring::empty(0, 2).unwrap();
    assert!(check_highly(&g, &empty, 1).is_err());
}
