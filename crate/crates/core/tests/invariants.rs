use lcskit::arrangement::{fan_graph, induced_presentation, lattice, realize};
use lcskit::fixtures;
use lcskit::generate::{cactus_presentation, linear_space, presentation_of};
use lcskit::holonomy::{holonomy_phi2, holonomy_phi3, DEFAULT_MAX_GENERATORS};
use lcskit::presentation::{incidence_of, parse_presentation, validate, Presentation};
use lcskit::ranks::{phi_formula, witt};
use lcskit::relgraph::{betti, build_graph, graphs_isomorphic};
use lcskit::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shuffled_perm(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

fn falk_bound(p: &Presentation) -> u64 {
    incidence_of(p)
        .multiple_supports()
        .map(|s| u64::try_from(witt(3, s.len() as u64 - 1)).unwrap())
        .sum()
}

fn choose2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ranks_are_invariant_under_relabeling(seed in any::<u64>(), perm_seed in any::<u64>()) {
        let p = cactus_presentation(seed, 10);
        let q = p.relabeled(&shuffled_perm(p.generators(), perm_seed));
        let (a, b) = (incidence_of(&p), incidence_of(&q));
        prop_assert_eq!(phi_formula(&a, 6).unwrap(), phi_formula(&b, 6).unwrap());
        prop_assert_eq!(holonomy_phi2(&a), holonomy_phi2(&b));
        prop_assert_eq!(
            holonomy_phi3(&a, DEFAULT_MAX_GENERATORS).unwrap(),
            holonomy_phi3(&b, DEFAULT_MAX_GENERATORS).unwrap()
        );
        prop_assert!(graphs_isomorphic(&build_graph(&p), &build_graph(&q)).is_some());
        prop_assert!(validate(&q).is_ok());
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let p = cactus_presentation(seed, 10);
        prop_assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
        let q = presentation_of(&linear_space(seed, 8));
        prop_assert_eq!(parse_presentation(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn validation_ignores_relation_order(seed in any::<u64>(), order_seed in any::<u64>()) {
        let q = presentation_of(&linear_space(seed, 8));
        let text = q.to_string();
        let mut lines: Vec<&str> = text.lines().collect();
        let header = lines.iter().take_while(|l| !l.starts_with("relation")).count();
        lines[header..].shuffle(&mut ChaCha8Rng::seed_from_u64(order_seed));
        let reordered = parse_presentation(&lines.join("\n")).unwrap();
        prop_assert_eq!(&reordered, &q);
        prop_assert_eq!(validate(&reordered), validate(&q));
    }

    #[test]
    fn falk_bound_holds_on_realizable_fixtures(seed in any::<u64>()) {
        let p = cactus_presentation(seed, 10);
        let h3 = holonomy_phi3(&incidence_of(&p), DEFAULT_MAX_GENERATORS).unwrap();
        prop_assert!(h3 >= falk_bound(&p));
    }

    #[test]
    fn realized_lattice_matches_graph(seed in any::<u64>()) {
        let p = cactus_presentation(seed, 10);
        let g = build_graph(&p);
        let n = p.generators();
        let arr = realize(&g, n).unwrap();
        prop_assert_eq!(&arr, &realize(&g, n).unwrap());
        let lat = lattice(&arr, false).unwrap();
        let pairs: usize = lat.points.iter().map(|q| choose2(q.lines.len())).sum();
        prop_assert_eq!(pairs, choose2(n));
        let mut got: Vec<usize> = lat.multiple_points().map(|q| q.lines.len()).collect();
        let mut want: Vec<usize> = g.vertices().iter().map(|v| v.multiplicity).collect();
        got.sort_unstable();
        want.sort_unstable();
        prop_assert_eq!(got, want);
        let vertex_pairs: usize = g.vertices().iter().map(|v| choose2(v.multiplicity)).sum();
        prop_assert_eq!(lat.node_count(), choose2(n) - vertex_pairs);
        prop_assert!(graphs_isomorphic(&g, &fan_graph(&lat)).is_some());
        let induced = induced_presentation(&lat).unwrap();
        prop_assert_eq!(incidence_of(&induced), lat.to_incidence());
    }
}

#[test]
fn falk_bound_on_named_fixtures() {
    for p in [
        fixtures::example_h(),
        fixtures::x3(),
        fixtures::pencil(5),
        fixtures::generic(5),
        fixtures::cycle_separated_example(),
        fixtures::two_components(),
        fixtures::braid_section(),
    ] {
        let n = p.generators();
        if n > DEFAULT_MAX_GENERATORS {
            continue;
        }
        let h3 = holonomy_phi3(&incidence_of(&p), DEFAULT_MAX_GENERATORS).unwrap();
        assert!(h3 >= falk_bound(&p), "{p}");
    }
}

#[test]
fn braid_section_gap_is_two() {
    let inc = incidence_of(&fixtures::braid_section());
    assert_eq!(betti(&build_graph(&fixtures::braid_section())), 3);
    let formula = phi_formula(&inc, 3).unwrap();
    assert_eq!(*formula.phi(3), BigUint::from(8u8));
    assert_eq!(holonomy_phi3(&inc, DEFAULT_MAX_GENERATORS).unwrap(), 10);
}

#[test]
fn example_h_values() {
    let inc = incidence_of(&fixtures::example_h());
    let t = phi_formula(&inc, 5).unwrap();
    let expected: Vec<BigUint> = [7u32, 3, 6, 9, 18].into_iter().map(BigUint::from).collect();
    assert_eq!(t.values(), &expected[..]);
    assert_eq!(holonomy_phi3(&inc, DEFAULT_MAX_GENERATORS).unwrap(), 6);
}
