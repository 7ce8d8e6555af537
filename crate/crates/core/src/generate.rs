//! Seeded random fixtures for property and acceptance tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::incidence::IncidenceData;
use crate::presentation::{CyclicRelation, Presentation};

/// A random conjugation-free presentation whose relation graph is
/// cycle-separated (a disjoint union of cacti with vertex-disjoint cycles),
/// with at most `max_n` generators and labels shuffled.
pub fn cactus_presentation(seed: u64, max_n: usize) -> Presentation {
    assert!(max_n >= 3, "a multiple relation needs three generators");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(p) = try_cactus(&mut rng, max_n) {
            return p;
        }
    }
}

fn try_cactus(rng: &mut ChaCha8Rng, max_n: usize) -> Option<Presentation> {
    let mut nv = 0usize;
    let mut on_cycle: Vec<bool> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let components = rng.gen_range(1..=2);
    // cycles rarely survive the size bound, so ask for one up front
    let mut want_cycle = rng.gen_bool(0.6);
    for _ in 0..components {
        let root = nv;
        nv += 1;
        on_cycle.push(false);
        let growth = rng.gen_range(usize::from(want_cycle)..=3);
        for _ in 0..growth {
            let anchor = rng.gen_range(root..nv);
            let cycle = std::mem::take(&mut want_cycle) || rng.gen_bool(0.5);
            if !cycle || on_cycle[anchor] {
                edges.push((anchor, nv));
                on_cycle.push(false);
                nv += 1;
            } else {
                let len = rng.gen_range(3..=5);
                let mut prev = anchor;
                on_cycle[anchor] = true;
                for _ in 1..len {
                    edges.push((prev, nv));
                    on_cycle.push(true);
                    prev = nv;
                    nv += 1;
                }
                edges.push((prev, anchor));
            }
        }
    }
    let mut supports: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, &(u, v)) in edges.iter().enumerate() {
        supports[u].push(i + 1);
        supports[v].push(i + 1);
    }
    let mut next = edges.len() + 1;
    for s in supports.iter_mut() {
        let target = s.len().max(3) + usize::from(rng.gen_bool(0.25));
        while s.len() < target {
            s.push(next);
            next += 1;
        }
    }
    let used = next - 1;
    if used > max_n {
        return None;
    }
    let n = rng.gen_range(used..=max_n.min(used + 2));
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let relations = supports
        .into_iter()
        .map(|s| {
            let mut s: Vec<usize> = s.into_iter().map(|g| perm[g - 1]).collect();
            s.sort_unstable();
            CyclicRelation::conjugation_free(s).expect("sorted, distinct")
        })
        .collect();
    Some(Presentation::new(n, relations, true).expect("labels in range"))
}

/// A random set of supports on `2..=max_n` points in which every pair lies in
/// exactly one support (a linear space), built greedily from random blocks of
/// size 3 or 4 and completed by pairs.
pub fn linear_space(seed: u64, max_n: usize) -> IncidenceData {
    assert!(max_n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let mut covered = vec![vec![false; n + 1]; n + 1];
    let mut supports: Vec<Vec<usize>> = Vec::new();
    let tries = rng.gen_range(0..=3 * n);
    for _ in 0..tries {
        let size = rng.gen_range(3..=4).min(n);
        if size < 3 {
            break;
        }
        let mut block: Vec<usize> = (1..=n).collect::<Vec<_>>().choose_multiple(&mut rng, size).copied().collect();
        block.sort_unstable();
        let clash = block
            .iter()
            .enumerate()
            .any(|(a, &i)| block[a + 1..].iter().any(|&j| covered[i][j]));
        if clash {
            continue;
        }
        for (a, &i) in block.iter().enumerate() {
            for &j in &block[a + 1..] {
                covered[i][j] = true;
            }
        }
        supports.push(block);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if !covered[i][j] {
                supports.push(vec![i, j]);
            }
        }
    }
    IncidenceData::new(n, supports).expect("supports in range")
}

/// The presentation with one conjugation-free relation per support.
pub fn presentation_of(inc: &IncidenceData) -> Presentation {
    let relations = inc
        .supports()
        .iter()
        .map(|s| CyclicRelation::conjugation_free(s.clone()).expect("sorted, distinct"))
        .collect();
    Presentation::new(inc.generators(), relations, false).expect("in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{incidence_of, validate};
    use crate::relgraph::{betti, build_graph, is_cycle_separated};

    #[test]
    fn cacti_are_valid_and_cycle_separated() {
        for seed in 0..100 {
            let p = cactus_presentation(seed, 10);
            assert!(p.generators() <= 10);
            assert!(validate(&p).is_ok(), "{p}");
            assert!(is_cycle_separated(&build_graph(&p)), "{p}");
        }
        let cyclic = (0..50)
            .filter(|&s| betti(&build_graph(&cactus_presentation(s, 10))) > 0)
            .count();
        assert!(cyclic >= 15, "only {cyclic} of 50 have a cycle");
    }

    #[test]
    fn linear_spaces_cover_pairs_once() {
        for seed in 0..100 {
            let inc = linear_space(seed, 8);
            assert!(inc.covers_all_pairs(), "{inc:?}");
            assert!(validate(&presentation_of(&inc)).is_ok());
            assert_eq!(incidence_of(&presentation_of(&inc)), inc);
        }
    }

    #[test]
    fn seeded() {
        assert_eq!(cactus_presentation(7, 10), cactus_presentation(7, 10));
        assert_eq!(linear_space(7, 8), linear_space(7, 8));
    }
}
