//! Named presentations used throughout the tests, benches and docs. The text
//! forms live in `fixtures/*.pres` at the crate root.

use crate::presentation::{parse_presentation, CyclicRelation, Presentation};

pub const EXAMPLE_H_TEXT: &str = include_str!("../fixtures/h.pres");
pub const X3_TEXT: &str = include_str!("../fixtures/x3.pres");
pub const G2_TEXT: &str = include_str!("../fixtures/g2.pres");
pub const BRAID_TEXT: &str = include_str!("../fixtures/braid.pres");
pub const PENCIL4_TEXT: &str = include_str!("../fixtures/pencil4.pres");
pub const ABELIAN_TEXT: &str = include_str!("../fixtures/abelian.pres");
pub const CYCLE_SEPARATED_TEXT: &str = include_str!("../fixtures/cyclesep.pres");
pub const TWO_COMPONENTS_TEXT: &str = include_str!("../fixtures/two_components.pres");

fn relations(supports: &[&[usize]]) -> Vec<CyclicRelation> {
    supports
        .iter()
        .map(|s| CyclicRelation::conjugation_free(s.to_vec()).expect("fixture supports are increasing"))
        .collect()
}

/// Seven generators, triple relations `{1,2,3}`, `{3,4,5}`, `{1,5,6}`; the
/// relation graph is a triangle and generator 7 is free.
pub fn example_h() -> Presentation {
    parse_presentation(EXAMPLE_H_TEXT).expect("fixture parses")
}

/// `example_h` without its free generator.
pub fn x3() -> Presentation {
    Presentation::new(6, relations(&[&[1, 2, 3], &[3, 4, 5], &[1, 5, 6]]), true).expect("in range")
}

/// Same supports as a triangle graph but with nontrivial conjugators.
pub fn example_g2() -> Presentation {
    parse_presentation(G2_TEXT).expect("fixture parses")
}

/// Four triple relations whose relation graph is `K_4`.
pub fn braid_section() -> Presentation {
    Presentation::new(
        6,
        relations(&[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]]),
        true,
    )
    .expect("in range")
}

/// A single relation of length `n`.
pub fn pencil(n: usize) -> Presentation {
    Presentation::new(n, relations(&[&(1..=n).collect::<Vec<_>>()]), true).expect("in range")
}

/// Only commutators: the free abelian group of rank `n`.
pub fn generic(n: usize) -> Presentation {
    Presentation::new(n, Vec::new(), true).expect("in range")
}

/// A triangle and a square joined by a path, with a pendant vertex on the
/// triangle. Seventeen generators.
pub fn cycle_separated_example() -> Presentation {
    presentation_from_graph(
        9,
        &[
            (0, 1),
            (1, 2),
            (2, 0),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 8),
        ],
        0,
    )
}

/// A path of three vertices, a separate edge, and one free generator.
pub fn two_components() -> Presentation {
    presentation_from_graph(5, &[(0, 1), (1, 2), (3, 4)], 1)
}

/// A conjugation-free presentation whose relation graph is the given simple
/// graph. Edge `i` is labeled by generator `i + 1`; each vertex then gets
/// private generators until its relation has length `max(3, degree)`;
/// `extra_free` free generators come last.
pub fn presentation_from_graph(nv: usize, edges: &[(usize, usize)], extra_free: usize) -> Presentation {
    let mut supports: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, &(u, v)) in edges.iter().enumerate() {
        supports[u].push(i + 1);
        supports[v].push(i + 1);
    }
    let mut next = edges.len() + 1;
    for s in &mut supports {
        while s.len() < 3 {
            s.push(next);
            next += 1;
        }
        s.sort_unstable();
    }
    let n = next - 1 + extra_free;
    let rels = supports
        .into_iter()
        .map(|s| CyclicRelation::conjugation_free(s).expect("sorted, distinct"))
        .collect();
    Presentation::new(n, rels, true).expect("labels are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{is_conjugation_free, validate};

    #[test]
    fn files_match_constructors() {
        let cases = [
            (X3_TEXT, x3()),
            (BRAID_TEXT, braid_section()),
            (PENCIL4_TEXT, pencil(4)),
            (ABELIAN_TEXT, generic(4)),
            (CYCLE_SEPARATED_TEXT, cycle_separated_example()),
            (TWO_COMPONENTS_TEXT, two_components()),
        ];
        for (text, p) in cases {
            assert_eq!(parse_presentation(text).unwrap(), p, "{text}");
        }
    }

    #[test]
    fn all_valid() {
        for p in [
            example_h(),
            x3(),
            example_g2(),
            braid_section(),
            pencil(6),
            generic(3),
            cycle_separated_example(),
            two_components(),
        ] {
            assert!(validate(&p).is_ok(), "{p}");
        }
        assert!(!is_conjugation_free(&example_g2()));
        assert_eq!(cycle_separated_example().generators(), 17);
        assert_eq!(two_components().generators(), 13);
    }
}
