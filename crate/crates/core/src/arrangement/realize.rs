//! Constructive realization of a relation graph as a real line arrangement.
//!
//! Vertex `i` of the graph becomes the point `(x_i, x_i^2)` on the parabola
//! `y = x^2`, with `x_i = base^i`. No line meets the parabola three times, so a
//! line through two vertex points never hits a third one. Lines are then
//! added one at a time, each checked against every point already present:
//!
//! 1. edge lines, through the two vertex points whose supports share the
//!    edge's generator;
//! 2. the remaining lines of each vertex, through its point with slopes
//!    `1, 2, 3, ...`;
//! 3. free lines, with slopes `-1, -2, ...` and intercepts searched in turn.
//!
//! A candidate is accepted only if it is parallel to nothing and meets every
//! existing line at a fresh point or at one of its own vertex points. If an
//! edge line is rejected the whole layout restarts with the next base. The
//! result is checked against the graph by recomputing the lattice.

use std::collections::BTreeSet;
use std::fmt;

use super::{fan_graph, induced_presentation, int, lattice, Arrangement, ArrangementError, IntersectionLattice, Point, RationalLine};
use crate::incidence::{choose2, IncidenceData};
use crate::presentation::{incidence_of, intersect_sorted, is_conjugation_free, validate, Presentation};
use crate::relgraph::{build_graph, graphs_isomorphic, is_cycle_separated, RelationGraph};

const BASES: std::ops::RangeInclusive<i64> = 2..=17;

struct Layout {
    lines: Vec<RationalLine>,
    points: BTreeSet<Point>,
    reserved: BTreeSet<Point>,
}

impl Layout {
    /// Adds `line` if it creates no unintended concurrence; `allowed` are the
    /// vertex points it is meant to pass through.
    fn try_add(&mut self, line: &RationalLine, allowed: &[&Point]) -> bool {
        let mut fresh = Vec::with_capacity(self.lines.len());
        for l in &self.lines {
            let Some(q) = l.intersect(line) else {
                return false;
            };
            if allowed.contains(&&q) {
                continue;
            }
            if self.points.contains(&q) || self.reserved.contains(&q) {
                return false;
            }
            fresh.push(q);
        }
        for p in allowed {
            if !line.contains(p) {
                return false;
            }
        }
        self.points.extend(fresh);
        self.points.extend(allowed.iter().map(|p| (*p).clone()));
        self.lines.push(line.clone());
        true
    }
}

fn check_input(g: &RelationGraph, n: usize) -> Result<(), ArrangementError> {
    if !is_cycle_separated(g) {
        return Err(ArrangementError::NotCycleSeparated);
    }
    let mut count = vec![0usize; n + 1];
    for v in g.vertices() {
        for &gen in &v.support {
            if gen == 0 || gen > n {
                return Err(ArrangementError::GeneratorOutOfRange { generator: gen, n });
            }
            count[gen] += 1;
        }
    }
    if let Some((gen, &c)) = count.iter().enumerate().find(|(_, &c)| c > 2) {
        return Err(ArrangementError::SharedEdgeLabel {
            generator: gen,
            count: c,
        });
    }
    let vs = g.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if intersect_sorted(&vs[i].support, &vs[j].support).len() > 1 {
                return Err(ArrangementError::OverlappingVertices(i + 1, j + 1));
            }
        }
    }
    let derived = RelationGraph::from_supports(vs.iter().enumerate().map(|(i, v)| (i, &v.support[..])));
    let key = |g: &RelationGraph| {
        let mut e: Vec<(usize, usize, usize)> = g
            .edges()
            .iter()
            .map(|e| (e.generator, e.endpoints.0.min(e.endpoints.1), e.endpoints.0.max(e.endpoints.1)))
            .collect();
        e.sort_unstable();
        e
    };
    if key(&derived) != key(g) {
        return Err(ArrangementError::InconsistentEdges);
    }
    Ok(())
}

/// Realizes `g` by `n` lines labeled `1..=n`: one multiple point per vertex,
/// with the vertex's support as its lines, and nodes everywhere else.
/// Deterministic; generators outside every support become free lines.
pub fn realize(g: &RelationGraph, n: usize) -> Result<Arrangement, ArrangementError> {
    check_input(g, n)?;
    let mut detail = String::new();
    for base in BASES {
        match attempt(g, n, base) {
            Ok(arr) => match verify(g, &arr) {
                Ok(()) => return Ok(arr),
                Err(d) => detail = d,
            },
            Err(d) => detail = d,
        }
    }
    Err(ArrangementError::RealizationFailed {
        attempts: BASES.count(),
        detail,
    })
}

fn attempt(g: &RelationGraph, n: usize, base: i64) -> Result<Arrangement, String> {
    let vs = g.vertices();
    let mut vertex_points = Vec::with_capacity(vs.len());
    let mut x = int(1);
    for _ in vs {
        vertex_points.push((x.clone(), &x * &x));
        x *= int(base);
    }
    let mut layout = Layout {
        lines: Vec::with_capacity(n),
        points: BTreeSet::new(),
        reserved: vertex_points.iter().cloned().collect(),
    };
    let mut owner: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, v) in vs.iter().enumerate() {
        for &gen in &v.support {
            owner[gen].push(i);
        }
    }

    for (gen, own) in owner.iter().enumerate() {
        if let [u, v] = own[..] {
            let (p, q) = (&vertex_points[u], &vertex_points[v]);
            let line = RationalLine::through(gen, p, q);
            if !layout.try_add(&line, &[p, q]) {
                return Err(format!("edge line {gen} through vertices {} and {} meets another intersection", u + 1, v + 1));
            }
        }
    }

    let slope_limit = 4 * (n as i64) * (n as i64) + 16;
    for (gen, own) in owner.iter().enumerate() {
        if let [v] = own[..] {
            let p = &vertex_points[v];
            let placed = (1..=slope_limit).any(|s| {
                let line = RationalLine::with_slope(gen, p, &int(s));
                layout.try_add(&line, &[p])
            });
            if !placed {
                return Err(format!("no admissible slope for line {gen} through vertex {}", v + 1));
            }
        }
    }

    for gen in 1..=n {
        if !owner[gen].is_empty() {
            continue;
        }
        let placed = (1..=slope_limit).any(|k| {
            (0..=slope_limit).any(|c| {
                let slope = -int(k);
                let line = RationalLine::with_slope(gen, &(int(0), int(c * 7 + gen as i64)), &slope);
                layout.try_add(&line, &[])
            })
        });
        if !placed {
            return Err(format!("no admissible position for free line {gen}"));
        }
    }

    Arrangement::new(layout.lines).map_err(|e| e.to_string())
}

/// Multiple points must be exactly the vertex supports; everything else a node.
fn verify(g: &RelationGraph, arr: &Arrangement) -> Result<(), String> {
    let lat = lattice(arr, false).map_err(|e| e.to_string())?;
    let mut got: Vec<&Vec<usize>> = lat.multiple_points().map(|p| &p.lines).collect();
    let mut want: Vec<&Vec<usize>> = g.vertices().iter().map(|v| &v.support).collect();
    got.sort();
    want.sort();
    if got != want {
        return Err(format!(
            "multiple points {:?} differ from vertex supports {:?}",
            got, want
        ));
    }
    Ok(())
}

/// Outcome of realizing a presentation and reading it back.
#[derive(Debug, Clone)]
pub struct RoundTripReport {
    pub arrangement: Arrangement,
    pub lattice: IntersectionLattice,
    /// Vertex map from the presentation's graph to Fan's graph.
    pub isomorphism: Option<Vec<usize>>,
    pub census_equal: bool,
    pub incidence_equal: bool,
    pub input_pairs: u64,
    pub lattice_pairs: u64,
    pub expected_pairs: u64,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.isomorphism.is_some()
            && self.census_equal
            && self.incidence_equal
            && self.input_pairs == self.expected_pairs
            && self.lattice_pairs == self.expected_pairs
    }
}

impl fmt::Display for RoundTripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.isomorphism {
            Some(map) => {
                let pairs: Vec<String> = map.iter().enumerate().map(|(a, b)| format!("{}->{}", a + 1, b + 1)).collect();
                writeln!(f, "graph_isomorphic = true [{}]", pairs.join(" "))?
            }
            None => writeln!(f, "graph_isomorphic = false")?,
        }
        writeln!(f, "census_equal = {}", self.census_equal)?;
        writeln!(f, "incidence_equal = {}", self.incidence_equal)?;
        writeln!(
            f,
            "pair_coverage = {} / {} (expected {})",
            self.input_pairs, self.lattice_pairs, self.expected_pairs
        )?;
        writeln!(f, "round_trip = {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Realizes `p`, recomputes Fan's graph and the induced presentation, and
/// compares graph, census, incidence and pair coverage with the input.
pub fn round_trip_check(p: &Presentation) -> Result<RoundTripReport, ArrangementError> {
    if !validate(p).is_ok() {
        return Err(ArrangementError::InvalidPresentation);
    }
    if !is_conjugation_free(p) {
        return Err(ArrangementError::NotConjugationFree);
    }
    let g = build_graph(p);
    let n = p.generators();
    let arrangement = realize(&g, n)?;
    let lat = lattice(&arrangement, false)?;
    let fan = fan_graph(&lat);
    let induced = induced_presentation(&lat)?;
    let input: IncidenceData = incidence_of(p);
    let output = incidence_of(&induced);
    Ok(RoundTripReport {
        isomorphism: graphs_isomorphic(&g, &fan),
        census_equal: input.census() == lat.to_incidence().census(),
        incidence_equal: input == output,
        input_pairs: input.pair_coverage(),
        lattice_pairs: lat.to_incidence().pair_coverage(),
        expected_pairs: choose2(n as u64),
        arrangement,
        lattice: lat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::Zero;

    fn realize_presentation(p: &Presentation) -> (Arrangement, IntersectionLattice) {
        let arr = realize(&build_graph(p), p.generators()).unwrap();
        let lat = lattice(&arr, false).unwrap();
        (arr, lat)
    }

    #[test]
    fn generic_arrangement() {
        let (arr, lat) = realize_presentation(&fixtures::generic(4));
        assert_eq!(arr.len(), 4);
        assert_eq!(lat.points.len(), 6);
        assert_eq!(lat.node_count(), 6);
    }

    #[test]
    fn pencil_of_five() {
        let (arr, lat) = realize_presentation(&fixtures::pencil(5));
        assert_eq!(arr.len(), 5);
        assert_eq!(lat.points.len(), 1);
        assert_eq!(lat.points[0].multiplicity(), 5);
    }

    #[test]
    fn example_h_counts() {
        let h = fixtures::example_h();
        let (arr, lat) = realize_presentation(&h);
        assert_eq!(arr.len(), 7);
        assert_eq!(lat.to_incidence().census(), [(2, 12), (3, 3)].into_iter().collect());
        let fan = fan_graph(&lat);
        assert_eq!((fan.vertex_count(), fan.edge_count()), (3, 3));
        assert!(round_trip_check(&h).unwrap().passed());
    }

    #[test]
    fn deterministic() {
        let g = build_graph(&fixtures::cycle_separated_example());
        let a = realize(&g, 17).unwrap();
        let b = realize(&g, 17).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn round_trips() {
        for p in [
            fixtures::example_h(),
            fixtures::x3(),
            fixtures::pencil(4),
            fixtures::generic(5),
            fixtures::cycle_separated_example(),
            fixtures::two_components(),
        ] {
            let report = round_trip_check(&p).unwrap();
            assert!(report.passed(), "{p}\n{report}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let braid = fixtures::braid_section();
        assert_eq!(
            realize(&build_graph(&braid), 6),
            Err(ArrangementError::NotCycleSeparated)
        );
        assert_eq!(
            round_trip_check(&fixtures::example_g2()).unwrap_err(),
            ArrangementError::NotConjugationFree
        );
        let g = build_graph(&fixtures::pencil(5));
        assert_eq!(
            realize(&g, 4),
            Err(ArrangementError::GeneratorOutOfRange { generator: 5, n: 4 })
        );
    }

    #[test]
    fn vertex_points_lie_on_the_parabola() {
        let g = build_graph(&fixtures::example_h());
        let arr = realize(&g, 7).unwrap();
        let lat = lattice(&arr, false).unwrap();
        for p in lat.multiple_points() {
            assert!((&p.y - &p.x * &p.x).is_zero());
        }
    }
}
