use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;

use super::{Arrangement, ArrangementError};
use crate::incidence::IncidenceData;
use crate::presentation::{join, CyclicRelation, Presentation};
use crate::relgraph::{is_conjugation_free_graph, GraphEdge, GraphVertex, RelationGraph};

/// An intersection point with the sorted labels of the lines through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePoint {
    pub x: BigRational,
    pub y: BigRational,
    pub lines: Vec<usize>,
}

impl LatticePoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn is_multiple(&self) -> bool {
        self.lines.len() >= 3
    }
}

/// Intersection points sorted lexicographically by `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    pub n: usize,
    pub points: Vec<LatticePoint>,
    /// Label pairs that do not meet; only non-empty with parallels allowed.
    pub parallel_pairs: Vec<(usize, usize)>,
}

impl IntersectionLattice {
    /// Point supports as incidence data.
    pub fn to_incidence(&self) -> IncidenceData {
        IncidenceData::new(self.n, self.points.iter().map(|p| p.lines.clone()).collect())
            .expect("line labels are 1..=n")
    }

    pub fn multiple_points(&self) -> impl Iterator<Item = &LatticePoint> {
        self.points.iter().filter(|p| p.is_multiple())
    }

    pub fn node_count(&self) -> usize {
        self.points.iter().filter(|p| p.lines.len() == 2).count()
    }
}

/// Intersects every pair of lines and groups coincident points exactly.
pub fn lattice(arr: &Arrangement, allow_parallel: bool) -> Result<IntersectionLattice, ArrangementError> {
    let lines = arr.lines();
    let mut groups: BTreeMap<(BigRational, BigRational), BTreeSet<usize>> = BTreeMap::new();
    let mut parallel_pairs = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            match l.intersect(m) {
                Some(p) => {
                    let set = groups.entry(p).or_default();
                    set.insert(l.label);
                    set.insert(m.label);
                }
                None if allow_parallel => parallel_pairs.push((l.label, m.label)),
                None => return Err(ArrangementError::Parallel(l.label, m.label)),
            }
        }
    }
    let points = groups
        .into_iter()
        .map(|((x, y), set)| LatticePoint {
            x,
            y,
            lines: set.into_iter().collect(),
        })
        .collect();
    Ok(IntersectionLattice {
        n: arr.len(),
        points,
        parallel_pairs,
    })
}

/// One `point (<x>,<y>) mult=<m> lines=<...>` row per intersection point.
pub struct LatticeReport<'a>(pub &'a IntersectionLattice);

impl fmt::Display for LatticeReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0.points {
            writeln!(
                f,
                "point ({},{}) mult={} lines={}",
                p.x,
                p.y,
                p.multiplicity(),
                join(&p.lines, ",")
            )?;
        }
        for (a, b) in &self.0.parallel_pairs {
            writeln!(f, "parallel = {a} {b}")?;
        }
        Ok(())
    }
}

/// Vertices are the multiple points in lattice order; each line carrying two
/// or more of them contributes the segments between consecutive ones.
pub fn fan_graph(lat: &IntersectionLattice) -> RelationGraph {
    let mut vertices = Vec::new();
    let mut on_line: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (idx, p) in lat.points.iter().enumerate() {
        if !p.is_multiple() {
            continue;
        }
        let v = vertices.len();
        vertices.push(GraphVertex {
            relation: idx,
            multiplicity: p.multiplicity(),
            support: p.lines.clone(),
        });
        for &l in &p.lines {
            on_line.entry(l).or_default().push(v);
        }
    }
    // lexicographic order of points on a line is their order along it
    let mut edges = Vec::new();
    for (label, vs) in on_line {
        for w in vs.windows(2) {
            edges.push(GraphEdge {
                generator: label,
                endpoints: (w[0], w[1]),
            });
        }
    }
    RelationGraph::new(vertices, edges).expect("distinct lines share at most one point")
}

/// The conjugation-free presentation read off the lattice: one relation per
/// intersection point, nodes included, no implicit commutators.
pub fn induced_presentation(lat: &IntersectionLattice) -> Result<Presentation, ArrangementError> {
    if !lat.parallel_pairs.is_empty() {
        return Err(ArrangementError::IncompleteCoverage);
    }
    if !is_conjugation_free_graph(&fan_graph(lat)) {
        return Err(ArrangementError::NotConjugationFreeGraph);
    }
    let relations = lat
        .points
        .iter()
        .map(|p| CyclicRelation::conjugation_free(p.lines.clone()).expect("labels sorted and distinct"))
        .collect();
    Ok(Presentation::new(lat.n, relations, false).expect("labels are 1..=n"))
}

#[cfg(test)]
mod tests {
    use super::super::{int, RationalLine};
    use super::*;
    use crate::incidence::choose2;
    use crate::presentation::{incidence_of, validate};

    fn arr(lines: &[(i64, i64, i64)]) -> Arrangement {
        Arrangement::new(
            lines
                .iter()
                .enumerate()
                .map(|(i, &(a, b, c))| RationalLine::new(i + 1, int(a), int(b), int(c)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn concurrent_and_generic() {
        let pencil = lattice(&arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 0)]), false).unwrap();
        assert_eq!(pencil.points.len(), 1);
        assert_eq!(pencil.points[0].lines, vec![1, 2, 3]);

        let generic = lattice(&arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]), false).unwrap();
        assert_eq!(generic.points.len(), 3);
        assert!(generic.points.iter().all(|p| p.multiplicity() == 2));
        assert!(fan_graph(&generic).is_empty());
        let p = induced_presentation(&generic).unwrap();
        assert!(validate(&p).is_ok());
        assert_eq!(p.relations().len(), 3);
    }

    #[test]
    fn parallels() {
        let a = arr(&[(1, 0, 0), (1, 0, 1), (0, 1, 0)]);
        assert_eq!(lattice(&a, false), Err(ArrangementError::Parallel(1, 2)));
        let lat = lattice(&a, true).unwrap();
        assert_eq!(lat.parallel_pairs, vec![(1, 2)]);
        assert_eq!(lat.points.len(), 2);
        assert_eq!(induced_presentation(&lat), Err(ArrangementError::IncompleteCoverage));
    }

    #[test]
    fn report_rows() {
        let lat = lattice(&arr(&[(1, 0, 0), (0, 1, 0), (1, 1, 1)]), false).unwrap();
        assert_eq!(
            LatticeReport(&lat).to_string(),
            "point (0,0) mult=2 lines=1,2\npoint (0,1) mult=2 lines=1,3\npoint (1,0) mult=2 lines=2,3\n"
        );
    }

    #[test]
    fn three_points_on_a_line_give_a_path() {
        // x = 0 carries triple points at y = 0, 1, 2
        let a = arr(&[
            (1, 0, 0),
            (1, -1, 0),
            (1, 1, 0),
            (-2, 1, 1),
            (3, 1, 1),
            (-11, 1, 2),
            (13, 1, 2),
        ]);
        let lat = lattice(&a, false).unwrap();
        let g = fan_graph(&lat);
        assert_eq!(g.vertex_count(), 3);
        let mut ends: Vec<(usize, usize)> = g.edges().iter().map(|e| e.endpoints).collect();
        ends.sort_unstable();
        assert_eq!(ends, vec![(0, 1), (1, 2)]);
        let total: u64 = lat.points.iter().map(|p| choose2(p.lines.len() as u64)).sum();
        assert_eq!(total, choose2(7));
        let p = induced_presentation(&lat).unwrap();
        assert_eq!(incidence_of(&p), lat.to_incidence());
    }
}
