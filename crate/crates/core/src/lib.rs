//! Lower central series ranks of conjugation-free groups and their line
//! arrangements.
//!
//! The pipeline: parse and validate a cyclic-related presentation
//! ([`presentation`]), build its relation graph and test the graph
//! hypotheses ([`relgraph`]), evaluate the closed-form ranks `φ_k` and the
//! truncated series identity ([`ranks`]), cross-check `φ_2`, `φ_3` against the
//! holonomy Lie algebra ([`holonomy`]), and realize the presentation as a
//! real line arrangement whose intersection lattice gives the presentation
//! back ([`arrangement`]). All arithmetic is exact.

pub mod arrangement;
pub mod fixtures;
pub mod generate;
pub mod holonomy;
pub mod incidence;
pub mod linalg;
pub mod presentation;
pub mod ranks;
pub mod relgraph;
pub mod series;

pub use arrangement::{
    fan_graph, induced_presentation, lattice, parse_arrangement, realize, round_trip_check,
    Arrangement, ArrangementError, IntersectionLattice, LatticePoint, LatticeReport,
    RationalLine, RoundTripReport,
};
pub use holonomy::{
    holonomy_phi2, holonomy_phi3, oracle, HolonomyError, OracleReport, DEFAULT_MAX_GENERATORS,
};
pub use incidence::IncidenceData;
pub use presentation::{
    incidence_of, is_conjugation_free, parse_presentation, parse_presentation_with, validate,
    CyclicRelation, ParseError, ParseOptions, Presentation, ValidationReport, Violation, Word,
};
pub use ranks::{
    b2, lcs_series_check, phi2_combinatorial, phi_for_presentation, phi_formula, witt, LcsCheck,
    RankTable, RanksError, MAX_DEGREE,
};
pub use relgraph::{
    betti, build_graph, contract, graphs_isomorphic, is_conjugation_free_graph,
    is_cycle_separated, GraphReport, RelationGraph,
};
pub use series::TruncatedSeries;

pub use num_bigint::BigUint;
