//! Combinatorial rigidity and flexibility of bar-joint frameworks.
//!
//! NAC-colorings, ribbon and bracing-graph decisions for parallelogram
//! frameworks, exact pentagrid Penrose patches, and closed-form flexes.

pub mod cyclotomic;
pub mod dixon;
pub mod error;
pub mod flex;
pub mod framework;
pub mod graph;
pub mod io;
pub mod nac;
pub mod penrose;
pub mod ribbons;
pub mod samples;

pub use cyclotomic::{Cyclo5, QSqrt5, Rational};
pub use dixon::{dixon_flex, dixon_flexible, DixonFlex, DixonLinkage};
pub use error::{Error, Result};
pub use flex::{
    check_flex, flex_from_nac, pframework_flex, symmetric_flex, Flex, FlexReport, Motion,
};
pub use framework::{
    validate_framework, validate_parallelogram, Framework, ParallelogramReport, Point,
};
pub use graph::{families, validate_symmetry_action, Graph, SymmetryAction, VertexId};
pub use nac::{
    enumerate_nac, is_cartesian, is_nac, is_nac_oracle, is_symmetric_nac, tower_chain, Color,
    CycleOracle, EdgeColoring, TowerInstance, TowerMode,
};
pub use penrose::{
    generate_patch, monte_carlo_rigidity, symmetric_patch, verify_ribbon_properties, BraceStrategy,
    PenrosePatch, PentagridParams, Tile, Variant, Window,
};
pub use ribbons::{
    compute_ribbons, decide_rigidity, decide_symmetric_rigidity, is_ribbon_cutting,
    quotient_bracing_graph, ribbon_graph, BracedGraph, RibbonDecomposition, RibbonGraph, Verdict,
};
