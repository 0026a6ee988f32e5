//! Binary matrices with convex rows and columns: diagrams, essential sets,
//! reconstruction from margins, structural classes, interchanges and the
//! entrywise lattice.

pub mod classes;
pub mod diagram;
pub mod error;
pub mod interchange;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod reconstruct;
pub mod text;

pub use classes::{
    block_regular_class, class_nonempty, enumerate_class, ferrers_convex, ferrers_convex_decompose,
    ferrers_matrix, ferrers_shape_of, gale_ryser, is_unimodal, sort_rows_to_convex,
    staircase_from_profile, two_regular_profile, unit_rows_nonempty, unit_rows_witness,
    BlockRegularClass, FerrersConvexSpec, StaircaseProfile, DEFAULT_CLASS_CAP,
};
pub use diagram::{
    diagram, essential_set, full_essential_set, is_ferrers_diagram, ranked_essential_set, Diagram,
    FerrersShape, RankedEntry, RankedEssentialSet, TaggedPosition,
};
pub use error::{Error, Result};
pub use interchange::{
    apply_interchange, build_convex_class, convex_preserving_moves, enumerate_interchanges,
    interval_relation, is_convex_class, line_relation, move_acts_on_shift_or_singletons,
    passes_block_structure, trichotomy_report, ConvexClassSpec, InterchangeMove, LineRelation,
    OneShiftPair, Orientation, TrichotomyReport,
};
pub use lattice::{
    convex_hull, covers, distributivity_witness, join, maximal_chain, meet, ChainDirection,
    CoverStep,
};
pub use matrix::{
    BinaryMatrix, ConvexityMode, Direction, EntrywiseOrder, Interval, MarginPair, Position, Sources,
};
pub use oracle::{
    enumerate_all, matrix_from_mask, properties, run_sweep, shapes_up_to, SweepParams, SweepReport,
    DEFAULT_SWEEP_CAP,
};
pub use reconstruct::{
    reconstruct, reconstruct_detailed, reconstruct_directed, Cell, Reconstruction,
    ReconstructionState, TraceFrame,
};
