//! Finite higher-rank graphs (k-graphs): validation and unique
//! factorization, fundamental groups, coverings, skew products and the
//! enumeration of connected coverings by sheet count.

pub mod coverings;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod fundamental;
pub mod kgraph;
pub mod skew;
pub mod word;

pub use coverings::{
    action_to_covering, are_isomorphic_coverings, check_covering, covering_morphism, covering_to_action,
    deck_group, is_transitive, quotient, quotient_covering, stabilizer_subgroup, Automorphism, CoveringMap,
    CoveringMorphism, DeckGroup, GroupoidAction, QuotientResult, SubgroupData,
};
pub use enumeration::{
    classify_coverings, low_index_subgroups, subgroups_up_to_index, todd_coxeter, Classified, CosetTable,
};
pub use error::{Error, Result};
pub use fundamental::{
    are_cohomologous, canonical_cocycle, degree_cocycle, eval_cocycle, fundamental_group, spanning_tree,
    Cocycle, FundamentalGroup, SpanningTree, Voltage,
};
pub use kgraph::{
    validate_kgraph, Degree, Direction, Edge, EdgeId, EdgeSpec, KGraph, Morphism, Skeleton, Square,
    SquareTable, ValidationOptions, VertexId,
};
pub use skew::{
    gross_tucker, is_ktree, relative_skew_product, skew_product, universal_cover, FiniteGroupRealization,
    GrossTucker, KTree, SkewProductResult,
};
pub use word::{AbelianInvariants, GroupPresentation, GroupWord, Letter};
