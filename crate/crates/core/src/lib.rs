//! Combinatorial convexity for pseudo-configurations of points.
//!
//! A pseudo-configuration is encoded by its counterclockwise sign on every
//! point triple (a CC-system). This crate validates and enumerates such
//! systems, decides convex position and combinatorial hulls purely from
//! orientation queries, decomposes the exterior of a convex polygon into
//! spikes with their vertical/horizontal chain orders, extracts large
//! convex subsets from chain colorings, and evaluates the resulting
//! size bounds.
//!
//! Data-parallel kernels (enumeration, brute-force search, clustering)
//! run on rayon when the default `parallel` feature is enabled; every
//! kernel has a sequential twin with identical output.

pub mod ccs;
pub mod chirotope;
pub mod convexity;
pub mod error;
pub mod extraction;
pub mod generate;
pub mod spike;
pub mod verify;

pub use chirotope::{
    enumerate_systems, validate_axioms, Label, PseudoConfiguration, RawChirotope, Sign,
    ValidationReport, ValidationStatus,
};
pub use convexity::{
    hull_cycle, in_triangle, is_convex_position, largest_convex_subset, segments_cross,
    ConvexCertificate, SearchMode,
};
pub use ccs::{parse_ccs, serialize_ccs};
pub use error::{Error, Result};
pub use extraction::{
    bound_b, cupcap_extract, find_clustering, run_pipeline, BoundReport, CertificateTrace,
    Clustering, ClusteringStrategy, PipelineOptions, PipelineOutput, TransitiveColoring,
    TripleClass,
};
pub use generate::{
    gen_realizable, generate, mutate, realizability_hint, GeneratorKind, GeneratorSpec,
    RealizabilityHint,
};
pub use spike::{
    chain_stats, classify_horizontal_triple, classify_vertical_triple, decompose,
    relation_in_spike, spike_of, ChainStats, HorizontalClass, OrderKind, SpikeDecomposition,
    VerticalClass,
};
pub use verify::VerifyReport;
