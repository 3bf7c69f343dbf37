//! Constructive engines: monochromatic-subset extraction from transitive
//! triple colorings, convex-clustering search, the convex-subset assembly
//! pipeline, and the bound calculator.

pub mod bound;
pub mod clustering;
pub mod cupcap;
pub mod pipeline;

pub use bound::{bound_b, BoundReport};
pub use clustering::{find_clustering, Clustering, ClusteringStrategy};
pub use cupcap::{cupcap_extract, longest_monochromatic, TransitiveColoring, TripleClass};
pub use pipeline::{
    run_pipeline, CandidateReport, CertificateTrace, PipelineOptions, PipelineOutput, SpikeReport,
};
