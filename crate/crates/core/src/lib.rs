pub mod baseline;
pub mod classifier;
pub mod dataset;
pub mod graph;
pub mod graph6;
pub mod layout;
pub mod metrics;
pub mod oracle;
pub mod png;
pub mod raster;
pub mod rng;
