//! Finite-field ground truth: ranks, Jordan types, δ-products and HK values
//! computed from definitions only.

pub mod delta;
pub mod hk;
pub mod jordan;
pub mod matrix;
pub mod poly;

pub use delta::{delta_product_dense, delta_product_oracle, delta_product_partition};
pub use hk::direct_hk;
pub use jordan::{jordan_partition, JordanPartition};
pub use matrix::{fp_rank, FpMatrix};
pub use poly::{parse_poly, PolySpec};
