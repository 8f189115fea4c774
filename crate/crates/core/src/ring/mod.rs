//! The Han–Monsky ring Γ: δ- and λ-bases, products, α, D and ℓ.

mod digits;
mod element;
mod functions;
mod mul;

pub use digits::{delta_blocks, lambda_product};
pub use element::{Basis, GammaElement};
pub use functions::{alpha_product, big_d, cyclic_decompose, delta_fractional, ell, product, CyclicSpec};
pub use mul::{delta_pair, lambda_pair, product_cache_len};
