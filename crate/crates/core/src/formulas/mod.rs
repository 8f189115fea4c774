//! Closed forms, the γ/η coefficient machinery, the HK_1 inequality suite,
//! tabulated multiplicities, zigzag constants and the dimension 4/6 bounds.

mod bounds;
mod closed;
mod gamma;
mod inequalities;
mod tables;

pub use bounds::{boundary_check, check_bounds, d4_bound, g_s, v_s, TABLE4};
pub use closed::{closed_form, quadric_table, zigzag_c, Level};
pub use gamma::{
    check_gamma_identities, eta, gamma, gamma_coeffs, hk1_floor_sums, hk1_identities, recursion_rhs, GammaCoeffs,
};
pub use inequalities::{check_inequalities, ehk_mu_one};
pub use tables::{table, TableName, TableRow, CSV_HEADER};
