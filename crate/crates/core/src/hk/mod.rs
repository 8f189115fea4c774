//! Hilbert–Kunz functions of diagonal hypersurfaces and of the quadrics
//! `Q_d`, `P_d`, and exact extraction of the multiplicity.

mod data;
mod engine;

pub use crate::sigma::Variant;
pub use data::{associated_data, beta_for, check_conditions, equivalent, find_parameters, star, BetaData, Conditions};
pub use engine::{
    ehk, ehk_from_values, ehk_power_trick, fit_geometric, hk_diagonal, hk_function, hk_quadric, yoshida_ell_sharp,
    HkPath, HkReport, Singularity,
};
