//! Twisting data and the operator identities attached to it.

pub mod boxes;
pub mod data;
pub mod dilaton;
pub mod euler;
pub mod sector;

pub use boxes::{
    box_log, box_log_reflection, box_operator, box_symmetry_check, box_term, pairing_twist,
    serre_relation_check, serre_relation_difference, twist_exponent,
};
pub use data::{LineSummand, Support, TwistData, TwistMode};
pub use dilaton::{dilaton_vector, kappa_ratio, psi_dilaton_check, psi_dilaton_lhs};
pub use euler::{euler_exponential, euler_product, euler_product_check};
pub use sector::{sector_box_relation, sector_geometric_identity};

use crate::error::Result;

pub fn serre_dual(data: &TwistData) -> Result<TwistData> {
    data.serre_dual()
}
