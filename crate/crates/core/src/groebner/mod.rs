//! Monomial orders, polynomials, reduced bases, normal-form tables and
//! weight-driven basis conversion.

mod basis;
mod convert;
mod order;
mod poly;
mod table;

pub use basis::{validate_reduced_gb, ReducedGroebnerBasis, Violation};
pub use convert::{check_generic, convert_basis, element_of, weight_compare, Conversion};
pub use order::{order_compare, MonomialOrder};
pub use poly::{poly_eval, Polynomial};
pub use table::{normal_form_table, CoeffTable};
