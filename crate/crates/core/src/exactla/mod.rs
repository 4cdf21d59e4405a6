//! Exact linear algebra written once against a small field contract and
//! instantiated for rationals, residues mod `p`, and cyclotomic elements.

mod closed_forms;
mod field;
mod matrix;

pub use closed_forms::{
    cauchy_closed_form, cauchy_matrix, det_rank_one_update, vandermonde_det,
    vandermonde_det_checked, vandermonde_matrix,
};
pub use field::Field;
pub use matrix::{bareiss_det, det, det_gauss, det_leibniz, inverse, Matrix};
