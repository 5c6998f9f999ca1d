//! The biquaternion Z transform `X[f](x) = sum_{n>=0} f_n x^-n`.

pub mod catalog;
pub mod eval;
pub mod geometric;
pub mod ops;

pub use catalog::{trig_transform, CatalogEntry, CatalogKind, CatalogParams, RowFiveForm, CATALOG_NAMES};
pub use eval::{eval_truncated, roc_estimate, EvalOptions, TailBound, TransformValue, RATIO_WINDOW};
pub use geometric::{geometric_remainder, geometric_sum, partial_sum};
pub use ops::{
    commutes, convolve, default_step, op_linear_left, op_linear_right, op_linear_two_side, op_n_scale,
    op_scale_qn, op_shift_left, op_shift_right, scale_qn_transform,
};
