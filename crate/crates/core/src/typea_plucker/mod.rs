//! Type A combinatorics of two-column tableaux and the quadratic relations of
//! the semi-infinite Pluecker algebra.

mod kernel;
mod series;
mod tableaux;

pub use kernel::{
    kernel_component, kernel_highest_vector, max_level, plucker_lift, quadratic_kernel, tensor_pairs, Tensor,
};
pub use series::{
    all_relation_series, coefficient_vanishes, free_quadratic_basis, kernel_level, monomial, relation_series,
    relation_span_dims, verify_series, Factor, Monomial, RelationSeries, SeriesCoefficient,
};
pub use tableaux::{ch_w_two_fund, is_semistandard, k_statistic, lemma_t_tableau, p_set, Column, Route};
