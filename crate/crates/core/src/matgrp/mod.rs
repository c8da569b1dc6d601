//! Matrices over finite fields, classical groups and Singer cycles.

mod classical;
mod mat;
mod singer;

pub use classical::{
    build_matrix_group, classical_order, is_unitary_matrix, transvection_generators, ClassicalKind,
    MatrixGroup,
};
pub(crate) use mat::{canonicalize, inverse_raw, mul_into, transpose_raw};
pub use mat::{Mat, MatRule, ProjMat, SemilinearElem};
pub use singer::{
    singer_cycle, singer_cycle_over, verify_singer_lemma, verify_singer_lemma_capped, Counterexample,
    LemmaReport, SingerData, LEMMA_CAP,
};
