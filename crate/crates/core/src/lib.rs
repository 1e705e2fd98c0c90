//! Exact arithmetic for Fourier matrices and their fusion data.
//!
//! The crate is organised bottom-up:
//!
//! * [`cyclo`] — cyclotomic scalars with canonical forms, exact square
//!   roots of rationals, and certified real/imaginary enclosures;
//! * [`linalg`] — dense matrices over those scalars: products, inverses,
//!   determinants, and scaled-permutation recognition;
//! * [`rescale`] — the three linked presentations of a Fourier matrix
//!   (unitary `S`, first-row-normalised `s`, first-column-normalised `P`)
//!   and the exact conversions between them;
//! * [`fusion`] — verification of the Fourier-matrix axioms, modular
//!   data, structure constants, and the associated C-algebras;
//! * [`analysis`] — self-duality, integrality, reconstruction from a
//!   `P`-matrix, divisibility screening, homogeneity, and classification
//!   of homogeneous examples;
//! * [`genlib`] — generators for known families (finite abelian groups,
//!   the rank-two one-parameter family) used as test corpora.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod cyclo;
pub mod fusion;
pub mod genlib;
pub mod linalg;
pub mod rescale;

pub use analysis::{
    classify, degree_one_check, divisibility_screen, duality_report, homogeneity, hypothesis_of,
    integrality_condition, perfect_square_degrees_check, reconstruct_fourier, square_order_check,
    AnalysisError, ClassificationReport, CuntzVerdict, DegreeOneVerdict, DualityReport,
    Hypothesis, IntegralityVerdict, PerfectSquareVerdict, ScreenVerdict, SquareOrderVerdict,
};
pub use cyclo::{
    set_sign_precision_cap, sign_precision_cap, Cyclotomic, CycloError, RealInterval, Sign,
};
pub use genlib::{
    abelian_character_table, all_abelian_specs_up_to, canonical_invariant_factors, rank2_family,
    tensor_product, AbelianGroupSpec, GenError,
};
pub use fusion::{
    build_calgebra, candidate_calgebra, structure_constants, verify_calgebra, verify_fourier,
    verify_modular_datum, AxiomCheck, AxiomReport, CAlgebra, FusionError, IntegralityConvention,
    StructureConstants, Witness,
};
pub use linalg::{ExactMatrix, LinalgError, ScaledPermutation};
pub use rescale::{FourierTriple, RescaleError};
