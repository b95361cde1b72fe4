//! Permutation pentanomials `x^t H(x^{q-1})` over GF(2^{2m}).
//!
//! The crate builds the three pentanomial classes `f_A`, `f_B`, `f_C`,
//! predicts their permutation behaviour from the gcd structure of
//! `N/H`, and checks every prediction against exhaustive computation:
//! brute-force permutation sweeps, ramification data of the rational map
//! on the unit circle, and explicit linear-equivalence certificates.

pub mod equivalence;
pub mod families;
pub mod field;
pub mod gf2poly;
pub mod nt;
pub mod oracle;
pub mod search;
pub mod theory;

pub use families::{Class, FamilyError, FamilySpec, GeneralPentanomial};
pub use field::{FieldCtx, FieldElem, FieldError};
pub use gf2poly::{BinPoly, PolyError};
pub use oracle::{OracleError, ProjPoint};
pub use search::{Candidate, SearchConfig};
pub use theory::{MCondition, TheoryError, Verdict};
