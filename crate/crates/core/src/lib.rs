//! Hyperoctahedral Hall–Littlewood polynomials and the semi-infinite q-boson
//! system with a four-parameter boundary interaction.
//!
//! * [`partition`]: partitions, dominance order, the signed-permutation group.
//! * [`laurent`]: exact Laurent polynomials over the rationals.
//! * [`qkernels`]: parameters and every scalar coefficient formula.
//! * [`hallittlewood`]: the polynomials `p_λ`, built two independent ways.
//! * [`torus`]: the orthogonality weight and quadrature inner products.
//! * [`qboson`]: creation/annihilation operators, Hamiltonian, wave functions.
//! * [`report`]: verification reports shared by the suites.

pub mod budget;
pub mod error;
pub mod partition;
pub mod rational;
pub mod laurent;
pub mod qkernels;
pub mod hallittlewood;
pub mod torus;
pub mod qboson;
pub mod report;

pub use budget::Budget;
pub use error::{Error, Result};
pub use hallittlewood::{hl_explicit, macdonald_bc, HlFamily, HlPolynomial};
pub use laurent::LaurentPoly;
pub use partition::{enumerate, Partition, SignedPermutation};
pub use qboson::{Fock, LatticeFunction, Relation};
pub use qkernels::{ParamSet, Profile, Step};
pub use rational::Rational;
pub use report::VerificationReport;
pub use torus::{QuadratureSpec, TorusGrid};
