//! Exact-arithmetic models of the Néron–Severi lattice of a Kummer surface
//! attached to an Abelian surface with a polarization of square k(k+1).
//!
//! Everything that produces a verdict (membership, discriminant forms,
//! certificates, isometry checks) runs over arbitrary-precision integers and
//! rationals; there is no floating point anywhere in a decision path.
//!
//! The crate is organized bottom-up:
//!
//! * [`mat`], [`snf`], [`poly`] — integer/rational matrices, Smith normal
//!   form, characteristic polynomials;
//! * [`lattice`] — gram lattices, discriminant groups and finite quadratic
//!   forms, gluing of lattices along an anti-isometry of their forms;
//! * [`ns`] — the rank-17 Néron–Severi lattice of the Kummer surface, its
//!   16-curve configuration, membership tests and structural checks;
//! * [`nikulin`] — the second 16-curve configuration, nef/big certificates for
//!   the relevant polarizations and the associated projective-model facts;
//! * [`isometry`], [`pell`] — the involutions exchanging the two
//!   configurations, their products, discriminant actions, extensions to a
//!   rank-22 unimodular overlattice, and the Pell-equation bookkeeping;
//! * [`covers`] — numerical invariants of the associated bidouble covers and
//!   the singular-curve configurations allowed by the Miyaoka bound;
//! * [`report`] — the check/report structures shared by the verifiers.

pub mod covers;
pub mod error;
pub mod isometry;
pub mod lattice;
pub mod mat;
pub mod nikulin;
pub mod ns;
pub mod pell;
pub mod poly;
pub mod report;
pub mod snf;

/// Exact integer scalar used throughout.
pub type Int = num_bigint::BigInt;
/// Exact rational scalar used throughout.
pub type Rat = num_rational::BigRational;
/// Dense matrix over [`Int`].
pub type IntMat = mat::Mat<Int>;
/// Dense matrix over [`Rat`].
pub type RatMat = mat::Mat<Rat>;

pub use error::Error;
/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Default ceiling on the number of candidate classes an enumeration may
/// visit before it aborts with [`Error::BudgetExceeded`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Default ceiling on the order of a discriminant group whose quadratic form
/// is tabulated element-by-element.
pub const DEFAULT_GROUP_CAP: u64 = 1 << 20;

/// Group order up to which an exhaustive generator-matching search for an
/// explicit (anti-)isometry witness between finite quadratic forms is run.
pub const WITNESS_SEARCH_CAP: u64 = 1 << 12;

pub(crate) fn int(n: i64) -> Int {
    Int::from(n)
}

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub(crate) fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}
