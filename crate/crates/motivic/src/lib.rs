//! Exact symbolic computation of motivic classes of algebraic tori and their
//! classifying stacks over a base field with a chosen finite Galois
//! extension.
//!
//! The engine models the subring of the Grothendieck ring of varieties
//! generated by the Lefschetz class L and the classes of étale algebras split
//! by the extension. Coefficients live in the Burnside ring of the Galois
//! group, classes of varieties are polynomials in L, and classes of stacks
//! are fractions with registered monic denominators (classes of special
//! tori), which are non-zero-divisors over any coefficient ring, so equality
//! by cross-multiplication is sound. Every equality or inequality verdict is
//! decided through the table of marks and carries an explicit witness.

pub mod burnside;
pub mod context;
pub mod intmat;
pub mod lattice;
pub mod perm;
pub mod poly;
pub mod rng;
pub mod scenario;
pub mod stack;
pub mod torus;
pub mod trace;

pub use burnside::{BurnsideElement, MarkVector};
pub use context::GaloisContext;
pub use perm::{GSet, PermGroup, SubgroupId};
pub use poly::{ArtinPolynomial, IntPoly};
