//! Factorization theory in noncommutative monoids and semigroup algebras.
//!
//! The centre of the crate is the finitely presented monoid
//! `S = ⟨a, b | ba²b = a², a⁴b = ba⁴⟩`, which is atomic but fails the
//! ascending chain condition on principal one-sided ideals. It comes with two
//! independent equality oracles: a rewriting normalizer ([`monoid`]) and an
//! embedding into `F ⋊ ℤ` ([`group`]). Around it sit:
//!
//! * [`algebra`]: the semigroup algebra `K[S]` over `ℚ` or `𝔽_p`;
//! * [`lenfn`]: a checker for right, two-sided and superadditive length
//!   functions;
//! * [`ore`]: skew and skew-Laurent polynomial rings over `K[y]` with their
//!   length functions;
//! * [`growth`]: frame growth tables `dim Vⁿ`;
//! * [`pi_matrix`]: a non-atomic affine PI ring of `2 × 2` matrices.

pub mod algebra;
pub mod field;
pub mod group;
pub mod growth;
pub mod lenfn;
pub mod monoid;
pub mod ore;
pub mod par;
pub mod pi_matrix;
pub mod poly;
pub mod word;

pub use group::{embed, parse_membership, FreeWord, GroupElement, SMembership};
pub use monoid::{normalize, NormalFormS};
pub use word::{Alphabet, Presentation, RewriteSystem, Word};
