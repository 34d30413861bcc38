//! # hitf2
//!
//! A computer-algebra library for the mod-2 *hit problem*: given the
//! polynomial algebra `P_k = F_2[x_1, …, x_k]` acted on by the Steenrod
//! squares, find a minimal set of generators of `P_k` as a module over
//! the Steenrod algebra. Equivalently, compute the graded quotient
//! `QP_k = F_2 ⊗_𝒜 P_k` degree by degree.
//!
//! The library provides:
//!
//! * [`f2core`] — monomials, GF(2) polynomials, weight vectors, the
//!   weight-then-exponent monomial order, spikes, `α`/`μ` arithmetic;
//! * [`steenrod`] — the Steenrod squares `Sq^r` via the Cartan formula,
//!   generator streams for the hit subspace, Adem-relation self-tests;
//! * [`f2linalg`] — exact incremental GF(2) echelonization over ordered
//!   monomial column universes, membership with witness, kernels,
//!   coordinate-subspace intersection, and a binary on-disk cache;
//! * [`hitproblem`] — admissible bases per degree and per weight
//!   stratum, Singer's hit criterion, Kameko maps, the substitution
//!   homomorphisms, the `φ/Φ` lifting construction, and dimension
//!   formula checks;
//! * [`invariants`] — `Σ_k`/`GL_k` actions on the quotients, invariant
//!   subspaces, the `SF̃` kernels, and end-to-end verification drivers
//!   for a 60-term degree-108 invariant class in five variables.
//!
//! The companion `hitf2` binary (crate `hitf2-cli`) exposes all of this
//! on the command line; the `book/` directory holds a narrative guide
//! whose code snippets double as the doc-tests of the [`guide`] module.

pub mod f2core;
pub mod steenrod;

pub mod f2linalg;
pub mod hitproblem;
pub mod invariants;

/// The book chapters, included as doc-tested modules: every code block
/// in `book/src/*.md` runs under `cargo test --doc`.
pub mod guide {
    #![allow(unused_imports)]

    #[doc = include_str!("../../../book/src/monomials.md")]
    pub mod monomials {}

    #[doc = include_str!("../../../book/src/steenrod.md")]
    pub mod steenrod {}

    #[doc = include_str!("../../../book/src/elimination.md")]
    pub mod elimination {}

    #[doc = include_str!("../../../book/src/hit_problem.md")]
    pub mod hit_problem {}

    #[doc = include_str!("../../../book/src/invariants.md")]
    pub mod invariants {}
}
