//! Exact computational machinery for coarse-geometry experiments.
//!
//! The crate is organized around five independent pillars:
//!
//! - [`chain_calculus`]: signed simplicial chains over exact rational
//!   coordinates, with the parallelepiped/parallelogram constructions and
//!   their boundary, reflection, face-sum, and decomposition identities.
//! - [`weyl`]: exact root systems (A–D up to rank 8, G₂), Weyl sector
//!   generators, dominance projection, sector coordinates, and the
//!   pigeonhole segment-selection step.
//! - [`spaces`]: discrete bounded-geometry model spaces (regular trees,
//!   lattices, products, a hyperbolic half-plane net) with balls, ε-volumes,
//!   growth tables, and horospherical embeddings with control-function and
//!   volume-preservation reports.
//! - [`filling`]: integer cubical chains with combinatorial slicing and the
//!   co-area inequality, exact filling oracles for graph 0-cycles and planar
//!   1-cycles, and filling-scaling experiments.
//! - [`asymptotics`]: the factorial exponent sequences β, their admissibility
//!   and extension-impossibility reports, harmonic-exponent identities, and
//!   the control-function families φᵢ(d).
//!
//! All sign-level identities are verified in exact rational/integer
//! arithmetic; floating point appears only in final masses (square roots),
//! hyperbolic distances, and fitted exponents. Tolerances for the floating
//! checks are pinned in [`tolerances`].

pub mod asymptotics;
pub mod chain_calculus;
pub mod filling;
pub mod linalg;
pub mod rational;
pub mod spaces;
pub mod sweep;
pub mod tolerances;
pub mod weyl;
