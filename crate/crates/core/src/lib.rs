//! Combinatorial dynamics of interval maps, exactly.
//!
//! A cycle θ (a cyclic permutation of `{1..n}`) determines the
//! connect-the-dots map `L_θ` and its signed Markov digraph `G(θ)`. This
//! crate builds those objects, computes exact characteristic polynomials
//! of their adjacency matrices, enumerates immediate successors by the
//! doubling construction `θ* ∘ ρ_S`, walks period-doubling cascades and
//! certifies the polynomial product identity at every level, decides the
//! forcing relation by exact rational loop analysis, and cross-validates
//! the symbolic cascade against numeric logistic-map attractors.
//!
//! Everything symbolic is exact: big-integer polynomial arithmetic and
//! big-rational orbit points, with no tolerances to tune. Only the
//! logistic module is floating point, and its output is reduced to a
//! permutation before any comparison.

pub mod cli;
pub mod forcing;
pub mod logistic;
pub mod markov;
pub mod perm;
pub mod poly;
pub mod successors;

pub use forcing::{forced_types, forces, forces_with_witness, ForcingCaps, Loop, OrbitReport};
pub use logistic::{certify_cascade, iterate, scan_bifurcations, AttractorReport, LogisticParams};
pub use markov::{
    build_digraph, connect_the_dots, double_graph, recover_cycle, to_dot, PiecewiseLinearMap,
    SignedDigraph,
};
pub use perm::{all_cycles, rho, Cycle, Modality, PermError, Permutation, Sign};
pub use poly::{charpoly, cyclotomic_like, divides_exactly, poly_mul, IntPolynomial};
pub use successors::{
    cascade, enumerate_successors, unimodal_double, verify_factorization, Cascade, SuccessorCaps,
    SuccessorSet,
};
