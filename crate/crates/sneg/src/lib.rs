//! Entanglement quantification for d⊗d bipartite states built around the
//! structural physical approximation of partial transposition: negativity,
//! structured negativity, concurrence bounds, named example families, and
//! randomized verification suites for the monotone axioms.

pub mod matcore;
pub mod measures;
pub mod qstate;
pub mod rng;
pub mod sweep;
pub mod verify;
