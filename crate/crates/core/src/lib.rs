//! Exact computations for diagonal actions on products of generalized flag
//! varieties: root systems, Chevalley bases, tangent-rank tests for open
//! orbits, Levi decompositions of nilradicals and explicit classical models.

pub mod chevalley;
pub mod classical;
pub mod exactlinalg;
pub mod golden;
pub mod levidecomp;
pub mod orbitrank;
pub mod parabolic;
pub mod rootsystem;
pub mod tables;
