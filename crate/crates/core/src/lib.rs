//! Exact computational algebra for the two-species Type D exclusion process.
//!
//! The crate builds central elements of the quantum groups U_q(so(2n)) from the
//! bilinear pairing between the two Borel halves, derives the two-site Type D
//! ASEP generator from the resulting quantum Hamiltonian by ground-state
//! conjugation, and verifies the q-Krawtchouk self-duality relation
//! `L D = D L^T`. All identity checks run in exact arithmetic over Q or Q(q);
//! floating point is confined to the Monte Carlo simulator.

pub mod algebra;
pub mod asep;
pub mod central;
pub mod cli;
pub mod duality;
pub mod exact;
pub mod hamiltonian;
pub mod json;
pub mod lie;
pub mod simulate;
