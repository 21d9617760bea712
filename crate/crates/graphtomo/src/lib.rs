//! Simulation and reconstruction toolkit for Bose-Hubbard lattices probed
//! through their boundary.
//!
//! The library synthesizes the boundary scattering data of a lossy
//! Bose-Hubbard model on a general graph (complex couplings `J`, complex
//! on-site energies `mu`, on-site anharmonicities `chi`) and recovers every
//! Hamiltonian parameter back from that data:
//!
//! - [`graph`]: lattice graphs, boundary designation, and the infection
//!   (zero-forcing) ordering that gates identifiability.
//! - [`model`]: ground-truth parameters, effective non-Hermitian
//!   Hamiltonians in the one- and two-excitation subspaces, and forward
//!   oracles for all boundary overlap tensors.
//! - [`spectra`]: homodyned transmission and two-photon correlation
//!   observables, plus pole/residue extraction from sampled spectra.
//! - [`recon`]: the recursive reconstruction of `mu`, `J` (single-particle
//!   stage) and `chi` (two-particle stage), with gauge-aware comparison.
//! - [`stability`]: Jacobian error metrics and Monte-Carlo noise sweeps on
//!   SSH-type model families.
//! - [`qmetro`]: NOON-state protocols, wave-packet design, exact few-photon
//!   evolution, and the photon-budget calculator.

pub mod fock;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod model;
pub mod qmetro;
pub mod recon;
pub mod spectra;
pub mod stability;

pub use num_complex::Complex64;
