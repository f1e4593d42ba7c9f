//! Numerical laboratory for coherence-based wave-particle duality in a
//! two-path which-way interferometer.
//!
//! The path qubit of a photon is entangled with a polarization "detector"
//! qubit whose two states overlap by `cos 2θ`. Wave behavior is quantified by
//! the coherence of the reduced path state, particle behavior by how well the
//! detector states can be told apart. [`duality`] sweeps θ and checks the
//! relations that bound the two against each other, both noise-free and on
//! simulated photon counts reconstructed through [`tomo`].
//!
//! Basis order throughout is path-major, polarization-minor:
//! `(1,H), (1,V), (2,H), (2,V)`. Paths are 0-based in code.

pub mod cli;
pub mod coherence;
pub mod discrimination;
pub mod duality;
pub mod optics;
pub mod qmath;
pub mod rng;
pub mod tomo;
