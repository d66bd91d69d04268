//! Exact arithmetic toolkit for parity questions about elliptic curves over
//! the rationals: local and global root numbers, Hilbert symbols, the
//! 2-isogeny Cassels product, quadratic-field searches with prescribed local
//! behaviour, and dihedral representation counting.

pub mod arith;
pub mod curve;
pub mod rootnumber;
pub mod fields;
pub mod descent2;
pub mod larsen;
