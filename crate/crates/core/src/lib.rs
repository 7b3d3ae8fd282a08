//! Exact computations with Delsarte designs in Hamming association schemes.

pub mod exact;
pub mod krawtchouk;
pub mod scheme;
pub mod codes;
pub mod delsarte;
pub mod extremal;
pub mod groebner;
pub mod triples;
pub mod search;
