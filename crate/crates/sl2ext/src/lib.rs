//! Exact calculator for dimensions of rational Ext groups of SL₂ in
//! characteristic p.
//!
//! The crate computes, with exact unbounded integer arithmetic throughout:
//!
//! * block membership of dominant weights via closed p-adic conditions
//!   ([`blocks`]), validated against a brute-force affine dot-action
//!   orbit oracle ([`oracle`]);
//! * dimensions of Ext^m(Δ(n), ∇(2)^(s)) through a memoized recursion,
//!   and the sums giving dim Ext^q(k, 𝔤𝔩₂^(r)) ([`engine`]);
//! * the recursion itself as an inspectable DAG with occurrence counting,
//!   precursor enumeration, and the m + n ≥ 2pˢ walk ([`mod@trace`]);
//! * Hilbert series of the polynomial algebra generated by the universal
//!   classes in degrees 2p^(i−1) ([`mod@hilbert`]);
//! * a conformance suite binding it all together ([`verify`]).
//!
//! By restriction, the SL₂ dimensions computed here for Ext(k, 𝔤𝔩₂^(r))
//! are also the GL₂ dimensions.

pub mod blocks;
pub mod engine;
pub mod hilbert;
pub mod oracle;
pub mod trace;
pub mod verify;

pub use blocks::{
    in_block_of_two_p_s, p_decompose, same_block, NotPrime, PadicSplit, Prime, Weight,
};
pub use engine::{
    e2_corner_dim, hom_gl2_nabla, weyl_multiplicities_gl2, CornerReport, ExtDim, ExtEngine,
    ExtQuery, FiltrationMultiplicities,
};
pub use hilbert::{generator_ledger, hilbert, LedgerEntry, SeriesTruncation};
pub use oracle::{naive_ext_dim, orbit_linked, orbit_of, OracleError, OrbitBound};
pub use trace::{
    precursors, trace, DeficitReport, NodeId, Precursor, Rule, TraceDag, TraceError, TraceNode,
};
pub use verify::{run_verification, CheckResult, VerificationReport};
