//! Vandermonde quantum MDS codes and the entropy of their subsystems.
//!
//! An `[[n, k, d]]_q` quantum MDS code (`n = k + 2(d-1)`) encodes `k` source
//! qudits into `n` coded qudits so that any `n-(d-1)` of them recover the
//! source. Together with a `k`-qudit reference system `R`, the coded state
//! `R Q_1 ... Q_n` is pure and every subsystem `S` has entropy
//! `min(|S|, 2(k+d-1) - |S|)` in q-ary units.
//!
//! The crate builds the Reed-Solomon style construction over a prime field
//! ([`code`]), computes subsystem entropies exactly from subspace
//! intersection dimensions ([`entropy`]), cross-checks them with a dense
//! state-vector simulation ([`sim`]), and audits the resulting entropy
//! vectors against the standard quantum entropy inequalities
//! ([`entropy::checks`]).

pub mod code;
pub mod entropy;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod sim;
pub mod subsystem;

pub use code::{CodeDescriptor, CodeParams, QuantumMdsCode};
pub use entropy::{expected_entropy, full_profile, subsystem_entropy, EntropyProfile};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use linalg::{intersection_dim, MatrixGF};
pub use subsystem::{RegisterSet, SubsystemSpec};
