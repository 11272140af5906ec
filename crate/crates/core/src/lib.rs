//! Secure decentralized pliable index coding with circular side information.
//!
//! Users and messages are both indexed `1..=m`. User `i` knows the `s`
//! messages ending at `i` (circularly) and must learn exactly one message
//! outside that window from a set of GF(2) linear transmissions, each of
//! which some user can compute from its own side information.
//!
//! - [`instance`]: the `(m, s)` geometry and the regime classification.
//! - [`gf2`]: bit vectors, bit matrices and row spaces.
//! - [`verifier`]: decodable sets and the decentralized/correct/secure flags.
//! - [`schemes`]: explicit constructions for every feasible instance.
//! - [`oracle`]: exhaustive minimum-length search for small `m`.
//! - [`bounds`]: lower bounds and closed-form lengths per regime.

pub mod bounds;
pub mod gf2;
pub mod instance;
pub mod oracle;
pub mod schemes;
pub mod verifier;

pub use instance::{classify, Classification, Instance, InstanceError, ReasonCode};
pub use schemes::{build, build_with_seed, BuildError, Built, SchemeRecipe};
pub use verifier::{verify, Scheme, Transmission, VerificationReport};
