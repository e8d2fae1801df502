//! Codes for the adversarial Z-channel: word arithmetic, list-decoding
//! radii, constructions, size bounds, rate bounds, coverings and simulation.

pub mod bounds;
pub mod capacity;
pub mod channel;
pub mod codes;
pub mod combinatorics;
pub mod constructions;
pub mod covering;
pub mod error;
pub mod rational;
pub mod words;

pub use codes::{Code, RadiusCertificate};
pub use error::{Error, Result};
pub use rational::Rational;
pub use words::Word;
