//! Two-way amplify-and-forward relaying with relay selection.
//!
//! Two sources exchange one symbol each through a pool of `N` relays in two
//! phases: both sources transmit simultaneously, every relay observes the
//! superposition, and then a single selected relay (or, for the all-participate
//! baseline, every relay on its own orthogonal channel) amplifies and
//! broadcasts what it heard. Each source cancels its own contribution and
//! detects the other source's symbol.
//!
//! The crate is organised bottom-up:
//!
//! - [`channel`]: Rayleigh fading draws and reproducible random streams
//! - [`phy`]: constellations, AWGN, ML detection
//! - [`twoway`]: the two-phase protocol and effective SNRs
//! - [`selection`]: sum-SER optimal and Min-Max relay selection
//! - [`apaf`]: the all-participate baseline with maximal-ratio combining
//! - [`analysis`]: closed-form SER expressions and distributions
//! - [`powalloc`]: source/relay power allocation under a total budget
//! - [`montecarlo`]: the SER estimation engine
//! - [`cli`]: experiment configs, figure presets, and artifact writing

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod apaf;
pub mod channel;
pub mod cli;
mod error;
pub mod montecarlo;
pub mod phy;
pub mod powalloc;
pub mod selection;
pub mod special;
pub mod twoway;

pub use analysis::{ModulationConstant, PowerProfile};
pub use channel::{ChannelPair, FrameChannels, RandomStream};
pub use error::{Error, Result};
pub use montecarlo::{ExperimentConfig, Scheme, SerCurve, SerPoint, Stopping};
pub use phy::Constellation;
pub use powalloc::PowerSplit;
pub use selection::{SelectionOutcome, SelectionRule};
pub use twoway::{EndToEndLink, RelayObservation, Source};
