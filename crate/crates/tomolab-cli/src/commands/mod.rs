pub mod common;
pub mod kicked;
pub mod rmt;
pub mod run;
pub mod spectra;

pub use kicked::{cmd_kicked_top, KickedCase, KickedSummary};
pub use rmt::{cmd_rmt_compare, RmtSummary};
pub use run::{cmd_run, RunSummary};
pub use spectra::{cmd_spectra, SpectraSummary};
