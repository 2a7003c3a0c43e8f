//! Ring files, reports, the result cache and the command line.

pub mod cache;
pub mod cli;
pub mod report;
pub mod ringfile;

pub use cache::{Cache, Lookup, CACHE_ENV};
pub use cli::{run, Outcome};
pub use report::{CheckVerdict, InputHash, Report};
pub use ringfile::{evaluate, parse_ring_file, ModuleSpec, NamedModule, RingBody, RingFile};
