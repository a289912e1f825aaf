//! File formats, run manifests and the command-line front end for `polysched-core`.

pub mod cli;
pub mod exit;
pub mod formats;
pub mod manifest;
