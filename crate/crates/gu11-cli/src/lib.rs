//! Report types and the check catalog backing the `gu11` binary.

pub mod report;
