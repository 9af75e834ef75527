//! Batch front end: input parsing, job dispatch and result rendering.

pub mod input;
pub mod job;
pub mod output;
