//! Verification pipelines, reports and the group catalog.

pub mod catalog;
pub mod checks;
pub mod report;

pub use report::{Certificate, Check, Report, SubgroupResult, Verdict};
