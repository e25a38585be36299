pub mod cli;
pub mod inference;
pub mod patterns;
pub mod rdf;
pub mod report;
pub mod rules;
pub mod vocab;
