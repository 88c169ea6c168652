//! JSON formats, the verification harness and the command-line front end for
//! [`ertect_core`].

pub mod harness;
pub mod json;
