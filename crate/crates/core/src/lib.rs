//! Componentwise linearity of edge ideals of vertex-weighted oriented
//! graphs and of their powers, with certificates that can be re-checked and
//! an independent Betti-number oracle.

pub mod census;
pub mod certify;
pub mod graphs;
pub mod ideals;
pub mod linearity;
pub mod oracle;
