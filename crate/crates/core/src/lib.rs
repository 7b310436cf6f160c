//! Exact computations for finitely presented groups: coset enumeration,
//! first homology of finite covers and its growth along subgroup chains,
//! q-normal subgroup certificates and coset graphs, right-angled Artin group
//! analysis, and audits of rebuilding data.

pub mod coset;
pub mod group;
pub mod homology;
pub mod io;
pub mod qnormal;
pub mod raag;
pub mod rebuilding;
