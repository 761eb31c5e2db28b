//! Exact-arithmetic consistency checks for circle actions with isolated
//! fixed points on compact almost complex manifolds.

pub mod consistency;
pub mod examples;
pub mod exactalg;
pub mod fpdata;
pub mod genus;
pub mod json;
pub mod localization;
pub mod multigraph;
pub mod search;
