//! Exact self-avoiding walk enumeration on Cayley graphs of central
//! quotients, rooted-ball comparisons, and a driver for the nested-interval
//! construction of connective constants.
//!
//! The crate is `no_std` and only needs `alloc`; threads, clocks, files and
//! serialization live in the companion `sawcantor` crate.

#![no_std]

extern crate alloc;

pub mod cayley;
pub mod driver;
pub mod error;
pub mod group;
pub mod quotient;
pub mod saw;
pub mod term;

pub use cayley::{
    ball, local_convergence_radius, product_with_line, rooted_isomorphic, CayleyGraph, RootedBall,
};
pub use driver::{
    audit, build, evaluate_word, extend_level, init_state, injectivity_witness, order_check,
    BinaryWord, ConstructionState, DriverConfig, InfiniteWordSpec,
};
pub use error::{Error, Result};
pub use group::{
    make_construction_group, symmetric_closure, Element, GeneratingSet, Group, HVariant, Part,
};
pub use quotient::{
    central_quotient, si_hypothesis_check, stabilization_check, subgroup_member,
    CentralSubgroupSpec, ModuliMask, StabilizationReport,
};
pub use saw::{
    count_saws, fekete_check, mu_bounds, naive_count_oracle, strictness_witness, Budget,
    MuEstimate, SawCountTable, SawCounter, Sequential,
};
