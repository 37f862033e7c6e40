//! Finite-set category toolkit.
//!
//! Everything here computes inside the category of finite sets and total
//! functions. The building blocks are explicit element lists, so every
//! construction (products, coproducts, equalizers, pullbacks) is exact and
//! deterministic: the same inputs always produce the same element order and
//! the same serialized bytes.
//!
//! On top of the set engine sit four flavors of category data and the
//! translations between them:
//!
//! * [`plaincat`]: ordinary finite categories with labeled arrows, their
//!   idempotents, and the idempotent-splitting completion.
//! * [`enriched`]: categories whose hom-sets are finite-set objects, with
//!   composition given by explicit maps out of products.
//! * [`internal`]: categories internal to finite sets (objects-of-objects,
//!   objects-of-arrows), together with idempotent split structures and a
//!   canonicity test for them.
//! * [`enrich`] and [`internalize`]: the two translations (internal to
//!   enriched hom-wise, enriched to internal by splitting idempotents), and
//!   [`adjunction`]: the exhaustive verification that they are adjoint.
//!
//! The [`format`] module gives every structure a line-oriented textual form,
//! [`generators`] produces seeded random lawful instances for the test
//! suites, and [`cli`] wires it all into a command-line tool.

pub mod adjunction;
pub mod cli;
pub mod enrich;
pub mod enriched;
pub mod finset;
pub mod format;
pub mod generators;
pub mod internal;
pub mod internalize;
pub mod plaincat;
