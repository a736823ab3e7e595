//! Boole's conditions of possible experience for finite quantum logics.
//!
//! The pipeline: a [`logic::Logic`] (atoms pasted into contexts) has a set of
//! two-valued states; evaluating a term table on each state gives the vertices
//! of a correlation polytope ([`vertex_gen`]); its exact facets
//! ([`hull::hull`]) are the classical bounds. The [`quantum`] module builds the
//! corresponding operators and bounds them by their spectra.

pub mod builtin;
pub mod cli;
pub mod hull;
pub mod logic;
pub mod quantum;
pub mod realization;
pub mod vertex_gen;
