//! Desk-scale algorithmic information theory.
//!
//! Toy universal machines built on a small expression calculus, with exact
//! program-size complexity tables, halting-probability bounds, toy formal
//! systems and the fast-growing hierarchy.

pub mod bitio;
pub mod complexity;
pub mod hierarchy;
pub mod incompleteness;
pub mod lispvm;
pub mod machines;
pub mod omega;
pub mod par;
pub mod programs;
pub mod report;
pub mod sexpr;
pub mod surface;
