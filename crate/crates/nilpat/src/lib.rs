//! Deciding potential nilpotence of zero-nonzero and sign patterns over
//! prime fields, with verifiable certificates.
//!
//! A *pattern* prescribes, for each entry of a square matrix, whether that
//! entry must be zero or nonzero (and optionally a sign).  The pattern is
//! *potentially nilpotent* over a field when some matrix respecting the
//! pattern is nilpotent.  This crate decides that question over `Z_p` and
//! produces a certificate either way: an explicit nilpotent realization, or
//! an ideal-theoretic proof that none exists over any field extension, or an
//! exhausted finite search.
//!
//! The pipeline factors through:
//!
//! * [`field`] — exact arithmetic over `Z_p` and over the rationals;
//! * [`poly`] — sparse multivariate polynomials with lex / graded-reverse-lex
//!   monomial orders and a small text grammar;
//! * [`groebner`] — Buchberger's algorithm, normal forms, elimination,
//!   colon ideals, and saturation;
//! * [`pattern`] — the combinatorics of patterns: digraphs, simple cycles,
//!   strongly connected components, canonical forms, and enumeration of
//!   irreducible patterns of small order;
//! * [`charpoly`] — the symbolic characteristic polynomial of a pattern and
//!   the ideal generated by its coefficients;
//! * [`analysis`] — the decision procedure: graph filters, saturation
//!   certificates, and normalized brute-force search;
//! * [`cli`] — reports, classification tables, and the `nilpat` command
//!   drivers.
//!
//! Start with the runnable examples (`cargo run --example <name> -p nilpat`):
//!
//! * `analyze_pattern` — end-to-end analysis of one pattern over `Z_p`
//! * `classify_small_orders` — every irreducible pattern of order 2 and 3
//! * `groebner_basics` — reduced Gröbner bases of a pattern ideal
//! * `saturation_certificates` — colon ideals vs. saturation over `Z_2`
//! * `sign_pattern_rationals` — a signed pattern refuted over every field
//!   of characteristic zero
//! * `cycle_family` — the n-cycle-with-loops family and roots of unity
//! * `search_normalization` — diagonal-similarity normalization of the
//!   brute-force search

pub mod analysis;
pub mod charpoly;
pub mod cli;
pub mod error;
pub mod field;
pub mod groebner;
pub mod pattern;
pub mod poly;

pub use error::Error;
pub use field::{Field, Scalar};
