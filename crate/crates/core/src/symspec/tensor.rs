//! The two monoidal structures on symmetric sequences.
