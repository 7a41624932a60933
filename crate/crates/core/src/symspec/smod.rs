//! Modules over the sphere monoid.
