//! Polynomials, radical expressions, complex numerics, and the automorphism
//! templates of the filiform families.

pub mod expr;
pub mod numeric;
pub mod poly;
pub mod template;
pub mod action;
