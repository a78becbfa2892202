//! Value groups, discrete valuation bases and concrete valued fields.

pub mod base;
pub mod field;
pub mod value;

pub use base::{LocalBase, PadicBase, XadicBase};
pub use field::{center_of, decompose_at_prime, valuate, Center, ConvexDecomposition, FieldElement, ValuedFieldDescriptor};
pub use value::ValueVector;
