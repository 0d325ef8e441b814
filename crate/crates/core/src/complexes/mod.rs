//! Windowed chain complexes of free `ZG`-modules and the maps between them.

mod chainmap;
mod cone;
mod intcomplex;
mod tensor;
mod window;

pub use chainmap::{lift_chain_map, ChainMapWindow};
pub use cone::{cone_with_boundary, ConeWithBoundary};
pub use intcomplex::{GroupSummary, IntComplex};
pub use tensor::{tensor_diagonal, tensor_product_group, TensorComplex, TensorMode};
pub use window::{DegreeExactness, ExactnessReport, ZGComplexWindow};
