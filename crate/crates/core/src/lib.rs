//! Exterior algebra, Hodge duality and their uses: Grassmann's complement,
//! metric Hodge stars, polynomial differential forms, Maxwell's equations in
//! several formulations, and the discrete Hodge theorem on simplicial
//! complexes.

pub mod algebra;
pub mod cli;
pub mod complex;
pub mod error;
mod exact;
pub mod forms;
mod grammar;
pub mod maxwell;
pub mod metric;
pub mod poly;
pub mod random;

pub use algebra::{Blade, Grade, Multivector, Scalar};
pub use error::{Error, ParseError, Result};
pub use forms::PolyForm;
pub use metric::Metric;
pub use poly::Polynomial;
