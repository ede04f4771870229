pub mod algebra;
pub mod artinian;
pub mod catalog;
pub mod cohomology;
pub mod filling;
pub mod gen;
pub mod glue;
pub mod linalg;
pub mod rng;
pub mod scenario;
