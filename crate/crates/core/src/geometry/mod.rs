//! Star-shaped domains, sphere quadrature, boundary meshes, and their
//! Euclidean functionals.

pub mod domain;
pub mod functionals;
pub mod mesh;
pub mod radial;
pub mod sphere;

pub use domain::{default_resolution, GeometryError, StarComponent, StarDomain};
pub use functionals::{
    functionals, functionals_with_estimate, is_mean_convex, ComponentFunctionals,
    FunctionalErrors, GeometricFunctionals, MeanConvexity,
};
pub use mesh::{boundary_quadrature, boundary_quadrature_offset, BoundaryMesh};
pub use radial::{AxiProfile, RadialSpec, SphTerm};
pub use sphere::SphereGrid;
