pub mod closure;
pub mod ideal;
pub mod invariant;
pub mod modules;
pub mod subspace;
pub mod vandermonde;
pub mod weights;

pub use subspace::WindowSubspace;
