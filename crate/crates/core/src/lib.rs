//! Exact computer algebra for symmetry algebras of Levi-nondegenerate CR
//! hypersurfaces and the parabolic data behind their symmetry bounds.

pub mod cli;
pub mod fields;
pub mod hypersurface;
pub mod kostant;
pub mod liestruct;
pub mod linalg;
pub mod matrix;
pub mod parabolic;
pub mod scalar;
pub mod symcore;
