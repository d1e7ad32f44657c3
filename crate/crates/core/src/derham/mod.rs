//! Exterior derivative, Euler contraction and the base-point-zero Poincaré
//! (Koszul) operator on polynomial forms, plus classical proxy operators.

mod check;
mod ops;
mod proxy_ops;

pub use check::homotopy_check_derham;
pub use ops::{exterior_d, interior_euler, koszul_poincare, EulerField};
pub use proxy_ops::{proxy_operator, ProxyOp};
