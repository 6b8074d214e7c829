//! Reversible programs over finite types, their extension with fractional
//! types for ancilla management, and a pointed language whose programs are
//! guaranteed not to raise the deallocation exception.

pub mod circuits;
pub mod comb;
pub mod extract;
pub mod frac;
pub mod gen;
pub mod pointed;
pub mod prim;
pub mod route;
pub mod syntax;
mod ty;

pub use comb::{Comb, EvalError, Path, TypeMismatch};
pub use frac::{CombD, TyD, ValD};
pub use pointed::{PtComb, PtError, PtTy, PtVal};
pub use ty::{Ty, Val};
