//! Exact computations with finite-dimensional supermodules over the
//! detecting subalgebras `e_m`, `f_n`, their exterior quotients `Λ(a_1..a_r)`
//! and `gl(1|1)`: syzygies, stripping of projectives, and endotrivial
//! classification.

pub mod endo;
pub mod exactla;
pub mod rng;
pub mod structure;
pub mod superalg;
pub mod supermod;

pub use exactla::{GradedMap, GradedSpace, Matrix, Parity, Rational};
pub use superalg::{Family, OddVector, SuperAlgebra};
pub use supermod::{ModuleError, ModuleMap, Supermodule};
