//! The loop algebra `g (x) C{{z}}`, its vacuum module and the state-field map.
#![doc = include_str!("../../../../book/src/envelope.md")]

mod field;
mod gens;
mod lie;
mod modes;
mod vacuum;

pub use field::{classical_mode_oracle, unshuffle_sign, unshuffle_sign_by_sorting, unshuffles, FieldElement};
pub use gens::{Envelope, Flavor, Gen, LoopElem, MinusGen, PlusGen};
pub use lie::{LieData, RepMatrix};
pub use modes::{ModeCoeff, ModeTerm};
pub use vacuum::{is_canonical, mono_parity, pole_depth, Monomial, VacVec};
