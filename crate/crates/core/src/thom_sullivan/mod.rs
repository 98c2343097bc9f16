//! The Thom-Sullivan functor on truncated semicosimplicial commutative algebras,
//! integration to the unnormalized cochain complex, and the raviolo cover.
#![doc = include_str!("../../../../book/src/thom_sullivan.md")]

mod diagram;
mod th;

use serde::Serialize;

pub use diagram::{LinearMap, SemiCosimplicial, TruncAlg, Vector};
pub use th::{integrate_top, simplex_forms, simplex_integral, th_basis, th_ranks, ThElement, Validation};

use crate::Result;

/// Cohomology ranks of the raviolo cover, computed three ways.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankTable {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "D")]
    pub d: usize,
    /// Thom-Sullivan side, degrees 0 and 1.
    pub th: Vec<usize>,
    /// Unnormalized cochain side.
    pub cech: Vec<usize>,
    /// Direct computation on `C{{z}}`.
    pub local: Vec<usize>,
}

impl RankTable {
    pub fn consistent(&self) -> bool {
        self.th == self.cech && self.th == self.local
    }
}

/// Ranks for the window `z^-K .. z^K`, with forms of total degree at most `D`.
pub fn rav_cover_ranks(k: usize, d: usize) -> Result<RankTable> {
    let dg = SemiCosimplicial::rav_cover(k)?;
    let local = crate::local::cohomology_truncated(k, d)?;
    Ok(RankTable { k, d, th: th_ranks(&dg, d), cech: dg.cech_ranks(), local: vec![local.h0_rank, local.h1_rank] })
}
