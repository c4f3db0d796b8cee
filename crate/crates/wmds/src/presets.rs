//! Bundled systems: the worked examples every verification run and
//! acceptance criterion refers to by name.

use crate::arith::FFRing;
use crate::cartan::CartanData;
use crate::error::{Error, Result};
use crate::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// A = (2) with the b = 1 symmetrization (epsilon = 2), n = 2.
    RankOneN2,
    A2N1,
    A2N2,
    A2N3,
    /// B2-type [[2,-1],[-2,2]], n = 2.
    B2N2,
    /// Affine [[2,-2],[-2,2]], n = 2.
    AffineN2,
    /// Hyperbolic [[2,-3],[-3,2]], n = 2.
    HyperbolicN2,
}

impl Preset {
    pub fn all() -> [Preset; 7] {
        [
            Preset::RankOneN2,
            Preset::A2N1,
            Preset::A2N2,
            Preset::A2N3,
            Preset::B2N2,
            Preset::AffineN2,
            Preset::HyperbolicN2,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::RankOneN2 => "rank1-n2",
            Preset::A2N1 => "a2-n1",
            Preset::A2N2 => "a2-n2",
            Preset::A2N3 => "a2-n3",
            Preset::B2N2 => "b2-n2",
            Preset::AffineN2 => "affine-n2",
            Preset::HyperbolicN2 => "hyperbolic-n2",
        }
    }

    pub fn parse(name: &str) -> Result<Preset> {
        Preset::all().into_iter().find(|p| p.name() == name).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown preset '{name}'; available: {}",
                Preset::all().map(|p| p.name()).join(", ")
            ))
        })
    }

    pub fn data(&self) -> CartanData {
        match self {
            Preset::RankOneN2 => CartanData::with_symmetrization(
                vec![vec![2]],
                2,
                vec![rat(2)],
                vec![vec![rat(1)]],
            )
            .unwrap(),
            Preset::A2N1 => CartanData::new(vec![vec![2, -1], vec![-1, 2]], 1).unwrap(),
            Preset::A2N2 => CartanData::new(vec![vec![2, -1], vec![-1, 2]], 2).unwrap(),
            Preset::A2N3 => CartanData::new(vec![vec![2, -1], vec![-1, 2]], 3).unwrap(),
            Preset::B2N2 => CartanData::new(vec![vec![2, -1], vec![-2, 2]], 2).unwrap(),
            Preset::AffineN2 => CartanData::new(vec![vec![2, -2], vec![-2, 2]], 2).unwrap(),
            Preset::HyperbolicN2 => CartanData::new(vec![vec![2, -3], vec![-3, 2]], 2).unwrap(),
        }
    }

    /// Base prime and extension degree of the default backend field; chosen
    /// so that `q0 = 1 mod 2n`.
    pub fn backend_field(&self) -> (u32, u32) {
        match self {
            Preset::A2N3 => (7, 1),
            _ => (5, 1),
        }
    }

    pub fn ring(&self) -> Result<FFRing> {
        let (p, e) = self.backend_field();
        FFRing::new(p, e, self.data().n())
    }
}
