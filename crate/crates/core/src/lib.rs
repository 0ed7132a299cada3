//! Exact face rings of simplicial posets.
//!
//! Given a pure simplicial poset `S` and a characteristic function `λ`, this
//! crate builds the graded face ring 𝕜[S] on its chain-monomial basis, the
//! quotient 𝕜[S]/Θ by the associated linear system of parameters, and the
//! quotient of that ring by its interior socle. It then certifies, with exact
//! arithmetic over ℚ or ℤ:
//!
//! * the graded dimensions of 𝕜[S]/Θ against the h′-numbers computed from the
//!   f-vector and the reduced Betti numbers of `S`;
//! * the interior socle dimensions against `C(n,k)·β̃_{k-1}`;
//! * the symmetry and nonnegativity of the h″-numbers;
//! * non-degeneracy of the multiplication pairing into the top degree.
//!
//! Modules, bottom-up: [`linalg`] (Smith normal form, rational echelon forms),
//! [`complex`] and [`poset`] (combinatorics), [`homology`], [`face_ring`],
//! [`analysis`] (quotients, socles, pairings, reports), [`input`] (documents).

pub mod analysis;
pub mod complex;
pub mod face_ring;
pub mod homology;
pub mod input;
pub mod linalg;
pub mod poset;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use analysis::{full_report, AnalysisReport, ReportOptions};
pub use face_ring::{CharacteristicFunction, ChainMonomial, FaceRing, RingElement};
pub use poset::{FVector, FaceId, SimplicialPoset};

/// Coefficient ring for homology and face-ring computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum GroundRing {
    #[default]
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Z")]
    Integer,
}

impl fmt::Display for GroundRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroundRing::Rational => "Q",
            GroundRing::Integer => "Z",
        })
    }
}

impl std::str::FromStr for GroundRing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" | "q" | "QQ" => Ok(GroundRing::Rational),
            "Z" | "z" | "ZZ" => Ok(GroundRing::Integer),
            other => Err(format!("unknown ground ring `{other}` (expected Q or Z)")),
        }
    }
}
