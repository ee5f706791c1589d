use crate::Failure;

/// The norm selectors the CLI understands. Dashes and underscores are
/// interchangeable and case does not matter: LM_STAR, lm-star, Lm_Star.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceId {
    Lp,
    WeakLp,
    Lorentz,
    W,
    Morrey,
    WeakMorrey,
    Lm,
    LmStar,
    Bmo,
}

impl SpaceId {
    pub fn parse(s: &str) -> Result<SpaceId, Failure> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "lp" => Ok(SpaceId::Lp),
            "weak_lp" => Ok(SpaceId::WeakLp),
            "lorentz" => Ok(SpaceId::Lorentz),
            "w" => Ok(SpaceId::W),
            "morrey" => Ok(SpaceId::Morrey),
            "weak_morrey" => Ok(SpaceId::WeakMorrey),
            "lm" => Ok(SpaceId::Lm),
            "lm_star" => Ok(SpaceId::LmStar),
            "bmo" => Ok(SpaceId::Bmo),
            other => Err(Failure::usage(format!(
                "unknown space {other:?}; expected lp, weak-lp, lorentz, w, morrey, weak-morrey, lm, lm-star or bmo"
            ))),
        }
    }

    /// Spaces whose norm is a supremum over a cube family.
    pub fn needs_family(self) -> bool {
        matches!(
            self,
            SpaceId::Morrey | SpaceId::WeakMorrey | SpaceId::Lm | SpaceId::LmStar | SpaceId::Bmo
        )
    }

    pub fn needs_p(self) -> bool {
        !matches!(self, SpaceId::W | SpaceId::Bmo)
    }

    pub fn needs_r(self) -> bool {
        matches!(self, SpaceId::Lorentz | SpaceId::Lm | SpaceId::LmStar)
    }

    pub fn needs_kappa(self) -> bool {
        matches!(
            self,
            SpaceId::Morrey | SpaceId::WeakMorrey | SpaceId::Lm | SpaceId::LmStar
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            SpaceId::Lp => "lp",
            SpaceId::WeakLp => "weak-lp",
            SpaceId::Lorentz => "lorentz",
            SpaceId::W => "w",
            SpaceId::Morrey => "morrey",
            SpaceId::WeakMorrey => "weak-morrey",
            SpaceId::Lm => "lm",
            SpaceId::LmStar => "lm-star",
            SpaceId::Bmo => "bmo",
        }
    }
}
