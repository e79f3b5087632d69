use std::fmt;

/// Ordinals up to `ω2`, plus `∞` for divisible elements.
///
/// The derived order is the intended one:
/// `Finite(m) < OmegaPlus(m') < OmegaTwo < Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ordinal {
    Finite(u32),
    OmegaPlus(u32),
    OmegaTwo,
    Infinity,
}

impl Ordinal {
    pub const OMEGA: Ordinal = Ordinal::OmegaPlus(0);

    /// `λ + 1`; `None` past `ω2` since those ordinals are not modelled.
    pub fn succ(self) -> Option<Ordinal> {
        match self {
            Ordinal::Finite(m) => Some(Ordinal::Finite(m + 1)),
            Ordinal::OmegaPlus(m) => Some(Ordinal::OmegaPlus(m + 1)),
            Ordinal::OmegaTwo | Ordinal::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Ordinal::Finite(_))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ordinal::Finite(m) => write!(f, "{m}"),
            Ordinal::OmegaPlus(0) => write!(f, "ω"),
            Ordinal::OmegaPlus(m) => write!(f, "ω+{m}"),
            Ordinal::OmegaTwo => write!(f, "ω2"),
            Ordinal::Infinity => write!(f, "∞"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_display() {
        assert!(Ordinal::Finite(100) < Ordinal::OmegaPlus(0));
        assert!(Ordinal::OmegaPlus(9) < Ordinal::OmegaTwo);
        assert!(Ordinal::OmegaTwo < Ordinal::Infinity);
        assert_eq!(Ordinal::OMEGA.to_string(), "ω");
        assert_eq!(Ordinal::OmegaPlus(2).to_string(), "ω+2");
        assert_eq!(Ordinal::OmegaTwo.to_string(), "ω2");
        assert_eq!(Ordinal::Finite(3).succ(), Some(Ordinal::Finite(4)));
        assert_eq!(Ordinal::Infinity.succ(), None);
    }
}
