//! Names of the accessibility-relation properties and their modal axioms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} `{name}`")]
pub struct UnknownName {
    pub kind: &'static str,
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameProperty {
    Reflexive,
    Symmetric,
    Serial,
    Transitive,
    Euclidean,
    PartiallyFunctional,
    Functional,
    WeaklyDense,
    WeaklyConnected,
    WeaklyDirected,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 10] = [
        FrameProperty::Reflexive,
        FrameProperty::Symmetric,
        FrameProperty::Serial,
        FrameProperty::Transitive,
        FrameProperty::Euclidean,
        FrameProperty::PartiallyFunctional,
        FrameProperty::Functional,
        FrameProperty::WeaklyDense,
        FrameProperty::WeaklyConnected,
        FrameProperty::WeaklyDirected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Symmetric => "symmetric",
            FrameProperty::Serial => "serial",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Euclidean => "euclidean",
            FrameProperty::PartiallyFunctional => "partially_functional",
            FrameProperty::Functional => "functional",
            FrameProperty::WeaklyDense => "weakly_dense",
            FrameProperty::WeaklyConnected => "weakly_connected",
            FrameProperty::WeaklyDirected => "weakly_directed",
        }
    }

    /// The axiom schema that corresponds to this property.
    pub fn axiom(self) -> ModalAxiom {
        ModalAxiom::ALL[self as usize]
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameProperty {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FrameProperty::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownName { kind: "frame property", name: s.to_string() })
    }
}

/// Axiom schemata, listed in the same order as [`FrameProperty::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModalAxiom {
    /// `□φ ⊃ φ`
    M,
    /// `φ ⊃ □◇φ`
    B,
    /// `□φ ⊃ ◇φ`
    D,
    /// `□φ ⊃ □□φ`
    Four,
    /// `◇φ ⊃ □◇φ`
    Five,
    /// `◇φ ⊃ □φ`
    Cd,
    /// `◇φ ⇔ □φ`
    Fun,
    /// `□□φ ⊃ □φ`
    C4,
    /// `□((φ ∧ □φ) ⊃ ψ) ∨ □((ψ ∧ □ψ) ⊃ φ)`
    Three,
    /// `◇□φ ⊃ □◇φ`
    Two,
}

impl ModalAxiom {
    pub const ALL: [ModalAxiom; 10] = [
        ModalAxiom::M,
        ModalAxiom::B,
        ModalAxiom::D,
        ModalAxiom::Four,
        ModalAxiom::Five,
        ModalAxiom::Cd,
        ModalAxiom::Fun,
        ModalAxiom::C4,
        ModalAxiom::Three,
        ModalAxiom::Two,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModalAxiom::M => "M",
            ModalAxiom::B => "B",
            ModalAxiom::D => "D",
            ModalAxiom::Four => "4",
            ModalAxiom::Five => "5",
            ModalAxiom::Cd => "CD",
            ModalAxiom::Fun => "Fun",
            ModalAxiom::C4 => "C4",
            ModalAxiom::Three => ".3",
            ModalAxiom::Two => ".2",
        }
    }

    pub fn property(self) -> FrameProperty {
        FrameProperty::ALL[self as usize]
    }
}

impl fmt::Display for ModalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModalAxiom {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let alias = match s {
            "T" => Some(ModalAxiom::M),
            "L" => Some(ModalAxiom::Three),
            "G" => Some(ModalAxiom::Two),
            _ => None,
        };
        alias
            .or_else(|| ModalAxiom::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(s)))
            .ok_or_else(|| UnknownName { kind: "modal axiom", name: s.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in FrameProperty::ALL {
            assert_eq!(p.name().parse::<FrameProperty>().unwrap(), p);
            assert_eq!(p.axiom().property(), p);
        }
        for a in ModalAxiom::ALL {
            assert_eq!(a.name().parse::<ModalAxiom>().unwrap(), a);
        }
        assert!("reflexiv".parse::<FrameProperty>().is_err());
    }
}
