use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of variables in the fixed ambient ring.
pub const NVARS: usize = 8;

/// The fixed variable set: the surface variables `X1, X2, X3`, the point
/// parameters `a, b, c`, the unit parameter `w` (only used by the cusp
/// constructions, where it satisfies `tau * w^(r-1) = 1`) and an auxiliary
/// parameter `lam` for curve parametrizations.
///
/// The declaration order is the canonical precedence `X1 > X2 > X3 > a > b
/// > c > w > lam` used for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X1,
    X2,
    X3,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "w")]
    W,
    #[serde(rename = "lam")]
    Lam,
}

pub const ALL_VARS: [Var; NVARS] = [
    Var::X1,
    Var::X2,
    Var::X3,
    Var::A,
    Var::B,
    Var::C,
    Var::W,
    Var::Lam,
];

/// Variables that may carry negative exponents. `X1, X2, X3` and `lam`
/// always stay polynomial; which of `a, b, c, w` is actually inverted
/// depends on the construction.
pub const LAURENT_VARS: [Var; 4] = [Var::A, Var::B, Var::C, Var::W];

impl Var {
    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::X3 => "X3",
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::W => "w",
            Var::Lam => "lam",
        }
    }

    pub fn parse(s: &str) -> Option<Var> {
        match s {
            "X1" => Some(Var::X1),
            "X2" => Some(Var::X2),
            "X3" => Some(Var::X3),
            "a" => Some(Var::A),
            "b" => Some(Var::B),
            "c" => Some(Var::C),
            "w" => Some(Var::W),
            "lam" => Some(Var::Lam),
            _ => None,
        }
    }

    pub fn is_surface(self) -> bool {
        matches!(self, Var::X1 | Var::X2 | Var::X3)
    }

    pub fn is_parameter(self) -> bool {
        matches!(self, Var::A | Var::B | Var::C | Var::W)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
