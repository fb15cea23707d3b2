use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::vars::{Var, ALL_VARS, NVARS};

/// Exponent vector over the fixed variable set.
///
/// Exponents of the surface variables `X1, X2, X3` (and of `lam`) are kept
/// nonnegative by every operation; the parameters `a, b, c, w` may go
/// negative where a construction localizes them. The derived `Ord` is the
/// canonical lex order `X1 > X2 > X3 > a > b > c > w > lam`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [i32; NVARS],
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var, e: i32) -> Monomial {
        let mut m = Monomial::default();
        m.exps[v.index()] = e;
        m
    }

    pub fn from_exps(pairs: &[(Var, i32)]) -> Monomial {
        let mut m = Monomial::default();
        for &(v, e) in pairs {
            m.exps[v.index()] += e;
        }
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.exps[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..NVARS {
            m.exps[i] += other.exps[i];
        }
        m
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut m = *self;
        for e in &mut m.exps {
            *e *= k;
        }
        m
    }

    pub fn inverse(&self) -> Monomial {
        self.pow(-1)
    }

    /// Componentwise quotient when every exponent of `other` is covered.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for i in 0..NVARS {
            m.exps[i] -= other.exps[i];
            if m.exps[i] < 0 {
                return None;
            }
        }
        Some(m)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    /// Degree in the surface variables only.
    pub fn x_degree(&self) -> i64 {
        ALL_VARS
            .iter()
            .filter(|v| v.is_surface())
            .map(|v| self.exp(*v) as i64)
            .sum()
    }

    /// True when the monomial involves none of `X1, X2, X3`.
    pub fn is_x_constant(&self) -> bool {
        ALL_VARS
            .iter()
            .filter(|v| v.is_surface())
            .all(|v| self.exp(*v) == 0)
    }

    pub fn has_negative(&self) -> bool {
        self.exps.iter().any(|&e| e < 0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        ALL_VARS.iter().copied().filter(|v| self.exp(*v) != 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in ALL_VARS {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    GrLex,
}

/// Monomial order: lex or graded-lex over a variable precedence list.
///
/// Orders are well-orders on cleared (nonnegative) exponent vectors, which
/// is all the division algorithm requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: [Var; NVARS],
}

impl MonomialOrder {
    pub fn lex(precedence: [Var; NVARS]) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::Lex,
            precedence,
        }
    }

    pub fn grlex(precedence: [Var; NVARS]) -> MonomialOrder {
        MonomialOrder {
            kind: OrderKind::GrLex,
            precedence,
        }
    }

    /// Canonical lex order `X1 > X2 > X3 > a > b > c > w > lam`.
    pub fn canonical() -> MonomialOrder {
        MonomialOrder::lex(ALL_VARS)
    }

    /// Order used for reduction modulo relation ideals: lex with parameter
    /// precedence `c > a > b > w`. Under this order the leading terms of
    /// the cusp relation list are pairwise coprime, so the list is a
    /// Groebner basis of its ideal and a zero remainder is a complete
    /// membership test there, not merely a sufficient one.
    pub fn reduction() -> MonomialOrder {
        MonomialOrder::lex([
            Var::X1,
            Var::X2,
            Var::X3,
            Var::C,
            Var::A,
            Var::B,
            Var::W,
            Var::Lam,
        ])
    }

    /// Lex order that eliminates `X3`, then `X2`, before `X1`. The cofactor
    /// search uses it to peel the `X3`- and `X2`-chains off a defining
    /// polynomial, which is where the telescoping quotients live.
    pub fn elim() -> MonomialOrder {
        MonomialOrder::lex([
            Var::X3,
            Var::X2,
            Var::X1,
            Var::A,
            Var::B,
            Var::C,
            Var::W,
            Var::Lam,
        ])
    }

    pub fn cmp(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        if self.kind == OrderKind::GrLex {
            match m1.total_degree().cmp(&m2.total_degree()) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for v in self.precedence {
            match m1.exp(v).cmp(&m2.exp(v)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::canonical()
    }
}

/// Positive integer weights on the surface variables together with the
/// weighted total degree `d`. Parameters have weight zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector {
    pub w1: i64,
    pub w2: i64,
    pub w3: i64,
    pub d: i64,
}

impl WeightVector {
    pub fn new(w1: i64, w2: i64, w3: i64, d: i64) -> WeightVector {
        WeightVector { w1, w2, w3, d }
    }

    pub fn weight(&self, v: Var) -> i64 {
        match v {
            Var::X1 => self.w1,
            Var::X2 => self.w2,
            Var::X3 => self.w3,
            _ => 0,
        }
    }

    pub fn weighted_degree(&self, m: &Monomial) -> i64 {
        self.w1 * m.exp(Var::X1) as i64
            + self.w2 * m.exp(Var::X2) as i64
            + self.w3 * m.exp(Var::X3) as i64
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}; d = {})", self.w1, self.w2, self.w3, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_prefers_x1() {
        let o = MonomialOrder::canonical();
        let x1 = Monomial::var(Var::X1, 1);
        let x2sq = Monomial::var(Var::X2, 2);
        assert_eq!(o.cmp(&x1, &x2sq), Ordering::Greater);
        let g = MonomialOrder::grlex(ALL_VARS);
        assert_eq!(g.cmp(&x1, &x2sq), Ordering::Less);
    }

    #[test]
    fn division_of_exponents() {
        let m = Monomial::from_exps(&[(Var::X1, 2), (Var::A, 1)]);
        let d = Monomial::var(Var::X1, 1);
        assert_eq!(
            m.try_div(&d),
            Some(Monomial::from_exps(&[(Var::X1, 1), (Var::A, 1)]))
        );
        assert_eq!(m.try_div(&Monomial::var(Var::B, 1)), None);
    }
}
