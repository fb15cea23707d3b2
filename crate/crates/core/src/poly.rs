use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, WeightVector};
use crate::scalar::Coeff;
use crate::vars::{Var, LAURENT_VARS};

/// Sparse multivariate polynomial over an exact coefficient field, Laurent
/// in the localized parameters.
///
/// The term map is the canonical form: no zero coefficients are stored and
/// keys are unique, so equality is exact term-by-term equality. The zero
/// polynomial is the empty map.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<K: Coeff> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Coeff> Poly<K> {
    pub fn zero() -> Poly<K> {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly<K> {
        Poly::constant(K::one())
    }

    pub fn constant(k: K) -> Poly<K> {
        let mut p = Poly::zero();
        if !k.is_zero() {
            p.terms.insert(Monomial::one(), k);
        }
        p
    }

    pub fn var(v: Var) -> Poly<K> {
        Poly::term(Monomial::var(v, 1), K::one())
    }

    /// Single-variable power, Laurent exponents allowed on parameters.
    pub fn var_pow(v: Var, e: i32) -> Poly<K> {
        Poly::term(Monomial::var(v, e), K::one())
    }

    pub fn term(m: Monomial, k: K) -> Poly<K> {
        let mut p = Poly::zero();
        if !k.is_zero() {
            p.terms.insert(m, k);
        }
        p
    }

    pub fn from_i64(n: i64) -> Poly<K> {
        Poly::constant(K::from_i64(n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .map(|k| k.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&K> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, k: K) {
        if k.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, k);
            }
            Some(old) => {
                let s = old + k;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add_ref(&self, other: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        for (m, k) in other.terms() {
            out.add_term(*m, k.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &Poly<K>) -> Poly<K> {
        let mut out = self.clone();
        for (m, k) in other.terms() {
            out.add_term(*m, -k.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> Poly<K> {
        let mut out = Poly::zero();
        for (m, k) in self.terms() {
            out.terms.insert(*m, -k.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (m1, k1) in self.terms() {
            for (m2, k2) in other.terms() {
                out.add_term(m1.mul(m2), k1.clone() * k2.clone());
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, k: &K) -> Poly<K> {
        let mut out = Poly::zero();
        if k.is_zero() {
            return out;
        }
        for (tm, tk) in self.terms() {
            out.terms.insert(tm.mul(m), tk.clone() * k.clone());
        }
        out
    }

    pub fn scale(&self, k: &K) -> Poly<K> {
        self.mul_term(&Monomial::one(), k)
    }

    pub fn pow(&self, e: u32) -> Poly<K> {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Leading term under `order`, linear scan.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(Monomial, K)> {
        let mut best: Option<(&Monomial, &K)> = None;
        for (m, k) in self.terms() {
            match best {
                None => best = Some((m, k)),
                Some((bm, _)) => {
                    if order.cmp(m, bm) == std::cmp::Ordering::Greater {
                        best = Some((m, k));
                    }
                }
            }
        }
        best.map(|(m, k)| (*m, k.clone()))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for (m, _) in self.terms() {
            out.extend(m.vars());
        }
        out
    }

    /// When the polynomial is a single term whose monomial only involves
    /// localized parameters, return its multiplicative inverse.
    pub fn inverse_monomial(&self) -> Option<Poly<K>> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, k) = self.terms().next().unwrap();
        if m.vars().any(|v| !v.is_parameter()) {
            return None;
        }
        let kinv = k.inv()?;
        Some(Poly::term(m.inverse(), kinv))
    }

    /// Minimal monomial in the localized parameters that clears every
    /// negative exponent of `self`.
    pub fn clearing_monomial(&self) -> Monomial {
        let mut clear = Monomial::one();
        for v in LAURENT_VARS {
            let min = self
                .terms()
                .map(|(m, _)| m.exp(v))
                .min()
                .unwrap_or(0);
            if min < 0 {
                clear = clear.mul(&Monomial::var(v, -min));
            }
        }
        clear
    }

    /// Exact composition. Variables missing from the assignment map to
    /// themselves. A variable carrying a negative exponent must receive an
    /// invertible monomial image.
    pub fn substitute(&self, assignment: &BTreeMap<Var, Poly<K>>) -> Result<Poly<K>> {
        let mut out = Poly::zero();
        for (m, k) in self.terms() {
            let mut acc = Poly::constant(k.clone());
            for v in m.vars() {
                let e = m.exp(v);
                let factor = match assignment.get(&v) {
                    None => Poly::var_pow(v, e),
                    Some(image) => {
                        if e >= 0 {
                            image.pow(e as u32)
                        } else {
                            let inv = image
                                .inverse_monomial()
                                .ok_or(Error::NonInvertibleSubstitution(v))?;
                            inv.pow((-e) as u32)
                        }
                    }
                };
                acc = acc.mul_ref(&factor);
            }
            out = out.add_ref(&acc);
        }
        Ok(out)
    }

    /// Exact evaluation at a point. Every variable of the polynomial must
    /// be assigned; zero values may not meet negative exponents.
    pub fn evaluate(&self, point: &BTreeMap<Var, K>) -> Result<K> {
        let mut total = K::zero();
        for (m, k) in self.terms() {
            let mut acc = k.clone();
            for v in m.vars() {
                let e = m.exp(v);
                let val = point.get(&v).ok_or(Error::UnassignedVariable(v))?;
                if e >= 0 {
                    for _ in 0..e {
                        acc = acc * val.clone();
                    }
                } else {
                    let inv = val.inv().ok_or(Error::ZeroLocalizedValue(v))?;
                    for _ in 0..-e {
                        acc = acc * inv.clone();
                    }
                }
            }
            total = total + acc;
        }
        Ok(total)
    }

    /// The set of weighted degrees of the terms; a singleton exactly when
    /// the polynomial is quasi-homogeneous for `w`.
    pub fn weighted_degrees(&self, w: &WeightVector) -> BTreeSet<i64> {
        self.terms().map(|(m, _)| w.weighted_degree(m)).collect()
    }

    /// True when no term is constant in the surface variables; entries of
    /// reduced matrix factors satisfy this.
    pub fn has_no_x_constant_term(&self) -> bool {
        self.terms().all(|(m, _)| !m.is_x_constant())
    }

    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        let mut out = Poly::zero();
        for (m, k) in self.terms() {
            out.add_term(*m, f(k));
        }
        out
    }
}

impl<K: Coeff> Zero for Poly<K> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
}

impl<K: Coeff> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Poly<K>) -> Poly<K> {
        self.add_ref(&rhs)
    }
}

impl<K: Coeff> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        self.add_ref(rhs)
    }
}

impl<K: Coeff> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Poly<K>) -> Poly<K> {
        self.sub_ref(&rhs)
    }
}

impl<K: Coeff> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        self.sub_ref(rhs)
    }
}

impl<K: Coeff> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Poly<K>) -> Poly<K> {
        self.mul_ref(&rhs)
    }
}

impl<K: Coeff> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        self.mul_ref(rhs)
    }
}

impl<K: Coeff> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.neg_ref()
    }
}

impl<K: Coeff> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.neg_ref()
    }
}

impl<K: Coeff> fmt::Display for Poly<K> {
    /// Canonical text form: terms sorted descending by the canonical lex
    /// order, coefficients as decimal-free rationals, `^` for exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, k) in self.terms.iter().rev() {
            let (neg, abs) = split_sign(k);
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{:?}", m)?;
            } else {
                write!(f, "{}*{:?}", abs, m)?;
            }
        }
        Ok(())
    }
}

impl<K: Coeff> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Render `k` as (is_negative, absolute value string). Coefficients print
/// with a leading '-' exactly when negative, so this just strips it.
fn split_sign<K: Coeff>(k: &K) -> (bool, DisplayAbs<'_, K>) {
    let s = k.to_string();
    let neg = s.starts_with('-');
    (neg, DisplayAbs { k, neg })
}

struct DisplayAbs<'a, K: Coeff> {
    k: &'a K,
    neg: bool,
}

impl<K: Coeff> DisplayAbs<'_, K> {
    fn is_one(&self) -> bool {
        if self.neg {
            (-self.k.clone()).is_one()
        } else {
            self.k.is_one()
        }
    }
}

impl<K: Coeff> fmt::Display for DisplayAbs<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.k.to_string();
        f.write_str(s.strip_prefix('-').unwrap_or(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::qp;
    use crate::scalar::{rat, ratq, Rat};

    #[test]
    fn addition_cancels() {
        assert_eq!(qp("X1 + X2") + qp("0 - X2"), qp("X1"));
        let p = qp("b X1^2 - a^2 X2");
        assert_eq!(p.add_ref(&Poly::zero()), p);
        assert_eq!(p.add_ref(&qp("a^2 X2")), qp("b X1^2"));
    }

    #[test]
    fn multiplication() {
        assert_eq!(qp("X1 + X2") * qp("X1 - X2"), qp("X1^2 - X2^2"));
        let p = qp("b X1^2 - a^2 X2 + 1/3");
        assert_eq!(p.mul_ref(&Poly::one()), p);
        // the telescoping product with n = m = 2
        assert_eq!(
            qp("b X1^2 - a^2 X2") * qp("X2 a^-2 + b X1^2 a^-4"),
            qp("b^2 X1^4 a^-4 - X2^2")
        );
    }

    #[test]
    fn substitution_examples() {
        let f = qp("X1^3 + X2^3 + X3^3");
        let mut sub: BTreeMap<Var, Poly<Rat>> = BTreeMap::new();
        sub.insert(Var::X1, qp("lam"));
        sub.insert(Var::X2, qp("0 - lam"));
        sub.insert(Var::X3, Poly::zero());
        assert!(f.substitute(&sub).unwrap().is_zero());

        // identity map (empty assignment) is the identity
        let p = qp("b X1^2 a^-2 + c");
        assert_eq!(p.substitute(&BTreeMap::new()).unwrap(), p);

        // a Laurent slot must receive an invertible monomial
        let laurent = qp("b a^-1");
        let mut bad: BTreeMap<Var, Poly<Rat>> = BTreeMap::new();
        bad.insert(Var::A, qp("a + b"));
        assert_eq!(
            laurent.substitute(&bad).unwrap_err(),
            crate::error::Error::NonInvertibleSubstitution(Var::A)
        );
        let mut good: BTreeMap<Var, Poly<Rat>> = BTreeMap::new();
        good.insert(Var::A, qp("2 b"));
        assert_eq!(laurent.substitute(&good).unwrap(), qp("1/2"));
    }

    #[test]
    fn evaluation_examples() {
        let mut pt: BTreeMap<Var, Rat> = BTreeMap::new();
        pt.insert(Var::X1, rat(2));
        pt.insert(Var::X2, rat(3));
        assert_eq!(qp("X1^2 + X2").evaluate(&pt).unwrap(), rat(7));

        let mut fermat: BTreeMap<Var, Rat> = BTreeMap::new();
        fermat.insert(Var::X1, rat(1));
        fermat.insert(Var::X2, rat(-1));
        fermat.insert(Var::X3, rat(0));
        assert_eq!(
            qp("X1^3 + X2^3 + X3^3").evaluate(&fermat).unwrap(),
            rat(0)
        );

        let mut loc: BTreeMap<Var, Rat> = BTreeMap::new();
        loc.insert(Var::A, rat(2));
        loc.insert(Var::B, rat(8));
        assert_eq!(qp("b a^-2").evaluate(&loc).unwrap(), rat(2));
        assert_eq!(qp("b a^-2").evaluate(&BTreeMap::new()).unwrap_err(),
            crate::error::Error::UnassignedVariable(Var::A));
        loc.insert(Var::A, rat(0));
        assert_eq!(
            qp("b a^-2").evaluate(&loc).unwrap_err(),
            crate::error::Error::ZeroLocalizedValue(Var::A)
        );
        assert_eq!(qp("1/2 + 1/3").evaluate(&BTreeMap::new()).unwrap(), ratq(5, 6));
    }

    #[test]
    fn weighted_degree_sets() {
        let w111 = WeightVector::new(1, 1, 1, 3);
        let degs: Vec<i64> = qp("X1^3 + X2^3 + X3^3")
            .weighted_degrees(&w111)
            .into_iter()
            .collect();
        assert_eq!(degs, vec![3]);

        let w122 = WeightVector::new(1, 2, 2, 6);
        let degs: Vec<i64> = qp("X1^6 + X2^3 + X2 X3^2")
            .weighted_degrees(&w122)
            .into_iter()
            .collect();
        assert_eq!(degs, vec![6]);

        let degs: Vec<i64> = qp("X1^2 + X2^3")
            .weighted_degrees(&w111)
            .into_iter()
            .collect();
        assert_eq!(degs, vec![2, 3]);

        // parameters carry weight zero
        let degs: Vec<i64> = qp("a^5 X1 + b X1")
            .weighted_degrees(&w111)
            .into_iter()
            .collect();
        assert_eq!(degs, vec![1]);
    }

    #[test]
    fn clearing_and_inverse_monomials() {
        let p = qp("X1 a^-3 + b^-1 c^2 w^-2");
        let c = p.clearing_monomial();
        assert_eq!(c.exp(Var::A), 3);
        assert_eq!(c.exp(Var::B), 1);
        assert_eq!(c.exp(Var::W), 2);
        assert_eq!(c.exp(Var::C), 0);

        assert_eq!(qp("2 a b^2").inverse_monomial().unwrap(), qp("1/2 a^-1 b^-2"));
        assert!(qp("a + b").inverse_monomial().is_none());
        assert!(qp("X1").inverse_monomial().is_none());
        assert!(Poly::<Rat>::zero().inverse_monomial().is_none());
    }

    #[test]
    fn display_is_sorted_descending() {
        let p = qp("X3 + X1 + X2 + 1");
        assert_eq!(p.to_string(), "X1 + X2 + X3 + 1");
        assert_eq!(qp("0").to_string(), "0");
        assert_eq!(qp("2 X1 - 1 X2").to_string(), "2*X1 - X2");
    }
}
