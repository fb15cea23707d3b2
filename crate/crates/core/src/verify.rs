//! The matrix-factorization verifier.
//!
//! A pair (Phi, Psi) factors F with sign eps when both Phi*Psi - eps*F*Id
//! and Psi*Phi - eps*F*Id vanish after reduction modulo the relation
//! ideal. Reduction is division by the relation list under
//! [`MonomialOrder::reduction`]; when that is inconclusive (possible only
//! for relation lists that are not Groebner bases) the verifier can fall
//! back to exact evaluation at relation-satisfying parameter samples in
//! the prime field [`crate::fp::SAMPLE_PRIME`].

use std::fmt;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::divide::reduce_mod_relations;
use crate::error::{Error, Result};
use crate::fp::Fp;
use crate::matrix::PolyMatrix;
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::scalar::Rat;
use crate::vars::Var;

/// How validity was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMethod {
    /// Zero residue after symbolic reduction.
    Exact,
    /// All residues vanished at relation-satisfying prime-field samples.
    Sampled,
}

impl fmt::Display for VerifyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMethod::Exact => f.write_str("exact"),
            VerifyMethod::Sampled => f.write_str("sampled"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// `Some(+1)` or `Some(-1)` when valid.
    pub sign: Option<i32>,
    /// Both factors have every entry in the maximal ideal of the surface
    /// variables.
    pub reduced: bool,
    pub method: VerifyMethod,
    /// Reduction of Phi*Psi - eps*F*Id when invalid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<PolyMatrix<Rat>>,
}

/// Supplies relation-satisfying parameter values (a, b, c, w) in the
/// sample prime field.
pub trait ParamSampler {
    fn sample(&self, rng: &mut StdRng) -> Option<[Fp; 4]>;
}

pub struct VerifyOptions<'a> {
    pub sampler: Option<&'a dyn ParamSampler>,
    /// Number of relation-satisfying samples required (at least 20 by
    /// policy; enforced with `max`).
    pub samples: usize,
    /// Skip the symbolic pass; used to exercise the sampling path.
    pub force_sampling: bool,
    pub seed: u64,
}

impl Default for VerifyOptions<'_> {
    fn default() -> Self {
        VerifyOptions {
            sampler: None,
            samples: 20,
            force_sampling: false,
            seed: 0x6d666b6974,
        }
    }
}

/// Verify with the default options (symbolic reduction only).
pub fn verify_matrix_factorization(
    phi: &PolyMatrix<Rat>,
    psi: &PolyMatrix<Rat>,
    f: &Poly<Rat>,
    relations: &[Poly<Rat>],
) -> Result<VerifyReport> {
    verify_with_options(phi, psi, f, relations, &VerifyOptions::default())
}

pub fn verify_with_options(
    phi: &PolyMatrix<Rat>,
    psi: &PolyMatrix<Rat>,
    f: &Poly<Rat>,
    relations: &[Poly<Rat>],
    opts: &VerifyOptions<'_>,
) -> Result<VerifyReport> {
    if !phi.is_square() {
        return Err(Error::NotSquare(phi.rows(), phi.cols()));
    }
    if phi.rows() != psi.rows() || phi.cols() != psi.cols() {
        return Err(Error::DimensionMismatch(
            phi.rows(),
            phi.cols(),
            psi.rows(),
            psi.cols(),
        ));
    }
    let n = phi.rows();
    let prod1 = phi.mul(psi)?;
    let prod2 = psi.mul(phi)?;
    let order = MonomialOrder::reduction();
    let reduced = phi.is_reduced() && psi.is_reduced();

    let residues = |eps: i32| -> (PolyMatrix<Rat>, PolyMatrix<Rat>) {
        let target = PolyMatrix::scalar(
            n,
            &if eps > 0 { f.clone() } else { f.neg_ref() },
        );
        (
            prod1.sub(&target).expect("same shape"),
            prod2.sub(&target).expect("same shape"),
        )
    };

    let mut best_residue: Option<PolyMatrix<Rat>> = None;
    if !opts.force_sampling {
        for eps in [1i32, -1] {
            let (r1, r2) = residues(eps);
            let red1 = r1.map(|p| reduce_mod_relations(p, relations, &order));
            let red2 = r2.map(|p| reduce_mod_relations(p, relations, &order));
            let zero1 = red1.entries().iter().all(|p| p.is_zero());
            let zero2 = red2.entries().iter().all(|p| p.is_zero());
            if zero1 && zero2 {
                return Ok(VerifyReport {
                    valid: true,
                    sign: Some(eps),
                    reduced,
                    method: VerifyMethod::Exact,
                    residue: None,
                });
            }
            let nonzero = red1.entries().iter().filter(|p| !p.is_zero()).count();
            let best_count = best_residue
                .as_ref()
                .map(|m| m.entries().iter().filter(|p| !p.is_zero()).count());
            if best_count.map(|c| nonzero < c).unwrap_or(true) {
                best_residue = Some(red1);
            }
        }
    }

    if let Some(sampler) = opts.sampler {
        let wanted = opts.samples.max(20);
        for eps in [1i32, -1] {
            let (r1, r2) = residues(eps);
            if sampled_zero(&r1, &r2, sampler, wanted, opts.seed) {
                return Ok(VerifyReport {
                    valid: true,
                    sign: Some(eps),
                    reduced,
                    method: VerifyMethod::Sampled,
                    residue: None,
                });
            }
        }
    }

    let residue = best_residue.unwrap_or_else(|| {
        let (r1, _) = residues(1);
        r1.map(|p| reduce_mod_relations(p, relations, &order))
    });
    Ok(VerifyReport {
        valid: false,
        sign: None,
        reduced,
        method: VerifyMethod::Exact,
        residue: Some(residue),
    })
}

fn sampled_zero(
    r1: &PolyMatrix<Rat>,
    r2: &PolyMatrix<Rat>,
    sampler: &dyn ParamSampler,
    wanted: usize,
    seed: u64,
) -> bool {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut good = 0usize;
    let mut attempts = 0usize;
    while good < wanted {
        attempts += 1;
        if attempts > wanted * 50 {
            return false;
        }
        let Some(vals) = sampler.sample(&mut rng) else {
            return false;
        };
        let ok = r1
            .entries()
            .iter()
            .chain(r2.entries().iter())
            .all(|p| match specialize_params(p, vals) {
                Some(q) => q.is_zero(),
                None => false,
            });
        if !ok {
            return false;
        }
        good += 1;
    }
    true
}

/// Map a rational polynomial into the sample prime field by assigning the
/// parameters (a, b, c, w); the surface variables stay symbolic. Returns
/// `None` when a coefficient denominator vanishes mod p or a zero value
/// meets a negative exponent.
pub fn specialize_params(p: &Poly<Rat>, vals: [Fp; 4]) -> Option<Poly<Fp>> {
    let assign = |v: Var| -> Option<Fp> {
        match v {
            Var::A => Some(vals[0]),
            Var::B => Some(vals[1]),
            Var::C => Some(vals[2]),
            Var::W => Some(vals[3]),
            _ => None,
        }
    };
    let mut out: Poly<Fp> = Poly::zero();
    for (m, k) in p.terms() {
        let numer = fp_from_bigint(k.numer())?;
        let denom = fp_from_bigint(k.denom())?;
        let mut acc = numer * denom.try_inv()?;
        let mut xmono = crate::monomial::Monomial::one();
        for v in m.vars() {
            let e = m.exp(v);
            match assign(v) {
                Some(val) => acc = acc * val.pow_i64(e as i64)?,
                None => xmono = xmono.mul(&crate::monomial::Monomial::var(v, e)),
            }
        }
        out.add_term(xmono, acc);
    }
    Some(out)
}

fn fp_from_bigint(n: &num_bigint::BigInt) -> Option<Fp> {
    use num_traits::Signed;
    let m = num_bigint::BigInt::from(crate::fp::SAMPLE_PRIME);
    let r = ((n % &m) + &m) % &m;
    let digits = r.abs().to_u64_digits().1;
    let v = match digits.len() {
        0 => 0u64,
        1 => digits[0],
        _ => return None,
    };
    Some(Fp::new(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::qp;

    fn m2(a: &str, b: &str, c: &str, d: &str) -> PolyMatrix<Rat> {
        PolyMatrix::new(2, 2, vec![qp(a), qp(b), qp(c), qp(d)]).unwrap()
    }

    #[test]
    fn trivial_factorization_has_positive_sign() {
        let f = qp("X1^3 + X2^3 + X3^3");
        let phi = PolyMatrix::new(1, 1, vec![f.clone()]).unwrap();
        let psi = PolyMatrix::new(1, 1, vec![qp("1")]).unwrap();
        let rep = verify_matrix_factorization(&phi, &psi, &f, &[]).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.sign, Some(1));
        assert!(!rep.reduced);
        assert_eq!(rep.method, VerifyMethod::Exact);
    }

    #[test]
    fn adjugate_pair_verifies_with_negative_sign() {
        let f = qp("X1^3 + X2^3 + X3^3");
        let a = m2("-X1 - X2", "X3", "X3^2", "X1^2 - X1 X2 + X2^2");
        let adj = a.adjugate().unwrap();
        let rep = verify_matrix_factorization(&adj, &a, &f, &[]).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.sign, Some(-1));
        assert!(rep.reduced);
    }

    #[test]
    fn perturbation_reports_residue() {
        let f = qp("X1^3 + X2^3 + X3^3");
        let a = m2("-X1 - X2", "X3", "X3^2", "X1^2 - X1 X2 + X2^2");
        let adj = a.adjugate().unwrap();
        let mut bad = a.clone();
        *bad.get_mut(0, 0) = bad.get(0, 0).add_ref(&qp("1"));
        let rep = verify_matrix_factorization(&adj, &bad, &f, &[]).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.sign, None);
        let residue = rep.residue.unwrap();
        assert!(residue.entries().iter().any(|p| !p.is_zero()));
    }

    #[test]
    fn symmetry_of_the_report() {
        let f = qp("X1^3 + X2^3 + X3^3");
        let a = m2("-X1 - X2", "X3", "X3^2", "X1^2 - X1 X2 + X2^2");
        let adj = a.adjugate().unwrap();
        let r1 = verify_matrix_factorization(&adj, &a, &f, &[]).unwrap();
        let r2 = verify_matrix_factorization(&a, &adj, &f, &[]).unwrap();
        assert_eq!(r1.valid, r2.valid);
        assert_eq!(r1.sign, r2.sign);
        assert_eq!(r1.reduced, r2.reduced);
    }

    #[test]
    fn symbolic_relation_reduction() {
        // type I (3,3,3) at the symbolic point, relation a^3+b^3+c^3
        let f = qp("X1^3 + X2^3 + X3^3");
        let a = PolyMatrix::new(
            2,
            2,
            vec![
                qp("b X1 - a X2"),
                qp("a X3 - c X1"),
                qp("X3^2 a^-1 + X1 X3 c a^-2 + X1^2 c^2 a^-3"),
                qp("X2^2 a^-1 + X1 X2 b a^-2 + X1^2 b^2 a^-3"),
            ],
        )
        .unwrap();
        let adj = a.adjugate().unwrap();
        let rels = [qp("a^3 + b^3 + c^3")];
        let rep = verify_matrix_factorization(&adj, &a, &f, &rels).unwrap();
        assert!(rep.valid, "residue: {:?}", rep.residue);
        assert_eq!(rep.sign, Some(-1));
        assert!(rep.reduced);
    }
}
