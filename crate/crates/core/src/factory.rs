//! Factorization constructors: the generic Koszul lift with cofactor
//! search, the per-family table construction, the a = 0 completing case,
//! the cusp construction, the non-isolated example and block sums of
//! point factorizations.

use std::fmt;

use num_traits::{One, Zero};

use crate::catalog::{
    effective_relations, make_surface, validate_point, Exponents, Family, SurfacePoint,
    SurfaceSpec,
};
use crate::curves::{g_poly, s_poly};
use crate::divide::{divide, reduces_to_zero};
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::scalar::Rat;
use crate::vars::{Var, LAURENT_VARS};
use crate::verify::{
    verify_matrix_factorization, verify_with_options, ParamSampler, VerifyMethod, VerifyOptions,
    VerifyReport,
};

/// Polynomials (h1, h2) with `F = h1*g + h2*f` modulo the relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cofactors {
    pub h1: Poly<Rat>,
    pub h2: Poly<Rat>,
}

/// Construction metadata carried by every factorization.
#[derive(Debug, Clone)]
pub struct Provenance {
    pub construction: String,
    pub point: String,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.construction, self.point)
    }
}

/// A verified matrix factorization: `phi * psi = psi * phi = sign * F * Id`
/// modulo the relations.
#[derive(Debug, Clone)]
pub struct MatFac {
    pub phi: PolyMatrix<Rat>,
    pub psi: PolyMatrix<Rat>,
    pub size: usize,
    pub sign: i32,
    pub reduced: bool,
    pub verified: VerifyMethod,
    pub f: Poly<Rat>,
    pub relations: Vec<Poly<Rat>>,
    pub provenance: Provenance,
}

impl MatFac {
    fn from_verified(
        phi: PolyMatrix<Rat>,
        psi: PolyMatrix<Rat>,
        f: Poly<Rat>,
        relations: Vec<Poly<Rat>>,
        report: &VerifyReport,
        provenance: Provenance,
    ) -> MatFac {
        MatFac {
            size: phi.rows(),
            sign: report.sign.expect("verified factorization has a sign"),
            reduced: report.reduced,
            verified: report.method,
            phi,
            psi,
            f,
            relations,
            provenance,
        }
    }

    /// Re-run the verifier against the stored data.
    pub fn reverify(&self) -> Result<VerifyReport> {
        verify_matrix_factorization(&self.phi, &self.psi, &self.f, &self.relations)
    }

    /// Flip a sign -1 pair to the +F convention by negating the first
    /// factor; `(-phi) * psi = F * Id` when `phi * psi = -F * Id`.
    pub fn normalize_sign(&self) -> MatFac {
        if self.sign == 1 {
            return self.clone();
        }
        let mut out = self.clone();
        out.phi = self.phi.neg();
        out.sign = 1;
        out
    }
}

fn guard_verified(report: &VerifyReport, what: &str) -> Result<()> {
    if report.valid {
        Ok(())
    } else {
        Err(Error::VerificationFailed(format!(
            "{what}: residue {:?}",
            report.residue
        )))
    }
}

/// Division-based cofactor search: find (h1, h2) with `F = h1*g + h2*f`
/// modulo the relations.
///
/// The dividend is multiplied by `(a b c w)^n` for escalating `n` so that
/// quotients may pick up localized denominators, and the division is
/// attempted under both divisor orders, lex and graded-lex, and two
/// variable precedences. The first strategy whose remainder reduces to
/// zero wins; if none does the membership is reported undecided.
pub fn find_cofactors(
    f_poly: &Poly<Rat>,
    f: &Poly<Rat>,
    g: &Poly<Rat>,
    relations: &[Poly<Rat>],
) -> Result<Cofactors> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let reduction = MonomialOrder::reduction();
    let degree = f_poly
        .terms()
        .map(|(m, _)| m.total_degree())
        .max()
        .unwrap_or(0) as i32;
    let mut layers = vec![0];
    for n in [degree, 2 * degree, 4 * degree] {
        if n > 0 && !layers.contains(&n) {
            layers.push(n);
        }
    }

    for n in layers {
        let mut clear = Monomial::one();
        for v in LAURENT_VARS {
            clear = clear.mul(&Monomial::var(v, n));
        }
        let dividend = f_poly.mul_term(&clear, &Rat::one());
        let unclear = clear.inverse();
        for order in [
            MonomialOrder::canonical(),
            MonomialOrder::elim(),
            MonomialOrder::grlex(MonomialOrder::canonical().precedence),
            MonomialOrder::grlex(MonomialOrder::elim().precedence),
        ] {
            for g_first in [true, false] {
                let divisors: Vec<Poly<Rat>> = if g_first {
                    vec![g.clone(), f.clone()]
                } else {
                    vec![f.clone(), g.clone()]
                };
                let Ok(div) = divide(&dividend, &divisors, &order) else {
                    continue;
                };
                if reduces_to_zero(&div.remainder, relations, &reduction) {
                    let (qg, qf) = if g_first {
                        (div.quotients[0].clone(), div.quotients[1].clone())
                    } else {
                        (div.quotients[1].clone(), div.quotients[0].clone())
                    };
                    return Ok(Cofactors {
                        h1: qg.mul_term(&unclear, &Rat::one()),
                        h2: qf.mul_term(&unclear, &Rat::one()),
                    });
                }
            }
        }
    }
    Err(Error::MembershipUndecided)
}

/// Koszul lift: from curve generators (f, g) and cofactors with
/// `F = h1*g + h2*f`, the pair `(adj(C), C)` with `C = [[-f, g], [h1, h2]]`
/// is a factorization of F with sign -1.
pub fn koszul_factorization(
    f: &Poly<Rat>,
    g: &Poly<Rat>,
    cofactors: &Cofactors,
    f_poly: &Poly<Rat>,
    relations: &[Poly<Rat>],
) -> Result<MatFac> {
    let identity = cofactors
        .h1
        .mul_ref(g)
        .add_ref(&cofactors.h2.mul_ref(f))
        .sub_ref(f_poly);
    if !reduces_to_zero(&identity, relations, &MonomialOrder::reduction()) {
        return Err(Error::CofactorIdentityFails);
    }
    let c = PolyMatrix::new(
        2,
        2,
        vec![
            f.neg_ref(),
            g.clone(),
            cofactors.h1.clone(),
            cofactors.h2.clone(),
        ],
    )?;
    let adj = c.adjugate()?;
    let report = verify_matrix_factorization(&adj, &c, f_poly, relations)?;
    guard_verified(&report, "koszul lift")?;
    Ok(MatFac::from_verified(
        adj,
        c,
        f_poly.clone(),
        relations.to_vec(),
        &report,
        Provenance {
            construction: "koszul lift".into(),
            point: "user-supplied curve".into(),
        },
    ))
}

fn inv_pow(base: &Poly<Rat>, e: u32) -> Result<Poly<Rat>> {
    base.pow(e)
        .inverse_monomial()
        .ok_or(Error::NonInvertibleDenominator)
}

fn param(point: &SurfacePoint, v: Var) -> Poly<Rat> {
    match point.value(v) {
        Some(k) => Poly::constant(k.clone()),
        None => Poly::var(v),
    }
}

/// The table construction for the seven quasi-homogeneous families at a
/// point with a != 0 (points with a = 0 dispatch to the completing case).
pub fn construct_quasi(spec: &SurfaceSpec, point: &SurfacePoint) -> Result<MatFac> {
    if !spec.family.is_quasi() {
        return Err(Error::UnsupportedFamily(spec.family.to_string()));
    }
    if !validate_point(spec, point) {
        return Err(Error::InvalidPoint(point.describe()));
    }
    if matches!(point.value(Var::A), Some(v) if v.is_zero()) {
        return construct_quasi_a0(spec, point);
    }

    let a = param(point, Var::A);
    let b = param(point, Var::B);
    let c = param(point, Var::C);
    let w2 = spec.weights.w2 as u32;
    let w3 = spec.weights.w3 as u32;
    let e = spec.exponents;
    let (p, q, r) = (e.p, e.q, e.r);

    let x1 = Poly::var(Var::X1);
    let x3 = Poly::var(Var::X3);

    let m11 = g_poly(&b, &a, w2, Var::X1, Var::X2);
    let m12 = g_poly(&c, &a, w3, Var::X1, Var::X3).neg_ref();

    let s_c_r = s_poly(&c, &a, w3, r, Var::X1, Var::X3)?;
    let s_b_q = s_poly(&b, &a, w2, q, Var::X1, Var::X2)?;
    let s_b_1 = s_poly(&b, &a, w2, 1, Var::X1, Var::X2)?;
    let s_c_1 = s_poly(&c, &a, w3, 1, Var::X1, Var::X3)?;

    // b X1^{w2} / a^{w2} and its q-th / b2-th power analogues
    let bpre = b
        .mul_ref(&Poly::var_pow(Var::X1, w2 as i32))
        .mul_ref(&inv_pow(&a, w2)?);
    let bq_pre = b
        .pow(q)
        .mul_ref(&Poly::var_pow(Var::X1, (q * w2) as i32))
        .mul_ref(&inv_pow(&a, q * w2)?);

    let (m21, m22) = match spec.family {
        Family::I => (s_c_r.clone(), s_b_q.clone()),
        Family::II => (
            bpre.mul_ref(&s_c_r),
            s_b_q.add_ref(&Poly::var_pow(Var::X3, r as i32).mul_ref(&s_b_1)),
        ),
        Family::III => (
            bpre.mul_ref(&s_c_r).add_ref(&bq_pre.mul_ref(&s_c_1)),
            x3.mul_ref(&s_b_q)
                .add_ref(&Poly::var_pow(Var::X3, r as i32).mul_ref(&s_b_1)),
        ),
        Family::IV => (
            x1.mul_ref(&s_c_r).add_ref(&bq_pre.mul_ref(&s_c_1)),
            x3.mul_ref(&s_b_q),
        ),
        Family::V => (
            x1.mul_ref(&s_c_r).add_ref(&bq_pre.mul_ref(&s_c_1)),
            x3.mul_ref(&s_b_q)
                .add_ref(&Poly::var_pow(Var::X1, p as i32).mul_ref(&s_b_1)),
        ),
        Family::VI | Family::VII => {
            let b2 = e.b2.expect("validated by make_surface");
            let b3 = e.b3.expect("validated by make_surface");
            let s_c_b3 = s_poly(&c, &a, w3, b3, Var::X1, Var::X3)?;
            let s_b_b2 = s_poly(&b, &a, w2, b2, Var::X1, Var::X2)?;
            let bb2_pre = b
                .pow(b2)
                .mul_ref(&Poly::var_pow(Var::X1, (b2 * w2) as i32))
                .mul_ref(&inv_pow(&a, b2 * w2)?);
            let m21 = x1.mul_ref(&s_c_r).add_ref(&bb2_pre.mul_ref(&s_c_b3));
            let mut m22 = x1
                .mul_ref(&s_b_q)
                .add_ref(&Poly::var_pow(Var::X3, b3 as i32).mul_ref(&s_b_b2));
            if spec.family == Family::VII {
                m22 = m22.add_ref(&Poly::var_pow(Var::X1, p as i32).mul_ref(&s_b_1));
            }
            (m21, m22)
        }
        Family::Cusp | Family::NonIsolated => unreachable!("guarded above"),
    };

    let a_mat = PolyMatrix::new(2, 2, vec![m11, m12, m21, m22])?;
    let adj = a_mat.adjugate()?;
    let relations = effective_relations(spec, point);
    let report = verify_matrix_factorization(&adj, &a_mat, &spec.f, &relations)?;
    guard_verified(&report, "table construction")?;
    Ok(MatFac::from_verified(
        adj,
        a_mat,
        spec.f.clone(),
        relations,
        &report,
        Provenance {
            construction: format!("family {} table", spec.family),
            point: point.describe(),
        },
    ))
}

/// The completing case a = 0 for family I. Requires one of the weights
/// w2, w3 to be one (otherwise the orbit curve is singular); the bare `X`
/// of the printed matrix is read as `X1`.
pub fn construct_quasi_a0(spec: &SurfaceSpec, point: &SurfacePoint) -> Result<MatFac> {
    if spec.family != Family::I {
        return Err(Error::UnsupportedFamily(format!(
            "{} at a = 0 (only family I has an explicit completing matrix)",
            spec.family
        )));
    }
    if !validate_point(spec, point) {
        return Err(Error::InvalidPoint(point.describe()));
    }
    match point.value(Var::A) {
        Some(v) if v.is_zero() => {}
        _ => {
            return Err(Error::InvalidPoint(format!(
                "{} does not pin a = 0",
                point.describe()
            )))
        }
    }
    // away from the origin both remaining coordinates are nonzero
    for v in [Var::B, Var::C] {
        if matches!(point.value(v), Some(k) if k.is_zero()) {
            return Err(Error::InvalidPoint(format!(
                "{} lies on a coordinate axis",
                point.describe()
            )));
        }
    }

    let b = param(point, Var::B);
    let c = param(point, Var::C);
    let w2 = spec.weights.w2 as u32;
    let w3 = spec.weights.w3 as u32;
    let p = spec.exponents.p;
    let (q, r) = (spec.exponents.q, spec.exponents.r);

    let m = if w2 == 1 {
        let s = s_poly(&c, &b, w3, r, Var::X2, Var::X3)?;
        PolyMatrix::new(
            2,
            2,
            vec![
                Poly::var(Var::X1).neg_ref(),
                g_poly(&c, &b, w3, Var::X2, Var::X3).neg_ref(),
                s,
                Poly::var_pow(Var::X1, p as i32 - 1),
            ],
        )?
    } else if w3 == 1 {
        // mirrored branch: swap the roles of (X2, b, q) and (X3, c, r)
        let s = s_poly(&b, &c, w2, q, Var::X3, Var::X2)?;
        PolyMatrix::new(
            2,
            2,
            vec![
                Poly::var(Var::X1).neg_ref(),
                g_poly(&b, &c, w2, Var::X3, Var::X2).neg_ref(),
                s,
                Poly::var_pow(Var::X1, p as i32 - 1),
            ],
        )?
    } else {
        return Err(Error::SingularCurve);
    };

    let adj = m.adjugate()?;
    let relations = effective_relations(spec, point);
    let report = verify_matrix_factorization(&adj, &m, &spec.f, &relations)?;
    guard_verified(&report, "completing case a = 0")?;
    Ok(MatFac::from_verified(
        adj,
        m,
        spec.f.clone(),
        relations,
        &report,
        Provenance {
            construction: "family I completing case (a = 0)".into(),
            point: point.describe(),
        },
    ))
}

/// The cusp construction.
pub fn construct_cusp(spec: &SurfaceSpec, point: &SurfacePoint) -> Result<MatFac> {
    if spec.family != Family::Cusp {
        return Err(Error::UnsupportedFamily(spec.family.to_string()));
    }
    if !validate_point(spec, point) {
        return Err(Error::InvalidPoint(point.describe()));
    }
    let a = param(point, Var::A);
    let b = param(point, Var::B);
    let c = param(point, Var::C);
    let (q, r) = (spec.exponents.q, spec.exponents.r);
    let w = Poly::<Rat>::var(Var::W);
    let aw = a.mul_ref(&w);

    let c11 = g_poly(&c, &aw, 1, Var::X1, Var::X3);
    let c12 = g_poly(&b, &a, r - 2, Var::X1, Var::X2).neg_ref();
    let c21 = {
        let s_q = s_poly(&b, &a, r - 2, q, Var::X1, Var::X2)?;
        let s_1 = s_poly(&b, &a, r - 2, 1, Var::X1, Var::X2)?;
        // c X1^2 / (a w^r)
        let pre = c
            .mul_ref(&Poly::var_pow(Var::X1, 2))
            .mul_ref(&inv_pow(&a.mul_ref(&Poly::var_pow(Var::W, r as i32)), 1)?);
        s_q.add_ref(&pre.mul_ref(&s_1))
    };
    let c22 = {
        let s_r = s_poly(&c, &aw, 1, r, Var::X1, Var::X3)?;
        let s_1 = s_poly(&c, &aw, 1, 1, Var::X1, Var::X3)?;
        // X1 X2 / w^{r-1}
        let pre = Poly::var(Var::X1)
            .mul_ref(&Poly::var(Var::X2))
            .mul_ref(&Poly::var_pow(Var::W, -(r as i32 - 1)));
        s_r.add_ref(&pre.mul_ref(&s_1))
    };

    let c_mat = PolyMatrix::new(2, 2, vec![c11, c12, c21, c22])?;
    let adj = c_mat.adjugate()?;
    let relations = effective_relations(spec, point);
    let sampler = spec.sampler();
    let opts = VerifyOptions {
        sampler: sampler.as_ref().map(|s| s as &dyn ParamSampler),
        ..VerifyOptions::default()
    };
    let report = verify_with_options(&adj, &c_mat, &spec.f, &relations, &opts)?;
    guard_verified(&report, "cusp construction")?;
    Ok(MatFac::from_verified(
        adj,
        c_mat,
        spec.f.clone(),
        relations,
        &report,
        Provenance {
            construction: format!(
                "cusp (q = {q}, r = {r}, tau = {})",
                spec.tau.as_ref().expect("cusp carries tau")
            ),
            point: point.describe(),
        },
    ))
}

/// The non-isolated example surface: the printed 2x2 pair and the 3x3
/// pair rebuilt from the stated splits of the cofactors. The point lives
/// on the parameter curve `a^4 + a^3 b + b^3 = 0` (c is normalized to 1).
pub fn construct_nonisolated(point: &SurfacePoint) -> Result<(MatFac, MatFac)> {
    let spec = make_surface(Family::NonIsolated, Exponents::default(), None)?;
    if !validate_point(&spec, point) {
        return Err(Error::InvalidPoint(point.describe()));
    }
    let a = param(point, Var::A);
    let b = param(point, Var::B);
    let x1 = Poly::<Rat>::var(Var::X1);
    let x2 = Poly::<Rat>::var(Var::X2);
    let x3 = Poly::<Rat>::var(Var::X3);

    let f = g_poly(&Poly::one(), &a, 1, Var::X1, Var::X3);
    let g = g_poly(&Poly::one(), &b, 1, Var::X2, Var::X3);

    // h1 = X1 u + X3 v, h2 = X3 t, as printed
    let u = x1
        .pow(2)
        .add_ref(&x1.mul_ref(&x2))
        .add_ref(&a.mul_ref(&x1).mul_ref(&x3))
        .add_ref(&a.mul_ref(&x2).mul_ref(&x3));
    let v = a
        .pow(2)
        .mul_ref(&x1)
        .mul_ref(&x3)
        .add_ref(&a.pow(2).mul_ref(&x2).mul_ref(&x3))
        .add_ref(&a.pow(3).mul_ref(&x3.pow(2)));
    let t = x2
        .pow(2)
        .add_ref(&b.mul_ref(&x2).mul_ref(&x3))
        .add_ref(&a.pow(3).add_ref(&b.pow(2)).mul_ref(&x3.pow(2)));
    let h1 = x1.mul_ref(&u).add_ref(&x3.mul_ref(&v));
    let h2 = x3.mul_ref(&t);

    let relations = effective_relations(&spec, point);

    let m2 = PolyMatrix::new(
        2,
        2,
        vec![f.clone(), g.clone(), h2.neg_ref(), h1.clone()],
    )?;
    let adj2 = m2.adjugate()?;
    let report2 = verify_matrix_factorization(&adj2, &m2, &spec.f, &relations)?;
    guard_verified(&report2, "non-isolated 2x2")?;
    let mf2 = MatFac::from_verified(
        adj2,
        m2,
        spec.f.clone(),
        relations.clone(),
        &report2,
        Provenance {
            construction: "non-isolated example, printed 2x2".into(),
            point: point.describe(),
        },
    );

    // 3x3 rebuilt from the splits: expanding along the first column gives
    // det = f h1 + g h2 again
    let m3 = PolyMatrix::new(
        3,
        3,
        vec![
            Poly::zero(),
            f.neg_ref(),
            g.clone(),
            x1.clone(),
            t.neg_ref(),
            v.neg_ref(),
            x3.clone(),
            Poly::zero(),
            u.clone(),
        ],
    )?;
    let adj3 = m3.adjugate()?;
    let report3 = verify_matrix_factorization(&adj3, &m3, &spec.f, &relations)?;
    if !report3.valid {
        return Err(Error::ReconstructionFailed);
    }
    let mf3 = MatFac::from_verified(
        adj3,
        m3,
        spec.f.clone(),
        relations,
        &report3,
        Provenance {
            construction: "non-isolated example, reconstructed 3x3".into(),
            point: point.describe(),
        },
    );

    Ok((mf2, mf3))
}

/// Direct sum of factorizations of the same surface with the same sign.
pub fn block_diag(blocks: &[MatFac]) -> Result<MatFac> {
    let first = blocks.first().ok_or(Error::MixedSurface)?;
    for b in blocks {
        if b.f != first.f || b.relations != first.relations {
            return Err(Error::MixedSurface);
        }
        if b.sign != first.sign {
            return Err(Error::MixedSign);
        }
    }
    let phi = PolyMatrix::block_diag(&blocks.iter().map(|b| b.phi.clone()).collect::<Vec<_>>());
    let psi = PolyMatrix::block_diag(&blocks.iter().map(|b| b.psi.clone()).collect::<Vec<_>>());
    let report = verify_matrix_factorization(&phi, &psi, &first.f, &first.relations)?;
    guard_verified(&report, "block sum")?;
    Ok(MatFac::from_verified(
        phi,
        psi,
        first.f.clone(),
        first.relations.clone(),
        &report,
        Provenance {
            construction: format!("block sum of {} factors", blocks.len()),
            point: blocks
                .iter()
                .map(|b| b.provenance.point.clone())
                .collect::<Vec<_>>()
                .join(", "),
        },
    ))
}

/// Point-module factorization: the block sum of the table construction at
/// each point, repeated by multiplicity.
pub fn construct_point_module(
    spec: &SurfaceSpec,
    points: &[(SurfacePoint, u32)],
) -> Result<MatFac> {
    let mut blocks = Vec::new();
    for (pt, mult) in points {
        if *mult == 0 {
            return Err(Error::InvalidPoint("multiplicity must be positive".into()));
        }
        let mf = construct_quasi(spec, pt)?;
        for _ in 0..*mult {
            blocks.push(mf.clone());
        }
    }
    if blocks.len() == 1 {
        return Ok(blocks.pop().expect("one block"));
    }
    block_diag(&blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::cstar_ideal;
    use crate::parse::qp;
    use crate::scalar::rat;

    fn fermat() -> SurfaceSpec {
        make_surface(Family::I, Exponents::pqr(3, 3, 3), None).unwrap()
    }

    #[test]
    fn koszul_circle() {
        let f = qp("X1");
        let g = qp("X2");
        let cof = Cofactors {
            h1: qp("X2"),
            h2: qp("X1"),
        };
        let mf = koszul_factorization(&f, &g, &cof, &qp("X1^2 + X2^2"), &[]).unwrap();
        assert_eq!(mf.sign, -1);
        assert_eq!(
            mf.psi,
            PolyMatrix::new(2, 2, vec![qp("-X1"), qp("X2"), qp("X2"), qp("X1")]).unwrap()
        );
        assert!(mf.reduced);

        let bad = Cofactors {
            h1: qp("X2"),
            h2: qp("X1 + 1"),
        };
        assert_eq!(
            koszul_factorization(&f, &g, &bad, &qp("X1^2 + X2^2"), &[]).unwrap_err(),
            Error::CofactorIdentityFails
        );
    }

    #[test]
    fn find_cofactors_examples() {
        let h = find_cofactors(&qp("X1^3 + X2^3 + X3^3"), &qp("X1 + X2"), &qp("X3"), &[]).unwrap();
        assert_eq!(h.h1, qp("X3^2"));
        assert_eq!(h.h2, qp("X1^2 - X1 X2 + X2^2"));

        let h = find_cofactors(&qp("X1^2 + X2^2"), &qp("X1"), &qp("X2"), &[]).unwrap();
        assert_eq!((h.h1, h.h2), (qp("X2"), qp("X1")));

        assert_eq!(
            find_cofactors(&qp("X3^3"), &qp("X1"), &qp("X2"), &[]).unwrap_err(),
            Error::MembershipUndecided
        );
    }

    #[test]
    fn quasi_fermat_point_matrix() {
        let spec = fermat();
        let pt = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
        let mf = construct_quasi(&spec, &pt).unwrap();
        let expected = PolyMatrix::new(
            2,
            2,
            vec![
                qp("-X1 - X2"),
                qp("X3"),
                qp("X3^2"),
                qp("X1^2 - X1 X2 + X2^2"),
            ],
        )
        .unwrap();
        assert_eq!(mf.psi, expected);
        assert_eq!(mf.sign, -1);
        assert!(mf.reduced);
        assert!(mf.relations.is_empty());
        assert_eq!(mf.verified, VerifyMethod::Exact);

        // determinant equals -F on the nose at a numeric point
        assert_eq!(mf.psi.determinant().unwrap(), spec.f.neg_ref());
    }

    #[test]
    fn quasi_symbolic_points() {
        let spec = fermat();
        let mf = construct_quasi(&spec, &SurfacePoint::symbolic()).unwrap();
        assert_eq!(mf.relations, vec![qp("a^3 + b^3 + c^3")]);
        assert_eq!(mf.sign, -1);
        assert!(mf.reduced);

        let spec2 = make_surface(Family::II, Exponents::pqr(6, 3, 2), None).unwrap();
        assert_eq!((spec2.weights.w2, spec2.weights.w3), (2, 2));
        let mf2 = construct_quasi(&spec2, &SurfacePoint::symbolic()).unwrap();
        assert_eq!(mf2.sign, -1);
        assert!(mf2.reduced);
        assert_eq!(mf2.verified, VerifyMethod::Exact);
    }

    #[test]
    fn quasi_rejects_bad_points() {
        let spec = fermat();
        let bad = SurfacePoint::numeric(rat(1), rat(1), rat(1));
        assert!(matches!(
            construct_quasi(&spec, &bad),
            Err(Error::InvalidPoint(_))
        ));
    }

    #[test]
    fn completing_case_a0() {
        let spec = fermat();
        let pt = SurfacePoint::numeric(rat(0), rat(1), rat(-1));
        let mf = construct_quasi(&spec, &pt).unwrap(); // dispatches at a = 0
        let expected = PolyMatrix::new(
            2,
            2,
            vec![
                qp("-X1"),
                qp("X3 + X2"),
                qp("X2^2 - X2 X3 + X3^2"),
                qp("X1^2"),
            ],
        )
        .unwrap();
        assert_eq!(mf.psi, expected);
        assert_eq!(mf.sign, -1);
        assert!(mf.reduced);

        // symbolic (0, b, c) keeps the pinned relation b^3 + c^3
        let sym = construct_quasi_a0(&spec, &SurfacePoint::symbolic_a0()).unwrap();
        assert_eq!(sym.relations, vec![qp("b^3 + c^3")]);
        assert_eq!(sym.sign, -1);

        let spec2 = make_surface(Family::II, Exponents::pqr(6, 3, 2), None).unwrap();
        assert!(matches!(
            construct_quasi_a0(&spec2, &SurfacePoint::symbolic_a0()),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn cusp_constructions() {
        let spec = make_surface(Family::Cusp, Exponents::pqr(0, 3, 3), Some(rat(1))).unwrap();
        let numeric = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
        let mf = construct_cusp(&spec, &numeric).unwrap();
        assert_eq!(mf.sign, -1);
        assert!(mf.reduced);
        // only the unit relation survives pinning a numeric point
        assert_eq!(mf.relations, vec![qp("w^2 - 1")]);

        let spec2 = make_surface(Family::Cusp, Exponents::pqr(0, 3, 4), Some(rat(1))).unwrap();
        let sym = construct_cusp(&spec2, &SurfacePoint::symbolic()).unwrap();
        assert_eq!(sym.relations.len(), 3);
        assert_eq!(sym.sign, -1);
        assert_eq!(sym.verified, VerifyMethod::Exact);

        let off = SurfacePoint::numeric(rat(1), rat(1), rat(0));
        assert!(matches!(
            construct_cusp(&spec, &off),
            Err(Error::InvalidPoint(_))
        ));
    }

    #[test]
    fn nonisolated_pairs() {
        // rational point from the parameter curve
        let (a, b) = crate::catalog::nonisolated_point(&rat(1)).unwrap();
        let pt = SurfacePoint::mixed(&[(Var::A, a), (Var::B, b)], Var::C);
        let (m2, m3) = construct_nonisolated(&pt).unwrap();
        assert_eq!(m2.sign, 1);
        assert_eq!(m3.sign, 1);
        assert_eq!(m3.size, 3);
        assert!(m2.reduced && m3.reduced);

        let (s2, s3) = construct_nonisolated(&SurfacePoint::mixed(&[], Var::C)).unwrap();
        assert_eq!(s2.relations, vec![qp("a^4 + a^3 b + b^3")]);
        assert_eq!(s2.verified, VerifyMethod::Exact);
        assert_eq!(s3.verified, VerifyMethod::Exact);

        let off = SurfacePoint::mixed(&[(Var::A, rat(1)), (Var::B, rat(1))], Var::C);
        assert!(matches!(
            construct_nonisolated(&off),
            Err(Error::InvalidPoint(_))
        ));
    }

    #[test]
    fn printed_variant_of_the_nonisolated_surface_has_no_cofactors() {
        // The table prints X1^4 + X1^3 X3 - X2^4 X3 for this example, but
        // the accompanying lines X1 - a X3, X2 - b X3 do not lie on that
        // surface: the cofactor search must come up empty, even modulo the
        // matching point relation. The homogeneous reading used by
        // construct_nonisolated is the one the printed cofactors factor.
        let printed_f = qp("X1^4 + X1^3 X3 - X2^4 X3");
        let printed_rel = qp("a^4 + a^3 - b^4");
        let f = qp("X1 - a X3");
        let g = qp("X2 - b X3");
        assert_eq!(
            find_cofactors(&printed_f, &f, &g, &[printed_rel]).unwrap_err(),
            Error::MembershipUndecided
        );
        // whereas the corrected surface has cofactors, and the printed
        // pair is among the valid ones
        let fixed_f = qp("X1^4 + X1^3 X2 + X2^3 X3");
        let rel = qp("a^4 + a^3 b + b^3");
        let cof = find_cofactors(&fixed_f, &f, &g, std::slice::from_ref(&rel)).unwrap();
        let identity = cof.h1.mul_ref(&g).add_ref(&cof.h2.mul_ref(&f)).sub_ref(&fixed_f);
        assert!(reduces_to_zero(
            &identity,
            std::slice::from_ref(&rel),
            &MonomialOrder::reduction()
        ));
        let printed_h1 = qp("X2^2 X3 + b X2 X3^2 + a^3 X3^3 + b^2 X3^3");
        let printed_h2 =
            qp("X1^3 + X1^2 X2 + a X1^2 X3 + a X1 X2 X3 + a^2 X1 X3^2 + a^2 X2 X3^2 + a^3 X3^3");
        let printed_identity = printed_h1
            .mul_ref(&g)
            .add_ref(&printed_h2.mul_ref(&f))
            .sub_ref(&fixed_f);
        assert!(reduces_to_zero(
            &printed_identity,
            &[rel],
            &MonomialOrder::reduction()
        ));
    }

    #[test]
    fn koszul_agrees_with_the_table_at_a_point() {
        let spec = fermat();
        let pt = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
        let ideal = cstar_ideal(&spec, &pt).unwrap();
        let cof = find_cofactors(&spec.f, &ideal.f, &ideal.g, &[]).unwrap();
        let lifted = koszul_factorization(&ideal.f, &ideal.g, &cof, &spec.f, &[]).unwrap();
        let table = construct_quasi(&spec, &pt).unwrap();
        assert_eq!(
            lifted.psi.determinant().unwrap(),
            table.psi.determinant().unwrap()
        );
        assert_eq!(lifted.sign, table.sign);
    }

    #[test]
    fn point_modules() {
        let spec = fermat();
        let p1 = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
        let p2 = SurfacePoint::numeric(rat(2), rat(-2), rat(0));

        let single = construct_point_module(&spec, &[(p1.clone(), 1)]).unwrap();
        let direct = construct_quasi(&spec, &p1).unwrap();
        assert_eq!(single.psi, direct.psi);

        let doubled = construct_point_module(&spec, &[(p1.clone(), 2)]).unwrap();
        assert_eq!(doubled.size, 4);
        assert_eq!(doubled.sign, -1);

        let mixed = construct_point_module(&spec, &[(p1.clone(), 1), (p2, 1)]).unwrap();
        assert_eq!(mixed.size, 4);
        assert!(mixed.reduced);

        let tripled = construct_point_module(&spec, &[(p1, 3)]).unwrap();
        assert_eq!(tripled.size, 6);
    }

    #[test]
    fn block_sum_rejects_mixed_inputs() {
        let spec = fermat();
        let pt = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
        let mf = construct_quasi(&spec, &pt).unwrap();

        // a hand-made trivial factorization of the same F with sign +1
        let trivial = MatFac {
            phi: PolyMatrix::new(1, 1, vec![spec.f.clone()]).unwrap(),
            psi: PolyMatrix::identity(1),
            size: 1,
            sign: 1,
            reduced: false,
            verified: VerifyMethod::Exact,
            f: spec.f.clone(),
            relations: vec![],
            provenance: Provenance {
                construction: "trivial".into(),
                point: "none".into(),
            },
        };
        assert_eq!(
            block_diag(&[mf.clone(), trivial]).unwrap_err(),
            Error::MixedSign
        );

        let other = make_surface(Family::I, Exponents::pqr(2, 2, 2), None).unwrap();
        let sym = construct_quasi(&other, &SurfacePoint::symbolic()).unwrap();
        assert_eq!(
            block_diag(&[mf, sym]).unwrap_err(),
            Error::MixedSurface
        );
    }
}
