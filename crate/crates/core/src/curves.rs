//! Scaling-orbit curve ideals through surface points, and the G/S
//! polynomial builders every factorization formula is assembled from.

use num_traits::Zero;

use crate::catalog::{validate_point, Family, SurfacePoint, SurfaceSpec};
use crate::error::{Error, Result};
use crate::factory::find_cofactors;
use crate::poly::Poly;
use crate::scalar::{Coeff, Rat};
use crate::vars::Var;

/// `G_{(c1,c2,n)}(Z1,Z2) = c1*Z1^n - c2^n*Z2`.
pub fn g_poly<K: Coeff>(c1: &Poly<K>, c2: &Poly<K>, n: u32, z1: Var, z2: Var) -> Poly<K> {
    c1.mul_ref(&Poly::var_pow(z1, n as i32))
        .sub_ref(&c2.pow(n).mul_ref(&Poly::var(z2)))
}

/// `S_{(c1,c2,n,m)}(Z1,Z2) = sum_{j=1}^m Z1^{(j-1)n} Z2^{m-j} c1^{j-1} / c2^{jn}`.
///
/// `c2` must be invertible: a single monomial in localized parameters with
/// a nonzero coefficient.
pub fn s_poly<K: Coeff>(
    c1: &Poly<K>,
    c2: &Poly<K>,
    n: u32,
    m: u32,
    z1: Var,
    z2: Var,
) -> Result<Poly<K>> {
    let c2_inv = c2
        .inverse_monomial()
        .ok_or(Error::NonInvertibleDenominator)?;
    let mut sum = Poly::zero();
    for j in 1..=m {
        let term = Poly::var_pow(z1, ((j - 1) * n) as i32)
            .mul_ref(&Poly::var_pow(z2, (m - j) as i32))
            .mul_ref(&c1.pow(j - 1))
            .mul_ref(&c2_inv.pow(j * n));
        sum = sum.add_ref(&term);
    }
    Ok(sum)
}

/// Which construction produced a curve ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// Generic point with a != 0 on a quasi-homogeneous family.
    GenericA,
    /// a = 0 with the second weight equal to one.
    AZeroW2,
    /// a = 0 with only the third weight equal to one.
    AZeroW3,
    Cusp,
    NonIsolated,
}

/// Pair of generators cutting out the scaling-orbit curve through a point.
#[derive(Debug, Clone)]
pub struct CurveIdeal {
    pub f: Poly<Rat>,
    pub g: Poly<Rat>,
    pub point: SurfacePoint,
    pub kind: CurveKind,
}

fn param(point: &SurfacePoint, v: Var) -> Poly<Rat> {
    match point.value(v) {
        Some(k) => Poly::constant(k.clone()),
        None => Poly::var(v),
    }
}

/// Generators of the orbit-curve ideal through `point`.
pub fn cstar_ideal(spec: &SurfaceSpec, point: &SurfacePoint) -> Result<CurveIdeal> {
    if !validate_point(spec, point) {
        return Err(Error::InvalidPoint(point.describe()));
    }
    let a = param(point, Var::A);
    let b = param(point, Var::B);
    let c = param(point, Var::C);
    let w2 = spec.weights.w2 as u32;
    let w3 = spec.weights.w3 as u32;

    match spec.family {
        Family::Cusp => {
            let r = spec.exponents.r;
            let aw = a.mul_ref(&Poly::var(Var::W));
            Ok(CurveIdeal {
                f: g_poly(&c, &aw, 1, Var::X1, Var::X3),
                g: g_poly(&b, &a, r - 2, Var::X1, Var::X2),
                point: point.clone(),
                kind: CurveKind::Cusp,
            })
        }
        Family::NonIsolated => Ok(CurveIdeal {
            f: g_poly(&Poly::one(), &a, 1, Var::X1, Var::X3),
            g: g_poly(&Poly::one(), &b, 1, Var::X2, Var::X3),
            point: point.clone(),
            kind: CurveKind::NonIsolated,
        }),
        _ => {
            let a_is_zero = matches!(point.value(Var::A), Some(v) if v.is_zero());
            if !a_is_zero {
                // generic branch, localized at a
                Ok(CurveIdeal {
                    f: g_poly(&b, &a, w2, Var::X1, Var::X2),
                    g: g_poly(&c, &a, w3, Var::X1, Var::X3),
                    point: point.clone(),
                    kind: CurveKind::GenericA,
                })
            } else if w2 == 1 {
                Ok(CurveIdeal {
                    f: Poly::var(Var::X1),
                    g: g_poly(&c, &b, w3, Var::X2, Var::X3),
                    point: point.clone(),
                    kind: CurveKind::AZeroW2,
                })
            } else if w3 == 1 {
                // mirrored completing case with the roles of X2 and X3 swapped
                Ok(CurveIdeal {
                    f: Poly::var(Var::X1),
                    g: g_poly(&b, &c, w2, Var::X3, Var::X2),
                    point: point.clone(),
                    kind: CurveKind::AZeroW3,
                })
            } else {
                Err(Error::SingularCurve)
            }
        }
    }
}

/// True when the defining polynomial lies in the curve ideal modulo the
/// relations, certified by a zero-reducing division remainder.
pub fn curve_membership_check(ideal: &CurveIdeal, spec: &SurfaceSpec) -> bool {
    let relations = crate::catalog::effective_relations(spec, &ideal.point);
    find_cofactors(&spec.f, &ideal.f, &ideal.g, &relations).is_ok()
}
