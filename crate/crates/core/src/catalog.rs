//! The surface catalog: the seven quasi-homogeneous families, the cusp
//! family and the non-isolated example surface, together with exponent
//! constraint validation, the integer weight solver and the parameter
//! relation ideals.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{non_residue, Fp, SAMPLE_PRIME};
use crate::monomial::{Monomial, WeightVector};
use crate::poly::Poly;
use crate::scalar::{rat, Coeff, Rat};
use crate::vars::Var;
use crate::verify::ParamSampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    #[serde(rename = "cusp")]
    Cusp,
    #[serde(rename = "nonisolated")]
    NonIsolated,
}

pub const QUASI_FAMILIES: [Family; 7] = [
    Family::I,
    Family::II,
    Family::III,
    Family::IV,
    Family::V,
    Family::VI,
    Family::VII,
];

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "I" | "i" | "1" => Some(Family::I),
            "II" | "ii" | "2" => Some(Family::II),
            "III" | "iii" | "3" => Some(Family::III),
            "IV" | "iv" | "4" => Some(Family::IV),
            "V" | "v" | "5" => Some(Family::V),
            "VI" | "vi" | "6" => Some(Family::VI),
            "VII" | "vii" | "7" => Some(Family::VII),
            "cusp" | "Cusp" => Some(Family::Cusp),
            "nonisolated" | "non-isolated" | "NonIsolated" => Some(Family::NonIsolated),
            _ => None,
        }
    }

    pub fn is_quasi(self) -> bool {
        !matches!(self, Family::Cusp | Family::NonIsolated)
    }

    pub fn uses_b2_b3(self) -> bool {
        matches!(self, Family::VI | Family::VII)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::I => "I",
            Family::II => "II",
            Family::III => "III",
            Family::IV => "IV",
            Family::V => "V",
            Family::VI => "VI",
            Family::VII => "VII",
            Family::Cusp => "cusp",
            Family::NonIsolated => "nonisolated",
        };
        f.write_str(s)
    }
}

/// Exponent parameters. Families I-V read `p, q, r`; VI and VII also read
/// `b2, b3`; the cusp family reads `q, r` only; the non-isolated surface
/// reads none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Exponents {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b3: Option<u32>,
}

impl Exponents {
    pub fn pqr(p: u32, q: u32, r: u32) -> Exponents {
        Exponents {
            p,
            q,
            r,
            b2: None,
            b3: None,
        }
    }

    pub fn with_b(p: u32, q: u32, r: u32, b2: u32, b3: u32) -> Exponents {
        Exponents {
            p,
            q,
            r,
            b2: Some(b2),
            b3: Some(b3),
        }
    }
}

/// A point of the surface in the parameters (a, b, c). Coordinates are
/// either pinned to exact rational values or left free (symbolic). The
/// fully symbolic point pins nothing; a numeric point pins all three; the
/// `a = 0` configurations pin `a` and leave `b, c` symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePoint {
    pinned: BTreeMap<Var, Rat>,
    /// Coordinate assumed nonzero; the constructions localize at it.
    pub nonzero: Var,
}

impl SurfacePoint {
    pub fn symbolic() -> SurfacePoint {
        SurfacePoint {
            pinned: BTreeMap::new(),
            nonzero: Var::A,
        }
    }

    pub fn numeric(a: Rat, b: Rat, c: Rat) -> SurfacePoint {
        let nonzero = if !a.is_zero() {
            Var::A
        } else if !b.is_zero() {
            Var::B
        } else {
            Var::C
        };
        let mut pinned = BTreeMap::new();
        pinned.insert(Var::A, a);
        pinned.insert(Var::B, b);
        pinned.insert(Var::C, c);
        SurfacePoint { pinned, nonzero }
    }

    /// Symbolic point on the hyperplane a = 0 (for the completing case).
    pub fn symbolic_a0() -> SurfacePoint {
        let mut pinned = BTreeMap::new();
        pinned.insert(Var::A, rat(0));
        SurfacePoint {
            pinned,
            nonzero: Var::B,
        }
    }

    /// Pin an arbitrary subset of coordinates.
    pub fn mixed(pins: &[(Var, Rat)], nonzero: Var) -> SurfacePoint {
        SurfacePoint {
            pinned: pins.iter().cloned().collect(),
            nonzero,
        }
    }

    pub fn value(&self, v: Var) -> Option<&Rat> {
        self.pinned.get(&v)
    }

    pub fn pinned(&self) -> &BTreeMap<Var, Rat> {
        &self.pinned
    }

    pub fn is_fully_numeric(&self) -> bool {
        [Var::A, Var::B, Var::C]
            .iter()
            .all(|v| self.pinned.contains_key(v))
    }

    pub fn is_symbolic(&self) -> bool {
        self.pinned.is_empty()
    }

    /// The pinned coordinates as a substitution map.
    pub fn substitution(&self) -> BTreeMap<Var, Poly<Rat>> {
        self.pinned
            .iter()
            .map(|(v, k)| (*v, Poly::constant(k.clone())))
            .collect()
    }

    pub fn describe(&self) -> String {
        let coord = |v: Var| -> String {
            match self.pinned.get(&v) {
                Some(k) => k.to_string(),
                None => v.name().to_string(),
            }
        };
        format!("({}, {}, {})", coord(Var::A), coord(Var::B), coord(Var::C))
    }
}

/// A fully validated surface: family, exponents, defining polynomial,
/// weights and the relation ideal its points satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub family: Family,
    pub exponents: Exponents,
    pub tau: Option<Rat>,
    pub f: Poly<Rat>,
    pub weights: WeightVector,
    pub relations: Vec<Poly<Rat>>,
}

fn xm(pairs: &[(Var, i32)]) -> Poly<Rat> {
    Poly::term(Monomial::from_exps(pairs), Rat::one())
}

/// Construct and validate a surface from the catalog.
pub fn make_surface(family: Family, exps: Exponents, tau: Option<Rat>) -> Result<SurfaceSpec> {
    if family != Family::Cusp && tau.is_some() {
        return Err(Error::ConstraintViolation(format!(
            "tau only applies to the cusp family, not {family}"
        )));
    }
    let f = defining_polynomial(family, exps, tau.as_ref())?;

    // Every construction here targets a singular point at the origin; a
    // linear monomial makes the surface smooth there.
    if f.terms().any(|(m, _)| m.x_degree() <= 1) {
        return Err(Error::ConstraintViolation(format!(
            "exponents give a defining polynomial with a linear term ({f}); the surface is smooth at the origin"
        )));
    }

    let weights = match family {
        Family::Cusp => {
            let (q, r) = (exps.q as i64, exps.r as i64);
            // weights of the carrier curve parametrization, not of F
            WeightVector::new(1, r - 2, 1, q * (r - 2))
        }
        _ => {
            let w = compute_weights(&f)?;
            if family.is_quasi() && w.w1 != 1 {
                return Err(Error::NoIntegerWeights);
            }
            w
        }
    };

    let relations = relation_ideal(family, exps, tau.as_ref(), &f);

    Ok(SurfaceSpec {
        family,
        exponents: exps,
        tau,
        f,
        weights,
        relations,
    })
}

fn defining_polynomial(
    family: Family,
    e: Exponents,
    tau: Option<&Rat>,
) -> Result<Poly<Rat>> {
    use Var::{X1, X2, X3};
    let need_positive = |names: &[(&str, u32)]| -> Result<()> {
        for (n, v) in names {
            if *v == 0 {
                return Err(Error::ConstraintViolation(format!(
                    "exponent {n} must be positive"
                )));
            }
        }
        Ok(())
    };
    let (p, q, r) = (e.p as i32, e.q as i32, e.r as i32);
    match family {
        Family::I => {
            need_positive(&[("p", e.p), ("q", e.q), ("r", e.r)])?;
            Ok(xm(&[(X1, p)]) + xm(&[(X2, q)]) + xm(&[(X3, r)]))
        }
        Family::II => {
            need_positive(&[("p", e.p), ("q", e.q), ("r", e.r)])?;
            if e.q <= 1 {
                return Err(Error::ConstraintViolation("family II requires q > 1".into()));
            }
            Ok(xm(&[(X1, p)]) + xm(&[(X2, q)]) + xm(&[(X2, 1), (X3, r)]))
        }
        Family::III => {
            need_positive(&[("p", e.p), ("q", e.q), ("r", e.r)])?;
            if e.q <= 1 || e.r <= 1 {
                return Err(Error::ConstraintViolation(
                    "family III requires q > 1 and r > 1".into(),
                ));
            }
            Ok(xm(&[(X1, p)]) + xm(&[(X3, 1), (X2, q)]) + xm(&[(X2, 1), (X3, r)]))
        }
        Family::IV => {
            need_positive(&[("p", e.p), ("q", e.q), ("r", e.r)])?;
            if e.p <= 1 {
                return Err(Error::ConstraintViolation("family IV requires p > 1".into()));
            }
            Ok(xm(&[(X1, p)]) + xm(&[(X3, 1), (X2, q)]) + xm(&[(X1, 1), (X3, r)]))
        }
        Family::V => {
            need_positive(&[("p", e.p), ("q", e.q), ("r", e.r)])?;
            Ok(xm(&[(X2, 1), (X1, p)]) + xm(&[(X3, 1), (X2, q)]) + xm(&[(X1, 1), (X3, r)]))
        }
        Family::VI | Family::VII => {
            need_positive(&[("p", e.p), ("q", e.q), ("r", e.r)])?;
            let (b2, b3) = match (e.b2, e.b3) {
                (Some(b2), Some(b3)) if b2 > 0 && b3 > 0 => (b2, b3),
                _ => {
                    return Err(Error::ConstraintViolation(format!(
                        "family {family} requires positive b2 and b3"
                    )))
                }
            };
            let lhs = (e.p as u64 - 1) * (e.q as u64 * b3 as u64 + e.r as u64 * b2 as u64);
            if family == Family::VI {
                let rhs = e.p as u64 * e.q as u64 * e.r as u64;
                if lhs != rhs {
                    return Err(Error::ConstraintViolation(format!(
                        "family VI requires (p-1)(q*b3 + r*b2) = p*q*r, got {lhs} vs {rhs}"
                    )));
                }
                Ok(xm(&[(X1, p)])
                    + xm(&[(X1, 1), (X2, q)])
                    + xm(&[(X1, 1), (X3, r)])
                    + xm(&[(X2, b2 as i32), (X3, b3 as i32)]))
            } else {
                let rhs = e.r as u64 * (e.p as u64 * e.q as u64 - 1);
                if lhs != rhs {
                    return Err(Error::ConstraintViolation(format!(
                        "family VII requires (p-1)(q*b3 + r*b2) = r(p*q - 1), got {lhs} vs {rhs}"
                    )));
                }
                Ok(xm(&[(X2, 1), (X1, p)])
                    + xm(&[(X1, 1), (X2, q)])
                    + xm(&[(X1, 1), (X3, r)])
                    + xm(&[(X2, b2 as i32), (X3, b3 as i32)]))
            }
        }
        Family::Cusp => {
            need_positive(&[("q", e.q), ("r", e.r)])?;
            if e.r < 3 {
                return Err(Error::ConstraintViolation("cusp requires r >= 3".into()));
            }
            let tau = tau.ok_or_else(|| {
                Error::ConstraintViolation("cusp requires a nonzero tau".into())
            })?;
            if tau.is_zero() {
                return Err(Error::ConstraintViolation("cusp requires tau != 0".into()));
            }
            Ok(xm(&[(X1, (r - 2) * q)])
                + xm(&[(X2, q)])
                + xm(&[(X3, r)])
                + Poly::term(
                    Monomial::from_exps(&[(X1, 1), (X2, 1), (X3, 1)]),
                    tau.clone(),
                ))
        }
        Family::NonIsolated => {
            // the single unweighted-homogeneous example surface with a
            // singular line; no exponent parameters
            Ok(xm(&[(X1, 4)]) + xm(&[(X1, 3), (X2, 1)]) + xm(&[(X2, 3), (X3, 1)]))
        }
    }
}

fn relation_ideal(
    family: Family,
    e: Exponents,
    tau: Option<&Rat>,
    f: &Poly<Rat>,
) -> Vec<Poly<Rat>> {
    use Var::{A, B, C, W, X1, X2, X3};
    match family {
        Family::Cusp => {
            let (q, r) = (e.q as i32, e.r as i32);
            let r1 = Poly::var_pow(A, q * (r - 2)) + Poly::var_pow(B, q);
            // c (c^{r-1} + a b), expanded
            let r2 = Poly::var_pow(C, r)
                + Poly::term(Monomial::from_exps(&[(A, 1), (B, 1), (C, 1)]), Rat::one());
            let r3 = Poly::term(
                Monomial::var(W, r - 1),
                tau.cloned().expect("checked by make_surface"),
            ) - Poly::one();
            vec![r1, r2, r3]
        }
        Family::NonIsolated => {
            let mut sub = BTreeMap::new();
            sub.insert(X1, Poly::var(A));
            sub.insert(X2, Poly::var(B));
            sub.insert(X3, Poly::one());
            vec![f.substitute(&sub).expect("polynomial substitution")]
        }
        _ => {
            let mut sub = BTreeMap::new();
            sub.insert(X1, Poly::var(A));
            sub.insert(X2, Poly::var(B));
            sub.insert(X3, Poly::var(C));
            vec![f.substitute(&sub).expect("polynomial substitution")]
        }
    }
}

/// Solve for positive integer weights making every monomial of `F` the
/// same weighted degree. Returns the primitive solution; errors when the
/// solution space is not one-dimensional or not positive.
pub fn compute_weights(f: &Poly<Rat>) -> Result<WeightVector> {
    let exps: Vec<[i64; 3]> = {
        let mut seen = std::collections::BTreeSet::new();
        for (m, _) in f.terms() {
            seen.insert([
                m.exp(Var::X1) as i64,
                m.exp(Var::X2) as i64,
                m.exp(Var::X3) as i64,
            ]);
        }
        seen.into_iter().collect()
    };
    if exps.is_empty() {
        return Err(Error::AmbiguousWeights);
    }
    // rows of the homogeneous system (e_i - e_0) . w = 0
    let base = exps[0];
    let mut rows: Vec<[Rat; 3]> = exps[1..]
        .iter()
        .map(|e| {
            [
                rat(e[0] - base[0]),
                rat(e[1] - base[1]),
                rat(e[2] - base[2]),
            ]
        })
        .collect();

    // rational row echelon form
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..3 {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = Rat::one() / rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x *= inv.clone();
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, pv) in row.iter_mut().zip(&pivot) {
                    *x -= factor.clone() * pv.clone();
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    match 3 - rank {
        0 => return Err(Error::NotQuasiHomogeneous),
        1 => {}
        _ => return Err(Error::AmbiguousWeights),
    }

    // one free column: set it to 1, solve for the pivots
    let free_col = (0..3).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut w = [Rat::zero(), Rat::zero(), Rat::zero()];
    w[free_col] = Rat::one();
    for (row_i, &col) in pivot_cols.iter().enumerate() {
        w[col] = -rows[row_i][free_col].clone();
    }

    // scale to the primitive positive integer vector
    let lcm_den = w
        .iter()
        .map(|x| x.denom().clone())
        .fold(num_bigint::BigInt::one(), |acc, d| {
            let g = num_integer_gcd(&acc, &d);
            acc / g * d
        });
    let ints: Vec<num_bigint::BigInt> = w
        .iter()
        .map(|x| x.numer() * (&lcm_den / x.denom()))
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, v| num_integer_gcd(&acc, v));
    if g.is_zero() {
        return Err(Error::NotQuasiHomogeneous);
    }
    let mut ints: Vec<num_bigint::BigInt> = ints.into_iter().map(|v| v / &g).collect();
    if ints.iter().all(|v| v.is_negative()) {
        for v in &mut ints {
            *v = -v.clone();
        }
    }
    if !ints.iter().all(|v| v.is_positive()) {
        return Err(Error::NotQuasiHomogeneous);
    }
    let to_i64 = |v: &num_bigint::BigInt| -> Result<i64> {
        i64::try_from(v.clone()).map_err(|_| Error::NotQuasiHomogeneous)
    };
    let (w1, w2, w3) = (to_i64(&ints[0])?, to_i64(&ints[1])?, to_i64(&ints[2])?);
    let d = base[0] * w1 + base[1] * w2 + base[2] * w3;
    if d < 1 {
        return Err(Error::NotQuasiHomogeneous);
    }
    Ok(WeightVector::new(w1, w2, w3, d))
}

fn num_integer_gcd(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> num_bigint::BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Numeric coordinates must satisfy the relations exactly and the declared
/// nonzero coordinate must be nonzero. Relations that still involve free
/// coordinates (or the unit w) are deferred to symbolic reduction.
pub fn validate_point(spec: &SurfaceSpec, point: &SurfacePoint) -> bool {
    if let Some(v) = point.value(point.nonzero) {
        if v.is_zero() {
            return false;
        }
    }
    let sub = point.substitution();
    for rel in &spec.relations {
        let image = match rel.substitute(&sub) {
            Ok(p) => p,
            Err(_) => return false,
        };
        if image.is_zero() {
            continue;
        }
        if image.vars().is_empty() {
            // pinned to a nonzero constant: the point misses the surface
            return false;
        }
    }
    true
}

/// Relations after substituting the pinned coordinates, dropping the ones
/// that vanish identically. For a fully numeric valid point this is empty
/// and downstream verification is exact over the rationals.
pub fn effective_relations(spec: &SurfaceSpec, point: &SurfacePoint) -> Vec<Poly<Rat>> {
    let sub = point.substitution();
    spec.relations
        .iter()
        .filter_map(|rel| {
            let image = rel.substitute(&sub).ok()?;
            if image.is_zero() {
                None
            } else {
                Some(image)
            }
        })
        .collect()
}

impl SurfaceSpec {
    /// Parameter sampler for the randomized verification fallback; only
    /// the cusp family needs one (its relation list is not principal).
    pub fn sampler(&self) -> Option<CuspSampler> {
        if self.family != Family::Cusp {
            return None;
        }
        CuspSampler::new(
            self.exponents.q,
            self.exponents.r,
            self.tau.as_ref().expect("cusp carries tau"),
        )
    }
}

/// Samples (a, b, c, w) in the prime field satisfying the cusp relations
///   a^{q(r-2)} + b^q = 0,  c(c^{r-1} + ab) = 0,  tau * w^{r-1} = 1.
pub struct CuspSampler {
    q: u32,
    r: u32,
    /// fixed q-th root of -1
    root_minus_one: Fp,
    /// fixed solution of tau * w^{r-1} = 1
    omega: Fp,
}

impl CuspSampler {
    pub fn new(q: u32, r: u32, tau: &Rat) -> Option<CuspSampler> {
        let root_minus_one = if q % 2 == 1 {
            -Fp::new(1)
        } else if (SAMPLE_PRIME - 1) % (2 * q as u64) == 0 {
            // x = n^((p-1)/2q) for a non-residue n gives x^q = -1
            let x = non_residue().pow((SAMPLE_PRIME - 1) / (2 * q as u64));
            debug_assert_eq!(x.pow(q as u64), -Fp::new(1));
            x
        } else {
            return None;
        };
        let tau_fp = fp_of_rat(tau)?;
        let omega = tau_fp.try_inv()?.kth_root(r - 1)?;
        Some(CuspSampler {
            q,
            r,
            root_minus_one,
            omega,
        })
    }
}

fn fp_of_rat(x: &Rat) -> Option<Fp> {
    let to_fp = |n: &num_bigint::BigInt| -> Option<Fp> {
        let m = num_bigint::BigInt::from(SAMPLE_PRIME);
        let r = ((n % &m) + &m) % &m;
        let digits = r.to_u64_digits().1;
        match digits.len() {
            0 => Some(Fp::new(0)),
            1 => Some(Fp::new(digits[0])),
            _ => None,
        }
    };
    let n = to_fp(x.numer())?;
    let d = to_fp(x.denom())?;
    d.try_inv().map(|di| n * di)
}

impl ParamSampler for CuspSampler {
    fn sample(&self, rng: &mut StdRng) -> Option<[Fp; 4]> {
        let (q, r) = (self.q as u64, self.r as u64);
        let a = Fp::new(rng.gen_range(1..SAMPLE_PRIME));
        let b = self.root_minus_one * a.pow(r - 2);
        // both branches of c(c^{r-1} + ab) = 0 when available
        let c = if self.q % 2 == 1 && rng.gen_bool(0.5) {
            // c = a satisfies c^{r-1} = a^{r-1} = -ab for b = -a^{r-2}
            a
        } else {
            Fp::new(0)
        };
        // randomize w within the (r-1)-th roots of unity when they exist
        let omega = if (SAMPLE_PRIME - 1) % (r - 1) == 0 {
            let x = Fp::new(rng.gen_range(1..SAMPLE_PRIME));
            self.omega * x.pow((SAMPLE_PRIME - 1) / (r - 1))
        } else {
            self.omega
        };
        // confirm the relations before handing the sample out
        if a.pow(q * (r - 2)) + b.pow(q) != Fp::new(0) {
            return None;
        }
        if c * (c.pow(r - 1) + a * b) != Fp::new(0) {
            return None;
        }
        Some([a, b, c, omega])
    }
}

/// All constraint-satisfying exponent tuples with entries up to `max`
/// (weights included: families I-VII additionally require the primitive
/// weight vector to start with 1).
pub fn family_grid(family: Family, max: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    match family {
        Family::VI | Family::VII => {
            for p in 1..=max {
                for q in 1..=max {
                    for r in 1..=max {
                        for b2 in 1..=max {
                            for b3 in 1..=max {
                                let e = Exponents::with_b(p, q, r, b2, b3);
                                if make_surface(family, e, None).is_ok() {
                                    out.push(e);
                                }
                            }
                        }
                    }
                }
            }
        }
        Family::Cusp | Family::NonIsolated => {}
        _ => {
            for p in 1..=max {
                for q in 1..=max {
                    for r in 1..=max {
                        let e = Exponents::pqr(p, q, r);
                        if make_surface(family, e, None).is_ok() {
                            out.push(e);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Per-type weighted degree identities from the construction proofs,
/// checked as exact integer equalities.
pub fn weight_identities_hold(spec: &SurfaceSpec) -> bool {
    let w = &spec.weights;
    let e = &spec.exponents;
    let (p, q, r) = (e.p as i64, e.q as i64, e.r as i64);
    let (w2, w3, d) = (w.w2, w.w3, w.d);
    let b2 = e.b2.map(|v| v as i64);
    let b3 = e.b3.map(|v| v as i64);
    match spec.family {
        Family::I => d == p && p == q * w2 && p == r * w3,
        Family::II => d == p && p == q * w2 && p == r * w3 + w2,
        Family::III => d == p && p == q * w2 + w3 && p == r * w3 + w2,
        Family::IV => d == p && p == q * w2 + w3 && p == r * w3 + 1,
        Family::V => d == p + w2 && d == q * w2 + w3 && d == r * w3 + 1,
        Family::VI => {
            d == p
                && d == 1 + q * w2
                && d == 1 + r * w3
                && d == b2.unwrap() * w2 + b3.unwrap() * w3
        }
        Family::VII => {
            d == p + w2
                && d == 1 + q * w2
                && d == 1 + r * w3
                && d == b2.unwrap() * w2 + b3.unwrap() * w3
        }
        _ => true,
    }
}

/// Search small rational points (a, b, c) with a != 0 on a quasi family
/// surface, including weighted scalings of the hits.
pub fn find_rational_points(spec: &SurfaceSpec, want: usize) -> Vec<(Rat, Rat, Rat)> {
    let rel = &spec.relations[0];
    let mut found: Vec<(Rat, Rat, Rat)> = Vec::new();
    let candidates: Vec<Rat> = [
        (0, 1),
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (1, 2),
        (-1, 2),
        (3, 1),
        (-3, 1),
        (4, 1),
        (-4, 1),
        (3, 2),
        (-3, 2),
    ]
    .iter()
    .map(|&(n, d)| Rat::from_ratio(n, d))
    .collect();

    let eval = |a: &Rat, b: &Rat, c: &Rat| -> bool {
        let mut pt = BTreeMap::new();
        pt.insert(Var::A, a.clone());
        pt.insert(Var::B, b.clone());
        pt.insert(Var::C, c.clone());
        matches!(rel.evaluate(&pt), Ok(v) if v.is_zero())
    };

    'outer: for a in candidates.iter().filter(|a| !a.is_zero()) {
        for b in &candidates {
            for c in &candidates {
                if eval(a, b, c) && !found.iter().any(|(x, y, z)| x == a && y == b && z == c) {
                    found.push((a.clone(), b.clone(), c.clone()));
                    if found.len() >= want {
                        break 'outer;
                    }
                }
            }
        }
    }

    // pad with weighted scalings of the hits
    let w = spec.weights;
    let mut scaled = Vec::new();
    for lam in [rat(2), Rat::from_ratio(1, 2), rat(3)] {
        for (a, b, c) in &found {
            let powv = |x: &Rat, e: i64| -> Rat {
                let mut acc = Rat::one();
                for _ in 0..e {
                    acc *= lam.clone();
                }
                x.clone() * acc
            };
            let p = (powv(a, w.w1), powv(b, w.w2), powv(c, w.w3));
            if !found.contains(&p) && !scaled.contains(&p) {
                scaled.push(p);
            }
        }
    }
    found.extend(scaled);
    found.truncate(want);
    found
}

/// Rational points on the non-isolated surface's parameter curve
/// a^4 + a^3 b + b^3 = 0, via the rational parametrization
/// t -> (-t^3/(1+t), -t^4/(1+t)).
pub fn nonisolated_point(t: &Rat) -> Option<(Rat, Rat)> {
    let one_plus = Rat::one() + t.clone();
    if one_plus.is_zero() || t.is_zero() {
        return None;
    }
    let t3 = t.clone() * t.clone() * t.clone();
    let a = -t3.clone() / one_plus.clone();
    let b = -(t3 * t.clone()) / one_plus;
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::qp;

    #[test]
    fn fermat_cubic_surface() {
        let s = make_surface(Family::I, Exponents::pqr(3, 3, 3), None).unwrap();
        assert_eq!(s.f, qp("X1^3 + X2^3 + X3^3"));
        assert_eq!(s.weights, WeightVector::new(1, 1, 1, 3));
        assert_eq!(s.relations, vec![qp("a^3 + b^3 + c^3")]);
    }

    #[test]
    fn vi_diophantine_condition() {
        // (3-1)(3*1 + 3*2) = 18 != 27 = 3*3*3
        let err = make_surface(Family::VI, Exponents::with_b(3, 3, 3, 2, 1), None).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(_)), "{err}");
    }

    #[test]
    fn cusp_surface_and_relations() {
        let s = make_surface(Family::Cusp, Exponents::pqr(0, 3, 3), Some(rat(1))).unwrap();
        assert_eq!(s.f, qp("X1^3 + X2^3 + X3^3 + X1 X2 X3"));
        assert_eq!(
            s.relations,
            vec![qp("a^3 + b^3"), qp("c^3 + a b c"), qp("w^2 - 1")]
        );
        assert!(make_surface(Family::Cusp, Exponents::pqr(0, 3, 2), Some(rat(1))).is_err());
        assert!(make_surface(Family::Cusp, Exponents::pqr(0, 3, 3), Some(rat(0))).is_err());
    }

    #[test]
    fn weight_solver_examples() {
        assert_eq!(
            compute_weights(&qp("X1^3 + X2^3 + X3^3")).unwrap(),
            WeightVector::new(1, 1, 1, 3)
        );
        assert_eq!(
            compute_weights(&qp("X1^6 + X2^3 + X2 X3^2")).unwrap(),
            WeightVector::new(1, 2, 2, 6)
        );
        assert_eq!(
            compute_weights(&qp("X1^5 + X3 X2^2 + X2 X3^3")).unwrap(),
            WeightVector::new(1, 2, 1, 5)
        );
        assert_eq!(
            compute_weights(&qp("X1^2 + X2^3")).unwrap_err(),
            Error::AmbiguousWeights
        );
        assert_eq!(
            compute_weights(&qp("X1^2 + X2^2 + X1 X2 + X1")).unwrap_err(),
            Error::NotQuasiHomogeneous
        );
    }

    #[test]
    fn rejects_smooth_tuples() {
        // q = 1 gives a linear monomial X2
        let err = make_surface(Family::I, Exponents::pqr(2, 1, 2), None).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation(_)));
        // non-unit first weight
        assert_eq!(
            make_surface(Family::I, Exponents::pqr(2, 3, 4), None).unwrap_err(),
            Error::NoIntegerWeights
        );
    }

    #[test]
    fn point_validation() {
        let s = make_surface(Family::I, Exponents::pqr(3, 3, 3), None).unwrap();
        let good = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
        assert!(validate_point(&s, &good));
        assert!(effective_relations(&s, &good).is_empty());

        let bad = SurfacePoint::numeric(rat(1), rat(1), rat(1));
        assert!(!validate_point(&s, &bad));

        assert!(validate_point(&s, &SurfacePoint::symbolic()));

        // a = 0 pins the relation to b^3 + c^3
        let a0 = SurfacePoint::symbolic_a0();
        assert!(validate_point(&s, &a0));
        assert_eq!(effective_relations(&s, &a0), vec![qp("b^3 + c^3")]);
    }

    #[test]
    fn nonisolated_points_satisfy_the_relation() {
        let s = make_surface(Family::NonIsolated, Exponents::default(), None).unwrap();
        assert_eq!(s.relations, vec![qp("a^4 + a^3 b + b^3")]);
        // the surface is honestly homogeneous of degree 4
        assert_eq!(s.weights, WeightVector::new(1, 1, 1, 4));
        let (a, b) = nonisolated_point(&rat(1)).unwrap();
        assert_eq!(a, Rat::from_ratio(-1, 2));
        assert_eq!(b, Rat::from_ratio(-1, 2));
        let pt = SurfacePoint::mixed(&[(Var::A, a), (Var::B, b)], Var::C);
        assert!(validate_point(&s, &pt));
        for t in [rat(2), rat(-2), rat(3), Rat::from_ratio(1, 2)] {
            let (a, b) = nonisolated_point(&t).unwrap();
            let pt = SurfacePoint::mixed(&[(Var::A, a), (Var::B, b)], Var::C);
            assert!(validate_point(&s, &pt), "t = {t}");
        }
    }

    #[test]
    fn grids_are_nonempty_and_weight_identities_hold() {
        for fam in QUASI_FAMILIES {
            let grid = family_grid(fam, 6);
            assert!(!grid.is_empty(), "family {fam} grid empty");
            for e in grid {
                let s = make_surface(fam, e, None).unwrap();
                assert!(weight_identities_hold(&s), "family {fam} {e:?}");
                assert_eq!(
                    s.f.weighted_degrees(&s.weights).len(),
                    1,
                    "family {fam} {e:?} not quasi-homogeneous"
                );
            }
        }
    }

    #[test]
    fn cusp_sampler_hits_relations() {
        use rand::SeedableRng;
        for (q, r, tau) in [(3u32, 3u32, 1i64), (3, 4, 2), (4, 3, 2), (4, 5, 2), (3, 5, 1)] {
            let s = make_surface(Family::Cusp, Exponents::pqr(0, q, r), Some(rat(tau))).unwrap();
            let sampler = s.sampler().expect("sampler available");
            let mut rng = StdRng::seed_from_u64(7);
            for _ in 0..10 {
                let vals = sampler.sample(&mut rng).expect("sample");
                assert!(!vals[0].is_zero());
            }
        }
    }

    #[test]
    fn rational_point_search_finds_fermat_points() {
        let s = make_surface(Family::I, Exponents::pqr(3, 3, 3), None).unwrap();
        let pts = find_rational_points(&s, 6);
        assert!(pts.len() >= 6);
        for (a, b, c) in &pts {
            let pt = SurfacePoint::numeric(a.clone(), b.clone(), c.clone());
            assert!(validate_point(&s, &pt));
            assert!(!a.is_zero());
        }
    }
}
