//! JSON document schema (`"format": "mfkit/1"`) shared by the library,
//! the CLI and the test suites. Polynomials serialize in the canonical
//! text grammar, so identical inputs produce byte-identical documents.

use serde::{Deserialize, Serialize};

use crate::catalog::{Exponents, Family, SurfacePoint, SurfaceSpec};
use crate::error::{Error, Result};
use crate::factory::MatFac;
use crate::matrix::PolyMatrix;
use crate::monomial::WeightVector;
use crate::parse::parse_rat;
use crate::poly::Poly;
use crate::scalar::Rat;
use crate::vars::Var;
use crate::verify::VerifyMethod;

pub const FORMAT: &str = "mfkit/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub family: Family,
    #[serde(flatten)]
    pub exponents: Exponents,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    pub f: Poly<Rat>,
    pub weights: WeightVector,
    pub relations: Vec<Poly<Rat>>,
}

impl From<&SurfaceSpec> for SurfaceDoc {
    fn from(s: &SurfaceSpec) -> SurfaceDoc {
        SurfaceDoc {
            family: s.family,
            exponents: s.exponents,
            tau: s.tau.as_ref().map(|t| t.to_string()),
            f: s.f.clone(),
            weights: s.weights,
            relations: s.relations.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointDoc {
    /// Pinned coordinates as rational strings; free coordinates absent.
    pub pinned: Vec<(Var, String)>,
    pub nonzero: Var,
}

impl From<&SurfacePoint> for PointDoc {
    fn from(p: &SurfacePoint) -> PointDoc {
        PointDoc {
            pinned: p
                .pinned()
                .iter()
                .map(|(v, k)| (*v, k.to_string()))
                .collect(),
            nonzero: p.nonzero,
        }
    }
}

impl PointDoc {
    pub fn to_point(&self) -> Result<SurfacePoint> {
        let mut pins = Vec::new();
        for (v, s) in &self.pinned {
            pins.push((*v, parse_rat(s)?));
        }
        Ok(SurfacePoint::mixed(&pins, self.nonzero))
    }
}

/// The full factorization document emitted by `factorize` and consumed by
/// `verify`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub format: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointDoc>,
    pub f: Poly<Rat>,
    pub relations: Vec<Poly<Rat>>,
    pub phi: PolyMatrix<Rat>,
    pub psi: PolyMatrix<Rat>,
    pub size: usize,
    pub sign: i32,
    pub reduced: bool,
    pub verified: VerifyMethod,
    pub provenance: String,
}

impl FactorizationDoc {
    pub fn from_matfac(
        mf: &MatFac,
        surface: Option<&SurfaceSpec>,
        point: Option<&SurfacePoint>,
    ) -> FactorizationDoc {
        FactorizationDoc {
            format: FORMAT.into(),
            surface: surface.map(SurfaceDoc::from),
            point: point.map(PointDoc::from),
            f: mf.f.clone(),
            relations: mf.relations.clone(),
            phi: mf.phi.clone(),
            psi: mf.psi.clone(),
            size: mf.size,
            sign: mf.sign,
            reduced: mf.reduced,
            verified: mf.verified,
            provenance: mf.provenance.to_string(),
        }
    }

    pub fn check_format(&self) -> Result<()> {
        if self.format != FORMAT {
            return Err(Error::Parse(format!(
                "unsupported document format {:?}, expected {FORMAT:?}",
                self.format
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_surface, SurfacePoint};
    use crate::factory::construct_quasi;
    use crate::scalar::rat;

    #[test]
    fn document_round_trip_is_byte_identical() {
        let s = make_surface(Family::I, Exponents::pqr(3, 3, 3), None).unwrap();
        let pt = SurfacePoint::numeric(rat(1), rat(-1), rat(0));
        let mf = construct_quasi(&s, &pt).unwrap();
        let doc = FactorizationDoc::from_matfac(&mf, Some(&s), Some(&pt));
        let json1 = serde_json::to_string_pretty(&doc).unwrap();
        let parsed: FactorizationDoc = serde_json::from_str(&json1).unwrap();
        let json2 = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(json1, json2);
        parsed.check_format().unwrap();
    }
}
