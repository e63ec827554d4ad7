use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lambda::DistinguishedPoly;
use crate::module::{ElementaryModule, TorsionPart};

/// On-disk form of a module:
/// `{"p": 3, "f": 1, "free_rank": 0, "mu_exponents": [1], "torsion": [{"poly": [0, 1], "beta": 2}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpecFile {
    pub p: u64,
    #[serde(default = "default_f")]
    pub f: u32,
    #[serde(default)]
    pub free_rank: u32,
    #[serde(default)]
    pub mu_exponents: Vec<u32>,
    #[serde(default)]
    pub torsion: Vec<TorsionEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub poly: Vec<i128>,
    pub beta: u32,
}

fn default_f() -> u32 {
    1
}

impl ModuleSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("module spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("module spec serializes")
    }

    /// Validate and canonicalize. Every polynomial read from a file is taken
    /// as asserted irreducible.
    pub fn to_module(&self) -> Result<ElementaryModule> {
        let parts = self
            .torsion
            .iter()
            .map(|t| {
                let poly = DistinguishedPoly::new(self.p, t.poly.iter().map(|&c| BigInt::from(c)).collect())?;
                Ok(TorsionPart::new(poly, t.beta))
            })
            .collect::<Result<Vec<_>>>()?;
        ElementaryModule::new(self.p, self.f, self.free_rank, self.mu_exponents.clone(), parts)
    }

    pub fn from_module(m: &ElementaryModule) -> Result<Self> {
        let torsion = m
            .torsion_parts()
            .iter()
            .map(|t| {
                let poly = t
                    .poly
                    .coeffs()
                    .iter()
                    .map(|c| c.to_i128().ok_or_else(|| Error::InvalidInput(format!("coefficient {c} exceeds i128"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(TorsionEntry { poly, beta: t.beta })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            p: m.prime(),
            f: m.residue_degree(),
            free_rank: m.free_rank(),
            mu_exponents: m.mu_exponents().to_vec(),
            torsion,
        })
    }
}
