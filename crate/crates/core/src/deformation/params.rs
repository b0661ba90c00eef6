//! Deformation parameters `c_1 … c_6`, `M`, and their TOML / JSON form.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::antibracket::{DeltaTerm, Distribution};
use crate::error::{Error, Result};
use crate::grassmann::{DeformRing, Truncation};
use crate::symfun::json::ExprJson;

/// `(ħ-power, θ-indices, value)`.
pub type RingTriple = (u32, Vec<usize>, f64);

/// One direction of `M`: a ring coefficient times a fixed distribution.
#[derive(Clone, Debug)]
pub struct MTerm {
    pub coeff: DeformRing,
    pub distribution: Distribution,
}

#[derive(Clone, Debug)]
pub struct DeformParams {
    pub trunc: Truncation,
    /// `c[0] = c_1`, …, `c[5] = c_6`.
    pub c: [DeformRing; 6],
    pub m: Vec<MTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DistributionSpec {
    Delta {
        #[serde(default)]
        at: f64,
        #[serde(default)]
        order: u32,
        #[serde(default = "one")]
        weight: f64,
    },
    Kernel {
        expr: ExprJson,
    },
}

fn one() -> f64 {
    1.0
}

fn default_order() -> u32 {
    Truncation::default().order
}

fn default_thetas() -> u32 {
    Truncation::default().thetas
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MEntry {
    pub coeff: Vec<RingTriple>,
    #[serde(flatten)]
    pub distribution: DistributionSpec,
}

/// On-disk form of [`DeformParams`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    #[serde(default = "default_order")]
    pub order: u32,
    #[serde(default = "default_thetas")]
    pub thetas: u32,
    #[serde(default)]
    pub c1: Vec<RingTriple>,
    #[serde(default)]
    pub c2: Vec<RingTriple>,
    #[serde(default)]
    pub c3: Vec<RingTriple>,
    #[serde(default)]
    pub c4: Vec<RingTriple>,
    #[serde(default)]
    pub c5: Vec<RingTriple>,
    #[serde(default)]
    pub c6: Vec<RingTriple>,
    #[serde(default, rename = "M")]
    pub m: Vec<MEntry>,
}

impl DistributionSpec {
    pub fn to_distribution(&self) -> Result<Distribution> {
        Ok(match self {
            DistributionSpec::Delta { at, order, weight } => {
                Distribution { deltas: vec![DeltaTerm { at: *at, order: *order, weight: *weight }], kernel: None }
            }
            DistributionSpec::Kernel { expr } => Distribution::kernel(expr.to_expr()?),
        })
    }

    /// One spec per delta and one for the kernel.
    pub fn from_distribution(d: &Distribution) -> Vec<DistributionSpec> {
        let mut v: Vec<DistributionSpec> = d
            .deltas
            .iter()
            .map(|t| DistributionSpec::Delta { at: t.at, order: t.order, weight: t.weight })
            .collect();
        if let Some(k) = &d.kernel {
            v.push(DistributionSpec::Kernel { expr: ExprJson::from(k) });
        }
        v
    }
}

fn ring(trunc: Truncation, name: &str, t: &[RingTriple]) -> Result<DeformRing> {
    for (p, idx, _) in t {
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i as u32 > trunc.thetas) {
            return Err(Error::Config(format!("{name}: theta index {bad} outside 1..={}", trunc.thetas)));
        }
        if *p > trunc.order {
            return Err(Error::Config(format!("{name}: hbar power {p} exceeds truncation order {}", trunc.order)));
        }
    }
    Ok(DeformRing::from_triples(trunc, t))
}

impl ParamsFile {
    pub fn into_params(self) -> Result<DeformParams> {
        if self.thetas > crate::grassmann::ring::MAX_THETAS {
            return Err(Error::Config(format!("at most {} theta generators", crate::grassmann::ring::MAX_THETAS)));
        }
        let trunc = Truncation::new(self.order, self.thetas);
        let c = [
            ring(trunc, "c1", &self.c1)?,
            ring(trunc, "c2", &self.c2)?,
            ring(trunc, "c3", &self.c3)?,
            ring(trunc, "c4", &self.c4)?,
            ring(trunc, "c5", &self.c5)?,
            ring(trunc, "c6", &self.c6)?,
        ];
        let m = self
            .m
            .iter()
            .map(|e| {
                Ok(MTerm { coeff: ring(trunc, "M", &e.coeff)?, distribution: e.distribution.to_distribution()? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DeformParams { trunc, c, m })
    }
}

impl DeformParams {
    pub fn zero(trunc: Truncation) -> Self {
        let z = DeformRing::zero(trunc);
        DeformParams { trunc, c: [z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z], m: Vec::new() }
    }

    /// `c_i`, 1-based.
    pub fn ci(&self, i: usize) -> &DeformRing {
        &self.c[i - 1]
    }

    pub fn with_c(mut self, i: usize, r: DeformRing) -> Self {
        self.c[i - 1] = r;
        self
    }

    pub fn with_m(mut self, coeff: DeformRing, distribution: Distribution) -> Self {
        self.m.push(MTerm { coeff, distribution });
        self
    }

    pub fn m_is_zero(&self) -> bool {
        self.m.iter().all(|t| t.coeff.is_zero() || t.distribution.is_zero())
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let f: ParamsFile = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        f.into_params()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: ParamsFile = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        f.into_params()
    }

    /// Reads a `.toml` or `.json` file; other extensions are tried as TOML, then JSON.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Self::from_json_str(&text),
            Some("toml") => Self::from_toml_str(&text),
            _ => Self::from_toml_str(&text).or_else(|_| Self::from_json_str(&text)),
        }
    }

    pub fn to_file(&self) -> ParamsFile {
        let t = |i: usize| self.c[i].to_triples();
        let mut m = Vec::new();
        for term in &self.m {
            for spec in DistributionSpec::from_distribution(&term.distribution) {
                m.push(MEntry { coeff: term.coeff.to_triples(), distribution: spec });
            }
        }
        ParamsFile {
            order: self.trunc.order,
            thetas: self.trunc.thetas,
            c1: t(0),
            c2: t(1),
            c3: t(2),
            c4: t(3),
            c5: t(4),
            c6: t(5),
            m,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("params serialization")
    }

    /// Parity and augmentation invariants.
    pub fn validate(&self) -> Result<()> {
        for (k, r) in self.c.iter().enumerate() {
            let want = if k < 3 { 1 } else { 0 };
            let name = format!("c{}", k + 1);
            match r.parity() {
                _ if r.is_zero() => {}
                Some(p) if p == want => {}
                _ => {
                    let kind = if want == 1 { "odd" } else { "even" };
                    return Err(Error::ParityViolation(format!("{name} must be {kind} in theta")));
                }
            }
            if !r.vanishes_at_hbar0() {
                return Err(Error::AugmentationViolation(name));
            }
        }
        for (k, t) in self.m.iter().enumerate() {
            if !(t.coeff.is_zero() || t.coeff.parity() == Some(0)) {
                return Err(Error::ParityViolation(format!("coefficient of M[{k}] must be even in theta")));
            }
            if !t.coeff.vanishes_at_hbar0() {
                return Err(Error::AugmentationViolation(format!("M[{k}]")));
            }
        }
        Ok(())
    }

    /// Applies the same map to every ring entry.
    pub fn map(&self, f: impl Fn(&DeformRing) -> DeformRing) -> Self {
        DeformParams {
            trunc: self.trunc,
            c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), f(&self.c[3]), f(&self.c[4]), f(&self.c[5])],
            m: self.m.iter().map(|t| MTerm { coeff: f(&t.coeff), distribution: t.distribution.clone() }).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOML: &str = r#"
order = 4
thetas = 3
c2 = [[1, [1], 1.0]]
c6 = [[1, [], 0.5], [2, [2, 3], -1]]

[[M]]
type = "delta"
at = 0.0
order = 1
coeff = [[1, [], 1.0]]

[[M]]
type = "kernel"
expr = { kind = "const", value = 1.0 }
coeff = [[2, [2, 3], 0.25]]
"#;

    #[test]
    fn toml_round_trip() {
        let p = DeformParams::from_toml_str(TOML).unwrap();
        assert_eq!(p.ci(2).to_triples(), vec![(1, vec![1], 1.0)]);
        assert_eq!(p.ci(6).coeff(&crate::grassmann::Monomial::new(2, &[2, 3]).unwrap().0), -1.0);
        assert_eq!(p.m.len(), 2);
        assert_eq!(p.m[0].distribution.deltas[0].order, 1);
        p.validate().unwrap();
        let json = serde_json::to_string(&p.to_file()).unwrap();
        let q = DeformParams::from_json_str(&json).unwrap();
        assert_eq!(q.to_file(), p.to_file());
    }

    #[test]
    fn violations() {
        let tr = Truncation::default();
        let odd_c4 = DeformParams::zero(tr).with_c(4, DeformRing::term(tr, 1, &[1], 1.0));
        assert!(matches!(odd_c4.validate(), Err(Error::ParityViolation(_))));
        let even_c1 = DeformParams::zero(tr).with_c(1, DeformRing::term(tr, 1, &[], 1.0));
        assert!(matches!(even_c1.validate(), Err(Error::ParityViolation(_))));
        let unit = DeformParams::zero(tr).with_c(5, DeformRing::scalar(tr, 1.0));
        assert!(matches!(unit.validate(), Err(Error::AugmentationViolation(_))));
        let odd_m = DeformParams::zero(tr).with_m(DeformRing::term(tr, 1, &[2], 1.0), Distribution::delta(0.0));
        assert!(matches!(odd_m.validate(), Err(Error::ParityViolation(_))));
        // θ-only terms with no ħ are outside the augmentation ideal
        let bare = DeformParams::zero(tr).with_c(2, DeformRing::term(tr, 0, &[1], 1.0));
        assert!(matches!(bare.validate(), Err(Error::AugmentationViolation(_))));
    }

    #[test]
    fn bad_files() {
        assert!(matches!(DeformParams::from_toml_str("c1 = [[1, [4], 1.0]]"), Err(Error::Config(_))));
        assert!(matches!(DeformParams::from_toml_str("c7 = []"), Err(Error::Config(_))));
        assert!(matches!(DeformParams::from_toml_str("order = 2\nc1 = [[3, [1], 1.0]]"), Err(Error::Config(_))));
    }
}
