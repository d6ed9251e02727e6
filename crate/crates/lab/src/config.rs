//! Instance configuration files.

use std::path::Path;

use alcove_core::fixed_points::{hilb_instance, weyl_a_instance, FixedPoint, FixedPointInstance};
use alcove_core::{is_saturated, saturate, Covector, Rational, RationalVector, Wall, WallSet};
use serde::{Deserialize, Serialize};

use crate::LabError;

/// A rational written either as a JSON integer or as a string `"n/d"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    pub fn to_rational(&self) -> Result<Rational, LabError> {
        match self {
            Num::Int(n) => Ok(Rational::integer(*n)),
            Num::Str(s) => s.parse().map_err(|_| LabError::Schema(format!("bad rational {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WallConfig {
    pub id: usize,
    pub alpha: Vec<i64>,
    pub sigma_tilde: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub id: String,
    pub c_const: Num,
    pub c_linear: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    /// `"hilb"` or `"weyl_a"`; absent for an inline table.
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub nu: Option<Vec<Num>>,
    #[serde(default)]
    pub points: Option<Vec<PointConfig>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(default)]
    pub rank: Option<usize>,
    #[serde(default)]
    pub walls: Option<Vec<WallConfig>>,
    #[serde(default)]
    pub instance: Option<InstanceSpec>,
    #[serde(default)]
    pub lambdas: Vec<Vec<Num>>,
    #[serde(default)]
    pub ell: u32,
    #[serde(default, rename = "box")]
    pub bbox: Option<(Num, Num)>,
    #[serde(default)]
    pub primes: Vec<u64>,
}

/// Validated configuration.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub walls: WallSet,
    pub instance: Option<FixedPointInstance>,
    pub lambdas: Vec<RationalVector>,
    pub bbox: Option<(Rational, Rational)>,
    pub primes: Vec<u64>,
    pub warnings: Vec<String>,
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let before: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    before + column.saturating_sub(1)
}

pub fn parse_config(text: &str) -> Result<InstanceConfig, LabError> {
    serde_json::from_str(text).map_err(|e| {
        LabError::Schema(format!(
            "{e} (byte {})",
            byte_offset(text, e.line(), e.column())
        ))
    })
}

pub fn load_instance(path: &Path) -> Result<Loaded, LabError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?;
    let cfg = parse_config(&text)?;
    resolve(&cfg)
}

fn builtin(spec: &InstanceSpec, ell: u32) -> Result<FixedPointInstance, LabError> {
    let name = spec.builtin.as_deref().unwrap_or_default();
    let n = spec
        .n
        .ok_or_else(|| LabError::Schema(format!("instance.n is required for builtin {name:?}")))?;
    let inst = match name {
        "hilb" => hilb_instance(n, ell)?,
        "weyl_a" => {
            let nu = match &spec.nu {
                Some(v) => Some(v.iter().map(Num::to_rational).collect::<Result<Vec<_>, _>>()?),
                None => None,
            };
            weyl_a_instance(n as usize, nu)?
        }
        other => return Err(LabError::Schema(format!("instance.builtin: unknown name {other:?}"))),
    };
    Ok(inst)
}

/// `name:n[:ell]`, e.g. `hilb:3:0` or `weyl_a:3`.
pub fn builtin_from_flag(flag: &str) -> Result<InstanceConfig, LabError> {
    let mut it = flag.split(':');
    let name = it.next().unwrap_or_default().to_string();
    let n: u32 = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| LabError::Usage(format!("--builtin {flag}: expected name:n[:ell]")))?;
    let ell: u32 = match it.next() {
        Some(s) => s
            .parse()
            .map_err(|_| LabError::Usage(format!("--builtin {flag}: bad ell")))?,
        None => 0,
    };
    Ok(InstanceConfig {
        instance: Some(InstanceSpec {
            builtin: Some(name),
            n: Some(n),
            nu: None,
            points: None,
        }),
        ell,
        ..Default::default()
    })
}

pub fn resolve(cfg: &InstanceConfig) -> Result<Loaded, LabError> {
    let mut warnings = Vec::new();
    let walls_from_cfg = match &cfg.walls {
        Some(ws) => {
            let rank = cfg
                .rank
                .or_else(|| ws.first().map(|w| w.alpha.len()))
                .ok_or_else(|| LabError::Schema("rank: required with an empty wall list".into()))?;
            let mut out = Vec::with_capacity(ws.len());
            for (k, w) in ws.iter().enumerate() {
                let sigma = w
                    .sigma_tilde
                    .iter()
                    .map(Num::to_rational)
                    .collect::<Result<Vec<_>, _>>()?;
                let sigma = if is_saturated(&sigma) {
                    sigma
                } else {
                    let s = saturate(&sigma);
                    warnings.push(format!(
                        "walls[{k}].sigma_tilde is not saturated; using {:?}",
                        s
                    ));
                    s
                };
                let alpha = Covector::from_i64(&w.alpha);
                let wall = Wall::new(w.id, alpha, sigma)
                    .map_err(|e| LabError::Schema(format!("walls[{k}]: {e}")))?;
                out.push(wall);
            }
            Some(WallSet::new(rank, out).map_err(|e| LabError::Schema(format!("walls: {e}")))?)
        }
        None => None,
    };

    let instance = match &cfg.instance {
        None => None,
        Some(spec) if spec.builtin.is_some() => Some(builtin(spec, cfg.ell)?),
        Some(spec) => {
            let walls = walls_from_cfg
                .clone()
                .ok_or_else(|| LabError::Schema("instance.points needs a walls table".into()))?;
            let pts = spec
                .points
                .as_ref()
                .ok_or_else(|| LabError::Schema("instance: builtin or points required".into()))?;
            let mut points = Vec::with_capacity(pts.len());
            for pc in pts {
                points.push(FixedPoint {
                    id: pc.id.clone(),
                    c_const: pc.c_const.to_rational()?,
                    c_linear: RationalVector(
                        pc.c_linear.iter().map(Num::to_rational).collect::<Result<Vec<_>, _>>()?,
                    ),
                });
            }
            Some(
                FixedPointInstance::new("inline".into(), points, walls)
                    .map_err(|e| LabError::Schema(format!("instance.points: {e}")))?,
            )
        }
    };

    let walls = match (&walls_from_cfg, &instance) {
        (Some(w), _) => w.clone(),
        (None, Some(i)) => i.walls.clone(),
        (None, None) => return Err(LabError::Schema("either walls or instance is required".into())),
    };

    let mut lambdas = Vec::with_capacity(cfg.lambdas.len());
    for (k, l) in cfg.lambdas.iter().enumerate() {
        let v = RationalVector(l.iter().map(Num::to_rational).collect::<Result<Vec<_>, _>>()?);
        v.check_dim(walls.rank)
            .map_err(|e| LabError::Schema(format!("lambdas[{k}]: {e}")))?;
        lambdas.push(v);
    }
    let bbox = match &cfg.bbox {
        Some((a, b)) => Some((a.to_rational()?, b.to_rational()?)),
        None => None,
    };
    Ok(Loaded {
        walls,
        instance,
        lambdas,
        bbox,
        primes: cfg.primes.clone(),
        warnings,
    })
}
