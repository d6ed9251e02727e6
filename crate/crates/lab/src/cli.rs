//! Command line interface. Every subcommand is a thin layer over `alcove_core`.

use std::path::PathBuf;

use alcove_core::compat::{find_compatible, verify_compatible, CompatiblePair};
use alcove_core::fixed_points::FixedPointInstance;
use alcove_core::geometry::{
    faces_of, find_lattice_point, integral_chambers, integral_walls_and_positive_chamber,
    p_alcove_of, p_membership, quantum_chamber, real_alcove_of, translation_path, validate_p,
    Face, PInequality, RealAlcove, Sense, ValidationInput,
};
use alcove_core::order::{
    equivalence_classes, hw_order, order_compat_check, phw_axiom_check, ss_preorder, PreOrder,
};
use alcove_core::wall_crossing::{wc_bijection_hilb, Provenance, Variant};
use alcove_core::{LatticeVector, Rational, RationalVector, WallSet};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::config::{builtin_from_flag, load_instance, parse_config, resolve, Loaded};
use crate::export::{affine, poset_dot, poset_from_json, poset_json, preorder_dot, preorder_json, q, PosetJson};
use crate::par::par_map;
use crate::report::{inputs_hash, CheckJson, RunReport};
use crate::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "alcove-lab", version, about = "Alcoves, p-alcoves, compatible pairs and label orders")]
pub struct Cli {
    /// Instance configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Builtin instance `name:n[:ell]`, e.g. `hilb:3:0` or `weyl_a:3`.
    #[arg(long, global = true)]
    pub builtin: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Real alcove containing a point.
    Alcove {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Faces of the alcove containing a point.
    Faces {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// p-alcove of the alcove containing a point.
    Palcove {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// p-alcove containing a lattice point.
    Membership {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        p: u64,
    },
    /// Integral walls and chambers at a parameter.
    Chambers {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Quantum chamber of the positive chamber at a parameter.
    Quantum {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Admissibility of a prime for the configured data.
    ValidateP {
        #[arg(long)]
        p: u64,
    },
    /// Shortest translation path inside a p-alcove.
    Path {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
    /// Compatible pairs for the faces of the alcove containing a point.
    Compatible {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        face: Option<usize>,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// Highest weight order on a window of labels.
    Order {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Pre-order of a compatible pair.
    Preorder {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        face: usize,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        blocks: String,
    },
    /// Equivalence classes of the pre-order, computed two ways.
    Classes {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        face: usize,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        blocks: String,
    },
    /// Periodic highest weight axioms on a window.
    CheckPhw {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        d_bound: Option<usize>,
    },
    /// Compatibility of the pre-order with the order at a prime.
    CheckCompat {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        face: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        blocks: String,
    },
    /// Wall-crossing bijection on partitions of n.
    Wallcross {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        b: u32,
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    /// Convert an exported poset.
    Export {
        #[arg(long)]
        input: PathBuf,
    },
}

/// Text to print and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

struct Ctx {
    loaded: Option<Loaded>,
    hash: String,
    format: Format,
}

impl Ctx {
    fn loaded(&self) -> Result<&Loaded, LabError> {
        self.loaded
            .as_ref()
            .ok_or_else(|| LabError::Usage("this command needs --config or --builtin".into()))
    }

    fn walls(&self) -> Result<&WallSet, LabError> {
        Ok(&self.loaded()?.walls)
    }

    fn instance(&self) -> Result<&FixedPointInstance, LabError> {
        self.loaded()?
            .instance
            .as_ref()
            .ok_or_else(|| LabError::Usage("this command needs a fixed point instance".into()))
    }

    fn warnings(&self) -> Vec<String> {
        self.loaded.as_ref().map(|l| l.warnings.clone()).unwrap_or_default()
    }

    fn report(&self, command: &str, outputs: Value, checks: Vec<CheckJson>) -> Outcome {
        let r = RunReport::new(command, self.hash.clone(), outputs, checks, self.warnings());
        Outcome {
            passed: r.passed,
            text: r.to_json(),
        }
    }
}

pub fn parse_point(s: &str) -> Result<RationalVector, LabError> {
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<Rational>().map_err(|_| LabError::Usage(format!("bad coordinate {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalVector(parts))
}

pub fn parse_lattice(s: &str) -> Result<LatticeVector, LabError> {
    parse_point(s)?
        .to_lattice()
        .ok_or_else(|| LabError::Usage(format!("{s:?} is not a lattice point")))
}

pub fn parse_window(s: &str) -> Result<(i64, i64), LabError> {
    let bad = || LabError::Usage(format!("window {s:?} must be z1:z2"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_blocks(s: &str) -> Result<Vec<i64>, LabError> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| LabError::Usage(format!("bad block {t:?}"))))
        .collect()
}

fn vec_json(v: &RationalVector) -> Value {
    json!(v.0.iter().map(q).collect::<Vec<_>>())
}

fn sense(s: Sense) -> &'static str {
    match s {
        Sense::Ge => "ge",
        Sense::Le => "le",
    }
}

fn alcove_json(walls: &WallSet, a: &RealAlcove) -> Value {
    json!({
        "strips": a.strips.iter().map(|(l, h)| json!([q(l), q(h)])).collect::<Vec<_>>(),
        "facets": a.facets.iter().map(|f| json!({
            "wall": f.wall, "sense": sense(f.sense), "offset": q(&f.offset)
        })).collect::<Vec<_>>(),
        "bounded": a.is_bounded(walls),
        "vertices": a.vertices(walls).iter().map(vec_json).collect::<Vec<_>>(),
    })
}

fn face_json(i: usize, f: &Face) -> Value {
    json!({
        "index": i,
        "codim": f.codim,
        "active": f.active,
        "witness": vec_json(&f.witness),
        "vertices": f.vertices.iter().map(vec_json).collect::<Vec<_>>(),
    })
}

fn pineq_json(b: &PInequality, p: Option<&BigInt>) -> Value {
    let mut v = json!({"wall": b.wall, "sign": b.sign, "rhs": affine(&b.rhs)});
    if let Some(p) = p {
        v["rhs_at_p"] = json!(q(&b.rhs.eval_at(p)));
    }
    v
}

fn pair_json(pair: &CompatiblePair) -> Value {
    json!({
        "lambda": vec_json(&pair.lambda),
        "mu": vec_json(&pair.mu),
        "chi": vec_json(&pair.lambda.sub(&pair.mu)),
        "p_point": pair.p_point().iter().map(affine).collect::<Vec<_>>(),
        "face_walls": pair.face_walls.iter().map(|f| json!({
            "wall": f.wall, "sign": f.sign, "offset": q(&f.offset), "threshold": q(&f.threshold)
        })).collect::<Vec<_>>(),
    })
}

fn big(p: u64) -> BigInt {
    BigInt::from(p)
}

fn pair_for(ctx: &Ctx, point: &str, face: usize) -> Result<CompatiblePair, LabError> {
    let walls = ctx.walls()?;
    let a = real_alcove_of(walls, &parse_point(point)?)?;
    let faces = faces_of(&a, walls)?;
    let f = faces
        .get(face)
        .ok_or_else(|| LabError::Usage(format!("face {face} out of range 0..{}", faces.len())))?;
    Ok(find_compatible(walls, &a, f, 12)?)
}

fn preorder_for(ctx: &Ctx, point: &str, face: usize, window: &str, blocks: &str) -> Result<(CompatiblePair, PreOrder), LabError> {
    let inst = ctx.instance()?;
    let pair = pair_for(ctx, point, face)?;
    let pre = ss_preorder(inst, &pair, parse_window(window)?, &parse_blocks(blocks)?)?;
    Ok((pair, pre))
}

fn run_command(ctx: &Ctx, cmd: &Command) -> Result<Outcome, LabError> {
    match cmd {
        Command::Alcove { point } => {
            let walls = ctx.walls()?;
            let a = real_alcove_of(walls, &parse_point(point)?)?;
            Ok(ctx.report("alcove", alcove_json(walls, &a), vec![]))
        }
        Command::Faces { point } => {
            let walls = ctx.walls()?;
            let a = real_alcove_of(walls, &parse_point(point)?)?;
            let faces = faces_of(&a, walls)?;
            let out = json!({
                "alcove": alcove_json(walls, &a),
                "faces": faces.iter().enumerate().map(|(i, f)| face_json(i, f)).collect::<Vec<_>>(),
            });
            Ok(ctx.report("faces", out, vec![]))
        }
        Command::Palcove { point, p } => {
            let walls = ctx.walls()?;
            let a = real_alcove_of(walls, &parse_point(point)?)?;
            let pa = p_alcove_of(&a, walls)?;
            let pb = p.map(big);
            let mut out = json!({
                "source": alcove_json(walls, &a),
                "facets": pa.facets.iter().map(|b| pineq_json(b, pb.as_ref())).collect::<Vec<_>>(),
                "bounds": pa.bounds.iter().map(|b| pineq_json(b, pb.as_ref())).collect::<Vec<_>>(),
            });
            let mut checks = Vec::new();
            if let Some(p) = &pb {
                let pt = find_lattice_point(walls.rank, &pa.constraints_at(walls, p));
                checks.push(CheckJson::new("lattice point", pt.is_some(), format!("p = {p}")));
                out["lattice_point"] = json!(pt.map(|v| v.0.iter().map(ToString::to_string).collect::<Vec<_>>()));
            }
            Ok(ctx.report("palcove", out, checks))
        }
        Command::Membership { point, p } => {
            let walls = ctx.walls()?;
            let x = parse_lattice(point)?;
            let pa = p_membership(walls, &x, &big(*p))?;
            let out = json!({
                "source": alcove_json(walls, &pa.source),
                "bounds": pa.bounds.iter().map(|b| pineq_json(b, Some(&big(*p)))).collect::<Vec<_>>(),
            });
            Ok(ctx.report("membership", out, vec![]))
        }
        Command::Chambers { point } => {
            let walls = ctx.walls()?;
            let lam = parse_point(point)?;
            let chambers = integral_chambers(walls, &lam);
            let positive = integral_walls_and_positive_chamber(walls, &lam);
            let out = json!({
                "chambers": chambers.iter().map(|c| json!(c.signs)).collect::<Vec<_>>(),
                "positive": positive.as_ref().ok().map(|(iw, c)| json!({"integral_walls": iw, "signs": c.signs})),
                "positive_error": positive.as_ref().err().map(ToString::to_string),
            });
            Ok(ctx.report("chambers", out, vec![]))
        }
        Command::Quantum { point } => {
            let walls = ctx.walls()?;
            let lam = parse_point(point)?;
            let (_, c) = integral_walls_and_positive_chamber(walls, &lam)?;
            let qc = quantum_chamber(walls, &lam, &c)?;
            let out = json!({
                "lambda": vec_json(&qc.lambda),
                "inequalities": qc.bounds.iter().map(|(w, s, t)| json!({
                    "wall": w, "alpha": walls.get(*w).alpha.scaled(*s).0.iter().map(ToString::to_string).collect::<Vec<_>>(), "at_least": q(t)
                })).collect::<Vec<_>>(),
            });
            Ok(ctx.report("quantum", out, vec![]))
        }
        Command::ValidateP { p } => {
            let l = ctx.loaded()?;
            let bbox_alcoves = Vec::new();
            let input = ValidationInput {
                walls: &l.walls,
                instance: l.instance.as_ref(),
                lambdas: &l.lambdas,
                alcoves: &bbox_alcoves,
            };
            let r = validate_p(&big(*p), input);
            let checks: Vec<CheckJson> = r.checks.iter().map(CheckJson::from).collect();
            Ok(ctx.report("validate-p", json!({"p": p.to_string()}), checks))
        }
        Command::Path { point, to, p, limit } => {
            let walls = ctx.walls()?;
            let from = parse_lattice(point)?;
            let to = parse_lattice(to)?;
            let pa = p_membership(walls, &from, &big(*p))?;
            let gens: Vec<LatticeVector> = (0..walls.rank)
                .map(|i| {
                    let mut v = vec![0i64; walls.rank];
                    v[i] = 1;
                    LatticeVector::from_i64(&v)
                })
                .collect();
            let path = translation_path(walls, &pa, &big(*p), &from, &to, &gens, *limit)?;
            let steps: Vec<Vec<String>> = path.iter().map(|s| s.0.iter().map(ToString::to_string).collect()).collect();
            Ok(ctx.report("path", json!({"length": steps.len(), "steps": steps}), vec![]))
        }
        Command::Compatible { point, face, radius } => {
            let walls = ctx.walls()?;
            let a = real_alcove_of(walls, &parse_point(point)?)?;
            let faces = faces_of(&a, walls)?;
            let chosen: Vec<(usize, &Face)> = match face {
                Some(i) => vec![(
                    *i,
                    faces
                        .get(*i)
                        .ok_or_else(|| LabError::Usage(format!("face {i} out of range")))?,
                )],
                None => faces.iter().enumerate().filter(|(_, f)| f.codim > 0).collect(),
            };
            let primes: Vec<BigInt> = ctx.loaded()?.primes.iter().map(|&p| big(p)).collect();
            let results = par_map(&chosen, |(i, f)| {
                let r = find_compatible(walls, &a, f, *radius);
                (*i, r.map(|pair| {
                    let rep = verify_compatible(walls, &pair, &primes);
                    (pair, rep)
                }))
            });
            let mut out = Vec::new();
            let mut checks = Vec::new();
            for (i, r) in results {
                match r {
                    Ok((pair, rep)) => {
                        checks.push(CheckJson::new(format!("face {i}"), rep.passed(), rep.summary()));
                        let mut v = pair_json(&pair);
                        v["face"] = json!(i);
                        v["threshold"] = json!(rep.threshold.to_string());
                        out.push(v);
                    }
                    Err(e) => {
                        checks.push(CheckJson::new(format!("face {i}"), false, e.to_string()));
                        out.push(json!({"face": i, "error": e.to_string()}));
                    }
                }
            }
            Ok(ctx.report("compatible", json!(out), checks))
        }
        Command::Order { point, p, window } => {
            let inst = ctx.instance()?;
            let po = hw_order(inst, &parse_lattice(point)?, &big(*p), parse_window(window)?)?;
            match ctx.format {
                Format::Dot => Ok(Outcome { text: poset_dot(Some(inst), &po), passed: true }),
                Format::Json => Ok(ctx.report("order", json!(poset_json(Some(inst), &po)), vec![])),
            }
        }
        Command::Preorder { point, face, window, blocks } => {
            let inst = ctx.instance()?;
            let (pair, pre) = preorder_for(ctx, point, *face, window, blocks)?;
            match ctx.format {
                Format::Dot => Ok(Outcome { text: preorder_dot(Some(inst), &pre), passed: true }),
                Format::Json => {
                    let out = json!({"pair": pair_json(&pair), "preorder": preorder_json(Some(inst), &pre)});
                    Ok(ctx.report("preorder", out, vec![]))
                }
            }
        }
        Command::Classes { point, face, window, blocks } => {
            let inst = ctx.instance()?;
            let (_, pre) = preorder_for(ctx, point, *face, window, blocks)?;
            let (check, classes) = match equivalence_classes(inst, &pre) {
                Ok(c) => (CheckJson::new("slope closure agrees with direct formula", true, format!("{} classes", c.len())), c),
                Err(e) => (CheckJson::new("slope closure agrees with direct formula", false, e.to_string()), pre.classes.clone()),
            };
            let named: Vec<Vec<String>> = classes
                .iter()
                .map(|c| c.iter().map(|&i| format!("{} @ {}", inst.points[pre.labels[i].point].id, affine(&pre.labels[i].kappa))).collect())
                .collect();
            Ok(ctx.report("classes", json!({"classes": classes, "labels": named}), vec![check]))
        }
        Command::CheckPhw { point, p, window, d_bound } => {
            let inst = ctx.instance()?;
            let po = hw_order(inst, &parse_lattice(point)?, &big(*p), parse_window(window)?)?;
            let d = d_bound.unwrap_or(2 * inst.len() * (*p as usize));
            let r = phw_axiom_check(&po, d);
            let checks = r.checks.iter().map(CheckJson::from).collect();
            let out = json!({"labels": po.len(), "orbits": r.orbits, "max_chain": r.max_chain, "undetermined": r.undetermined, "d_bound": d});
            Ok(ctx.report("check-phw", out, checks))
        }
        Command::CheckCompat { point, face, p, window, blocks } => {
            let inst = ctx.instance()?;
            let (pair, pre) = preorder_for(ctx, point, *face, window, blocks)?;
            let pb = big(*p);
            let lam = pair
                .p_point_at(&pb)
                .to_lattice()
                .ok_or_else(|| LabError::Usage(format!("p-point is not integral at p = {p}")))?;
            let (lo, hi) = pre.kappa_range(&pb).expect("nonempty window");
            let z1 = i64::try_from(lo.floor()).map_err(|_| LabError::Usage("window too large".into()))?;
            let z2 = i64::try_from(hi.ceil()).map_err(|_| LabError::Usage("window too large".into()))? + 1;
            let po = hw_order(inst, &lam, &pb, (z1, z2))?;
            let r = order_compat_check(&po, &pre);
            let mut checks: Vec<CheckJson> = r.checks.iter().map(CheckJson::from).collect();
            checks.push(match equivalence_classes(inst, &pre) {
                Ok(c) => CheckJson::new("equivalence classes agree", true, format!("{} classes", c.len())),
                Err(e) => CheckJson::new("equivalence classes agree", false, e.to_string()),
            });
            let out = json!({"pair": pair_json(&pair), "p_point": vec_json(&lam.to_rational()), "matched": r.matched, "unmatched": r.unmatched});
            Ok(ctx.report("check-compat", out, checks))
        }
        Command::Wallcross { n, b, variant } => {
            let v: Variant = variant.parse()?;
            let table = wc_bijection_hilb(*n, *b, v)?;
            let rows: Vec<Value> = table
                .iter()
                .map(|e| json!({
                    "source": e.source.to_id(),
                    "image": e.image.as_ref().map(|m| m.to_id()),
                    "provenance": match e.provenance { Provenance::Computed => "computed", Provenance::External => "EXTERNAL" },
                    "note": e.note,
                }))
                .collect();
            Ok(ctx.report("wallcross", json!({"n": n, "b": b, "variant": variant, "table": rows}), vec![]))
        }
        Command::Export { input } => {
            let text = std::fs::read_to_string(input).map_err(|e| LabError::Io(format!("{}: {e}", input.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| LabError::Schema(e.to_string()))?;
            let body = v.get("outputs").cloned().unwrap_or(v);
            let pj: PosetJson = serde_json::from_value(body).map_err(|e| LabError::Schema(e.to_string()))?;
            let po = poset_from_json(&pj)?;
            let inst = ctx.loaded.as_ref().and_then(|l| l.instance.as_ref());
            match ctx.format {
                Format::Dot => Ok(Outcome { text: poset_dot(inst, &po), passed: true }),
                Format::Json => Ok(ctx.report("export", json!(poset_json(inst, &po)), vec![])),
            }
        }
    }
}

/// Parse and run. The arguments include the program name.
pub fn dispatch(argv: &[String]) -> Result<Outcome, LabError> {
    let cli = Cli::try_parse_from(argv).map_err(|e| LabError::Clap(e.to_string(), e.use_stderr()))?;
    let mut config_text = None;
    let loaded = match (&cli.config, &cli.builtin) {
        (Some(_), Some(_)) => return Err(LabError::Usage("use either --config or --builtin".into())),
        (Some(path), None) => {
            config_text = Some(std::fs::read_to_string(path).map_err(|e| LabError::Io(format!("{}: {e}", path.display())))?);
            Some(load_instance(path)?)
        }
        (None, Some(b)) => Some(resolve(&builtin_from_flag(b)?)?),
        (None, None) => None,
    };
    // Validate the configuration text eagerly so schema errors win over usage.
    if let Some(t) = &config_text {
        parse_config(t)?;
    }
    let ctx = Ctx {
        loaded,
        hash: inputs_hash(&argv[1..], config_text.as_deref()),
        format: cli.format,
    };
    run_command(&ctx, &cli.command)
}
