use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use dwork_core::arrangement::{
    central_oracle, les_fragments_hold, local_cohomology_dims, local_cohomology_euler_sides,
    m_global_dims, milnor_fiber_dims, milnor_matches_m_table, nbc_oracle, projective_space_betti,
    tn_dims, tn_matches_m_table, tn_matches_oracle,
};
use dwork_core::dwork::{full_report, Weights};
use dwork_core::hypergeom::{hyp_operator, make_hyp, ExpMultiset};
use dwork_core::rational::parse_rational;
use dwork_core::syzygy::{generation_dims, syzygy_generators, verify_syzygies};
use dwork_core::weyl::{
    fourier, indicial_polynomial, parse_op, singular_support, Direction, Place,
};
use dwork_core::{Rational, UPoly, WeylOp};

use crate::{
    CheckArgs, CliError, Command, DirectionArg, HypAction, HypArgs, PlaceArg, Produced, WeylAction,
};

type Res = Result<Produced, CliError>;

fn done(doc: Value) -> Res {
    Ok(Produced { doc, ok: true })
}

fn weights(raw: &[i64]) -> Result<Weights, CliError> {
    Weights::new(raw).map_err(|e| CliError::usage(format!("--weights: {e}")))
}

fn rationals(flag: &str, raw: &str) -> Result<Vec<Rational>, CliError> {
    let raw = raw.trim();
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',')
        .map(|s| {
            parse_rational(s.trim())
                .ok_or_else(|| CliError::usage(format!("{flag}: not a rational number: {s:?}")))
        })
        .collect()
}

fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(r.to_string())).collect())
}

fn sorted(v: &[Rational]) -> Vec<Rational> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn factors(list: &[(UPoly, usize)]) -> Value {
    Value::Array(
        list.iter()
            .map(|(f, m)| json!({ "factor": f.render("s"), "multiplicity": m }))
            .collect(),
    )
}

pub fn dispatch(cmd: &Command) -> Res {
    match cmd {
        Command::Report(w) => {
            let w = weights(&w.weights)?;
            let report = full_report(&w).map_err(CliError::domain)?;
            done(report.to_json())
        }
        Command::Hyp(args) => hyp(args),
        Command::Weyl { action } => weyl(action),
        Command::Syzygy { weights: w, bound } => syzygy(&weights(&w.weights)?, *bound),
        Command::Arrangement { n, weights: w } => {
            let w = w.as_deref().map(weights).transpose()?;
            arrangement(*n, w.as_ref())
        }
        Command::Check(args) => check(args),
    }
}

fn hyp(args: &HypArgs) -> Res {
    let gamma = parse_rational(args.gamma.trim()).ok_or_else(|| {
        CliError::usage(format!("--gamma: not a rational number: {:?}", args.gamma))
    })?;
    let alpha = ExpMultiset::new(rationals("--alpha", &args.alpha)?);
    let beta = ExpMultiset::new(rationals("--beta", &args.beta)?);
    let h = make_hyp(gamma, alpha, beta, !args.no_cancel).map_err(CliError::domain)?;
    let mut doc = Map::new();
    doc.insert("hyp".into(), Value::String(h.to_string()));
    match args.action {
        HypAction::Exponents => {
            let zero = h.exponents(Place::Zero).map_err(CliError::domain)?;
            let inf = h.exponents(Place::Infinity).map_err(CliError::domain)?;
            doc.insert("zero".into(), rats(&sorted(zero.values())));
            doc.insert("infinity".into(), rats(&sorted(inf.values())));
        }
        HypAction::Operator => {
            doc.insert(
                "operator".into(),
                Value::String(hyp_operator(&h).to_string()),
            );
        }
        HypAction::Irreducible => {
            doc.insert("irreducible".into(), Value::Bool(h.is_irreducible()));
        }
    }
    done(Value::Object(doc))
}

fn parsed(text: &str) -> Result<WeylOp, CliError> {
    parse_op(text).map_err(CliError::domain)
}

fn weyl(action: &WeylAction) -> Res {
    match action {
        WeylAction::Parse(a) => {
            let op = parsed(&a.op)?;
            let terms: Vec<Value> = op
                .terms()
                .map(|(j, k, c)| json!({ "lambda": j, "del": k, "coeff": c.to_string() }))
                .collect();
            done(json!({
                "input": a.op,
                "normal_form": op.to_string(),
                "order": op.order(),
                "terms": terms,
            }))
        }
        WeylAction::Ft { op, direction } => {
            let p = parsed(&op.op)?;
            let (dir, name) = match direction {
                DirectionArg::Forward => (Direction::Forward, "forward"),
                DirectionArg::Inverse => (Direction::Inverse, "inverse"),
            };
            let r = fourier(&p, dir).map_err(CliError::domain)?;
            done(json!({ "input": op.op, "direction": name, "result": r.to_string() }))
        }
        WeylAction::Indicial { op, place } => {
            let p = parsed(&op.op)?;
            let place = match place {
                PlaceArg::Zero => Place::Zero,
                PlaceArg::Infinity => Place::Infinity,
            };
            let ind = indicial_polynomial(&p, place).map_err(CliError::domain)?;
            done(json!({
                "place": place.to_string(),
                "polynomial": ind.poly.render("s"),
                "roots": rats(&ind.roots()),
                "irrational_factors": factors(&ind.irrational_factors()),
            }))
        }
        WeylAction::Singular(a) => {
            let s = singular_support(&parsed(&a.op)?).map_err(CliError::domain)?;
            done(json!({
                "rational_points": rats(&s.rational_points),
                "irreducible_factors": factors(&s.irreducible_factors),
                "regular_at_zero": s.regular_at_zero,
                "regular_at_infinity": s.regular_at_infinity,
            }))
        }
    }
}

fn syzygy(w: &Weights, bound: Option<u32>) -> Res {
    let bound = bound.unwrap_or(w.d() as u32 + 4);
    if bound < w.d() as u32 {
        return Err(CliError::usage(format!(
            "--bound must be at least d = {}",
            w.d()
        )));
    }
    let gens = syzygy_generators(w).map_err(CliError::domain)?;
    let verified = verify_syzygies(w);
    let dims = generation_dims(w, bound);
    let generated = dims.iter().all(|r| r.kernel == r.span);
    let generators: Vec<Value> = gens
        .iter()
        .map(|s| {
            json!({
                "kind": s.kind.to_string(),
                "components": s.components.iter().map(|c| c.render()).collect::<Vec<_>>(),
            })
        })
        .collect();
    done(json!({
        "weights": w.as_slice(),
        "d": w.d(),
        "bound": bound,
        "generators": generators,
        "verified": verified,
        "degrees": dims,
        "generated": generated,
    }))
}

fn arrangement(n: i64, w: Option<&Weights>) -> Res {
    let local = local_cohomology_dims(n).map_err(|e| CliError::usage(format!("--n: {e}")))?;
    let shift = n - 1;
    let complement = nbc_oracle(n as usize, shift as usize);
    let central = central_oracle(n as usize, shift as usize);
    let (chi_table, chi_triangle) = local_cohomology_euler_sides(n).map_err(CliError::domain)?;
    let mut doc = json!({
        "n": n,
        "shift": shift,
        "local_cohomology": local,
        "projective_space_betti": projective_space_betti(shift),
        "complement_betti": complement,
        "complement_shifted": complement.shifted(shift),
        "tn": tn_dims(n).map_err(CliError::domain)?,
        "tn_oracle_betti": central,
        "tn_oracle_shifted": central.shifted(shift),
        "euler_characteristic": { "table": chi_table, "triangle": chi_triangle },
        "checks": {
            "euler_identity": chi_table == chi_triangle,
            "les_fragments": les_fragments_hold(n).map_err(CliError::domain)?,
            "tn_oracle": tn_matches_oracle(n).map_err(CliError::domain)?,
        },
    });
    if let Some(w) = w {
        if w.n() as i64 != n {
            return Err(CliError::usage(format!(
                "--weights needs n + 1 = {} entries, got {}",
                n + 1,
                w.n() + 1
            )));
        }
        doc["milnor_fiber"] = json!({
            "weights": w.as_slice(),
            "d": w.d(),
            "dims": milnor_fiber_dims(w).map_err(CliError::domain)?,
            "matches_m_table": milnor_matches_m_table(w).map_err(CliError::domain)?,
            "m_global": m_global_dims(w).map_err(CliError::domain)?,
            "tn_matches_m_table": tn_matches_m_table(w).map_err(CliError::domain)?,
        });
    }
    done(doc)
}

/// Named pass/fail results for one tuple, in a fixed order.
fn suite(w: &Weights, seed: u64, samples: usize) -> Result<Vec<(String, bool)>, CliError> {
    let report = full_report(w).map_err(CliError::domain)?;
    let mut out: Vec<(String, bool)> = report
        .checks
        .iter()
        .map(|c| (c.name.to_string(), c.pass))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm = w.as_slice().to_vec();
    let mut invariant = true;
    for _ in 0..samples {
        perm.shuffle(&mut rng);
        let other = full_report(&Weights::from_u64(&perm).map_err(CliError::domain)?)
            .map_err(CliError::domain)?;
        invariant &= other.same_structure(&report);
    }
    out.push(("permutation_invariance".into(), invariant));

    out.push(("syzygies_verify".into(), verify_syzygies(w)));
    if w.n() <= 3 {
        let dims = generation_dims(w, w.d() as u32 + 4);
        out.push((
            "syzygy_generation".into(),
            dims.iter().all(|r| r.kernel == r.span),
        ));
    }
    if w.n() >= 2 {
        out.push((
            "tn_vs_m_table".into(),
            tn_matches_m_table(w).map_err(CliError::domain)?,
        ));
        if w.is_primitive() {
            out.push((
                "milnor_fiber_vs_m_table".into(),
                milnor_matches_m_table(w).map_err(CliError::domain)?,
            ));
        }
    }
    Ok(out)
}

fn tuples(max_n: usize, max_w: u64) -> Vec<Vec<u64>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for len in 1..=max_n + 1 {
        layer = layer
            .into_iter()
            .flat_map(|t| {
                (1..=max_w).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
        if len >= 2 {
            all.extend(layer.iter().cloned());
        }
    }
    all
}

fn check(args: &CheckArgs) -> Res {
    if let Some(raw) = &args.weights {
        let w = weights(raw)?;
        let results = suite(&w, args.seed, args.samples)?;
        let ok = results.iter().all(|(_, p)| *p);
        let checks: Map<String, Value> = results
            .into_iter()
            .map(|(k, v)| (k, Value::Bool(v)))
            .collect();
        return Ok(Produced {
            doc: json!({ "weights": w.as_slice(), "seed": args.seed, "checks": checks, "all_pass": ok }),
            ok,
        });
    }
    if args.max_n == 0 || args.max_weight == 0 {
        return Err(CliError::usage("--max-n and --max-weight must be positive"));
    }
    let list = tuples(args.max_n, args.max_weight);
    let results: Vec<Result<Value, CliError>> = list
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let w = Weights::from_u64(t).map_err(CliError::domain)?;
            let r = suite(&w, args.seed.wrapping_add(i as u64), args.samples)?;
            let failed: Vec<&str> = r
                .iter()
                .filter(|(_, p)| !p)
                .map(|(k, _)| k.as_str())
                .collect();
            Ok(json!({ "weights": t, "pass": failed.is_empty(), "failed": failed }))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let ok = results.iter().all(|r| r["pass"] == Value::Bool(true));
    Ok(Produced {
        doc: json!({
            "seed": args.seed,
            "max_n": args.max_n,
            "max_weight": args.max_weight,
            "tuples": results.len(),
            "results": results,
            "all_pass": ok,
        }),
        ok,
    })
}
