//! End-to-end acceptance criteria. One PASS/FAIL line per criterion.
//! Every comparison is exact (rational or integer equality); the tolerance
//! column says so explicitly.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use dwork_core::arrangement::{
    central_oracle, les_fragments_hold, local_cohomology_euler_sides, milnor_fiber_dims,
    milnor_matches_m_table, mobius_betti, nbc_oracle, tn_matches_m_table, tn_matches_oracle,
};
use dwork_core::dwork::{
    c_set, ft_pair, full_report, g_block, invariant_hyp, k_table, m_table, wrap_pushforward,
    Weights,
};
use dwork_core::hypergeom::{euler_char, hyp_operator, make_hyp, ExpMultiset, Factor, FactorList};
use dwork_core::rational::{int, is_integer, rat};
use dwork_core::syzygy::{
    factored_partial, generation_dims, jacobian_generators, l_factor, syzygy_generators,
    verify_syzygies, MultiPoly, SyzygyKind,
};
use dwork_core::weyl::{
    euler_factorization, fourier, ft_sign, indicial_polynomial, singular_support, Direction, Place,
    FT_CALIBRATION,
};
use dwork_core::{Rational, WeylOp};

/// All comparisons below are exact equalities.
const TOLERANCE: &str = "exact";
/// Seed for the random hypergeometric data of criterion 5.
const INDICIAL_SEED: u64 = 0x00D0_4C0D;
const INDICIAL_CASES: usize = 200;
const MAX_DENOMINATOR: i64 = 12;
const MAX_NUMERATOR: i64 = 36;
/// Criteria that cannot hold as stated; see the README. They must still fail.
const KNOWN_FAILURES: &[&str] = &["8a"];

fn run(args: &[&str]) -> (u8, Value) {
    let mut argv = vec!["dwork"];
    argv.extend_from_slice(args);
    let out = dwork_cli::run(argv);
    let doc = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, doc)
}

fn w(v: &[u64]) -> Weights {
    Weights::from_u64(v).unwrap()
}

fn ms(v: &[Rational]) -> ExpMultiset {
    ExpMultiset::new(v.to_vec())
}

fn tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// All tuples (w₀, …, wₙ) with n in `ns` and entries in 1..=max.
fn sweep(ns: std::ops::RangeInclusive<usize>, max: u64, primitive_only: bool) -> Vec<Weights> {
    ns.flat_map(|n| tuples(n + 1, max))
        .map(|t| w(&t))
        .filter(|x| !primitive_only || x.is_primitive())
        .collect()
}

fn c1_classical() -> Result<(), String> {
    let (code, doc) = run(&["report", "--weights", "1,1,1,1,1", "--json"]);
    if code != 0 {
        return Err(format!("exit {code}"));
    }
    if doc["gamma"] != "1/3125" {
        return Err(format!("gamma {}", doc["gamma"]));
    }
    if doc["g_block"]["rank"] != 4 || doc["g_block"]["c_set"] != Value::Array(vec![]) {
        return Err("g_block rank or c_set".into());
    }
    let ranks: Vec<Value> = ["-3", "-2", "-1"]
        .iter()
        .map(|k| doc["cohomology"][k]["rank"].clone())
        .collect();
    if ranks != [1, 4, 6] {
        return Err(format!("negative-degree ranks {ranks:?}"));
    }
    if doc["cohomology"]["0"]["constant_quotient"]["rank"] != 4 {
        return Err("constant quotient rank".into());
    }
    let r = full_report(&w(&[1, 1, 1, 1, 1])).map_err(|e| e.to_string())?;
    let expected = make_hyp(
        rat(1, 3125),
        ms(&[int(0), int(0), int(0), int(0)]),
        ms(&[rat(1, 5), rat(2, 5), rat(3, 5), rat(4, 5)]),
        false,
    )
    .unwrap();
    if *r.g_block.hyp.underlying() != expected {
        return Err(format!("hyp {}", r.g_block.hyp));
    }
    for i in -3..=-1 {
        if r.cohomology.sums[&i].structure_count() != r.cohomology.sums[&i].len() {
            return Err(format!("degree {i} not constant"));
        }
    }
    Ok(())
}

fn c2_mixed() -> Result<(), String> {
    let (code, doc) = run(&["report", "--weights", "1,2,3", "--json"]);
    if code != 0 || doc["gamma"] != "1/432" || doc["g_block"]["rank"] != 5 {
        return Err(format!(
            "exit {code}, gamma {}, rank {}",
            doc["gamma"], doc["g_block"]["rank"]
        ));
    }
    let r = full_report(&w(&[1, 2, 3])).map_err(|e| e.to_string())?;
    let b = &r.g_block;
    if b.c_set != ms(&[rat(1, 3), rat(1, 2), rat(2, 3)]) {
        return Err(format!("c_set {}", b.c_set));
    }
    let expected = make_hyp(
        rat(1, 432),
        ms(&[int(0), int(0)]),
        ms(&[rat(1, 6), rat(5, 6)]),
        false,
    )
    .unwrap();
    if *b.hyp.underlying() != expected {
        return Err(format!("hyp {}", b.hyp));
    }
    let inf = ms(&[rat(1, 6), rat(1, 3), rat(1, 2), rat(2, 3), rat(5, 6)]);
    if b.exps_infinity != inf || b.exps_infinity.len() != 5 {
        return Err(format!("exps_infinity {}", b.exps_infinity));
    }
    Ok(())
}

fn c3_weyl_identity() -> Result<(), String> {
    for d in 1..=12usize {
        let lhs = euler_factorization(d);
        let rhs = &WeylOp::lambda_pow(d as i64) * &WeylOp::del().pow(d);
        if !(&lhs - &rhs).is_zero() {
            return Err(format!("d = {d}"));
        }
    }
    Ok(())
}

fn c4_fourier() -> Result<(), String> {
    // calibrate on (1,1): the sign s with fourier(P, inverse) = s·Q
    let base = ft_pair(&w(&[1, 1])).map_err(|e| e.to_string())?;
    let image = fourier(&base.p, Direction::Inverse).map_err(|e| e.to_string())?;
    let s = [int(1), int(-1)]
        .into_iter()
        .find(|s| image == base.q.scale(s))
        .ok_or("no sign works for (1,1)")?;
    if s != ft_sign(2) || int(FT_CALIBRATION) != ft_sign(0) {
        return Err(format!(
            "calibration {s} disagrees with the stored convention"
        ));
    }
    let mut count = 0;
    for x in sweep(1..=3, 4, true) {
        let pair = ft_pair(&x).map_err(|e| e.to_string())?;
        let lhs = fourier(&pair.p, Direction::Inverse).map_err(|e| e.to_string())?;
        if lhs != pair.q.scale(&ft_sign(x.d())) {
            return Err(format!("{x}"));
        }
        count += 1;
    }
    println!("      ({count} primitive tuples)");
    Ok(())
}

fn random_param(rng: &mut ChaCha8Rng) -> Rational {
    rat(
        rng.gen_range(-MAX_NUMERATOR..=MAX_NUMERATOR),
        rng.gen_range(1..=MAX_DENOMINATOR),
    )
}

fn c5_indicial() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(INDICIAL_SEED);
    let mut done = 0;
    while done < INDICIAL_CASES {
        let k = rng.gen_range(1..=5);
        let alpha: Vec<Rational> = (0..k).map(|_| random_param(&mut rng)).collect();
        let beta: Vec<Rational> = (0..k).map(|_| random_param(&mut rng)).collect();
        let (a, b) = (ms(&alpha), ms(&beta));
        if !a.disjoint_mod_z(&b) {
            continue;
        }
        let mut gamma = random_param(&mut rng);
        if gamma == int(0) {
            gamma = int(1);
        }
        let h = make_hyp(gamma.clone(), a, b, true).map_err(|e| e.to_string())?;
        let op = hyp_operator(&h);
        let mut sa = alpha.clone();
        sa.sort();
        let mut sb = beta.clone();
        sb.sort();
        let zero = indicial_polynomial(&op, Place::Zero).map_err(|e| e.to_string())?;
        let inf = indicial_polynomial(&op, Place::Infinity).map_err(|e| e.to_string())?;
        if zero.roots() != sa || inf.roots() != sb {
            return Err(format!("exponents of {h}"));
        }
        let s = singular_support(&op).map_err(|e| e.to_string())?;
        if s.rational_points != [gamma] || !s.irreducible_factors.is_empty() {
            return Err(format!("singular support of {h}"));
        }
        done += 1;
    }
    Ok(())
}

fn c6_sweep() -> Result<(), String> {
    let all = sweep(1..=4, 5, true);
    let mut by_multiset: BTreeMap<Vec<u64>, Vec<Weights>> = BTreeMap::new();
    for x in &all {
        by_multiset
            .entry(x.sorted().as_slice().to_vec())
            .or_default()
            .push(x.clone());
    }
    for (key, group) in &by_multiset {
        let x = w(key);
        let d = x.d() as i64;
        let h = invariant_hyp(&x).map_err(|e| e.to_string())?;
        let c = c_set(&x);
        let b = g_block(&x).map_err(|e| e.to_string())?;
        if b.exps_zero != h.alpha.union(&c) || b.exps_infinity != h.beta.union(&c) {
            return Err(format!("{x}: exponent identity"));
        }
        if h.alpha.len() + c.len() != (d - 1) as usize {
            return Err(format!("{x}: |alpha| + |C| != d - 1"));
        }
        if !h.is_irreducible() {
            return Err(format!("{x}: reducible"));
        }
        if euler_char(&b.factor_list()).map_err(|e| e.to_string())? != -1 {
            return Err(format!("{x}: chi"));
        }
        if !c.values().iter().all(|a| is_integer(&(a * int(d)))) {
            return Err(format!("{x}: d*alpha not integral"));
        }
        let reference = full_report(&x).map_err(|e| e.to_string())?;
        for p in group {
            if !full_report(p)
                .map_err(|e| e.to_string())?
                .same_structure(&reference)
            {
                return Err(format!("{p}: differs from {x}"));
            }
        }
    }
    println!(
        "      ({} primitive tuples, {} multisets)",
        all.len(),
        by_multiset.len()
    );
    Ok(())
}

fn c7_syzygy() -> Result<(), String> {
    for x in sweep(1..=4, 4, false) {
        let n = x.n();
        let g = jacobian_generators(&x);
        let gens = syzygy_generators(&x).map_err(|e| format!("{x}: {e}"))?;
        if gens.len() != 1 + n * (n - 1) / 2 || !verify_syzygies(&x) {
            return Err(format!("{x}: generators"));
        }
        for s in &gens {
            if let SyzygyKind::Koszul(i, j) = s.kind {
                let xi = MultiPoly::var(n, i);
                let xj = MultiPoly::var(n, j);
                if s.components[i] != &xi * &l_factor(&x, j)
                    || s.components[j] != -&(&xj * &l_factor(&x, i))
                {
                    return Err(format!("{x}: koszul ({i},{j})"));
                }
            }
        }
        for i in 1..=n {
            if g[i] != factored_partial(&x, i) {
                return Err(format!("{x}: partial {i}"));
            }
        }
    }
    for x in sweep(1..=3, 3, false) {
        for r in generation_dims(&x, x.d() as u32 + 4) {
            if r.kernel != r.span {
                return Err(format!(
                    "{x}: degree {} kernel {} span {}",
                    r.degree, r.kernel, r.span
                ));
            }
        }
    }
    Ok(())
}

fn c8a_euler_identity() -> Result<(), String> {
    let mut bad = Vec::new();
    for n in 2..=7 {
        let (table, triangle) = local_cohomology_euler_sides(n).map_err(|e| e.to_string())?;
        if table != triangle {
            bad.push(format!("n={n}: {table} vs {triangle}"));
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join(", "))
    }
}

fn c8b_fragments() -> Result<(), String> {
    for n in 2..=7i64 {
        if !les_fragments_hold(n).map_err(|e| e.to_string())? {
            return Err(format!("n = {n}"));
        }
        for l in 1..=7usize {
            if central_oracle(n as usize, l) != mobius_betti(n as usize, l) {
                return Err(format!("oracles disagree at ({n}, {l})"));
            }
        }
        if nbc_oracle(n as usize, (n - 1) as usize).total() == 0 {
            return Err("empty oracle".into());
        }
    }
    Ok(())
}

fn c8c_tn() -> Result<(), String> {
    for n in 2..=7 {
        if !tn_matches_oracle(n).map_err(|e| e.to_string())? {
            return Err(format!("oracle, n = {n}"));
        }
    }
    for x in sweep(2..=4, 5, false) {
        if !tn_matches_m_table(&x).map_err(|e| e.to_string())? {
            return Err(format!("m_table, {x}"));
        }
    }
    Ok(())
}

fn c8d_milnor() -> Result<(), String> {
    for x in sweep(2..=4, 5, true) {
        let fiber = milnor_fiber_dims(&x).map_err(|e| e.to_string())?;
        let n = x.n() as u64;
        let mut ext = x.as_slice().to_vec();
        ext.push(1);
        let m = m_table(&w(&ext)).map_err(|e| e.to_string())?;
        if fiber.get(0) != n + x.d() - 1
            || m.rank_at(0) != (n - 1) + x.d()
            || fiber.get(0) != m.rank_at(0)
        {
            return Err(format!("{x}: degree 0"));
        }
        if !milnor_matches_m_table(&x).map_err(|e| e.to_string())? {
            return Err(format!("{x}: negative degrees"));
        }
    }
    Ok(())
}

fn c9_non_primitive() -> Result<(), String> {
    let direct = full_report(&w(&[2, 4, 6])).map_err(|e| e.to_string())?;
    let base = full_report(&w(&[1, 2, 3])).map_err(|e| e.to_string())?;
    let wrapped = wrap_pushforward(&base, 2).map_err(|e| e.to_string())?;
    if direct != wrapped {
        return Err("report differs from the wrapped base".into());
    }
    if direct.to_json_string() != wrapped.to_json_string() {
        return Err("json differs".into());
    }
    let t = k_table(&w(&[2, 4, 6]));
    if t.sums[&-1] != FactorList::new(vec![Factor::kummer(&rat(1, 2)), Factor::Structure]) {
        return Err(format!("degree -1: {}", t.sums[&-1]));
    }
    Ok(())
}

fn c10_base_case() -> Result<(), String> {
    for a in 1..=7u64 {
        for b in 1..=7u64 {
            let x = w(&[a, b]);
            if !x.is_primitive() {
                continue;
            }
            let arg = format!("{a},{b}");
            let (code, doc) = run(&["report", "--weights", &arg, "--json"]);
            if code != 0 {
                return Err(format!("{x}: exit {code}"));
            }
            if doc["g_block"]["rank"] != Value::from(x.d() - 1) {
                return Err(format!("{x}: rank {}", doc["g_block"]["rank"]));
            }
            if doc["g_block"]["finite_singularity"] != doc["gamma"] {
                return Err(format!("{x}: singularity"));
            }
            let keys: Vec<&String> = doc["cohomology"].as_object().unwrap().keys().collect();
            if keys != ["0"] {
                return Err(format!("{x}: cohomology degrees {keys:?}"));
            }
            let r = full_report(&x).map_err(|e| e.to_string())?;
            let s = singular_support(&hyp_operator(r.g_block.hyp.underlying()))
                .map_err(|e| e.to_string())?;
            if s.rational_points != [r.gamma.clone()] {
                return Err(format!("{x}: operator singularities"));
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, &'static str, fn() -> Result<(), String>);

fn main() -> ExitCode {
    let criteria: &[Criterion] = &[
        ("1", "classical quintic report", c1_classical),
        ("2", "weights (1,2,3) report", c2_mixed),
        ("3", "Euler product identity, d <= 12", c3_weyl_identity),
        (
            "4",
            "Fourier pair with calibrated sign, n <= 3, w_i <= 4",
            c4_fourier,
        ),
        (
            "5",
            "indicial roots and singular support, 200 seeded cases",
            c5_indicial,
        ),
        (
            "6",
            "consistency sweep, primitive n <= 4, w_i <= 5",
            c6_sweep,
        ),
        ("7", "syzygy identities and generation", c7_syzygy),
        (
            "8a",
            "local cohomology alternating sum vs triangle, 2 <= n <= 7",
            c8a_euler_identity,
        ),
        (
            "8b",
            "long exact sequence fragments vs NBC oracle, 2 <= n <= 7",
            c8b_fragments,
        ),
        ("8c", "T_n table vs central oracle and M_n", c8c_tn),
        ("8d", "Milnor fiber table vs M_{n+1}", c8d_milnor),
        (
            "9",
            "(2,4,6) is the pushforward of (1,2,3)",
            c9_non_primitive,
        ),
        ("10", "base case n = 1", c10_base_case),
    ];
    let mut unexpected = Vec::new();
    let start = Instant::now();
    for (id, name, f) in criteria {
        let t = Instant::now();
        let result = f();
        let known = KNOWN_FAILURES.contains(id);
        let status = if result.is_ok() { "PASS" } else { "FAIL" };
        let note = match (&result, known) {
            (Err(e), true) => format!(" [known failure] {e}"),
            (Err(e), false) => format!(" {e}"),
            (Ok(()), true) => " [expected to fail but passed]".into(),
            (Ok(()), false) => String::new(),
        };
        println!(
            "{status} {id:>3}  {name}  tol={TOLERANCE}  {:.2}s{note}",
            t.elapsed().as_secs_f64()
        );
        if result.is_ok() == known {
            unexpected.push(*id);
        }
    }
    println!("total {:.2}s", start.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcome for: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
