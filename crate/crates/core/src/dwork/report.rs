use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::gblock::pushed_block;
use super::{
    c_set, coarse_rank_bounds_hold, fibers_for, ft_pair, g_block, gamma_n, k_table, m_table,
    singular_fibers, CohomologyTable, DworkError, GBlock, GHyp, SingularFibers, Weights,
};
use crate::hypergeom::{
    euler_char, power_pullback, power_pullback_hyp, ExpMultiset, Factor, FactorList, HypModule,
    KummerModule, PulledExponents,
};
use crate::rational::{int, is_integer, Rational};
use crate::weyl::{ft_sign, indicial_polynomial, singular_support, Place, WeylOp};

/// How the invariant part relates to the hypergeometric module: it is the
/// middle extension at 0 of the pullback along λ ↦ λ^{−d}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantStatement {
    pub pullback_exponent: i64,
    pub middle_extension: String,
    /// Exponent bookkeeping of the pulled-back hypergeometric module.
    pub hyp_pullback: PulledExponents,
    /// (α, image of K_α under the pullback) for α in the C-set.
    pub kummer_images: Vec<(Rational, Factor)>,
    pub constant_part: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FtSummary {
    pub p: WeylOp,
    pub q: WeylOp,
    pub sign: Rational,
    pub rhs: String,
    pub relation_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMReport {
    pub weights: Weights,
    pub n: usize,
    pub d: u64,
    pub e: u64,
    pub gamma: Rational,
    pub singular_fibers: SingularFibers,
    pub cohomology: CohomologyTable,
    pub g_block: GBlock,
    pub invariant_statement: InvariantStatement,
    pub ft: FtSummary,
    /// Are all exponents at the origin integral?
    pub integral_exponents: bool,
    /// For non-primitive weights: (e, report of w/e).
    pub pushforward: Option<(u64, Box<GMReport>)>,
    pub checks: Vec<Check>,
}

impl GMReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.pass)
    }

    /// Equality of everything except the literal weight tuple.
    pub fn same_structure(&self, other: &GMReport) -> bool {
        let base_eq = match (&self.pushforward, &other.pushforward) {
            (None, None) => true,
            (Some((a, x)), Some((b, y))) => a == b && x.same_structure(y),
            _ => false,
        };
        base_eq
            && self.n == other.n
            && self.d == other.d
            && self.e == other.e
            && self.gamma == other.gamma
            && self.singular_fibers == other.singular_fibers
            && self.cohomology == other.cohomology
            && self.g_block == other.g_block
            && self.invariant_statement == other.invariant_statement
            && self.ft == other.ft
            && self.integral_exponents == other.integral_exponents
            && self.checks == other.checks
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const MIDDLE_EXTENSION: &str = "j_!+ at 0 of the pullback of H along z -> z^(-d)";
const CONSTANT_PART: &str =
    "the difference between the equivariant direct image and its nonconstant part is a direct sum of copies of O (multiplicity not computed)";

fn invariant_statement(w: &Weights, block: &GBlock) -> Result<InvariantStatement, DworkError> {
    let d = w.d() as i64;
    let kummer_images = block
        .c_set
        .canonical()
        .into_iter()
        .map(|a| {
            let img = power_pullback(&KummerModule::new(a.clone()), -d)?;
            Ok((a, img))
        })
        .collect::<Result<Vec<_>, DworkError>>()?;
    let base = block.hyp.underlying();
    Ok(InvariantStatement {
        pullback_exponent: -d,
        middle_extension: MIDDLE_EXTENSION.into(),
        hyp_pullback: power_pullback_hyp(base, -(d / block.hyp.pushforward_degree() as i64))?,
        kummer_images,
        constant_part: CONSTANT_PART.into(),
    })
}

fn roots_match(op: &WeylOp, place: Place, expect: &ExpMultiset) -> Result<bool, DworkError> {
    let ind = indicial_polynomial(op, place)?;
    Ok(ind.irrational_factors().is_empty() && ExpMultiset::new(ind.roots()) == *expect)
}

fn run_checks(w: &Weights, rep: &GMReport) -> Result<Vec<Check>, DworkError> {
    let g = &rep.g_block;
    let n = w.n() as i64;
    let rank = w.d() - w.e();
    let base: &HypModule = g.hyp.underlying();
    let op = base.operator();
    let sing = singular_support(&op)?;
    let e = g.hyp.pushforward_degree();

    let mut checks = vec![
        ("rank_is_d_minus_e", g.rank == rank),
        (
            "chi_is_minus_one",
            g.chi == -1 && euler_char(&g.factor_list())? == -1,
        ),
        (
            "exponent_counts",
            g.exps_zero.len() as u64 == rank && g.exps_infinity.len() as u64 == rank,
        ),
        (
            "exps_zero_is_alpha_plus_c",
            g.exps_zero == g.hyp.alpha().union(&g.c_set),
        ),
        (
            "exps_infinity_is_beta_plus_c",
            g.exps_infinity == g.hyp.beta().union(&g.c_set),
        ),
        (
            "alpha_plus_c_is_rank",
            (g.hyp.alpha().len() + g.c_set.len()) as u64 == rank
                && g.hyp.alpha().len() == g.hyp.beta().len(),
        ),
        ("hyp_irreducible", base.is_irreducible()),
        ("indicial_zero", roots_match(&op, Place::Zero, &base.alpha)?),
        (
            "indicial_infinity",
            roots_match(&op, Place::Infinity, &base.beta)?,
        ),
        (
            "finite_singularity",
            sing.rational_points == [base.gamma.clone()]
                && sing.irreducible_factors.is_empty()
                && sing.regular_at_zero
                && sing.regular_at_infinity
                && base.gamma.pow(e as i32) == g.finite_singularity
                && g.finite_singularity == rep.gamma,
        ),
        ("fourier_relation", rep.ft.relation_holds),
        (
            "c_set_pulls_back_to_structure",
            g.c_set
                .values()
                .iter()
                .all(|a| is_integer(&(a * int(w.d() as i64))))
                && rep
                    .invariant_statement
                    .kummer_images
                    .iter()
                    .all(|(_, f)| *f == Factor::Structure),
        ),
        (
            "k_table_window",
            rep.cohomology.within_window()
                && rep.cohomology.lo == -(n - 1)
                && rep.cohomology.hi == 0,
        ),
        (
            "coarse_rank_bounds",
            coarse_rank_bounds_hold(w, &rep.cohomology),
        ),
    ];
    if w.n() >= 2 {
        let m = m_table(w)?;
        checks.push(("m_table_window", m.within_window() && m.lo == -(n - 2)));
    }
    if w.is_primitive() {
        checks.push(("c_set_definition", g.c_set == c_set(w)));
    } else {
        let base_w = w.divided(w.e());
        checks.push((
            "pushforward_gamma",
            gamma_n(&base_w).pow(w.e() as i32) == rep.gamma,
        ));
    }
    Ok(checks
        .into_iter()
        .map(|(name, pass)| Check { name, pass })
        .collect())
}

fn ft_summary(w: &Weights) -> Result<FtSummary, DworkError> {
    let pair = ft_pair(w)?;
    Ok(FtSummary {
        relation_holds: pair.relation_holds()?,
        sign: ft_sign(w.d()),
        rhs: format!("[{}]^+ {}", pair.pullback_degree, pair.rhs),
        p: pair.p,
        q: pair.q,
    })
}

fn assemble(
    w: &Weights,
    gamma: Rational,
    fibers: SingularFibers,
    cohomology: CohomologyTable,
    block: GBlock,
    pushforward: Option<(u64, Box<GMReport>)>,
) -> Result<GMReport, DworkError> {
    let mut rep = GMReport {
        weights: w.clone(),
        n: w.n(),
        d: w.d(),
        e: w.e(),
        gamma,
        singular_fibers: fibers,
        cohomology,
        integral_exponents: block.exps_zero.all_integral(),
        invariant_statement: invariant_statement(w, &block)?,
        g_block: block,
        ft: ft_summary(w)?,
        pushforward,
        checks: Vec::new(),
    };
    rep.checks = run_checks(w, &rep)?;
    Ok(rep)
}

/// The full structural report for a weight tuple. Non-primitive tuples carry
/// the report of w/e alongside.
pub fn full_report(w: &Weights) -> Result<GMReport, DworkError> {
    let pushforward = if w.is_primitive() {
        None
    } else {
        Some((w.e(), Box::new(full_report(&w.divided(w.e()))?)))
    };
    assemble(
        w,
        gamma_n(w),
        singular_fibers(w),
        k_table(w),
        g_block(w)?,
        pushforward,
    )
}

/// Report for e·w built only from the report of w, by pushing every piece
/// forward along z ↦ z^e.
pub fn wrap_pushforward(base: &GMReport, e: u64) -> Result<GMReport, DworkError> {
    let w = base.weights.scaled(e);
    let gamma = base.gamma.pow(e as i32);
    let fibers = fibers_for(&gamma, w.d());
    let mut cohomology = base.cohomology.clone();
    for list in cohomology.sums.values_mut() {
        *list = crate::hypergeom::power_pushforward_list(list, e)?;
    }
    if let Some(top) = cohomology.top.as_mut() {
        top.quotient = crate::hypergeom::power_pushforward_list(&top.quotient, e)?;
        top.sub_rank = w.d() - w.e();
    }
    let block = pushed_block(&base.g_block, e, &w)?;
    let inner = match &base.pushforward {
        None => base.clone(),
        Some((_, b)) => (**b).clone(),
    };
    let total_e = e * base.e;
    assemble(
        &w,
        gamma,
        fibers,
        cohomology,
        block,
        Some((total_e, Box::new(inner))),
    )
}

fn rat_str(r: &Rational) -> String {
    r.to_string()
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

fn factors_json(l: &FactorList) -> Vec<String> {
    l.sorted().iter().map(|f| f.to_string()).collect()
}

#[derive(Serialize)]
struct HypJson {
    display: String,
    gamma: String,
    alpha: Vec<String>,
    beta: Vec<String>,
}

fn hyp_json(h: &HypModule) -> HypJson {
    HypJson {
        display: h.to_string(),
        gamma: rat_str(&h.gamma),
        alpha: rats(&h.alpha.canonical()),
        beta: rats(&h.beta.canonical()),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum GHypJson {
    Direct(HypJson),
    Pushed {
        display: String,
        pushforward_degree: u64,
        base: HypJson,
    },
}

#[derive(Serialize)]
struct SequenceJson<'a> {
    left: &'a str,
    middle: &'a str,
    right: &'a str,
    split: &'static str,
}

#[derive(Serialize)]
struct GBlockJson<'a> {
    rank: u64,
    c_set: Vec<String>,
    hyp: GHypJson,
    exps_zero: Vec<String>,
    exps_infinity: Vec<String>,
    chi: i64,
    finite_singularity: String,
    sequences: Vec<SequenceJson<'a>>,
}

fn g_block_json(g: &GBlock) -> GBlockJson<'_> {
    let hyp = match &g.hyp {
        GHyp::Direct(h) => GHypJson::Direct(hyp_json(h)),
        GHyp::Pushed { e, base } => GHypJson::Pushed {
            display: g.hyp.to_string(),
            pushforward_degree: *e,
            base: hyp_json(base),
        },
    };
    GBlockJson {
        rank: g.rank,
        c_set: rats(&g.c_set.canonical()),
        hyp,
        exps_zero: rats(&g.exps_zero.canonical()),
        exps_infinity: rats(&g.exps_infinity.canonical()),
        chi: g.chi,
        finite_singularity: rat_str(&g.finite_singularity),
        sequences: g
            .sequences
            .iter()
            .map(|s| SequenceJson {
                left: &s.left,
                middle: &s.middle,
                right: &s.right,
                split: "unknown",
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct SumJson {
    rank: u64,
    factors: Vec<String>,
}

#[derive(Serialize)]
struct RankJson {
    rank: u64,
}

#[derive(Serialize)]
struct TopJson {
    g_block: RankJson,
    constant_quotient: SumJson,
}

struct CohomologyJson<'a>(&'a CohomologyTable);

impl Serialize for CohomologyJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let t = self.0;
        let mut map = s.serialize_map(None)?;
        for i in t.lo..=t.hi {
            let key = i.to_string();
            match (&t.top, i == t.hi) {
                (Some(top), true) => map.serialize_entry(
                    &key,
                    &TopJson {
                        g_block: RankJson { rank: top.sub_rank },
                        constant_quotient: SumJson {
                            rank: top.quotient.len() as u64,
                            factors: factors_json(&top.quotient),
                        },
                    },
                )?,
                _ => {
                    let l = t.sums.get(&i).cloned().unwrap_or_default();
                    map.serialize_entry(
                        &key,
                        &SumJson {
                            rank: l.len() as u64,
                            factors: factors_json(&l),
                        },
                    )?
                }
            }
        }
        map.end()
    }
}

struct ChecksJson<'a>(&'a [Check]);

impl Serialize for ChecksJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for c in self.0 {
            map.serialize_entry(c.name, &c.pass)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct FibersJson {
    poly: String,
    rational_roots: Vec<String>,
}

#[derive(Serialize)]
struct StatementJson {
    pullback_exponent: i64,
    middle_extension: String,
    hyp_pullback: PulledJson,
    kummer_images: BTreeMap<String, String>,
    constant_part: String,
}

#[derive(Serialize)]
struct PulledJson {
    degree: i64,
    alpha: Vec<String>,
    beta: Vec<String>,
}

#[derive(Serialize)]
struct FtJson {
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "Q")]
    q: String,
    sign: i64,
    rhs: String,
    relation_holds: bool,
}

#[derive(Serialize)]
struct PushJson<'a> {
    e: u64,
    base: &'a GMReport,
}

impl Serialize for GMReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("weights", self.weights.as_slice())?;
        map.serialize_entry("n", &self.n)?;
        map.serialize_entry("d", &self.d)?;
        map.serialize_entry("e", &self.e)?;
        map.serialize_entry("gamma", &rat_str(&self.gamma))?;
        map.serialize_entry(
            "singular_fibers",
            &FibersJson {
                poly: self.singular_fibers.poly.render("t"),
                rational_roots: rats(&self.singular_fibers.rational_roots),
            },
        )?;
        map.serialize_entry("cohomology", &CohomologyJson(&self.cohomology))?;
        map.serialize_entry("g_block", &g_block_json(&self.g_block))?;
        let st = &self.invariant_statement;
        map.serialize_entry(
            "invariant_statement",
            &StatementJson {
                pullback_exponent: st.pullback_exponent,
                middle_extension: st.middle_extension.clone(),
                hyp_pullback: PulledJson {
                    degree: st.hyp_pullback.d,
                    alpha: rats(&st.hyp_pullback.alpha.values().to_vec()),
                    beta: rats(&st.hyp_pullback.beta.values().to_vec()),
                },
                kummer_images: st
                    .kummer_images
                    .iter()
                    .map(|(a, f)| (rat_str(a), f.to_string()))
                    .collect(),
                constant_part: st.constant_part.clone(),
            },
        )?;
        map.serialize_entry(
            "ft",
            &FtJson {
                p: self.ft.p.to_string(),
                q: self.ft.q.to_string(),
                sign: if self.ft.sign == int(1) { 1 } else { -1 },
                rhs: self.ft.rhs.clone(),
                relation_holds: self.ft.relation_holds,
            },
        )?;
        map.serialize_entry("integral_exponents", &self.integral_exponents)?;
        if let Some((e, base)) = &self.pushforward {
            map.serialize_entry("pushforward", &PushJson { e: *e, base })?;
        }
        map.serialize_entry("checks", &ChecksJson(&self.checks))?;
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn w(v: &[i64]) -> Weights {
        Weights::new(v).unwrap()
    }

    #[test]
    fn quintic_report() {
        let r = full_report(&w(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(r.gamma, rat(1, 3125));
        assert!(r.g_block.c_set.is_empty());
        assert_eq!(r.singular_fibers.rational_roots, vec![int(5)]);
        assert!(r.all_checks_pass(), "{:?}", r.checks);
        let j = r.to_json();
        assert_eq!(j["gamma"], "1/3125");
        assert_eq!(j["cohomology"]["-2"]["rank"], 4);
        assert_eq!(j["g_block"]["chi"], -1);
    }

    #[test]
    fn json_key_order_is_stable() {
        let s = full_report(&w(&[1, 2, 3])).unwrap().to_json_string();
        let keys = [
            "\"weights\"",
            "\"n\"",
            "\"d\"",
            "\"e\"",
            "\"gamma\"",
            "\"singular_fibers\"",
            "\"cohomology\"",
            "\"g_block\"",
            "\"invariant_statement\"",
            "\"ft\"",
            "\"checks\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn non_primitive_report_wraps_its_base() {
        let direct = full_report(&w(&[2, 4, 6])).unwrap();
        let wrapped = wrap_pushforward(&full_report(&w(&[1, 2, 3])).unwrap(), 2).unwrap();
        assert_eq!(direct, wrapped);
        assert!(direct.all_checks_pass(), "{:?}", direct.checks);
    }

    #[test]
    fn base_case_single_variable() {
        let r = full_report(&w(&[2, 3])).unwrap();
        assert_eq!(r.g_block.rank, 4);
        assert!(r.cohomology.sums.is_empty());
        assert!(r.all_checks_pass(), "{:?}", r.checks);
    }
}
