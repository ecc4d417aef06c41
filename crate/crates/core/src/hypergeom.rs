//! Hypergeometric and Kummer data as formal objects: cancellation,
//! irreducibility, exponents, twists, pushforward and pullback along power
//! maps, and Euler characteristics of composition-factor lists.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::dwork::Weights;
use crate::factor::factor;
use crate::rational::{class_rep, int, is_integer, pow, Rational};
use crate::weyl::{euler_expansion, Place, WeylOp};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HypError {
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("hypergeometric datum is reducible: some alpha - beta is an integer")]
    Reducible,
    #[error("factor list contains a reducible hypergeometric entry")]
    ReducibleFactor,
    #[error("power map degree must be nonzero")]
    ZeroDegree,
    #[error("pushforward degree must be positive")]
    NonPositivePushforward,
    #[error("{d_prev} * {alpha} is not an integer")]
    FiberPrecondition { alpha: Rational, d_prev: u64 },
    #[error("operator is not of the form g*P(D) - t*Q(D): {0}")]
    NotHypergeometric(String),
}

/// Multiset of exponents. Values are stored as given; comparison is by
/// classes mod ℤ, with multiplicity.
#[derive(Clone, Debug, Default)]
pub struct ExpMultiset {
    values: Vec<Rational>,
}

impl ExpMultiset {
    pub fn new(values: Vec<Rational>) -> Self {
        ExpMultiset { values }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Class representative in (0, 1] ↦ multiplicity.
    pub fn classes(&self) -> BTreeMap<Rational, usize> {
        let mut m = BTreeMap::new();
        for v in &self.values {
            *m.entry(class_rep(v)).or_insert(0) += 1;
        }
        m
    }

    /// Representatives in (0, 1], ascending, with repetition.
    pub fn canonical(&self) -> Vec<Rational> {
        let mut v: Vec<_> = self.values.iter().map(class_rep).collect();
        v.sort();
        v
    }

    pub fn multiplicity(&self, a: &Rational) -> usize {
        let r = class_rep(a);
        self.values.iter().filter(|v| class_rep(v) == r).count()
    }

    pub fn union(&self, other: &ExpMultiset) -> ExpMultiset {
        let mut v = self.values.clone();
        v.extend(other.values.iter().cloned());
        ExpMultiset::new(v)
    }

    /// Remove one element of the class of `a`; `false` if absent.
    pub fn remove_class(&mut self, a: &Rational) -> bool {
        let r = class_rep(a);
        match self.values.iter().position(|v| class_rep(v) == r) {
            Some(i) => {
                self.values.remove(i);
                true
            }
            None => false,
        }
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> ExpMultiset {
        ExpMultiset::new(self.values.iter().map(f).collect())
    }

    pub fn shifted(&self, eta: &Rational) -> ExpMultiset {
        self.map(|v| v + eta)
    }

    pub fn scaled(&self, k: &Rational) -> ExpMultiset {
        self.map(|v| v * k)
    }

    /// `true` iff no class is shared with `other`.
    pub fn disjoint_mod_z(&self, other: &ExpMultiset) -> bool {
        let mine = self.classes();
        other.classes().keys().all(|c| !mine.contains_key(c))
    }

    pub fn all_integral(&self) -> bool {
        self.values.iter().all(is_integer)
    }
}

impl PartialEq for ExpMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.classes() == other.classes()
    }
}

impl Eq for ExpMultiset {}

impl fmt::Display for ExpMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.canonical().iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromIterator<Rational> for ExpMultiset {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        ExpMultiset::new(iter.into_iter().collect())
    }
}

/// Removes, class by class, as many members from each side as the other side
/// has. The first occurrences in input order are the ones dropped.
pub fn cancel(alpha: &ExpMultiset, beta: &ExpMultiset) -> (ExpMultiset, ExpMultiset) {
    let ca = alpha.classes();
    let cb = beta.classes();
    let mut budget: BTreeMap<Rational, usize> = BTreeMap::new();
    for (c, &m) in &ca {
        if let Some(&n) = cb.get(c) {
            budget.insert(c.clone(), m.min(n));
        }
    }
    let strip = |side: &ExpMultiset| {
        let mut left = budget.clone();
        side.values
            .iter()
            .filter(|v| match left.get_mut(&class_rep(v)) {
                Some(k) if *k > 0 => {
                    *k -= 1;
                    false
                }
                _ => true,
            })
            .cloned()
            .collect::<ExpMultiset>()
    };
    (strip(alpha), strip(beta))
}

/// Rank-one module 𝒟/(D − α), identified up to α mod ℤ.
#[derive(Clone, Debug)]
pub struct KummerModule {
    pub alpha: Rational,
}

impl KummerModule {
    pub fn new(alpha: Rational) -> Self {
        KummerModule { alpha }
    }

    pub fn is_trivial(&self) -> bool {
        is_integer(&self.alpha)
    }

    pub fn operator(&self) -> WeylOp {
        WeylOp::euler_shift(&self.alpha)
    }

    pub fn as_factor(&self) -> Factor {
        Factor::kummer(&self.alpha)
    }
}

impl PartialEq for KummerModule {
    fn eq(&self, other: &Self) -> bool {
        is_integer(&(&self.alpha - &other.alpha))
    }
}

impl Eq for KummerModule {}

/// H_γ(α; β), the module of γ∏(D − αᵢ) − λ∏(D − βⱼ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypModule {
    pub gamma: Rational,
    pub alpha: ExpMultiset,
    pub beta: ExpMultiset,
}

pub fn make_hyp(
    gamma: Rational,
    alpha: ExpMultiset,
    beta: ExpMultiset,
    reduce: bool,
) -> Result<HypModule, HypError> {
    if gamma.is_zero() {
        return Err(HypError::ZeroGamma);
    }
    let (alpha, beta) = if reduce {
        cancel(&alpha, &beta)
    } else {
        (alpha, beta)
    };
    Ok(HypModule { gamma, alpha, beta })
}

impl HypModule {
    /// (|α|, |β|)
    pub fn hyp_type(&self) -> (usize, usize) {
        (self.alpha.len(), self.beta.len())
    }

    pub fn is_delta(&self) -> bool {
        self.hyp_type() == (0, 0)
    }

    pub fn rank(&self) -> usize {
        self.alpha.len().max(self.beta.len())
    }

    pub fn is_irreducible(&self) -> bool {
        self.alpha.disjoint_mod_z(&self.beta)
    }

    pub fn exponents(&self, place: Place) -> Result<ExpMultiset, HypError> {
        if !self.is_irreducible() {
            return Err(HypError::Reducible);
        }
        Ok(match place {
            Place::Zero => self.alpha.clone(),
            Place::Infinity => self.beta.clone(),
        })
    }

    pub fn operator(&self) -> WeylOp {
        hyp_operator(self)
    }

    pub fn kummer_twist(&self, eta: &Rational) -> HypModule {
        HypModule {
            gamma: self.gamma.clone(),
            alpha: self.alpha.shifted(eta),
            beta: self.beta.shifted(eta),
        }
    }
}

impl fmt::Display for HypModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hyp(gamma={}; alpha={}; beta={})",
            self.gamma, self.alpha, self.beta
        )
    }
}

/// γ∏(D − αᵢ) − λ∏(D − βⱼ), using the stored representatives.
pub fn hyp_operator(h: &HypModule) -> WeylOp {
    let a = WeylOp::euler_product(h.alpha.values()).scale(&h.gamma);
    let b = &WeylOp::lambda() * &WeylOp::euler_product(h.beta.values());
    &a - &b
}

/// What the operator of a hypergeometric module determines about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredHyp {
    pub n: usize,
    pub m: usize,
    pub alpha: ExpMultiset,
    pub beta: ExpMultiset,
    /// Only reported for n = m.
    pub gamma: Option<Rational>,
}

/// Reads (n, m, α, β) and, for n = m, γ back from an operator of the shape
/// c·(γ∏(D − αᵢ) − λ∏(D − βⱼ)).
pub fn recover_from_operator(op: &WeylOp) -> Result<RecoveredHyp, HypError> {
    let exp = euler_expansion(op);
    let keys: Vec<i64> = exp.keys().copied().collect();
    if keys != [0, 1] {
        return Err(HypError::NotHypergeometric(format!(
            "graded pieces in degrees {keys:?}"
        )));
    }
    let (q0, q1) = (&exp[&0], &exp[&1]);
    let roots = |q: &crate::UPoly| -> Result<ExpMultiset, HypError> {
        let fac = factor(q);
        if !fac.nonlinear().is_empty() {
            return Err(HypError::NotHypergeometric("irrational exponents".into()));
        }
        Ok(ExpMultiset::new(fac.rational_roots()))
    };
    let n = q0.degree().unwrap_or(0);
    let m = q1.degree().unwrap_or(0);
    Ok(RecoveredHyp {
        n,
        m,
        alpha: roots(q0)?,
        beta: roots(q1)?,
        gamma: (n == m).then(|| -q0.leading() / q1.leading()),
    })
}

/// A composition factor on the punctured line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// The structure sheaf, i.e. the Kummer module of an integer exponent.
    Structure,
    /// Kummer module of a non-integral class, stored by its (0, 1) representative.
    Kummer(Rational),
    Hyp(HypModule),
    /// [e]_+ of an irreducible hypergeometric module, kept unexpanded.
    PushedHyp {
        e: u64,
        base: HypModule,
    },
    /// Delta module supported at a point.
    Delta(Rational),
}

impl Factor {
    pub fn kummer(alpha: &Rational) -> Factor {
        if is_integer(alpha) {
            Factor::Structure
        } else {
            Factor::Kummer(class_rep(alpha))
        }
    }

    pub fn euler_char(&self) -> Result<i64, HypError> {
        match self {
            Factor::Structure | Factor::Kummer(_) => Ok(0),
            Factor::Delta(_) => Ok(-1),
            Factor::Hyp(h) | Factor::PushedHyp { base: h, .. } => {
                if h.is_irreducible() {
                    Ok(-1)
                } else {
                    Err(HypError::ReducibleFactor)
                }
            }
        }
    }

    /// Kummer exponent class of a rank-one factor.
    pub fn kummer_class(&self) -> Option<Rational> {
        match self {
            Factor::Structure => Some(Rational::one()),
            Factor::Kummer(a) => Some(a.clone()),
            _ => None,
        }
    }

    fn sort_key(&self) -> (u8, Rational, String) {
        let zero = Rational::zero();
        match self {
            Factor::Structure => (0, zero, String::new()),
            Factor::Kummer(a) => (1, a.clone(), String::new()),
            Factor::Delta(c) => (2, c.clone(), String::new()),
            Factor::Hyp(h) => (3, zero, h.to_string()),
            Factor::PushedHyp { e, base } => (4, zero, format!("{e} {base}")),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Structure => f.write_str("O"),
            Factor::Kummer(a) => write!(f, "K({a})"),
            Factor::Hyp(h) => write!(f, "{h}"),
            Factor::PushedHyp { e, base } => write!(f, "[{e}]_+ {base}"),
            Factor::Delta(c) => write!(f, "Delta({c})"),
        }
    }
}

/// Multiset of composition factors; equality ignores order.
#[derive(Clone, Debug, Default)]
pub struct FactorList {
    pub factors: Vec<Factor>,
}

impl FactorList {
    pub fn new(factors: Vec<Factor>) -> Self {
        FactorList { factors }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, f: Factor) {
        self.factors.push(f);
    }

    pub fn extend(&mut self, other: &FactorList) {
        self.factors.extend(other.factors.iter().cloned());
    }

    pub fn concat(&self, other: &FactorList) -> FactorList {
        let mut out = self.clone();
        out.extend(other);
        out
    }

    /// Factors in a canonical order (Structure, Kummer by class, Delta, Hyp).
    pub fn sorted(&self) -> Vec<Factor> {
        let mut v = self.factors.clone();
        v.sort_by_cached_key(Factor::sort_key);
        v
    }

    /// Number of rank-one factors.
    pub fn kummer_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.kummer_class().is_some())
            .count()
    }

    pub fn structure_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| **f == Factor::Structure)
            .count()
    }
}

impl PartialEq for FactorList {
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut rest = other.factors.clone();
        for f in &self.factors {
            match rest.iter().position(|g| g == f) {
                Some(i) => {
                    rest.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }
}

impl Eq for FactorList {}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.sorted().iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromIterator<Factor> for FactorList {
    fn from_iter<I: IntoIterator<Item = Factor>>(iter: I) -> Self {
        FactorList::new(iter.into_iter().collect())
    }
}

pub fn euler_char(list: &FactorList) -> Result<i64, HypError> {
    list.factors.iter().map(Factor::euler_char).sum()
}

/// [d]^+ K_α = K_{dα}.
pub fn power_pullback(k: &KummerModule, d: i64) -> Result<Factor, HypError> {
    if d == 0 {
        return Err(HypError::ZeroDegree);
    }
    Ok(Factor::kummer(&(&k.alpha * int(d))))
}

/// Exponent bookkeeping for the pullback of a hypergeometric module along
/// z ↦ z^d: both exponent lists are multiplied by d. No module is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PulledExponents {
    pub d: i64,
    pub base: HypModule,
    pub alpha: ExpMultiset,
    pub beta: ExpMultiset,
}

pub fn power_pullback_hyp(h: &HypModule, d: i64) -> Result<PulledExponents, HypError> {
    if d == 0 {
        return Err(HypError::ZeroDegree);
    }
    Ok(PulledExponents {
        d,
        base: h.clone(),
        alpha: h.alpha.scaled(&int(d)),
        beta: h.beta.scaled(&int(d)),
    })
}

/// {(a + k)/e : a ∈ exps, k = 0..e−1}
pub fn pushed_exponents(exps: &ExpMultiset, e: u64) -> ExpMultiset {
    let e_r = int(e as i64);
    let mut out = Vec::new();
    for a in exps.values() {
        for k in 0..e as i64 {
            out.push((a + int(k)) / &e_r);
        }
    }
    ExpMultiset::new(out)
}

/// [e]_+ along z ↦ z^e.
pub fn power_pushforward(f: &Factor, e: u64) -> Result<FactorList, HypError> {
    if e == 0 {
        return Err(HypError::NonPositivePushforward);
    }
    Ok(match f {
        Factor::Structure | Factor::Kummer(_) => {
            let alpha = f.kummer_class().unwrap();
            (0..e as i64)
                .map(|a| Factor::kummer(&((&alpha + int(a)) / int(e as i64))))
                .collect()
        }
        Factor::Hyp(h) if e == 1 => FactorList::new(vec![Factor::Hyp(h.clone())]),
        Factor::Hyp(h) => FactorList::new(vec![Factor::PushedHyp { e, base: h.clone() }]),
        Factor::PushedHyp { e: e0, base } => FactorList::new(vec![Factor::PushedHyp {
            e: e0 * e,
            base: base.clone(),
        }]),
        Factor::Delta(c) => FactorList::new(vec![Factor::Delta(pow(c, e as i64))]),
    })
}

pub fn power_pushforward_list(list: &FactorList, e: u64) -> Result<FactorList, HypError> {
    let mut out = FactorList::empty();
    for f in &list.factors {
        out.extend(&power_pushforward(f, e)?);
    }
    Ok(out)
}

/// Exponent lists of a pushed-forward hypergeometric module at each place.
pub fn pushed_hyp_exponents(
    e: u64,
    base: &HypModule,
    place: Place,
) -> Result<ExpMultiset, HypError> {
    Ok(pushed_exponents(&base.exponents(place)?, e))
}

/// Cohomology of the fiber complex attached to a Kummer class α with
/// d_{n−1}·α ∈ ℤ: 𝒪[1] ⊕ 𝒪² for integral α, 𝒦_α otherwise. Keys are degrees.
pub fn kummer_fiber_cohomology(
    alpha: &Rational,
    w: &Weights,
) -> Result<BTreeMap<i64, FactorList>, HypError> {
    let d_prev = w.d_prefix(w.n() - 1);
    if !is_integer(&(alpha * int(d_prev as i64))) {
        return Err(HypError::FiberPrecondition {
            alpha: alpha.clone(),
            d_prev,
        });
    }
    let mut out = BTreeMap::new();
    if is_integer(alpha) {
        out.insert(-1, FactorList::new(vec![Factor::Structure]));
        out.insert(
            0,
            FactorList::new(vec![Factor::Structure, Factor::Structure]),
        );
    } else {
        out.insert(0, FactorList::new(vec![Factor::kummer(alpha)]));
    }
    Ok(out)
}
