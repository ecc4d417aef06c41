//! Factorization of univariate polynomials over ℚ into monic irreducibles.
//!
//! Squarefree decomposition (Yun), then for each squarefree part a p-adic
//! rational-root pass followed by a Zassenhaus search over a single prime large enough that no Hensel lifting
//! is needed: factor mod p by Cantor–Zassenhaus, lift coefficients to the
//! symmetric range and recombine by trial division.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::upoly::UPoly;

/// `content * ∏ factor^mult`, factors monic and irreducible over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UPoly, usize)>,
}

impl Factorization {
    /// Rational roots with multiplicity, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for (f, m) in &self.factors {
            if f.degree() == Some(1) {
                let r = -f.coeff(0);
                out.extend(std::iter::repeat_n(r, *m));
            }
        }
        out.sort();
        out
    }

    /// Factors of degree at least two, with multiplicity.
    pub fn nonlinear(&self) -> Vec<(UPoly, usize)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree().unwrap_or(0) >= 2)
            .cloned()
            .collect()
    }

    pub fn expand(&self) -> UPoly {
        let mut acc = UPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// Panics on the zero polynomial.
pub fn factor(p: &UPoly) -> Factorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let content = p.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&p.monic()) {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Factorization { content, factors }
}

fn cmp_poly(a: &UPoly, b: &UPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Yun's algorithm on a monic polynomial: pairs (squarefree monic part, multiplicity).
pub fn squarefree(p: &UPoly) -> Vec<(UPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        if b.degree().unwrap_or(0) == 0 {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// Primitive integer polynomial proportional to `p`, positive leading coefficient.
fn primitive_integer(p: &UPoly) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut v: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    for c in &mut v {
        *c /= &g;
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

fn from_integer(v: &[BigInt]) -> UPoly {
    UPoly::from_coeffs(
        v.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

fn factor_squarefree(p: &UPoly) -> Vec<UPoly> {
    match p.degree() {
        None | Some(0) => return vec![],
        Some(1) => return vec![p.monic()],
        _ => {}
    }
    // Pull out a power of x first; it keeps the prime search simple.
    if p.coeff(0).is_zero() {
        let rest = p.div_rem(&UPoly::x()).0;
        let mut out = vec![UPoly::x()];
        out.extend(factor_squarefree(&rest));
        return out;
    }
    let g = primitive_integer(p);
    let roots = rational_roots_padic(&g);
    let mut rest = p.monic();
    let mut out = Vec::new();
    for r in roots {
        let lin = UPoly::linear_root(&r);
        rest = rest.div_rem(&lin).0;
        out.push(lin);
    }
    match rest.degree() {
        Some(0) | None => {}
        Some(1) => out.push(rest),
        Some(_) => out.extend(
            zassenhaus(&primitive_integer(&rest))
                .into_iter()
                .map(|f| from_integer(&f).monic()),
        ),
    }
    out
}

/// All rational roots of a squarefree primitive integer polynomial with
/// nonzero constant term. Roots are found mod a small prime, lifted by Newton
/// iteration and reconstructed as c/lc, then confirmed exactly.
fn rational_roots_padic(g: &[BigInt]) -> Vec<Rational> {
    let lc = g.last().unwrap().clone();
    let n = g.len() - 1;
    // Cauchy bound on |root|, so |lc·root| <= lc + max|a_i|.
    let maxc = g[..n].iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = lc.abs() + maxc;
    let mut p = BigUint::from(3u32);
    let gp = loop {
        p = next_prime(&p);
        let pb = BigInt::from(p.clone());
        let gp = ModPoly::from_int(g, &pb);
        if !(&lc % &pb).is_zero() && gp.gcd(&gp.derivative()).deg() == 0 {
            break gp;
        }
        p += 1u32;
    };
    let pb = BigInt::from(p);
    let mut small_roots = Vec::new();
    let mut x = BigInt::zero();
    while x < pb {
        if gp.eval(&x).is_zero() {
            small_roots.push(x.clone());
        }
        x += 1;
    }
    if small_roots.is_empty() {
        return Vec::new();
    }
    let mut modulus = pb.clone();
    let target: BigInt = bound * 2 + 1;
    let mut lifted = small_roots;
    let dg: Vec<BigInt> = (1..=n).map(|k| &g[k] * BigInt::from(k)).collect();
    while modulus < target {
        modulus = &modulus * &modulus;
        for r in &mut lifted {
            // Newton step r <- r - g(r)/g'(r) mod modulus
            let fr = eval_mod(g, r, &modulus);
            let dfr = eval_mod(&dg, r, &modulus);
            let inv = dfr.extended_gcd(&modulus).x;
            *r = (&*r - fr * inv).mod_floor(&modulus);
        }
    }
    let half = &modulus >> 1;
    let ratg = from_integer(g);
    let mut out = Vec::new();
    for r in lifted {
        let c = (&lc * r).mod_floor(&modulus);
        let c = if c > half { c - &modulus } else { c };
        let cand = Rational::new(c, lc.clone());
        if ratg.eval(&cand).is_zero() {
            out.push(cand);
        }
    }
    out.sort();
    out
}

fn eval_mod(g: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in g.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn zassenhaus(g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = g.len() - 1;
    let lc = g[n].clone();
    // Mignotte-style bound on coefficients of any factor, times lc so that the
    // lc-scaled candidates are also covered.
    let maxc = g.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = (BigInt::one() << n) * BigInt::from(n + 1) * maxc * lc.abs();
    let mut p: BigUint = ((bound * 2u32) + 1u32).to_biguint().unwrap();
    let gp = loop {
        p = next_prime(&p);
        let pb = BigInt::from(p.clone());
        if (&lc % &pb).is_zero() {
            p += 1u32;
            continue;
        }
        let gp = ModPoly::from_int(g, &pb);
        let dgp = gp.derivative();
        if gp.gcd(&dgp).deg() == 0 {
            break gp;
        }
        p += 1u32;
    };
    let modulus = gp.p.clone();
    let mut local = gp.monic().factor();
    local.sort_by(|a, b| a.c.cmp(&b.c));

    let mut remaining: Vec<BigInt> = g.to_vec();
    let mut found = Vec::new();
    let mut k = 1;
    while 2 * k <= local.len() {
        let mut hit = None;
        for subset in combinations(local.len(), k) {
            let lcr = remaining.last().unwrap().clone();
            let mut prod = ModPoly::constant(lcr, &modulus);
            for &i in &subset {
                prod = prod.mul(&local[i]);
            }
            let cand = primitive_of(&prod.symmetric());
            if let Some(q) = exact_int_div(&remaining, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q;
                local = local
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, f)| f)
                    .collect();
            }
            None => k += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(primitive_of(&remaining));
    }
    found
}

fn primitive_of(v: &[BigInt]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if !g.is_zero() {
        for c in &mut v {
            *c /= &g;
        }
    }
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in &mut v {
            *c = -&*c;
        }
    }
    v
}

/// `Some(a / b)` when `b` divides `a` over ℤ[x].
fn exact_int_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() > a.len() || b.len() < 2 {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &r[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

const WITNESSES: [u32; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &w in &WITNESSES {
        let w = BigUint::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &w in &WITNESSES {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn next_prime(n: &BigUint) -> BigUint {
    let mut c = n.clone();
    if c.is_even() {
        c += 1u32;
    }
    while !is_probable_prime(&c) {
        c += 2u32;
    }
    c
}

/// Polynomial over 𝔽_p, coefficients in `[0, p)`, lowest degree first, trimmed.
#[derive(Clone, Debug)]
struct ModPoly {
    c: Vec<BigInt>,
    p: BigInt,
}

impl ModPoly {
    fn new(mut c: Vec<BigInt>, p: &BigInt) -> Self {
        for x in &mut c {
            *x = x.mod_floor(p);
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ModPoly { c, p: p.clone() }
    }

    fn from_int(v: &[BigInt], p: &BigInt) -> Self {
        ModPoly::new(v.to_vec(), p)
    }

    fn constant(c: BigInt, p: &BigInt) -> Self {
        ModPoly::new(vec![c], p)
    }

    fn x(p: &BigInt) -> Self {
        ModPoly::new(vec![BigInt::zero(), BigInt::one()], p)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        let e = a.extended_gcd(&self.p);
        e.x.mod_floor(&self.p)
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let li = self.inv(self.c.last().unwrap());
        ModPoly::new(self.c.iter().map(|x| x * &li).collect(), &self.p)
    }

    fn sub(&self, o: &ModPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = BigInt::zero();
        ModPoly::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z))
                .collect(),
            &self.p,
        )
    }

    fn mul(&self, o: &ModPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return ModPoly::new(vec![], &self.p);
        }
        let mut v = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        ModPoly::new(v, &self.p)
    }

    fn eval(&self, x: &BigInt) -> BigInt {
        eval_mod(&self.c, x, &self.p)
    }

    fn derivative(&self) -> Self {
        ModPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x * BigInt::from(k))
                .collect(),
            &self.p,
        )
    }

    fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        let dd = d.deg();
        let li = self.inv(d.c.last().unwrap());
        let mut r = self.c.clone();
        let mut q = vec![BigInt::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = (r.last().unwrap() * &li).mod_floor(&self.p);
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] = (&r[k + i] - &c * dc).mod_floor(&self.p);
            }
            q[k] = c;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (ModPoly::new(q, &self.p), ModPoly::new(r, &self.p))
    }

    fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    fn gcd(&self, o: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn powmod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut result = ModPoly::constant(BigInt::one(), &self.p);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.p >> 1;
        self.c
            .iter()
            .map(|x| if *x > half { x - &self.p } else { x.clone() })
            .collect()
    }

    /// Full factorization of a monic squarefree polynomial into monic irreducibles.
    fn factor(&self) -> Vec<ModPoly> {
        let mut out = Vec::new();
        let pu = self.p.to_biguint().unwrap();
        let mut f = self.clone();
        let x = ModPoly::x(&self.p);
        let mut h = x.clone();
        let mut i = 1usize;
        while f.deg() >= 2 * i {
            h = h.powmod(&pu, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                out.extend(g.equal_degree(i));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            i += 1;
        }
        if f.deg() > 0 {
            out.push(f.monic());
        }
        out
    }

    /// Cantor–Zassenhaus split of a product of distinct degree-`k` irreducibles.
    fn equal_degree(&self, k: usize) -> Vec<ModPoly> {
        if self.deg() == k {
            return vec![self.monic()];
        }
        let pu = self.p.to_biguint().unwrap();
        let e: BigUint = (pu.pow(k as u32) - 1u32) / 2u32;
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (self.deg() as u64);
        loop {
            let coeffs: Vec<BigInt> = (0..self.deg())
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    BigInt::from_biguint(
                        Sign::Plus,
                        BigUint::from(state) * BigUint::from(state.rotate_left(29)),
                    )
                })
                .collect();
            let a = ModPoly::new(coeffs, &self.p);
            if a.deg() == 0 {
                continue;
            }
            let b = a
                .powmod(&e, self)
                .sub(&ModPoly::constant(BigInt::one(), &self.p));
            let g = self.gcd(&b);
            if g.deg() > 0 && g.deg() < self.deg() {
                let rest = self.div_rem(&g).0;
                let mut out = g.equal_degree(k);
                out.extend(rest.monic().equal_degree(k));
                return out;
            }
        }
    }
}
