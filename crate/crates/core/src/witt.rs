//! Witt vectors of rational functions in characteristic p: the universal
//! addition laws, the exact decomposition of a vector into per-prime local
//! parts plus a polynomial part plus an Artin-Schreier-Witt correction, and
//! the genus construction for abelian p-extensions.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::poly::Poly;
use crate::ratfunc::{partial_fractions, RationalFunction};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

// ---- universal Witt polynomials ----

/// Multivariate polynomial with u64 coefficients, exponent vector keyed.
type MPoly = BTreeMap<Vec<u16>, u64>;

fn mp_zero() -> MPoly {
    BTreeMap::new()
}

fn mp_var(nvars: usize, i: usize) -> MPoly {
    let mut e = vec![0u16; nvars];
    e[i] = 1;
    let mut m = BTreeMap::new();
    m.insert(e, 1);
    m
}

fn mp_add(a: &MPoly, b: &MPoly, modulus: u64) -> MPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let entry = out.entry(e.clone()).or_insert(0);
        *entry = (*entry + c) % modulus;
        if *entry == 0 {
            out.remove(e);
        }
    }
    out
}

fn mp_scale(a: &MPoly, c: u64, modulus: u64) -> MPoly {
    let c = c % modulus;
    let mut out = BTreeMap::new();
    if c == 0 {
        return out;
    }
    for (e, x) in a {
        let v = x * c % modulus;
        if v != 0 {
            out.insert(e.clone(), v);
        }
    }
    out
}

fn mp_mul(a: &MPoly, b: &MPoly, modulus: u64) -> MPoly {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert(0u64);
            *entry = (*entry + ca * cb) % modulus;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mp_pow(a: &MPoly, mut e: u64, modulus: u64) -> MPoly {
    let nvars = a.keys().next().map(|k| k.len()).unwrap_or(0);
    let mut acc: MPoly = {
        let mut m = BTreeMap::new();
        m.insert(vec![0u16; nvars], 1u64);
        m
    };
    let mut b = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mp_mul(&acc, &b, modulus);
        }
        b = mp_mul(&b, &b, modulus);
        e >>= 1;
    }
    acc
}

fn mp_div_exact(a: &MPoly, d: u64) -> MPoly {
    let mut out = BTreeMap::new();
    for (e, c) in a {
        debug_assert_eq!(c % d, 0, "inexact division in the ghost recursion");
        let v = c / d;
        if v != 0 {
            out.insert(e.clone(), v);
        }
    }
    out
}

/// ghost_i over the given variable offset: sum_j p^j z_(off+j)^(p^(i-j)).
fn ghost(nvars: usize, off: usize, i: usize, p: u64, modulus: u64) -> MPoly {
    let mut acc = mp_zero();
    let mut pj = 1u64;
    for j in 0..=i {
        let term = mp_pow(
            &mp_var(nvars, off + j),
            crate::arith::pow_u64(p, (i - j) as u32),
            modulus,
        );
        acc = mp_add(&acc, &mp_scale(&term, pj, modulus), modulus);
        pj = pj.wrapping_mul(p) % modulus;
    }
    acc
}

/// Universal addition and negation laws for length-n p-typical Witt vectors,
/// generated once by the integer ghost recursion with exact division and
/// reduced mod p. Pure data; share freely between threads.
#[derive(Debug, Clone)]
pub struct WittCtx {
    pub p: u64,
    pub n: usize,
    /// S_i(x_0..x_{n-1}, y_0..y_{n-1}) mod p.
    add_polys: Vec<MPoly>,
    /// N_i(x_0..x_{n-1}) mod p.
    neg_polys: Vec<MPoly>,
}

/// Default cap on the vector length: the universal polynomials explode.
pub const MAX_WITT_LENGTH: usize = 3;

impl WittCtx {
    pub fn new(p: u64, n: usize) -> Result<WittCtx> {
        if !crate::arith::is_prime_u64(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if n == 0 || n > MAX_WITT_LENGTH {
            return Err(Error::InvalidParameter(format!(
                "Witt length must be between 1 and {MAX_WITT_LENGTH}"
            )));
        }
        // work mod p^(2n) so every division keeps enough precision for the
        // final reduction mod p
        let modulus = crate::arith::pow_u64(p, 2 * n as u32);
        let nv = 2 * n;
        let mut add_polys: Vec<MPoly> = Vec::new();
        for i in 0..n {
            let mut num = mp_add(
                &ghost(nv, 0, i, p, modulus),
                &ghost(nv, n, i, p, modulus),
                modulus,
            );
            let mut pj = 1u64;
            for (j, s) in add_polys.iter().enumerate().take(i) {
                let term = mp_pow(s, crate::arith::pow_u64(p, (i - j) as u32), modulus);
                num = mp_add(&num, &mp_scale(&term, modulus - pj % modulus, modulus), modulus);
                pj = pj.wrapping_mul(p) % modulus;
            }
            add_polys.push(mp_div_exact(&num, crate::arith::pow_u64(p, i as u32)));
        }
        let mut neg_polys: Vec<MPoly> = Vec::new();
        for i in 0..n {
            // W_i(N) = -W_i(x)
            let mut num = mp_scale(&ghost(nv, 0, i, p, modulus), modulus - 1, modulus);
            let mut pj = 1u64;
            for (j, s) in neg_polys.iter().enumerate().take(i) {
                let term = mp_pow(s, crate::arith::pow_u64(p, (i - j) as u32), modulus);
                num = mp_add(&num, &mp_scale(&term, modulus - pj % modulus, modulus), modulus);
                pj = pj.wrapping_mul(p) % modulus;
            }
            neg_polys.push(mp_div_exact(&num, crate::arith::pow_u64(p, i as u32)));
        }
        // final reduction mod p
        let reduce = |polys: Vec<MPoly>| -> Vec<MPoly> {
            polys
                .into_iter()
                .map(|m| {
                    let mut out = BTreeMap::new();
                    for (e, c) in m {
                        let v = c % p;
                        if v != 0 {
                            out.insert(e, v);
                        }
                    }
                    out
                })
                .collect()
        };
        Ok(WittCtx {
            p,
            n,
            add_polys: reduce(add_polys),
            neg_polys: reduce(neg_polys),
        })
    }

    fn eval(
        &self,
        ctx: &FieldCtx,
        poly: &MPoly,
        vars: &[&RationalFunction],
    ) -> RationalFunction {
        let mut acc = RationalFunction::zero(ctx);
        for (exps, c) in poly {
            let mut term = RationalFunction::from_poly(
                ctx,
                Poly::constant(ctx, ctx.scale(&ctx.one(), *c)),
            );
            for (v, &e) in vars.iter().zip(exps) {
                for _ in 0..e {
                    term = term.mul(ctx, v);
                }
            }
            acc = acc.add(ctx, &term);
        }
        acc
    }
}

// ---- Witt vectors ----

/// Length-n sequence of rational functions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WittVector {
    pub comps: Vec<RationalFunction>,
}

impl WittVector {
    pub fn zero(ctx: &FieldCtx, n: usize) -> WittVector {
        WittVector {
            comps: vec![RationalFunction::zero(ctx); n],
        }
    }

    pub fn from_components(comps: Vec<RationalFunction>) -> WittVector {
        WittVector { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

pub fn witt_add(wctx: &WittCtx, ctx: &FieldCtx, x: &WittVector, y: &WittVector) -> Result<WittVector> {
    if x.len() != wctx.n || y.len() != wctx.n {
        return Err(Error::InvalidParameter(format!(
            "Witt length mismatch: {} vs {} vs context {}",
            x.len(),
            y.len(),
            wctx.n
        )));
    }
    let vars: Vec<&RationalFunction> = x.comps.iter().chain(y.comps.iter()).collect();
    let comps = wctx
        .add_polys
        .iter()
        .map(|s| wctx.eval(ctx, s, &vars))
        .collect();
    Ok(WittVector { comps })
}

pub fn witt_neg(wctx: &WittCtx, ctx: &FieldCtx, x: &WittVector) -> Result<WittVector> {
    if x.len() != wctx.n {
        return Err(Error::InvalidParameter("Witt length mismatch".into()));
    }
    // neg polys were generated over 2n variables; the y-slots are unused
    let zero = RationalFunction::zero(ctx);
    let mut vars: Vec<&RationalFunction> = x.comps.iter().collect();
    for _ in 0..wctx.n {
        vars.push(&zero);
    }
    let comps = wctx
        .neg_polys
        .iter()
        .map(|s| wctx.eval(ctx, s, &vars))
        .collect();
    Ok(WittVector { comps })
}

pub fn witt_sub(wctx: &WittCtx, ctx: &FieldCtx, x: &WittVector, y: &WittVector) -> Result<WittVector> {
    let ny = witt_neg(wctx, ctx, y)?;
    witt_add(wctx, ctx, x, &ny)
}

/// Componentwise p-th power: the Frobenius on Witt vectors in char p.
pub fn witt_frobenius(ctx: &FieldCtx, x: &WittVector) -> WittVector {
    WittVector {
        comps: x.comps.iter().map(|c| c.pth_power(ctx)).collect(),
    }
}

/// The Artin-Schreier-Witt operator: x^p (componentwise) minus x.
pub fn witt_wp(wctx: &WittCtx, ctx: &FieldCtx, x: &WittVector) -> Result<WittVector> {
    witt_sub(wctx, ctx, &witt_frobenius(ctx, x), x)
}

// ---- decomposition into local parts ----

/// Exact decomposition: xi = (sum of parts) + gamma + wp(rho), where every
/// part component is a proper fraction with prime-power denominator and pole
/// order coprime to p, and gamma components are polynomials whose degrees
/// are coprime to p (or constants).
#[derive(Debug, Clone)]
pub struct WittDecomposition {
    pub parts: BTreeMap<Poly, WittVector>,
    pub gamma: WittVector,
    pub rho: WittVector,
}

/// Reduce a single local component until its pole order is coprime to p;
/// returns the reduced component and the accumulated correction.
fn reduce_pole_component(
    ctx: &FieldCtx,
    x: &RationalFunction,
    prime: &Poly,
) -> (RationalFunction, RationalFunction) {
    let mut x = x.clone();
    let mut y_total = RationalFunction::zero(ctx);
    loop {
        let v = x.valuation_at(ctx, prime);
        if v >= 0 || (-v) % ctx.p() as i64 != 0 {
            return (x, y_total);
        }
        let e = (-v) as u64;
        let e_root = e / ctx.p();
        // leading residue: numerator of x * prime^e mod prime
        let scaled = x.mul(
            ctx,
            &RationalFunction::from_poly(ctx, prime.pow(ctx, e)),
        );
        debug_assert!(scaled.valuation_at(ctx, prime) >= 0);
        let top = scaled.num().rem(ctx, prime);
        debug_assert!(scaled.den().rem(ctx, prime) != Poly::zero());
        // divide by the denominator residue
        let (g, s, _) = scaled.den().ext_gcd(ctx, prime);
        debug_assert_eq!(g.degree(), Some(0));
        let den_inv = s.scale(ctx, &ctx.inv(g.leading().unwrap()).unwrap());
        let top = top.mulmod(ctx, &den_inv, prime);
        // p-th root coefficientwise pattern in the residue field
        let root = pth_root_in_residue(ctx, &top, prime);
        let y = RationalFunction::new(ctx, root, prime.pow(ctx, e_root));
        // x <- x - (y^p - y)
        let wp_y = y.pth_power(ctx).sub(ctx, &y);
        x = x.sub(ctx, &wp_y);
        y_total = y_total.add(ctx, &y);
        debug_assert!(-x.valuation_at(ctx, prime) < e as i64);
    }
}

/// p-th root in F_q[T]/(prime): z -> z^(|residue field| / p).
fn pth_root_in_residue(ctx: &FieldCtx, z: &Poly, prime: &Poly) -> Poly {
    let m = ctx.degree() * prime.deg_or_zero();
    // exponent p^(m-1) via repeated p-th powers
    let mut acc = z.rem(ctx, prime);
    for _ in 0..m.saturating_sub(1) {
        acc = acc.powmod(ctx, ctx.p() as u128, prime);
    }
    debug_assert_eq!(acc.powmod(ctx, ctx.p() as u128, prime), z.rem(ctx, prime));
    acc
}

/// Reduce a polynomial until its degree is coprime to p or it is constant.
fn reduce_poly_component(ctx: &FieldCtx, f: &Poly) -> (Poly, RationalFunction) {
    let mut f = f.clone();
    let mut y_total = RationalFunction::zero(ctx);
    loop {
        let d = match f.degree() {
            None | Some(0) => return (f, y_total),
            Some(d) => d,
        };
        if d % ctx.p() as usize != 0 {
            return (f, y_total);
        }
        let c = ctx.pth_root(f.leading().unwrap());
        let y = Poly::monomial(ctx, c, d / ctx.p() as usize);
        // f <- f - (y^p - y)
        f = f.sub(ctx, &y.pow(ctx, ctx.p())).add(ctx, &y);
        y_total = y_total.add(ctx, &RationalFunction::from_poly(ctx, y));
    }
}

/// Level-by-level peeling: at each level, subtract everything accumulated so
/// far, split the first nonzero component into partial fractions, reduce the
/// pieces to normal form and log the corrections into rho.
pub fn witt_decompose(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    xi: &WittVector,
) -> Result<WittDecomposition> {
    if xi.len() != wctx.n {
        return Err(Error::InvalidParameter("Witt length mismatch".into()));
    }
    let n = wctx.n;
    let mut parts: BTreeMap<Poly, WittVector> = BTreeMap::new();
    let mut gamma = WittVector::zero(ctx, n);
    let mut rho = WittVector::zero(ctx, n);

    for level in 0..n {
        // R = xi - (sum parts + gamma + wp(rho))
        let mut acc = gamma.clone();
        for part in parts.values() {
            acc = witt_add(wctx, ctx, &acc, part)?;
        }
        acc = witt_add(wctx, ctx, &acc, &witt_wp(wctx, ctx, &rho)?)?;
        let rem = witt_sub(wctx, ctx, xi, &acc)?;
        for low in 0..level {
            debug_assert!(rem.comps[low].is_zero(), "lower levels must stay settled");
        }
        let x = &rem.comps[level];
        if x.is_zero() {
            continue;
        }
        let (locals, poly_part) = partial_fractions(ctx, x)?;
        let mut correction = RationalFunction::zero(ctx);
        for (prime, local) in locals {
            let (reduced, y) = reduce_pole_component(ctx, &local, &prime);
            correction = correction.add(ctx, &y);
            if !reduced.is_zero() {
                let entry = parts
                    .entry(prime)
                    .or_insert_with(|| WittVector::zero(ctx, n));
                entry.comps[level] = reduced;
            }
        }
        let (gamma_level, y_poly) = reduce_poly_component(ctx, &poly_part);
        correction = correction.add(ctx, &y_poly);
        gamma.comps[level] = RationalFunction::from_poly(ctx, gamma_level);
        rho.comps[level] = correction;
    }

    // the identity must close exactly
    let mut acc = gamma.clone();
    for part in parts.values() {
        acc = witt_add(wctx, ctx, &acc, part)?;
    }
    acc = witt_add(wctx, ctx, &acc, &witt_wp(wctx, ctx, &rho)?)?;
    let rem = witt_sub(wctx, ctx, xi, &acc)?;
    if !rem.is_zero() {
        return Err(Error::InvalidParameter(
            "internal: decomposition identity failed to close".into(),
        ));
    }
    Ok(WittDecomposition { parts, gamma, rho })
}

// ---- canonical class forms and closures ----

/// Constant Witt vectors of F_q and the canonical coset representatives
/// modulo the image of the Artin-Schreier-Witt operator on constants.
#[derive(Debug, Clone)]
pub struct ConstantClasses {
    n: usize,
    /// element codes of vectors in the image of wp
    canon: BTreeMap<Vec<u64>, Vec<u64>>,
}

impl ConstantClasses {
    pub fn new(wctx: &WittCtx, ctx: &FieldCtx) -> Result<ConstantClasses> {
        let n = wctx.n;
        let q = ctx.order();
        let total = (q as u128).pow(n as u32);
        if total > 1 << 20 {
            return Err(Error::BudgetExceeded(
                "constant Witt vector table too large".into(),
            ));
        }
        let decode = |mut code: u128| -> WittVector {
            let mut comps = Vec::with_capacity(n);
            for _ in 0..n {
                let c = (code % q as u128) as u64;
                code /= q as u128;
                comps.push(RationalFunction::from_poly(
                    ctx,
                    Poly::constant(ctx, ctx.from_int(c)),
                ));
            }
            WittVector { comps }
        };
        let encode = |v: &WittVector| -> Vec<u64> {
            v.comps
                .iter()
                .map(|c| {
                    debug_assert!(c.is_poly() && c.num().is_constant());
                    ctx.to_int(&c.num().coeff(ctx, 0))
                })
                .collect()
        };
        // image of wp on constants
        let mut image: BTreeSet<Vec<u64>> = BTreeSet::new();
        for code in 0..total {
            let v = decode(code);
            let w = witt_wp(wctx, ctx, &v)?;
            image.insert(encode(&w));
        }
        let image: Vec<WittVector> = image
            .into_iter()
            .map(|codes| {
                WittVector {
                    comps: codes
                        .iter()
                        .map(|&c| {
                            RationalFunction::from_poly(
                                ctx,
                                Poly::constant(ctx, ctx.from_int(c)),
                            )
                        })
                        .collect(),
                }
            })
            .collect();
        // canonical representative: least code vector in the coset
        let mut canon = BTreeMap::new();
        for code in 0..total {
            let v = decode(code);
            let key = encode(&v);
            if canon.contains_key(&key) {
                continue;
            }
            let mut best = key.clone();
            let mut members = Vec::new();
            for im in &image {
                let s = witt_add(wctx, ctx, &v, im)?;
                let sk = encode(&s);
                if sk < best {
                    best = sk.clone();
                }
                members.push(sk);
            }
            for m in members {
                canon.insert(m, best.clone());
            }
            canon.insert(key, best);
        }
        Ok(ConstantClasses { n, canon })
    }

    pub fn canonical(&self, codes: &[u64]) -> Vec<u64> {
        debug_assert_eq!(codes.len(), self.n);
        self.canon
            .get(codes)
            .cloned()
            .expect("all constant vectors are tabulated")
    }

    pub fn is_trivial_class(&self, codes: &[u64]) -> bool {
        self.canonical(codes).iter().all(|&c| c == 0)
    }
}

/// Canonical form of a class modulo the Artin-Schreier-Witt image: reduced
/// local parts per prime, reduced positive-degree polynomial part, and the
/// canonical constant coset representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WittClassKey {
    pub parts: BTreeMap<Poly, Vec<RationalFunction>>,
    pub gamma_pos: Vec<Poly>,
    pub const_rep: Vec<u64>,
}

impl WittClassKey {
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
            && self.gamma_pos.iter().all(|p| p.is_zero())
            && self.const_rep.iter().all(|&c| c == 0)
    }
}

/// Compute the canonical class form of a vector, together with a canonical
/// vector representative for further arithmetic.
pub fn canonical_class(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    consts: &ConstantClasses,
    xi: &WittVector,
) -> Result<(WittClassKey, WittVector)> {
    let dec = witt_decompose(wctx, ctx, xi)?;
    // split gamma into a positive-degree part and a constant vector by a
    // second peeling: constants commute into the coset table
    let n = wctx.n;
    let mut gamma_pos = WittVector::zero(ctx, n);
    let mut const_vec = WittVector::zero(ctx, n);
    for level in 0..n {
        let mut acc = witt_add(wctx, ctx, &gamma_pos, &const_vec)?;
        let rem = witt_sub(wctx, ctx, &dec.gamma, &mut acc)?;
        let x = &rem.comps[level];
        let f = x.as_poly().cloned().unwrap_or_else(Poly::zero);
        debug_assert!(x.is_poly());
        let c = f.coeff(ctx, 0);
        let mut pos = f;
        if !ctx.is_zero(&c) {
            pos = pos.sub(ctx, &Poly::constant(ctx, c.clone()));
        }
        gamma_pos.comps[level] = RationalFunction::from_poly(ctx, pos);
        const_vec.comps[level] =
            RationalFunction::from_poly(ctx, Poly::constant(ctx, c));
    }
    let codes: Vec<u64> = const_vec
        .comps
        .iter()
        .map(|c| ctx.to_int(&c.num().coeff(ctx, 0)))
        .collect();
    let const_rep = consts.canonical(&codes);
    let key = WittClassKey {
        parts: dec
            .parts
            .iter()
            .map(|(p, v)| (p.clone(), v.comps.clone()))
            .collect(),
        gamma_pos: gamma_pos
            .comps
            .iter()
            .map(|c| c.as_poly().cloned().unwrap_or_else(Poly::zero))
            .collect(),
        const_rep: const_rep.clone(),
    };
    // canonical vector representative
    let mut rep = gamma_pos;
    for part in dec.parts.values() {
        rep = witt_add(wctx, ctx, &rep, part)?;
    }
    let const_rep_vec = WittVector {
        comps: const_rep
            .iter()
            .map(|&c| RationalFunction::from_poly(ctx, Poly::constant(ctx, ctx.from_int(c))))
            .collect(),
    };
    rep = witt_add(wctx, ctx, &rep, &const_rep_vec)?;
    Ok((key, rep))
}

/// Closure of the subgroup generated by the given classes, as canonical
/// forms; errors when the cap is exceeded.
pub fn class_closure(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    consts: &ConstantClasses,
    gens: &[WittVector],
    cap: usize,
) -> Result<BTreeMap<WittClassKey, WittVector>> {
    let zero = WittVector::zero(ctx, wctx.n);
    let (zk, zv) = canonical_class(wctx, ctx, consts, &zero)?;
    let mut set: BTreeMap<WittClassKey, WittVector> = BTreeMap::new();
    set.insert(zk, zv);
    let gen_reps: Vec<WittVector> = gens
        .iter()
        .map(|g| canonical_class(wctx, ctx, consts, g).map(|(_, v)| v))
        .collect::<Result<_>>()?;
    loop {
        let mut grew = false;
        let snapshot: Vec<WittVector> = set.values().cloned().collect();
        for v in &snapshot {
            for g in &gen_reps {
                let s = witt_add(wctx, ctx, v, g)?;
                let (key, rep) = canonical_class(wctx, ctx, consts, &s)?;
                if !set.contains_key(&key) {
                    set.insert(key, rep);
                    grew = true;
                    if set.len() > cap {
                        return Err(Error::BudgetExceeded(format!(
                            "class closure exceeded {cap} elements"
                        )));
                    }
                }
            }
        }
        if !grew {
            return Ok(set);
        }
    }
}

/// Membership of a class in the subgroup generated by the given classes.
pub fn class_member(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    consts: &ConstantClasses,
    gens: &[WittVector],
    probe: &WittVector,
    cap: usize,
) -> Result<bool> {
    let closure = class_closure(wctx, ctx, consts, gens, cap)?;
    let (key, _) = canonical_class(wctx, ctx, consts, probe)?;
    Ok(closure.contains_key(&key))
}

/// Local class at a prime: the reduced local part alone.
pub fn local_class_at(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    xi: &WittVector,
    prime: &Poly,
) -> Result<Vec<RationalFunction>> {
    let dec = witt_decompose(wctx, ctx, xi)?;
    Ok(dec
        .parts
        .get(prime)
        .map(|v| v.comps.clone())
        .unwrap_or_else(|| vec![RationalFunction::zero(ctx); wctx.n]))
}

/// Ramification order at a finite prime: size of the subgroup of local
/// classes generated by the generators' local parts.
pub fn local_ramification_order(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    gens: &[WittVector],
    prime: &Poly,
    cap: usize,
) -> Result<u128> {
    let zero = vec![RationalFunction::zero(ctx); wctx.n];
    let mut set: BTreeSet<Vec<RationalFunction>> = BTreeSet::new();
    set.insert(zero);
    let local_gens: Vec<WittVector> = gens
        .iter()
        .map(|g| {
            local_class_at(wctx, ctx, g, prime).map(WittVector::from_components)
        })
        .collect::<Result<_>>()?;
    loop {
        let mut grew = false;
        let snapshot: Vec<Vec<RationalFunction>> = set.iter().cloned().collect();
        for v in &snapshot {
            for g in &local_gens {
                let s = witt_add(wctx, ctx, &WittVector::from_components(v.clone()), g)?;
                // reduce the sum locally: decompose and take the prime part
                let loc = local_class_at(wctx, ctx, &s, prime)?;
                if set.insert(loc) {
                    grew = true;
                    if set.len() > cap {
                        return Err(Error::BudgetExceeded(
                            "local ramification closure too large".into(),
                        ));
                    }
                }
            }
        }
        if !grew {
            return Ok(set.len() as u128);
        }
    }
}

/// Ramification order at infinity: closure of the positive-degree
/// polynomial parts (constants stripped).
pub fn infinity_ramification_order(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    consts: &ConstantClasses,
    gens: &[WittVector],
    cap: usize,
) -> Result<u128> {
    let mut set: BTreeSet<Vec<Poly>> = BTreeSet::new();
    set.insert(vec![Poly::zero(); wctx.n]);
    let local_gens: Vec<WittVector> = gens
        .iter()
        .map(|g| {
            canonical_class(wctx, ctx, consts, g).map(|(key, _)| WittVector {
                comps: key
                    .gamma_pos
                    .iter()
                    .map(|p| RationalFunction::from_poly(ctx, p.clone()))
                    .collect(),
            })
        })
        .collect::<Result<_>>()?;
    loop {
        let mut grew = false;
        let snapshot: Vec<Vec<Poly>> = set.iter().cloned().collect();
        for v in &snapshot {
            for g in &local_gens {
                let vv = WittVector {
                    comps: v
                        .iter()
                        .map(|p| RationalFunction::from_poly(ctx, p.clone()))
                        .collect(),
                };
                let s = witt_add(wctx, ctx, &vv, g)?;
                let (key, _) = canonical_class(wctx, ctx, consts, &s)?;
                if set.insert(key.gamma_pos) {
                    grew = true;
                    if set.len() > cap {
                        return Err(Error::BudgetExceeded(
                            "infinity ramification closure too large".into(),
                        ));
                    }
                }
            }
        }
        if !grew {
            return Ok(set.len() as u128);
        }
    }
}

/// Splitting data at infinity: (e, f) where f is the order of the subgroup
/// of constant residue classes of the inertia-free members.
pub fn infinity_splitting(
    wctx: &WittCtx,
    ctx: &FieldCtx,
    consts: &ConstantClasses,
    gens: &[WittVector],
    cap: usize,
) -> Result<(u128, u128)> {
    let e = infinity_ramification_order(wctx, ctx, consts, gens, cap)?;
    let closure = class_closure(wctx, ctx, consts, gens, cap)?;
    let mut residues: BTreeSet<Vec<u64>> = BTreeSet::new();
    for key in closure.keys() {
        if key.gamma_pos.iter().all(|p| p.is_zero()) {
            residues.insert(key.const_rep.clone());
        }
    }
    // residues already form a subgroup of the constant class group
    Ok((e, residues.len() as u128))
}

// ---- the genus construction ----

/// An abelian p-extension given by Artin-Schreier-Witt equations.
#[derive(Debug, Clone)]
pub struct WittSpec {
    pub field: FieldCtx,
    pub n: usize,
    pub vectors: Vec<WittVector>,
}

/// One genus generator: an equation wp(y) = rhs supported at a single prime
/// (or at infinity for the polynomial part).
#[derive(Debug, Clone)]
pub struct WittGenerator {
    pub prime: Option<Poly>,
    pub rhs: WittVector,
}

#[derive(Debug, Clone)]
pub struct WittGenusReport {
    pub decompositions: Vec<WittDecomposition>,
    pub generators: Vec<WittGenerator>,
    pub degree_base: u128,
    pub degree_genus: u128,
}

/// Genus field of the composite of the spec's equations: one generator per
/// (component, ramified prime) local part plus one per polynomial part.
pub fn genus_field_wittp(spec: &WittSpec) -> Result<WittGenusReport> {
    let ctx = &spec.field;
    let wctx = WittCtx::new(ctx.p(), spec.n)?;
    let consts = ConstantClasses::new(&wctx, ctx)?;
    for v in &spec.vectors {
        if v.len() != spec.n {
            return Err(Error::MalformedSpec("Witt length mismatch".into()));
        }
    }
    let mut decompositions = Vec::new();
    let mut generators = Vec::new();
    for xi in &spec.vectors {
        let dec = witt_decompose(&wctx, ctx, xi)?;
        for (prime, part) in &dec.parts {
            generators.push(WittGenerator {
                prime: Some(prime.clone()),
                rhs: part.clone(),
            });
        }
        if !dec.gamma.is_zero() {
            generators.push(WittGenerator {
                prime: None,
                rhs: dec.gamma.clone(),
            });
        }
        decompositions.push(dec);
    }
    // geometric check: no nontrivial pure-constant class in the spec group
    let cap = 1 << 16;
    let closure = class_closure(&wctx, ctx, &consts, &spec.vectors, cap)?;
    for key in closure.keys() {
        if key.parts.is_empty()
            && key.gamma_pos.iter().all(|p| p.is_zero())
            && key.const_rep.iter().any(|&c| c != 0)
        {
            return Err(Error::NotGeometric(
                "the equations generate a constant extension".into(),
            ));
        }
    }
    let degree_base = closure.len() as u128;
    let gen_vectors: Vec<WittVector> = generators.iter().map(|g| g.rhs.clone()).collect();
    let genus_closure = class_closure(&wctx, ctx, &consts, &gen_vectors, cap)?;
    let degree_genus = genus_closure.len() as u128;
    Ok(WittGenusReport {
        decompositions,
        generators,
        degree_base,
        degree_genus,
    })
}
