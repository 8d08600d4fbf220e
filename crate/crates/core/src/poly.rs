//! Univariate polynomials over a `FieldCtx`: arithmetic, a deterministic
//! factorization (squarefree / distinct-degree / equal-degree splitting with
//! a counter-based element stream), irreducibility, and the Frobenius-ordered
//! conorm decomposition under constant field extensions.

use crate::arith::factor_u64;
use crate::error::{Error, Result};
use crate::field::{Embedding, FieldCtx, FieldElem};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Dense polynomial, little-endian coefficients, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElem>,
}

/// Total order used everywhere a deterministic polynomial order is needed:
/// by degree, then by coefficient codes from the highest degree down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_elems(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim(ctx);
        p
    }

    /// Convenience constructor from integer codes.
    pub fn from_ints(ctx: &FieldCtx, codes: &[u64]) -> Poly {
        Poly::from_elems(ctx, codes.iter().map(|&c| ctx.from_int(c)).collect())
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElem) -> Poly {
        Poly::from_elems(ctx, vec![c])
    }

    pub fn one(ctx: &FieldCtx) -> Poly {
        Poly::constant(ctx, ctx.one())
    }

    /// The variable T.
    pub fn var(ctx: &FieldCtx) -> Poly {
        Poly::from_elems(ctx, vec![ctx.zero(), ctx.one()])
    }

    pub fn monomial(ctx: &FieldCtx, c: FieldElem, deg: usize) -> Poly {
        let mut coeffs = vec![ctx.zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_elems(ctx, coeffs)
    }

    fn trim(&mut self, ctx: &FieldCtx) {
        while self.coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, ctx: &FieldCtx, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn leading(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self, ctx: &FieldCtx) -> bool {
        self.leading().is_some_and(|c| ctx.is_one(c))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.add(&self.coeff(ctx, i), &other.coeff(ctx, i)));
        }
        Poly::from_elems(ctx, out)
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.sub(&self.coeff(ctx, i), &other.coeff(ctx, i)));
        }
        Poly::from_elems(ctx, out)
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly::from_elems(ctx, self.coeffs.iter().map(|c| ctx.neg(c)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ctx.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        Poly::from_elems(ctx, out)
    }

    pub fn scale(&self, ctx: &FieldCtx, c: &FieldElem) -> Poly {
        Poly::from_elems(ctx, self.coeffs.iter().map(|a| ctx.mul(a, c)).collect())
    }

    pub fn pow(&self, ctx: &FieldCtx, mut e: u64) -> Poly {
        let mut acc = Poly::one(ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &b);
            }
            b = b.mul(ctx, &b);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn divrem(&self, ctx: &FieldCtx, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = ctx.inv(d.leading().unwrap()).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        let mut quo = vec![ctx.zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let top = rem[i + dd].clone();
            if ctx.is_zero(&top) {
                continue;
            }
            let c = ctx.mul(&top, &lead_inv);
            for (j, djc) in d.coeffs.iter().enumerate() {
                rem[i + j] = ctx.sub(&rem[i + j], &ctx.mul(&c, djc));
            }
            quo[i] = c;
        }
        (Poly::from_elems(ctx, quo), Poly::from_elems(ctx, rem))
    }

    pub fn rem(&self, ctx: &FieldCtx, d: &Poly) -> Poly {
        self.divrem(ctx, d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(ctx, &b);
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// Extended gcd: (g, s, t) with s*self + t*other = g, g monic (or zero).
    pub fn ext_gcd(&self, ctx: &FieldCtx, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(ctx, &r1);
            let s = s0.sub(ctx, &q.mul(ctx, &s1));
            let t = t0.sub(ctx, &q.mul(ctx, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if let Some(lead) = r0.leading().cloned() {
            let li = ctx.inv(&lead).unwrap();
            (r0.scale(ctx, &li), s0.scale(ctx, &li), t0.scale(ctx, &li))
        } else {
            (r0, s0, t0)
        }
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if ctx.is_one(l) => self.clone(),
            Some(l) => self.scale(ctx, &ctx.inv(l).unwrap()),
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: &FieldElem) -> FieldElem {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ctx.scale(c, i as u64 % ctx.p()))
            .collect();
        Poly::from_elems(ctx, out)
    }

    pub fn mulmod(&self, ctx: &FieldCtx, other: &Poly, m: &Poly) -> Poly {
        self.mul(ctx, other).rem(ctx, m)
    }

    pub fn powmod(&self, ctx: &FieldCtx, mut e: u128, m: &Poly) -> Poly {
        let mut acc = Poly::one(ctx).rem(ctx, m);
        let mut b = self.rem(ctx, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(ctx, &b, m);
            }
            b = b.mulmod(ctx, &b, m);
            e >>= 1;
        }
        acc
    }

    /// x^(Q^k) mod self, computed by k successive Q-power maps.
    fn frob_power_of_x(&self, ctx: &FieldCtx, k: usize) -> Poly {
        let mut cur = Poly::var(ctx).rem(ctx, self);
        for _ in 0..k {
            cur = cur.powmod(ctx, ctx.order() as u128, self);
        }
        cur
    }

    /// Map coefficients through an embedding into a larger field.
    pub fn map_through(&self, emb: &Embedding) -> Poly {
        Poly::from_elems(
            emb.target(),
            self.coeffs.iter().map(|c| emb.apply(c)).collect(),
        )
    }

    /// Apply a power of the q-Frobenius x -> x^q to every coefficient.
    pub fn coeff_frobenius(&self, ctx: &FieldCtx, q: u64) -> Poly {
        Poly::from_elems(
            ctx,
            self.coeffs
                .iter()
                .map(|c| ctx.pow(c, q as u128))
                .collect(),
        )
    }

    /// Substitute T^(1/p): inverse of the Frobenius on a polynomial that is a
    /// p-th power pattern g(T^p); the caller guarantees the pattern.
    fn pth_root_pattern(&self, ctx: &FieldCtx) -> Poly {
        let p = ctx.p() as usize;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(ctx.pth_root(c));
            } else {
                debug_assert!(ctx.is_zero(c), "not a p-th power pattern");
            }
        }
        Poly::from_elems(ctx, out)
    }
}

// ---- deterministic pseudo-random element stream ----

/// Counter-based stream used by the equal-degree splitter; identical inputs
/// always see the identical candidate sequence.
#[derive(Debug, Clone)]
pub struct DetStream {
    state: u64,
}

impl DetStream {
    pub fn new(seed: u64) -> DetStream {
        DetStream { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        // splitmix64 step
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn next_poly(&mut self, ctx: &FieldCtx, max_deg: usize) -> Poly {
        let mut coeffs = Vec::with_capacity(max_deg + 1);
        for _ in 0..=max_deg {
            coeffs.push(ctx.from_int(self.next_u64() % ctx.order()));
        }
        Poly::from_elems(ctx, coeffs)
    }
}

// ---- irreducibility and factorization ----

/// Irreducibility test for polynomials of degree >= 1.
pub fn is_irreducible(ctx: &FieldCtx, f: &Poly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(1) => true,
        Some(d) => {
            let xq = f.frob_power_of_x(ctx, d);
            if xq.sub(ctx, &Poly::var(ctx).rem(ctx, f)) != Poly::zero() {
                return false;
            }
            for (r, _) in factor_u64(d as u64) {
                let e = d / r as usize;
                let xe = f.frob_power_of_x(ctx, e);
                let diff = xe.sub(ctx, &Poly::var(ctx).rem(ctx, f));
                let g = f.gcd(ctx, &diff);
                if g.degree() != Some(0) {
                    return false;
                }
            }
            true
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities.
/// The product of the factors times the returned unit equals the input.
pub fn factor(ctx: &FieldCtx, f: &Poly) -> Result<(FieldElem, BTreeMap<Poly, u64>)> {
    if f.is_zero() {
        return Err(Error::InvalidParameter(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let unit = f.leading().unwrap().clone();
    let mut out = BTreeMap::new();
    factor_monic(ctx, &f.monic(ctx), 1, &mut out);
    Ok((unit, out))
}

fn factor_monic(ctx: &FieldCtx, f: &Poly, outer_mult: u64, out: &mut BTreeMap<Poly, u64>) {
    if f.degree() == Some(0) || f.is_zero() {
        return;
    }
    let deriv = f.derivative(ctx);
    if deriv.is_zero() {
        // f = g(T^p); recurse on the p-th root with multiplicity * p
        let g = f.pth_root_pattern(ctx);
        factor_monic(ctx, &g, outer_mult * ctx.p(), out);
        return;
    }
    let d = f.gcd(ctx, &deriv);
    let squarefree = f.divrem(ctx, &d).0;
    let mut rest = f.clone();
    for prime in factor_squarefree(ctx, &squarefree) {
        let mut mult = 0u64;
        loop {
            let (q, r) = rest.divrem(ctx, &prime);
            if r.is_zero() {
                rest = q;
                mult += 1;
            } else {
                break;
            }
        }
        debug_assert!(mult >= 1);
        *out.entry(prime).or_insert(0) += outer_mult * mult;
    }
    // whatever remains consists of primes whose multiplicity in f is
    // divisible by p; it has zero derivative
    if rest.degree().unwrap_or(0) > 0 {
        factor_monic(ctx, &rest, outer_mult, out);
    }
}

/// Distinct-degree then equal-degree splitting of a monic squarefree input.
fn factor_squarefree(ctx: &FieldCtx, f: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    let mut h = f.clone();
    if h.degree().unwrap_or(0) == 0 {
        return out;
    }
    let x = Poly::var(ctx);
    let mut xq = h.frob_power_of_x(ctx, 1);
    let mut d = 1usize;
    loop {
        let deg = match h.degree() {
            None | Some(0) => break,
            Some(deg) => deg,
        };
        if 2 * d > deg {
            out.push(h.monic(ctx));
            break;
        }
        if d > 1 {
            xq = xq.powmod(ctx, ctx.order() as u128, &h);
        }
        let g = h.gcd(ctx, &xq.sub(ctx, &x.rem(ctx, &h)));
        if g.degree().unwrap_or(0) > 0 {
            equal_degree_split(ctx, &g, d, &mut out);
            h = h.divrem(ctx, &g).0;
            if h.degree().unwrap_or(0) == 0 {
                break;
            }
            xq = xq.rem(ctx, &h);
        }
        d += 1;
    }
    out.sort();
    out
}

/// Split a product of distinct irreducibles of equal degree `d`.
fn equal_degree_split(ctx: &FieldCtx, f: &Poly, d: usize, out: &mut Vec<Poly>) {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.monic(ctx));
        return;
    }
    let mut stream = DetStream::new(0x6a75_6d70 ^ (deg as u64) << 8 ^ d as u64);
    loop {
        let a = stream.next_poly(ctx, deg - 1);
        if a.degree().unwrap_or(0) < 1 && a.is_constant() {
            continue;
        }
        let g0 = f.gcd(ctx, &a);
        if g0.degree().unwrap_or(0) > 0 && g0.degree() < f.degree() {
            let rest = f.divrem(ctx, &g0).0;
            equal_degree_split(ctx, &g0, d, out);
            equal_degree_split(ctx, &rest, d, out);
            return;
        }
        let split = if ctx.p() == 2 {
            // absolute trace map to F_2 of a over the residue fields
            let m = ctx.degree() * d;
            let mut tr = a.rem(ctx, f);
            let mut cur = a.rem(ctx, f);
            for _ in 1..m {
                cur = cur.mulmod(ctx, &cur, f);
                tr = tr.add(ctx, &cur);
            }
            f.gcd(ctx, &tr)
        } else {
            // a^((Q^d - 1)/2) - 1 where the norm-like power avoids huge
            // exponents: first a^((Q^d-1)/(Q-1)) by Frobenius steps, then
            // the (Q-1)/2 power.
            let mut norm = a.rem(ctx, f);
            let mut frob = a.rem(ctx, f);
            for _ in 1..d {
                frob = frob.powmod(ctx, ctx.order() as u128, f);
                norm = norm.mulmod(ctx, &frob, f);
            }
            let b = norm.powmod(ctx, ((ctx.order() - 1) / 2) as u128, f);
            f.gcd(ctx, &b.sub(ctx, &Poly::one(ctx)))
        };
        if split.degree().unwrap_or(0) > 0 && split.degree() < f.degree() {
            let rest = f.divrem(ctx, &split).0;
            equal_degree_split(ctx, &split, d, out);
            equal_degree_split(ctx, &rest, d, out);
            return;
        }
    }
}

// ---- conorm orbits under constant field extensions ----

/// Factor a base-field prime over the degree-w constant extension and return
/// the factors ordered as a Frobenius orbit: the first factor has the least
/// coefficient vector and applying the q-power Frobenius to coefficients maps
/// each factor to the next, cyclically.
pub fn conorm_orbit(
    base: &FieldCtx,
    emb: &Embedding,
    prime: &Poly,
    w: usize,
) -> Result<Vec<Poly>> {
    if !is_irreducible(base, prime) {
        return Err(Error::InvalidParameter(format!(
            "conorm input of degree {:?} is not irreducible",
            prime.degree()
        )));
    }
    let ext = emb.target();
    let q = base.order();
    let lifted = prime.map_through(emb).monic(ext);
    let (_, factors) = factor(ext, &lifted)?;
    let s = crate::arith::gcd_u64(prime.deg_or_zero() as u64, w as u64) as usize;
    debug_assert_eq!(factors.len(), s);
    debug_assert!(factors.values().all(|&m| m == 1));
    let first = factors.keys().min().cloned().expect("nonempty");
    let mut orbit = Vec::with_capacity(s);
    let mut cur = first.clone();
    for _ in 0..s {
        debug_assert!(factors.contains_key(&cur));
        orbit.push(cur.clone());
        cur = cur.coeff_frobenius(ext, q).monic(ext);
    }
    debug_assert_eq!(cur, first, "Frobenius orbit must close up");
    Ok(orbit)
}
