//! Finite prime fields and their extensions with deterministic construction.
//!
//! A field F_{p^f} is realized as F_p[x]/(modulus) where the modulus is the
//! first monic irreducible of degree f in the enumeration that increments the
//! constant coefficient fastest (ascending value of sum c_i * p^i). Elements
//! are length-f coefficient vectors, little-endian in the image of x.

use crate::arith;
use crate::arith::{factor_u64, is_prime_u64, pow_mod_u128, pow_u128};
use crate::error::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// A concrete finite field F_{p^f} with a deterministic modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    p: u64,
    f: usize,
    /// Monic modulus of degree f over F_p, little-endian, length f + 1.
    modulus: Vec<u64>,
    order: u64,
}

/// An element of a `FieldCtx`: length-f residue vector, little-endian.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(pub(crate) Vec<u64>);

impl FieldElem {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }
}

// ---- raw polynomial arithmetic over F_p (little-endian u64 vectors) ----
//
// Self-contained so the modulus irreducibility test does not depend on the
// generic polynomial module (which itself needs a FieldCtx).

fn raw_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn raw_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    raw_trim(&mut out);
    out
}

fn raw_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    raw_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate() {
            let idx = k + j;
            let sub = c * mj % p;
            r[idx] = (r[idx] + p - sub) % p;
        }
        raw_trim(&mut r);
    }
    r
}

fn raw_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    raw_trim(&mut x);
    raw_trim(&mut y);
    while !y.is_empty() {
        let r = raw_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn raw_powmod_x_pk(modulus: &[u64], p: u64, k: u32) -> Vec<u64> {
    // x^(p^k) mod modulus by k successive p-th powers.
    let mut cur = vec![0, 1];
    cur = raw_rem(&cur, modulus, p);
    for _ in 0..k {
        cur = raw_pow_mod(&cur, p, modulus, p);
    }
    cur
}

fn raw_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = raw_rem(&raw_mul(&acc, &b, p), modulus, p);
        }
        b = raw_rem(&raw_mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0.
    arith::pow_mod_u128(a as u128, (p - 2) as u128, p as u128) as u64
}

/// Irreducibility of a monic polynomial over F_p.
fn raw_is_irreducible(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    // x^(p^d) == x mod m
    let xq = raw_powmod_x_pk(m, p, d as u32);
    let mut diff = xq.clone();
    // subtract x
    if diff.len() < 2 {
        diff.resize(2, 0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    raw_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for (r, _) in factor_u64(d as u64) {
        let e = d as u64 / r;
        let xe = raw_powmod_x_pk(m, p, e as u32);
        let mut diff = xe.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        raw_trim(&mut diff);
        let g = raw_gcd(&diff, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

// ---- FieldCtx ----

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.f])
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn neg_one(&self) -> FieldElem {
        self.neg(&self.one())
    }

    /// The image of x, i.e. the generator adjoined by the modulus.
    pub fn gen(&self) -> FieldElem {
        if self.f == 1 {
            // modulus is x; its root is 0
            self.zero()
        } else {
            let mut c = vec![0; self.f];
            c[1] = 1;
            FieldElem(c)
        }
    }

    /// Element from its integer code sum c_i p^i; code must be < order.
    pub fn from_int(&self, mut code: u64) -> FieldElem {
        debug_assert!(code < self.order);
        let mut c = vec![0; self.f];
        for ci in c.iter_mut() {
            *ci = code % self.p;
            code /= self.p;
        }
        FieldElem(c)
    }

    /// Integer code of an element.
    pub fn to_int(&self, a: &FieldElem) -> u64 {
        let mut v = 0u64;
        for &c in a.0.iter().rev() {
            v = v * self.p + c;
        }
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() != self.f {
            return Err(Error::InvalidParameter(format!(
                "element needs {} coefficients, got {}",
                self.f,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient out of range mod {}",
                self.p
            )));
        }
        Ok(FieldElem(coeffs.to_vec()))
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let prod = raw_mul(&a.0, &b.0, self.p);
        let mut r = raw_rem(&prod, &self.modulus, self.p);
        r.resize(self.f, 0);
        FieldElem(r)
    }

    pub fn scale(&self, a: &FieldElem, c: u64) -> FieldElem {
        let c = c % self.p;
        FieldElem(a.0.iter().map(|&x| x * c % self.p).collect())
    }

    pub fn pow(&self, a: &FieldElem, mut e: u128) -> FieldElem {
        if self.is_zero(a) {
            return if e == 0 { self.one() } else { self.zero() };
        }
        // reduce by the multiplicative group order
        e %= (self.order - 1) as u128;
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::InvalidParameter("inverse of zero".into()));
        }
        Ok(self.pow(a, (self.order - 2) as u128))
    }

    /// p-th root (the inverse of the absolute Frobenius), always exists.
    pub fn pth_root(&self, a: &FieldElem) -> FieldElem {
        if self.f == 1 {
            return a.clone();
        }
        self.pow(a, pow_u128(self.p as u128, (self.f - 1) as u32))
    }

    /// All elements in deterministic (integer-code) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order).map(move |c| self.from_int(c))
    }

    /// Least-code generator of the multiplicative group.
    pub fn primitive_root(&self) -> FieldElem {
        let n = self.order - 1;
        let fac = factor_u64(n);
        for code in 1..self.order {
            let a = self.from_int(code);
            if fac
                .iter()
                .all(|&(r, _)| !self.is_one(&self.pow(&a, (n / r) as u128)))
            {
                return a;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        *a == self.one()
    }

    /// Least-code solution of x^m = a, if one exists.
    pub fn nth_root(&self, a: &FieldElem, m: u64) -> Option<FieldElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        for code in 1..self.order {
            let x = self.from_int(code);
            if self.pow(&x, m as u128) == *a {
                return Some(x);
            }
        }
        None
    }
}

/// Deterministic construction of F_{p^f}. Repeated calls agree exactly.
pub fn make_field(p: u64, f: usize) -> Result<FieldCtx> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if f == 0 {
        return Err(Error::InvalidParameter("degree must be >= 1".into()));
    }
    let order = (0..f).try_fold(1u64, |acc, _| acc.checked_mul(p)).ok_or(
        Error::InvalidParameter("field order exceeds 64-bit bounds".into()),
    )?;
    // Enumerate monic degree-f polynomials by ascending value of the
    // non-leading coefficient vector (constant term cycles fastest).
    for code in 0..order {
        let mut m = vec![0u64; f + 1];
        let mut c = code;
        for mi in m.iter_mut().take(f) {
            *mi = c % p;
            c /= p;
        }
        m[f] = 1;
        if raw_is_irreducible(&m, p) {
            return Ok(FieldCtx {
                p,
                f,
                modulus: m,
                order,
            });
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// Least e >= 1 with a^e = 1 in the multiplicative group.
pub fn mult_order(ctx: &FieldCtx, a: &FieldElem) -> Result<u64> {
    if ctx.is_zero(a) {
        return Err(Error::InvalidParameter("order of zero".into()));
    }
    let mut e = ctx.order() - 1;
    for (r, mul) in factor_u64(e) {
        for _ in 0..mul {
            if ctx.is_one(&ctx.pow(a, (e / r) as u128)) {
                e /= r;
            } else {
                break;
            }
        }
    }
    Ok(e)
}

/// Least e >= 1 with a^e = 1 mod m; the same order computation as
/// `mult_order`, exposed for plain integers.
pub fn ord_mod(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidParameter("modulus must be >= 2".into()));
    }
    if arith::gcd_u64(a % m, m) != 1 {
        return Err(Error::InvalidParameter(format!(
            "{a} is not a unit mod {m}"
        )));
    }
    let a = (a % m) as u128;
    let m = m as u128;
    let mut x = a;
    let mut e = 1u64;
    while x != 1 {
        x = x * a % m;
        e += 1;
    }
    Ok(e)
}

/// Least k >= 1 such that mu is an m-th power in the degree-k constant
/// extension of its field, m-th roots of unity included; i.e. the constant
/// field degree generated by an m-th root of mu.
pub fn radical_degree(ctx: &FieldCtx, mu: &FieldElem, m: u64) -> Result<u64> {
    if ctx.is_zero(mu) {
        return Err(Error::InvalidParameter("radical of zero".into()));
    }
    if m == 0 || m % ctx.p() == 0 {
        return Err(Error::InvalidParameter(
            "radical index must be nonzero and coprime to the characteristic".into(),
        ));
    }
    let q = ctx.order() as u128;
    let group = q - 1;
    // In degree k the test is root existence for x^m = mu in the cyclic
    // group of order q^k - 1: mu^((q^k - 1)/g) = 1 with g = gcd(m, q^k - 1).
    // The exponent is only needed modulo q - 1, so reduce mod g * (q - 1).
    // A root field of x^m - mu has degree at most m, so k <= m suffices.
    for k in 1..=m {
        let qk_mod_m = pow_mod_u128(q, k as u128, m as u128);
        let g = arith::gcd_u64(((qk_mod_m + m as u128 - 1) % m as u128) as u64, m);
        let md = g as u128 * group;
        let qk = pow_mod_u128(q, k as u128, md);
        let qk_minus_1 = (qk + md - 1) % md;
        debug_assert_eq!(qk_minus_1 % g as u128, 0);
        let exp = qk_minus_1 / g as u128 % group;
        if ctx.is_one(&ctx.pow(mu, exp)) {
            return Ok(k);
        }
    }
    Err(Error::InvalidParameter(
        "no radical extension degree found within bound".into(),
    ))
}

// ---- Embeddings ----

/// A field homomorphism F_{p^a} -> F_{p^b} determined by the image of the
/// source generator: the least-code root of the source modulus in the target.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: FieldCtx,
    target: FieldCtx,
    image_of_generator: FieldElem,
}

impl Embedding {
    pub fn new(source: &FieldCtx, target: &FieldCtx) -> Result<Self> {
        if source.p() != target.p() {
            return Err(Error::InvalidParameter(
                "embedding requires equal characteristic".into(),
            ));
        }
        if target.degree() % source.degree() != 0 {
            return Err(Error::InvalidParameter(
                "source degree must divide target degree".into(),
            ));
        }
        for code in 0..target.order() {
            let x = target.from_int(code);
            if Self::eval_source_modulus(source, target, &x) {
                return Ok(Embedding {
                    source: source.clone(),
                    target: target.clone(),
                    image_of_generator: x,
                });
            }
        }
        unreachable!("the source modulus splits in the target")
    }

    /// Compose along a tower: self maps A -> B, next maps B -> C.
    pub fn compose(&self, next: &Embedding) -> Result<Embedding> {
        if self.target != next.source {
            return Err(Error::InvalidParameter(
                "embedding composition mismatch".into(),
            ));
        }
        Ok(Embedding {
            source: self.source.clone(),
            target: next.target.clone(),
            image_of_generator: next.apply(&self.image_of_generator),
        })
    }

    fn eval_source_modulus(source: &FieldCtx, target: &FieldCtx, x: &FieldElem) -> bool {
        // Horner evaluation of the source modulus (coefficients in F_p).
        let mut acc = target.zero();
        for &c in source.modulus().iter().rev() {
            acc = target.mul(&acc, x);
            acc = target.add(&acc, &target.scale(&target.one(), c));
        }
        target.is_zero(&acc)
    }

    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn image_of_generator(&self) -> &FieldElem {
        &self.image_of_generator
    }

    pub fn apply(&self, a: &FieldElem) -> FieldElem {
        let mut acc = self.target.zero();
        for &c in a.0.iter().rev() {
            acc = self.target.mul(&acc, &self.image_of_generator);
            acc = self.target.add(&acc, &self.target.scale(&self.target.one(), c));
        }
        acc
    }

    pub fn identity(ctx: &FieldCtx) -> Embedding {
        Embedding {
            source: ctx.clone(),
            target: ctx.clone(),
            image_of_generator: ctx.gen(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_moduli() {
        // F_2: degree-1 modulus is x itself
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.order(), 2);
        // F_4: the only irreducible quadratic over F_2
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // F_25: first irreducible in the documented enumeration is x^2 + 2
        let f25 = make_field(5, 2).unwrap();
        assert_eq!(f25.modulus(), &[2, 0, 1]);
        // two independent constructions agree exactly
        let again = make_field(5, 2).unwrap();
        assert_eq!(f25, again);
    }

    #[test]
    fn derived_modulus_oracle() {
        // Independent oracle: enumerate monic quadratics over F_5 in the
        // documented order and keep the first with no root and no factor.
        let f25 = make_field(5, 2).unwrap();
        let mut first = None;
        'outer: for code in 0..25u64 {
            let c0 = code % 5;
            let c1 = code / 5;
            // x^2 + c1 x + c0 is reducible over F_5 iff it has a root
            for r in 0..5u64 {
                if (r * r + c1 * r + c0) % 5 == 0 {
                    continue 'outer;
                }
            }
            first = Some(vec![c0, c1, 1]);
            break;
        }
        assert_eq!(f25.modulus(), first.unwrap().as_slice());
    }

    #[test]
    fn arithmetic_in_f4() {
        let f4 = make_field(2, 2).unwrap();
        let t = f4.gen();
        let t2 = f4.mul(&t, &t);
        // t^2 = t + 1 under x^2 + x + 1
        assert_eq!(t2, f4.from_coeffs(&[1, 1]).unwrap());
        assert_eq!(mult_order(&f4, &t).unwrap(), 3);
    }

    #[test]
    fn order_examples() {
        assert_eq!(ord_mod(2, 9).unwrap(), 6);
        assert_eq!(ord_mod(5, 3).unwrap(), 2);
        assert_eq!(ord_mod(4, 3).unwrap(), 1);
        assert!(ord_mod(6, 9).is_err());
    }

    #[test]
    fn mult_order_divides_group_order() {
        let f25 = make_field(5, 2).unwrap();
        for code in 1..25 {
            let a = f25.from_int(code);
            let e = mult_order(&f25, &a).unwrap();
            assert_eq!(24 % e, 0);
            assert!(f25.is_one(&f25.pow(&a, e as u128)));
            assert!(e == 1 || !f25.is_one(&f25.pow(&a, (e / 2).max(1) as u128)) || e % 2 != 0);
        }
    }

    #[test]
    fn radical_degree_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(radical_degree(&f5, &f5.one(), 8).unwrap(), 1);
        let minus_one = f5.neg_one();
        assert_eq!(radical_degree(&f5, &minus_one, 2).unwrap(), 1);
        let f7 = make_field(7, 1).unwrap();
        let two = f7.from_int(2);
        assert_eq!(radical_degree(&f7, &two, 3).unwrap(), 3);
    }

    #[test]
    fn embedding_is_homomorphism() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = Embedding::new(&f4, &f16).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let x = f4.from_int(a);
                let y = f4.from_int(b);
                assert_eq!(
                    e.apply(&f4.add(&x, &y)),
                    f16.add(&e.apply(&x), &e.apply(&y))
                );
                assert_eq!(
                    e.apply(&f4.mul(&x, &y)),
                    f16.mul(&e.apply(&x), &e.apply(&y))
                );
            }
        }
    }

    #[test]
    fn embedding_composition_is_an_embedding() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e1 = Embedding::new(&f2, &f4).unwrap();
        let e2 = Embedding::new(&f4, &f16).unwrap();
        let comp = e1.compose(&e2).unwrap();
        let direct = Embedding::new(&f2, &f16).unwrap();
        // prime-field embeddings are unique, so the tower commutes
        for a in 0..2 {
            let x = f2.from_int(a);
            assert_eq!(comp.apply(&x), direct.apply(&x));
        }
        // the composite image is a root of the source modulus in the target
        assert!(Embedding::eval_source_modulus(
            &f2,
            &f16,
            comp.image_of_generator()
        ));
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let f27 = make_field(3, 3).unwrap();
        for code in 0..27 {
            let a = f27.from_int(code);
            let b = f27.pow(&a, 3);
            assert_eq!(f27.pth_root(&b), a);
        }
    }
}
