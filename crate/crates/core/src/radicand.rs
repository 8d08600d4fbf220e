//! Radicands: a nonzero constant times a factored monic polynomial part with
//! integer (possibly negative) exponents. Valuations and degrees are read off
//! the exponent map; radicands are never expanded to dense polynomials.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{factor, is_irreducible, Poly};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Radicand {
    unit: FieldElem,
    factors: BTreeMap<Poly, i64>,
}

impl Radicand {
    pub fn one(ctx: &FieldCtx) -> Radicand {
        Radicand {
            unit: ctx.one(),
            factors: BTreeMap::new(),
        }
    }

    pub fn from_unit(ctx: &FieldCtx, unit: FieldElem) -> Result<Radicand> {
        if ctx.is_zero(&unit) {
            return Err(Error::InvalidParameter("radicand unit is zero".into()));
        }
        Ok(Radicand {
            unit,
            factors: BTreeMap::new(),
        })
    }

    /// A single monic irreducible to an integer power.
    pub fn from_prime_power(ctx: &FieldCtx, prime: Poly, exp: i64) -> Result<Radicand> {
        if !prime.is_monic(ctx) || !is_irreducible(ctx, &prime) {
            return Err(Error::InvalidParameter(
                "radicand factor keys must be monic irreducibles".into(),
            ));
        }
        let mut factors = BTreeMap::new();
        if exp != 0 {
            factors.insert(prime, exp);
        }
        Ok(Radicand {
            unit: ctx.one(),
            factors,
        })
    }

    /// Factor an arbitrary nonzero polynomial into a radicand.
    pub fn from_poly(ctx: &FieldCtx, p: &Poly) -> Result<Radicand> {
        if p.is_zero() {
            return Err(Error::InvalidParameter("radicand of zero".into()));
        }
        let (unit, fac) = factor(ctx, p)?;
        Ok(Radicand {
            unit,
            factors: fac.into_iter().map(|(p, m)| (p, m as i64)).collect(),
        })
    }

    pub fn from_parts(
        ctx: &FieldCtx,
        unit: FieldElem,
        factors: BTreeMap<Poly, i64>,
    ) -> Result<Radicand> {
        if ctx.is_zero(&unit) {
            return Err(Error::InvalidParameter("radicand unit is zero".into()));
        }
        for p in factors.keys() {
            if !p.is_monic(ctx) || !is_irreducible(ctx, p) {
                return Err(Error::InvalidParameter(format!(
                    "radicand factor of degree {:?} is not a monic irreducible",
                    p.degree()
                )));
            }
        }
        let factors = factors.into_iter().filter(|&(_, e)| e != 0).collect();
        Ok(Radicand { unit, factors })
    }

    pub fn unit(&self) -> &FieldElem {
        &self.unit
    }

    pub fn factors(&self) -> &BTreeMap<Poly, i64> {
        &self.factors
    }

    pub fn support(&self) -> impl Iterator<Item = &Poly> {
        self.factors.keys()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Total degree: sum of exponent times prime degree.
    pub fn deg(&self) -> i64 {
        self.factors
            .iter()
            .map(|(p, e)| *e * p.deg_or_zero() as i64)
            .sum()
    }

    pub fn valuation_at(&self, prime: &Poly) -> i64 {
        self.factors.get(prime).copied().unwrap_or(0)
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Radicand) -> Radicand {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            let entry = factors.entry(p.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                factors.remove(p);
            }
        }
        Radicand {
            unit: ctx.mul(&self.unit, &other.unit),
            factors,
        }
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Radicand {
        Radicand {
            unit: ctx.inv(&self.unit).expect("radicand unit nonzero"),
            factors: self.factors.iter().map(|(p, e)| (p.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, ctx: &FieldCtx, e: i64) -> Radicand {
        if e == 0 {
            return Radicand::one(ctx);
        }
        let base = if e < 0 { self.inv(ctx) } else { self.clone() };
        let e = e.unsigned_abs();
        let unit = ctx.pow(&base.unit, e as u128);
        let factors = base
            .factors
            .iter()
            .map(|(p, x)| (p.clone(), x * e as i64))
            .collect();
        Radicand { unit, factors }
    }

    /// Scale the unit part.
    pub fn scale_unit(&self, ctx: &FieldCtx, c: &FieldElem) -> Radicand {
        Radicand {
            unit: ctx.mul(&self.unit, c),
            factors: self.factors.clone(),
        }
    }

    /// Sign-normalized radicand: (-1)^deg times the radicand.
    pub fn star(&self, ctx: &FieldCtx) -> Radicand {
        if self.deg() % 2 == 0 {
            self.clone()
        } else {
            self.scale_unit(ctx, &ctx.neg_one())
        }
    }

    /// Apply the q-power Frobenius to the unit and every factor coefficient.
    pub fn coeff_frobenius(&self, ctx: &FieldCtx, q: u64) -> Radicand {
        Radicand {
            unit: ctx.pow(&self.unit, q as u128),
            factors: self
                .factors
                .iter()
                .map(|(p, e)| (p.coeff_frobenius(ctx, q).monic(ctx), *e))
                .collect(),
        }
    }

    /// Whether the radicand is an m-th power in the function field, where
    /// m divides the order of the constant unit group: all exponents must be
    /// divisible by m and the unit must be an m-th power constant.
    pub fn is_mth_power_class(&self, ctx: &FieldCtx, m: u64) -> bool {
        debug_assert_eq!((ctx.order() - 1) % m, 0, "m must divide Q - 1");
        if self.factors.values().any(|e| e.rem_euclid(m as i64) != 0) {
            return false;
        }
        ctx.is_one(&ctx.pow(&self.unit, ((ctx.order() - 1) / m) as u128))
    }

    /// Exact m-th root when every exponent is divisible by m and the unit has
    /// an m-th root; the unit root is the least-code solution.
    pub fn mth_root(&self, ctx: &FieldCtx, m: u64) -> Option<Radicand> {
        if self.factors.values().any(|e| e.rem_euclid(m as i64) != 0) {
            return None;
        }
        let unit = ctx.nth_root(&self.unit, m)?;
        Some(Radicand {
            unit,
            factors: self
                .factors
                .iter()
                .map(|(p, e)| (p.clone(), e / m as i64))
                .collect(),
        })
    }

    /// Evaluate the radicand in the residue field mod a prime not in its
    /// support: returns the residue as a polynomial of degree < deg(prime).
    pub fn residue_mod(&self, ctx: &FieldCtx, prime: &Poly) -> Result<Poly> {
        if self.valuation_at(prime) != 0 {
            return Err(Error::NotAUnit(format!(
                "valuation {} at a support prime",
                self.valuation_at(prime)
            )));
        }
        let mut acc = Poly::constant(ctx, self.unit.clone());
        for (p, &e) in &self.factors {
            let base = p.rem(ctx, prime);
            let base = if e < 0 {
                let (g, s, _) = base.ext_gcd(ctx, prime);
                debug_assert_eq!(g.degree(), Some(0), "factor invertible mod prime");
                let gi = ctx.inv(g.leading().unwrap()).unwrap();
                s.scale(ctx, &gi).rem(ctx, prime)
            } else {
                base
            };
            let mut power = Poly::one(ctx);
            let mut b = base;
            let mut k = e.unsigned_abs();
            while k > 0 {
                if k & 1 == 1 {
                    power = power.mulmod(ctx, &b, prime);
                }
                b = b.mulmod(ctx, &b, prime);
                k >>= 1;
            }
            acc = acc.mulmod(ctx, &power, prime);
        }
        Ok(acc)
    }

    /// Residue at infinity of a degree-zero radicand (value as T -> infinity).
    pub fn residue_at_infinity(&self, _ctx: &FieldCtx) -> Result<FieldElem> {
        if self.deg() != 0 {
            return Err(Error::NotAUnit(format!(
                "degree {} at infinity",
                self.deg()
            )));
        }
        // monic factors all tend to 1 after degree normalization
        Ok(self.unit.clone())
    }

    /// Multiply by T^k (used to normalize degrees at infinity).
    pub fn times_t_power(&self, ctx: &FieldCtx, k: i64) -> Radicand {
        let t = Poly::var(ctx);
        let mut factors = self.factors.clone();
        if k != 0 {
            let entry = factors.entry(t.clone()).or_insert(0);
            *entry += k;
            if *entry == 0 {
                factors.remove(&t);
            }
        }
        Radicand {
            unit: self.unit.clone(),
            factors,
        }
    }

    /// Deterministic total order key: support then exponents then unit code.
    pub fn sort_key(&self, ctx: &FieldCtx) -> (Vec<(Poly, i64)>, u64) {
        (
            self.factors.iter().map(|(p, e)| (p.clone(), *e)).collect(),
            ctx.to_int(&self.unit),
        )
    }
}
