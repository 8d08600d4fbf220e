//! Reduced rational functions over a `FieldCtx` and exact partial fraction
//! decomposition driven by the deterministic factorization.

use crate::error::Result;
use crate::field::{FieldCtx, FieldElem};
use crate::poly::{factor, Poly};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// numerator / denominator with gcd = 1 and a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(ctx: &FieldCtx, num: Poly, den: Poly) -> RationalFunction {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RationalFunction { num, den };
        r.reduce(ctx);
        r
    }

    pub fn from_poly(ctx: &FieldCtx, p: Poly) -> RationalFunction {
        RationalFunction {
            num: p,
            den: Poly::one(ctx),
        }
    }

    pub fn zero(ctx: &FieldCtx) -> RationalFunction {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(ctx),
        }
    }

    fn reduce(&mut self, ctx: &FieldCtx) {
        if self.num.is_zero() {
            self.den = Poly::one(ctx);
            return;
        }
        let g = self.num.gcd(ctx, &self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.divrem(ctx, &g).0;
            self.den = self.den.divrem(ctx, &g).0;
        }
        // normalize: monic denominator
        if let Some(lead) = self.den.leading().cloned() {
            if !ctx.is_one(&lead) {
                let li = ctx.inv(&lead).unwrap();
                self.den = self.den.scale(ctx, &li);
                self.num = self.num.scale(ctx, &li);
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.is_poly() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, ctx: &FieldCtx, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            ctx,
            self.num
                .mul(ctx, &o.den)
                .add(ctx, &o.num.mul(ctx, &self.den)),
            self.den.mul(ctx, &o.den),
        )
    }

    pub fn sub(&self, ctx: &FieldCtx, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            ctx,
            self.num
                .mul(ctx, &o.den)
                .sub(ctx, &o.num.mul(ctx, &self.den)),
            self.den.mul(ctx, &o.den),
        )
    }

    pub fn neg(&self, ctx: &FieldCtx) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(ctx),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, ctx: &FieldCtx, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            ctx,
            self.num.mul(ctx, &o.num),
            self.den.mul(ctx, &o.den),
        )
    }

    /// Componentwise p-th power (the Frobenius of the rational function field).
    pub fn pth_power(&self, ctx: &FieldCtx) -> RationalFunction {
        RationalFunction::new(
            ctx,
            self.num.pow(ctx, ctx.p()),
            self.den.pow(ctx, ctx.p()),
        )
    }

    /// Valuation at a monic irreducible prime.
    pub fn valuation_at(&self, ctx: &FieldCtx, prime: &Poly) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        let count = |mut f: Poly| -> i64 {
            let mut v = 0;
            loop {
                let (q, r) = f.divrem(ctx, prime);
                if r.is_zero() {
                    v += 1;
                    f = q;
                } else {
                    return v;
                }
            }
        };
        count(self.num.clone()) - count(self.den.clone())
    }

    /// Valuation at infinity: deg(den) - deg(num).
    pub fn valuation_at_infinity(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.den.deg_or_zero() as i64 - self.num.deg_or_zero() as i64
    }

    /// Value at infinity when the valuation there is >= 0.
    pub fn value_at_infinity(&self, ctx: &FieldCtx) -> FieldElem {
        match self.valuation_at_infinity() {
            v if v > 0 => ctx.zero(),
            0 => {
                let ln = self.num.leading().unwrap().clone();
                let ld = self.den.leading().unwrap();
                ctx.mul(&ln, &ctx.inv(ld).unwrap())
            }
            _ => panic!("pole at infinity"),
        }
    }
}

/// Exact partial fraction decomposition: x = polynomial part + sum of local
/// parts, each local part a proper fraction with prime-power denominator and
/// numerator coprime to the prime.
pub fn partial_fractions(
    ctx: &FieldCtx,
    x: &RationalFunction,
) -> Result<(BTreeMap<Poly, RationalFunction>, Poly)> {
    let mut locals = BTreeMap::new();
    if x.is_zero() {
        return Ok((locals, Poly::zero()));
    }
    let (poly_part, num_rem) = x.num.divrem(ctx, &x.den);
    if num_rem.is_zero() {
        return Ok((locals, poly_part));
    }
    let (_, den_factors) = factor(ctx, &x.den)?;
    let factor_list: Vec<(Poly, u64)> = den_factors.into_iter().collect();
    split_coprime(ctx, &num_rem, &factor_list, &mut locals);
    Ok((locals, poly_part))
}

/// Recursively split A / prod(P_i^{e_i}) using Bezout cofactors of coprime
/// denominator halves; record A_i / P_i^{e_i} per prime.
fn split_coprime(
    ctx: &FieldCtx,
    num: &Poly,
    factors: &[(Poly, u64)],
    out: &mut BTreeMap<Poly, RationalFunction>,
) {
    if factors.is_empty() || num.is_zero() {
        return;
    }
    if factors.len() == 1 {
        let (p, e) = &factors[0];
        let den = p.pow(ctx, *e);
        let reduced = num.rem(ctx, &den);
        if !reduced.is_zero() {
            out.insert(p.clone(), RationalFunction::new(ctx, reduced, den));
        }
        return;
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let prod = |fs: &[(Poly, u64)]| {
        fs.iter()
            .fold(Poly::one(ctx), |acc, (p, e)| acc.mul(ctx, &p.pow(ctx, *e)))
    };
    let lp = prod(left);
    let rp = prod(right);
    let (g, s, t) = lp.ext_gcd(ctx, &rp);
    debug_assert_eq!(g.degree(), Some(0));
    // num / (lp*rp) = num*t/lp + num*s/rp
    let left_num = num.mul(ctx, &t).rem(ctx, &lp);
    let right_num = num.mul(ctx, &s).rem(ctx, &rp);
    split_coprime(ctx, &left_num, left, out);
    split_coprime(ctx, &right_num, right, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::DetStream;

    fn resum(
        ctx: &FieldCtx,
        locals: &BTreeMap<Poly, RationalFunction>,
        poly_part: &Poly,
    ) -> RationalFunction {
        let mut acc = RationalFunction::new(ctx, poly_part.clone(), Poly::one(ctx));
        for part in locals.values() {
            acc = acc.add(ctx, part);
        }
        acc
    }

    #[test]
    fn partial_fractions_examples() {
        let f2 = make_field(2, 1).unwrap();
        // 1/(T(T+1)) = 1/T + 1/(T+1) in characteristic 2
        let den = Poly::from_ints(&f2, &[0, 1]).mul(&f2, &Poly::from_ints(&f2, &[1, 1]));
        let x = RationalFunction::new(&f2, Poly::one(&f2), den);
        let (locals, poly_part) = partial_fractions(&f2, &x).unwrap();
        assert!(poly_part.is_zero());
        assert_eq!(locals.len(), 2);
        let t = Poly::from_ints(&f2, &[0, 1]);
        let t1 = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(
            locals.get(&t).unwrap(),
            &RationalFunction::new(&f2, Poly::one(&f2), t.clone())
        );
        assert_eq!(
            locals.get(&t1).unwrap(),
            &RationalFunction::new(&f2, Poly::one(&f2), t1.clone())
        );

        // T^2 is already polynomial
        let x = RationalFunction::new(&f2, Poly::from_ints(&f2, &[0, 0, 1]), Poly::one(&f2));
        let (locals, poly_part) = partial_fractions(&f2, &x).unwrap();
        assert!(locals.is_empty());
        assert_eq!(poly_part, Poly::from_ints(&f2, &[0, 0, 1]));

        // (T^3+1)/T^2 over F_5 -> poly part T, local 1/T^2
        let f5 = make_field(5, 1).unwrap();
        let x = RationalFunction::new(
            &f5,
            Poly::from_ints(&f5, &[1, 0, 0, 1]),
            Poly::from_ints(&f5, &[0, 0, 1]),
        );
        let (locals, poly_part) = partial_fractions(&f5, &x).unwrap();
        assert_eq!(poly_part, Poly::from_ints(&f5, &[0, 1]));
        let t = Poly::from_ints(&f5, &[0, 1]);
        let local = locals.get(&t).unwrap();
        assert_eq!(local.num(), &Poly::one(&f5));
        assert_eq!(local.den(), &Poly::from_ints(&f5, &[0, 0, 1]));
        // re-sum check
        assert_eq!(resum(&f5, &locals, &poly_part), x);
    }

    #[test]
    fn partial_fractions_resum_randomized() {
        let f5 = make_field(5, 1).unwrap();
        let mut stream = DetStream::new(99);
        let mut count = 0;
        while count < 500 {
            let num = {
                let codes: alloc::vec::Vec<u64> =
                    (0..5).map(|_| stream.next_u64() % 5).collect();
                Poly::from_ints(&f5, &codes)
            };
            let den = {
                let codes: alloc::vec::Vec<u64> =
                    (0..4).map(|_| stream.next_u64() % 5).collect();
                Poly::from_ints(&f5, &codes)
            };
            if den.is_zero() {
                continue;
            }
            count += 1;
            let x = RationalFunction::new(&f5, num, den);
            let (locals, poly_part) = partial_fractions(&f5, &x).unwrap();
            for (p, part) in &locals {
                // numerator coprime to the key prime, proper fraction
                assert!(part.num().deg_or_zero() < part.den().deg_or_zero());
                assert!(!part.num().rem(&f5, p).is_zero() || part.num().is_zero());
            }
            assert_eq!(resum(&f5, &locals, &poly_part), x, "re-sum must be exact");
        }
    }

    #[test]
    fn valuations() {
        let f5 = make_field(5, 1).unwrap();
        let t = Poly::from_ints(&f5, &[0, 1]);
        let x = RationalFunction::new(
            &f5,
            Poly::from_ints(&f5, &[1, 0, 0, 1]),
            Poly::from_ints(&f5, &[0, 0, 1]),
        );
        assert_eq!(x.valuation_at(&f5, &t), -2);
        assert_eq!(x.valuation_at_infinity(), -1);
    }
}
