//! Local invariants of Kummer groups: ramification index and inertia degree
//! at finite places and at infinity, over the constant extension and for the
//! descended extension over the base, via valuations, power residue symbols
//! and tame symbols.

use crate::arith::{gcd_u64, lcm_u64, pow_u128};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::group::{
    build_descent_frame, group_lattice, KummerGroup, PlaceRef, Tower,
};
use crate::lattice::{kernel_of_functional, Lattice};
use crate::poly::{conorm_orbit, Poly};
use crate::radicand::Radicand;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Local data of a place in the extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceInvariants {
    /// Ramification index.
    pub e: u64,
    /// Inertia degree.
    pub f: u64,
    /// Degree of a place upstairs over the constant field of its level.
    pub degree_of_place_upstairs: u64,
    /// Number of places above the given place.
    pub places: u128,
}

/// (b mod P)^((Q_P - 1)/m) pulled back to the m-th roots of unity of the
/// coefficient field; 1 exactly when b is an m-th power residue mod P.
pub fn power_residue_symbol(
    ctx: &FieldCtx,
    b: &Radicand,
    prime: &Poly,
    m: u64,
) -> Result<FieldElem> {
    if (ctx.order() - 1) % m != 0 {
        return Err(Error::InvalidParameter(format!(
            "symbol index {m} must divide Q - 1 = {}",
            ctx.order() - 1
        )));
    }
    let r = b.residue_mod(ctx, prime)?;
    let qp = pow_u128(ctx.order() as u128, prime.deg_or_zero() as u32);
    let exp = (qp - 1) / m as u128;
    let val = r.powmod(ctx, exp, prime);
    if !val.is_constant() {
        return Err(Error::InvalidParameter(
            "residue symbol did not land in the coefficient field".into(),
        ));
    }
    Ok(val.coeff(ctx, 0))
}

/// Tame symbol of (1/T, b) at the infinite place, raised to (Q - 1)/m:
/// the residue of (-1)^(v(pi) v(b)) pi^(v(b)) / b^(v(pi)) at pi = 1/T = 0.
pub fn tame_hilbert_infinity(ctx: &FieldCtx, b: &Radicand, m: u64) -> FieldElem {
    debug_assert_eq!((ctx.order() - 1) % m, 0);
    let deg = b.deg(); // v_inf(b) = -deg
    let sign = if deg.rem_euclid(2) == 0 {
        ctx.one()
    } else {
        ctx.neg_one()
    };
    // residue of T^deg / b at infinity is unit(b)^(-1)
    let unit_inv = ctx.inv(b.unit()).expect("radicand unit nonzero");
    let base = ctx.mul(&sign, &unit_inv);
    ctx.pow(&base, ((ctx.order() - 1) / m) as u128)
}

/// A place at which tame symbols can be evaluated.
pub enum SymbolPlace<'a> {
    Infinity,
    Finite(&'a Poly),
}

/// General tame symbol of a pair of radicands at a place, normed into the
/// m-th roots of unity of the coefficient field. Satisfies the product
/// formula over all places of the supports plus infinity.
pub fn tame_symbol(
    ctx: &FieldCtx,
    x: &Radicand,
    y: &Radicand,
    place: &SymbolPlace<'_>,
    m: u64,
) -> Result<FieldElem> {
    debug_assert_eq!((ctx.order() - 1) % m, 0);
    match place {
        SymbolPlace::Finite(p) => {
            let a = x.valuation_at(p);
            let bv = y.valuation_at(p);
            // t = (-1)^(a bv) x^(bv) / y^a has valuation 0 at p
            let t = x.pow(ctx, bv).mul(ctx, &y.pow(ctx, -a));
            let sign = if (a * bv).rem_euclid(2) == 0 {
                ctx.one()
            } else {
                ctx.neg_one()
            };
            let r = t.residue_mod(ctx, p)?;
            let r = r.scale(ctx, &sign);
            let qp = pow_u128(ctx.order() as u128, p.deg_or_zero() as u32);
            let val = r.powmod(ctx, (qp - 1) / m as u128, p);
            if !val.is_constant() {
                return Err(Error::InvalidParameter(
                    "tame symbol did not land in the coefficient field".into(),
                ));
            }
            Ok(val.coeff(ctx, 0))
        }
        SymbolPlace::Infinity => {
            let a = -x.deg();
            let bv = -y.deg();
            let t = x.pow(ctx, bv).mul(ctx, &y.pow(ctx, -a));
            debug_assert_eq!(t.deg(), 0);
            let sign = if (a * bv).rem_euclid(2) == 0 {
                ctx.one()
            } else {
                ctx.neg_one()
            };
            let r = ctx.mul(&sign, &t.residue_at_infinity(ctx)?);
            Ok(ctx.pow(&r, ((ctx.order() - 1) / m) as u128))
        }
    }
}

// ---- group-level local invariants ----

struct KernelData {
    /// Radicand representatives of kernel generators.
    reps: Vec<Radicand>,
    /// Coefficient vectors of the kernel generators over the class gens.
    coeff_vectors: Vec<Vec<u64>>,
}

/// Kernel of one valuation functional on the class generators.
fn valuation_kernel(
    ctx: &FieldCtx,
    l: u64,
    n: u32,
    class_gens: &[Radicand],
    values: &[u64],
) -> KernelData {
    let coeff_vectors = kernel_of_functional(l, n, values);
    let reps = coeff_vectors
        .iter()
        .map(|x| {
            let mut acc = Radicand::one(ctx);
            for (c, b) in x.iter().zip(class_gens) {
                if *c != 0 {
                    acc = acc.mul(ctx, &b.pow(ctx, *c as i64));
                }
            }
            acc
        })
        .collect();
    KernelData {
        reps,
        coeff_vectors,
    }
}

/// Ramification index from the image of a valuation functional in Z/l^n.
fn image_order(l: u64, n: u32, values: &[u64]) -> u64 {
    let img = Lattice::from_generators(l, n, 1, &values.iter().map(|&v| vec![v]).collect::<Vec<_>>());
    img.size() as u64
}

/// Local invariants of the Kummer extension at a finite place of the base
/// field. Over the constant extension the inertia degree comes from residue
/// symbols on the valuation kernel; with `descend` set, the invariants of
/// the descended extension over the base are computed from the Frobenius
/// complement pairing.
pub fn local_invariants_finite(
    tower: &Tower,
    group: &KummerGroup,
    base_prime: &Poly,
    descend: bool,
) -> Result<PlaceInvariants> {
    let ext = tower.ext();
    let (l, n) = (group.l, group.n);
    let ln = group.modulus();
    let orbit = conorm_orbit(tower.base(), tower.emb(), base_prime, tower.w())?;
    let gl = group_lattice(tower, group, &orbit)?;
    let class_gens = &gl.class_gens;
    let degree = gl.size();

    // e: maximum over the conorm factors of the valuation image order
    let mut e = 1u64;
    for p in &orbit {
        let values: Vec<u64> = class_gens
            .iter()
            .map(|b| b.valuation_at(p).rem_euclid(ln as i64) as u64)
            .collect();
        e = e.max(image_order(l, n, &values));
    }

    // f over the constant extension: order of Frobenius on the residual
    // radical extension at the distinguished orbit member
    let p0 = &orbit[0];
    let values0: Vec<u64> = class_gens
        .iter()
        .map(|b| b.valuation_at(p0).rem_euclid(ln as i64) as u64)
        .collect();
    let kernel = valuation_kernel(ext, l, n, class_gens, &values0);
    let mut f_w = 1u64;
    for rep in &kernel.reps {
        let v = rep.valuation_at(p0);
        debug_assert_eq!(v.rem_euclid(ln as i64), 0);
        let stripped = rep.mul(
            ext,
            &Radicand::from_prime_power(ext, p0.clone(), -v)?,
        );
        let sym = power_residue_symbol(ext, &stripped, p0, ln)?;
        f_w = lcm_u64(f_w, tower.root_order(&sym, ln));
    }

    if !descend {
        let ef = (e as u128) * (f_w as u128);
        return Ok(PlaceInvariants {
            e,
            f: f_w,
            degree_of_place_upstairs: f_w * p0.deg_or_zero() as u64,
            places: degree / ef,
        });
    }

    // descended invariants over the base field
    let frame = build_descent_frame(tower, group)?;
    let d_p = base_prime.deg_or_zero();
    let s = orbit.len() as u64;
    let w = tower.w() as u64;
    let place = PlaceRef::Finite {
        orbit: &orbit,
        base_deg: d_p,
    };
    let mut o_phi = 1u64;
    for coeffs in &kernel.coeff_vectors {
        let val = frame.sigma_pairing(tower, coeffs, &place)?;
        o_phi = lcm_u64(o_phi, tower.root_order(&val, ln));
    }
    let f_k = lcm_u64(o_phi, w / s) * gcd_u64(w, o_phi * d_p as u64) / w;
    let ef = (e as u128) * (f_k as u128);
    let degree_over_k = degree * w as u128;
    Ok(PlaceInvariants {
        e,
        f: f_k,
        degree_of_place_upstairs: f_k * d_p as u64,
        places: degree_over_k / ef,
    })
}

/// Invariants of the infinite place. Over the constant extension the inertia
/// degree comes from the tame symbol at infinity on the degree kernel; with
/// `descend_over_k` set, the Galois product decomposition with the Frobenius
/// complement yields the invariants of the descended extension.
pub fn infinity_invariants(
    tower: &Tower,
    group: &KummerGroup,
    descend_over_k: bool,
) -> Result<PlaceInvariants> {
    let ext = tower.ext();
    let (l, n) = (group.l, group.n);
    let ln = group.modulus();
    let gl = group_lattice(tower, group, &[])?;
    if descend_over_k && gl.constant_class_row().is_some() {
        // the product decomposition of the Galois group needs a geometric
        // descended field
        return Err(Error::NotGeometric(
            "the group contains a nontrivial constant class".into(),
        ));
    }
    let class_gens = &gl.class_gens;
    let degree = gl.size();

    let values: Vec<u64> = class_gens
        .iter()
        .map(|b| (-b.deg()).rem_euclid(ln as i64) as u64)
        .collect();
    let e = image_order(l, n, &values);

    let kernel = valuation_kernel(ext, l, n, class_gens, &values);
    let mut f_w = 1u64;
    for rep in &kernel.reps {
        let sym = tame_hilbert_infinity(ext, rep, ln);
        f_w = lcm_u64(f_w, tower.root_order(&sym, ln));
    }

    if !descend_over_k {
        let ef = (e as u128) * (f_w as u128);
        return Ok(PlaceInvariants {
            e,
            f: f_w,
            degree_of_place_upstairs: f_w,
            places: degree / ef,
        });
    }

    let frame = build_descent_frame(tower, group)?;
    let mut f_k = 1u64;
    for coeffs in &kernel.coeff_vectors {
        let val = frame.sigma_pairing(tower, coeffs, &PlaceRef::Infinity)?;
        f_k = lcm_u64(f_k, tower.root_order(&val, ln));
    }
    // consistency with the constant-extension splitting: the degree of the
    // infinite place upstairs drops by gcd with w after the constant shift
    debug_assert_eq!(
        f_w,
        f_k / gcd_u64(f_k, tower.w() as u64),
        "inertia over the tower must match the descended inertia"
    );
    let ef = (e as u128) * (f_k as u128);
    let degree_over_k = degree * tower.w() as u128;
    Ok(PlaceInvariants {
        e,
        f: f_k,
        degree_of_place_upstairs: f_k,
        places: degree_over_k / ef,
    })
}

/// Inertia degree at infinity over the base of the composite of two groups
/// (the composite of the fields): the lcm of the two descended degrees.
pub fn composite_f_infinity_over_base(
    tower: &Tower,
    a: &KummerGroup,
    b: &KummerGroup,
) -> Result<u64> {
    let fa = infinity_invariants(tower, a, true)?.f;
    let fb = infinity_invariants(tower, b, true)?.f;
    Ok(lcm_u64(fa, fb))
}

/// Inertia degree of the infinite places of the full composite with the
/// constant extension, f_infinity(k_w(radicals of the group) / k). Works for
/// any Frobenius-stable group, geometric or not: powers of the Frobenius
/// that are trivial on the constants act on a degree-kernel radical through
/// the residue of c^((q^j - 1)/l^n), so the order is read off the kernel
/// units without any descent data.
pub fn composite_infinity_inertia(tower: &Tower, group: &KummerGroup) -> Result<u64> {
    let ext = tower.ext();
    let (l, n) = (group.l, group.n);
    let ln = group.modulus();
    let gl = group_lattice(tower, group, &[])?;
    let class_gens = &gl.class_gens;
    let w = tower.w() as u64;
    let values: Vec<u64> = class_gens
        .iter()
        .map(|b| (-b.deg()).rem_euclid(ln as i64) as u64)
        .collect();
    let kernel = valuation_kernel(ext, l, n, class_gens, &values);
    let mut f = w;
    for rep in &kernel.reps {
        debug_assert_eq!(rep.deg().rem_euclid(ln as i64), 0);
        let u = rep.unit();
        let ord_u = crate::field::mult_order(ext, u)?;
        // triviality of u^((q^(w i) - 1)/l^n) is governed by the order of
        // q^w modulo l^n * ord(u)
        let modulus = ln * ord_u;
        let qw = crate::arith::pow_mod_u128(tower.q() as u128, w as u128, modulus as u128);
        let f_c = w * order_of_mod(qw, modulus as u128);
        f = lcm_u64(f, f_c);
    }
    Ok(f)
}

fn order_of_mod(a: u128, m: u128) -> u64 {
    debug_assert!(m > 0);
    if m == 1 {
        return 1;
    }
    let a = a % m;
    debug_assert!(crate::arith::gcd_u64(a as u64, m as u64) == 1);
    let mut x = a;
    let mut e = 1u64;
    while x != 1 {
        x = x * a % m;
        e += 1;
    }
    e
}

/// e must divide l^n and f must be finite; sanity helper for tests.
pub fn check_ef_divides(inv: &PlaceInvariants, degree: u128) -> bool {
    degree % ((inv.e as u128) * (inv.f as u128)) == 0
}
