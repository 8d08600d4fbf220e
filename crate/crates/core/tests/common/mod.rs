//! Deterministic corpus generation shared by the integration suites.

use genusfield_core::field::{make_field, FieldCtx};
use genusfield_core::kummer::{KummerComponent, KummerSpec};
use genusfield_core::nonkummer::{NonKummerComponent, NonKummerSpec};
use genusfield_core::poly::{is_irreducible, DetStream, Poly};
use genusfield_core::ratfunc::RationalFunction;
use genusfield_core::witt::{WittSpec, WittVector};
use genusfield_core::Tower;
use std::collections::BTreeMap;

pub fn random_monic_irreducible(
    stream: &mut DetStream,
    ctx: &FieldCtx,
    deg: usize,
) -> Poly {
    loop {
        let mut codes: Vec<u64> = (0..deg).map(|_| stream.next_u64() % ctx.order()).collect();
        codes.push(1);
        let p = Poly::from_ints(ctx, &codes);
        if is_irreducible(ctx, &p) {
            return p;
        }
    }
}

/// Distinct random monic irreducibles with degrees drawn from the list.
/// Small fields can run out of irreducibles of a degree; bump the degree
/// after enough collisions.
pub fn random_prime_set(
    stream: &mut DetStream,
    ctx: &FieldCtx,
    degrees: &[usize],
) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for &d in degrees {
        let mut d = d;
        let mut tries = 0;
        loop {
            let p = random_monic_irreducible(stream, ctx, d);
            if !out.contains(&p) {
                out.push(p);
                break;
            }
            tries += 1;
            if tries > 30 {
                d += 1;
                tries = 0;
            }
        }
    }
    out
}

/// Valid (q, l, n) Kummer combinations at desk scale.
pub const KUMMER_COMBOS: &[(u64, usize, u64, u32)] = &[
    // (p, f, l, n) with l^n | p^f - 1
    (3, 1, 2, 1),
    (5, 1, 2, 1),
    (5, 1, 2, 2),
    (7, 1, 2, 1),
    (7, 1, 3, 1),
    (13, 1, 2, 2),
    (13, 1, 3, 1),
    (2, 2, 3, 1),
];

/// Deterministic stream of valid Kummer specs.
pub fn kummer_specs(seed: u64, count: usize) -> Vec<KummerSpec> {
    let mut stream = DetStream::new(seed);
    let mut out = Vec::new();
    let mut combo_idx = 0usize;
    while out.len() < count {
        let (p, f, l, n) = KUMMER_COMBOS[combo_idx % KUMMER_COMBOS.len()];
        combo_idx += 1;
        let ctx = make_field(p, f).unwrap();
        let s = 1 + (stream.next_u64() % 2) as usize;
        let r = 1 + (stream.next_u64() % 3) as usize;
        let degrees: Vec<usize> = (0..r).map(|_| 1 + (stream.next_u64() % 3) as usize).collect();
        let primes = random_prime_set(&mut stream, &ctx, &degrees);
        let mut components = Vec::new();
        let mut n_prev = n;
        for idx in 0..s {
            let n_eps = if idx == 0 {
                n
            } else {
                1 + (stream.next_u64() % n_prev as u64) as u32
            };
            n_prev = n_eps;
            let le = l.pow(n_eps);
            let mut d = Poly::one(&ctx);
            let mut any = false;
            for (j, prime) in primes.iter().enumerate() {
                let a = if idx == 0 && j == 0 {
                    // exponent coprime to l so the declared exponent is realized
                    1 + stream.next_u64() % (l - 1)
                } else {
                    stream.next_u64() % le
                };
                if a != 0 {
                    any = true;
                    d = d.mul(&ctx, &prime.pow(&ctx, a));
                }
            }
            if !any {
                d = d.mul(&ctx, &primes[0]);
            }
            let gamma = ctx.from_int(1 + stream.next_u64() % (ctx.order() - 1));
            components.push(KummerComponent {
                n_eps,
                gamma,
                d_poly: d,
            });
        }
        let spec = KummerSpec {
            field: ctx,
            l,
            components,
        };
        if spec.validate().is_ok() {
            out.push(spec);
        }
    }
    out
}

/// Valid non-Kummer combinations: (p, f, l, n, degree of a prime whose orbit
/// realizes the full exponent).
pub const NONKUMMER_COMBOS: &[(u64, usize, u64, u32, usize)] = &[
    (2, 1, 3, 1, 2),  // w = 2
    (5, 1, 3, 1, 2),  // w = 2
    (3, 1, 2, 2, 2),  // w = 2
    (7, 1, 2, 2, 2),  // w = 2
    (2, 2, 3, 2, 3),  // q = 4, w = 3
    (7, 1, 3, 2, 3),  // w = 3
    (13, 1, 3, 2, 3), // w = 3
];

/// Deterministic stream of valid, descent-exact non-Kummer specs.
pub fn nonkummer_specs(seed: u64, count: usize) -> Vec<NonKummerSpec> {
    let mut stream = DetStream::new(seed);
    let mut out = Vec::new();
    let mut combo_idx = 0usize;
    while out.len() < count {
        let combo = NONKUMMER_COMBOS[combo_idx % NONKUMMER_COMBOS.len()];
        combo_idx += 1;
        if let Some(spec) = try_one_nonkummer(&mut stream, combo) {
            out.push(spec);
        }
    }
    out
}

/// One generation attempt for the given combo; None when the draw fails
/// validation.
pub fn try_one_nonkummer(
    stream: &mut DetStream,
    combo: (u64, usize, u64, u32, usize),
) -> Option<NonKummerSpec> {
    try_one_nonkummer_traced(stream, combo).ok()
}

pub fn try_one_nonkummer_traced(
    stream: &mut DetStream,
    combo: (u64, usize, u64, u32, usize),
) -> Result<NonKummerSpec, genusfield_core::Error> {
    {
        let (p, f, l, n, anchor_deg) = combo;
        let ctx = make_field(p, f).unwrap();
        let ln = l.pow(n);
        let w = genusfield_core::field::ord_mod(ctx.order(), ln).unwrap() as usize;
        assert!(w > 1);
        let tower = Tower::new(ctx.clone(), w).unwrap();
        let eta = ctx.order() % ln;
        // primes: one anchor whose orbit makes every exponent stable, plus
        // up to two more of assorted degree
        let extra = (stream.next_u64() % 3) as usize;
        let mut degrees = vec![anchor_deg];
        for _ in 0..extra {
            degrees.push(1 + (stream.next_u64() % 4) as usize);
        }
        let primes = random_prime_set(stream, &ctx, &degrees);
        // allowed exponent step at index l^e: the wrap congruence demands
        // alpha * (eta^s - 1) = 0 mod l^e
        let step_at = |prime: &Poly, e: u32| -> u64 {
            let le = l.pow(e);
            let s = gcd(prime.deg_or_zero() as u64, w as u64);
            let wrap = (pow_mod(eta, s, le) + le - 1) % le;
            if wrap == 0 {
                1
            } else {
                le / gcd(le, wrap)
            }
        };
        let s_count = 1 + (stream.next_u64() % 2) as usize;
        let mut components = Vec::new();
        let mut n_prev = n;
        let mut ok = true;
        for idx in 0..s_count {
            let n_eps = if idx == 0 {
                n
            } else {
                1 + (stream.next_u64() % n_prev as u64) as u32
            };
            n_prev = n_eps;
            let le = l.pow(n_eps);
            let mut alphas = BTreeMap::new();
            for (j, prime) in primes.iter().enumerate() {
                let step = step_at(prime, n_eps);
                let a = if idx == 0 && j == 0 {
                    // anchor: exponent coprime to l so beta reaches n
                    if step != 1 {
                        ok = false;
                        0
                    } else {
                        1 + stream.next_u64() % (l - 1)
                    }
                } else {
                    (stream.next_u64() % (le / step)) * step
                };
                if a != 0 {
                    alphas.insert(prime.clone(), a % le);
                }
            }
            let gamma = tower
                .ext()
                .from_int(1 + stream.next_u64() % (tower.ext().order() - 1));
            components.push(NonKummerComponent {
                n_eps,
                gamma,
                alphas,
            });
        }
        if !ok {
            return Err(genusfield_core::Error::MalformedSpec("anchor step".into()));
        }
        let spec = NonKummerSpec {
            field: ctx,
            l,
            n,
            components,
        };
        genusfield_core::nonkummer::validate_descent(&spec)?;
        genusfield_core::nonkummer::genus_field_nonkummer(&spec)?;
        Ok(spec)
    }
}

/// Deterministic stream of Artin-Schreier-Witt specs over small fields.
pub fn witt_specs(seed: u64, count: usize) -> Vec<WittSpec> {
    let mut stream = DetStream::new(seed);
    let mut out = Vec::new();
    let combos: &[(u64, usize, usize)] = &[(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (5, 1, 1)];
    let mut combo_idx = 0usize;
    while out.len() < count {
        let (p, f, n) = combos[combo_idx % combos.len()];
        combo_idx += 1;
        let ctx = make_field(p, f).unwrap();
        let prime_count = 1 + (stream.next_u64() % 2) as usize;
        let degrees: Vec<usize> = (0..prime_count)
            .map(|_| 1 + (stream.next_u64() % 2) as usize)
            .collect();
        let primes = random_prime_set(&mut stream, &ctx, &degrees);
        let n_vectors = 1 + (stream.next_u64() % 2) as usize;
        let mut vectors = Vec::new();
        for _ in 0..n_vectors {
            let comps: Vec<RationalFunction> = (0..n)
                .map(|_| {
                    let mut acc = RationalFunction::zero(&ctx);
                    for prime in &primes {
                        if stream.next_u64() % 2 == 0 {
                            continue;
                        }
                        let e = 1 + stream.next_u64() % 2;
                        let den = prime.pow(&ctx, e);
                        let num_deg = den.deg_or_zero();
                        let codes: Vec<u64> = (0..num_deg)
                            .map(|_| stream.next_u64() % ctx.order())
                            .collect();
                        let num = Poly::from_ints(&ctx, &codes);
                        if num.is_zero() {
                            continue;
                        }
                        acc = acc.add(&ctx, &RationalFunction::new(&ctx, num, den));
                    }
                    if stream.next_u64() % 2 == 0 {
                        let deg = (stream.next_u64() % 4) as usize;
                        let codes: Vec<u64> = (0..=deg)
                            .map(|_| stream.next_u64() % ctx.order())
                            .collect();
                        acc = acc.add(
                            &ctx,
                            &RationalFunction::from_poly(&ctx, Poly::from_ints(&ctx, &codes)),
                        );
                    }
                    acc
                })
                .collect();
            vectors.push(WittVector::from_components(comps));
        }
        let spec = WittSpec {
            field: ctx,
            n,
            vectors,
        };
        if genusfield_core::witt::genus_field_wittp(&spec).is_ok() {
            out.push(spec);
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = base % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}
