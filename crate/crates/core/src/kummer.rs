//! Genus field of a finite abelian Kummer l-extension of k = F_q(T), where
//! the exponent l^n divides q - 1: ramification exponents at the finite
//! primes, the ramification exponent at infinity, and the explicit generator
//! table of the genus field.

use crate::arith::{ext_gcd, lcm_u64, pow_u64, val_l};
use crate::error::{Error, Result};
use crate::field::{radical_degree, FieldCtx, FieldElem};
use crate::group::{ensure_geometric, group_lattice, KummerGroup, Tower};
use crate::poly::Poly;
use crate::radicand::Radicand;
use crate::symbols::infinity_invariants;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

/// One cyclic component k(l^n_eps-th root of gamma_eps * D_eps).
#[derive(Debug, Clone)]
pub struct KummerComponent {
    pub n_eps: u32,
    pub gamma: FieldElem,
    pub d_poly: Poly,
}

/// A finite abelian Kummer l-extension given by its radical components,
/// exponents weakly decreasing.
#[derive(Debug, Clone)]
pub struct KummerSpec {
    pub field: FieldCtx,
    pub l: u64,
    pub components: Vec<KummerComponent>,
}

/// Everything the construction produces, including the invariants that
/// drive the generator table.
#[derive(Debug, Clone)]
pub struct KummerGenusReport {
    /// Ramified primes, ramification exponents weakly decreasing.
    pub primes: Vec<Poly>,
    pub beta: Vec<u32>,
    pub t_prime: u32,
    pub m_prime: u32,
    /// 1-based index of the distinguished prime (None when m' = t' = 0).
    pub main_index: Option<usize>,
    pub bezout: Option<(i64, i64)>,
    /// (j, z_j) for j below the main index.
    pub z: Vec<(usize, i64)>,
    /// (j, y_j) for j above the main index.
    pub y: Vec<(usize, u64)>,
    pub u_prime: u32,
    pub deg_infinity: u64,
    /// Generator list: (index, radicand) pairs adjoined to the input field.
    pub generators: Vec<(u64, Radicand)>,
    pub genus_group: KummerGroup,
    /// The main generator's index exponent was clamped at zero.
    pub clamped_main_index: bool,
}

impl KummerSpec {
    pub fn exponent(&self) -> u32 {
        self.components.first().map(|c| c.n_eps).unwrap_or(0)
    }

    /// The Kummer group presented by the components.
    pub fn group(&self) -> Result<KummerGroup> {
        let mut gens = Vec::new();
        for c in &self.components {
            let b = Radicand::from_poly(&self.field, &c.d_poly)?
                .scale_unit(&self.field, &c.gamma);
            gens.push((pow_u64(self.l, c.n_eps), b));
        }
        KummerGroup::new(self.l, self.exponent(), gens)
    }

    /// Shape checks that do not need the Kummer divisibility condition; the
    /// ramification formulas are well-defined on this level already.
    pub fn validate_structure(&self) -> Result<()> {
        if !crate::arith::is_prime_u64(self.l) {
            return Err(Error::MalformedSpec(format!("{} is not prime", self.l)));
        }
        if self.l == self.field.p() {
            return Err(Error::MalformedSpec(
                "the radical prime equals the characteristic".into(),
            ));
        }
        if self.components.is_empty() {
            return Err(Error::MalformedSpec("no components".into()));
        }
        let mut prev = self.exponent();
        if prev == 0 {
            return Err(Error::MalformedSpec("component exponent is zero".into()));
        }
        for c in &self.components {
            if c.n_eps == 0 || c.n_eps > prev {
                return Err(Error::MalformedSpec(
                    "component exponents must be weakly decreasing and positive".into(),
                ));
            }
            prev = c.n_eps;
            if self.field.is_zero(&c.gamma) {
                return Err(Error::MalformedSpec("gamma must be nonzero".into()));
            }
            if !c.d_poly.is_monic(&self.field) {
                return Err(Error::MalformedSpec("D must be monic".into()));
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(Tower, KummerGroup)> {
        self.validate_structure()?;
        let n = self.exponent();
        if (self.field.order() - 1) % pow_u64(self.l, n) != 0 {
            return Err(Error::MalformedSpec(
                "the exponent does not divide q - 1; this is non-Kummer data".into(),
            ));
        }
        let tower = Tower::new(self.field.clone(), 1)?;
        let group = self.group()?;
        let gl = ensure_geometric(&tower, &group)?;
        if gl.lat.exponent() != pow_u64(self.l, n) {
            return Err(Error::MalformedSpec(format!(
                "the group exponent is smaller than the declared l^{n}"
            )));
        }
        Ok((tower, group))
    }

    /// Reduced exponents alpha_{j,eps} = v_{P_j}(D_eps) mod l^(n_eps) over
    /// the factored supports.
    fn reduced_exponents(&self) -> Result<BTreeMap<Poly, Vec<u64>>> {
        let mut map: BTreeMap<Poly, Vec<u64>> = BTreeMap::new();
        let s = self.components.len();
        for (idx, c) in self.components.iter().enumerate() {
            let rad = Radicand::from_poly(&self.field, &c.d_poly)?;
            let le = pow_u64(self.l, c.n_eps);
            for (p, &e) in rad.factors() {
                let a = (e.rem_euclid(le as i64)) as u64;
                let entry = map.entry(p.clone()).or_insert_with(|| {
                    let mut v = Vec::new();
                    v.resize(s, 0);
                    v
                });
                entry[idx] = a;
            }
        }
        Ok(map)
    }
}

/// Ramified primes with their exponents l^beta_j, ordered so the beta are
/// weakly decreasing starting at the group exponent (ties broken by the
/// deterministic polynomial order).
pub fn ramification_exponents(spec: &KummerSpec) -> Result<Vec<(Poly, u32)>> {
    spec.validate_structure()?;
    ramification_exponents_unchecked(spec)
}

fn ramification_exponents_unchecked(spec: &KummerSpec) -> Result<Vec<(Poly, u32)>> {
    let alphas = spec.reduced_exponents()?;
    let mut out = Vec::new();
    for (p, row) in alphas {
        let mut beta = 0u32;
        for (c, &a) in spec.components.iter().zip(&row) {
            if a != 0 {
                beta = beta.max(c.n_eps - val_l(a, spec.l));
            }
        }
        if beta > 0 {
            out.push((p, beta));
        }
    }
    out.sort_by(|(pa, ba), (pb, bb)| bb.cmp(ba).then(pa.cmp(pb)));
    Ok(out)
}

/// t' with e_infinity(K/k) = l^t'.
pub fn infinity_exponent(spec: &KummerSpec) -> Result<u32> {
    let mut t = 0u32;
    for c in &spec.components {
        let d = c.d_poly.deg_or_zero() as u64;
        let vd = if d == 0 { c.n_eps } else { val_l(d, spec.l) };
        t = t.max(c.n_eps - c.n_eps.min(vd));
    }
    Ok(t)
}

/// Split deg P = c' * l^d' with l not dividing c'.
fn split_degree(l: u64, deg: u64) -> (u64, u32) {
    debug_assert!(deg > 0);
    let d = val_l(deg, l);
    (deg / pow_u64(l, d), d)
}

/// The genus field construction for the Kummer case.
pub fn genus_field_kummer(spec: &KummerSpec) -> Result<KummerGenusReport> {
    let (tower, group) = spec.validate()?;
    let ctx = &spec.field;
    let l = spec.l;
    let n = spec.exponent();
    let ln = pow_u64(l, n);

    let ram = ramification_exponents_unchecked(spec)?;
    let primes: Vec<Poly> = ram.iter().map(|(p, _)| p.clone()).collect();
    let beta: Vec<u32> = ram.iter().map(|(_, b)| *b).collect();
    let r = primes.len();
    if r > 0 && beta[0] != n {
        return Err(Error::MalformedSpec(
            "no prime realizes the full exponent; the group exponent check should have caught this"
                .into(),
        ));
    }

    let t_prime = infinity_exponent(spec)?;
    let degs: Vec<(u64, u32)> = primes
        .iter()
        .map(|p| split_degree(l, p.deg_or_zero() as u64))
        .collect();

    // m' = max_j (beta_j - min(beta_j, d'_j))
    let m_prime = (0..r)
        .map(|j| beta[j] - beta[j].min(degs[j].1))
        .max()
        .unwrap_or(0);

    // u' from the constant-field degrees of the sign-normalized units and
    // the degree of the infinite place of K
    let mut lcm_rad = 1u64;
    for c in &spec.components {
        let sign = if c.d_poly.deg_or_zero() % 2 == 0 {
            ctx.one()
        } else {
            ctx.neg_one()
        };
        let eps = ctx.mul(&sign, &c.gamma);
        lcm_rad = lcm_u64(
            lcm_rad,
            radical_degree(ctx, &eps, pow_u64(l, c.n_eps))?,
        );
    }
    let inv_inf = infinity_invariants(&tower, &group, true)?;
    let deg_infinity = inv_inf.degree_of_place_upstairs;
    if lcm_rad % deg_infinity != 0 {
        return Err(Error::MalformedSpec(
            "constant-field degree is not a multiple of the infinite place degree".into(),
        ));
    }
    let u_prime = val_l(lcm_rad / deg_infinity, l);

    let mut generators: Vec<(u64, Radicand)> = Vec::new();
    let mut report = KummerGenusReport {
        primes: primes.clone(),
        beta: beta.clone(),
        t_prime,
        m_prime,
        main_index: None,
        bezout: None,
        z: Vec::new(),
        y: Vec::new(),
        u_prime,
        deg_infinity,
        generators: Vec::new(),
        genus_group: group.clone(),
        clamped_main_index: false,
    };

    if m_prime == 0 && t_prime == 0 {
        for j in 0..r {
            let star = Radicand::from_prime_power(ctx, primes[j].clone(), 1)?.star(ctx);
            generators.push((pow_u64(l, beta[j]), star));
        }
    } else {
        // the largest index attaining m'
        let i = (0..r)
            .filter(|&j| beta[j] - beta[j].min(degs[j].1) == m_prime)
            .max()
            .expect("m' > 0 or t' > 0 requires a ramified prime");
        let (_, d_i) = degs[i];
        debug_assert_eq!(beta[i].min(d_i), d_i);
        let deg_pi = primes[i].deg_or_zero() as i64;
        let modulus = pow_u64(l, n + d_i) as i128;
        let (g, a, b) = ext_gcd(deg_pi as i128, modulus);
        debug_assert_eq!(g, pow_u64(l, d_i) as i128);
        let (a, b) = (a as i64, b as i64);
        report.main_index = Some(i + 1);
        report.bezout = Some((a, b));

        for j in 0..r {
            if j < i {
                let (c_j, d_j) = degs[j];
                debug_assert!(d_j >= d_i);
                let z_j = -(a as i128)
                    * c_j as i128
                    * pow_u64(l, d_j - d_i) as i128;
                let z_j = z_j as i64;
                report.z.push((j + 1, z_j));
                let rad = Radicand::from_prime_power(ctx, primes[j].clone(), 1)?.mul(
                    ctx,
                    &Radicand::from_prime_power(ctx, primes[i].clone(), z_j)?,
                );
                generators.push((pow_u64(l, beta[j]), rad));
            } else if j == i {
                let exp = d_i as i64 + t_prime as i64 - u_prime as i64;
                if exp < 0 {
                    report.clamped_main_index = true;
                } else if exp > 0 {
                    let star =
                        Radicand::from_prime_power(ctx, primes[i].clone(), 1)?.star(ctx);
                    generators.push((pow_u64(l, exp as u32), star));
                }
            } else {
                let (c_j, d_j) = degs[j];
                let y_j = (-(a as i128) * c_j as i128).rem_euclid(ln as i128) as u64;
                report.y.push((j + 1, y_j));
                if d_j >= d_i {
                    let rad = Radicand::from_prime_power(ctx, primes[j].clone(), 1)?.mul(
                        ctx,
                        &Radicand::from_prime_power(
                            ctx,
                            primes[i].clone(),
                            (y_j * pow_u64(l, d_j - d_i)) as i64,
                        )?,
                    );
                    generators.push((pow_u64(l, beta[j]), rad));
                } else {
                    let rad = Radicand::from_prime_power(
                        ctx,
                        primes[j].clone(),
                        pow_u64(l, d_i - d_j) as i64,
                    )?
                    .mul(
                        ctx,
                        &Radicand::from_prime_power(ctx, primes[i].clone(), y_j as i64)?,
                    );
                    generators.push((pow_u64(l, beta[j] + d_i - d_j), rad));
                }
            }
        }
    }

    let mut genus = group;
    for g in &generators {
        genus = genus.extend(g.clone());
    }
    report.generators = generators;
    report.genus_group = genus;
    Ok(report)
}

/// Class-level equality of two groups over a common coordinate system.
pub fn groups_equal(tower: &Tower, a: &KummerGroup, b: &KummerGroup) -> Result<bool> {
    let mut extra = a.support();
    extra.extend(b.support());
    let la = group_lattice(tower, a, &extra)?;
    let lb = group_lattice(tower, b, &extra)?;
    Ok(la.lat.rows == lb.lat.rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn spec_single(ctx: &FieldCtx, l: u64, n: u32, gamma: u64, d_codes: &[u64]) -> KummerSpec {
        KummerSpec {
            field: ctx.clone(),
            l,
            components: alloc::vec![KummerComponent {
                n_eps: n,
                gamma: ctx.from_int(gamma),
                d_poly: Poly::from_ints(ctx, d_codes),
            }],
        }
    }

    #[test]
    fn beta_examples() {
        let f5 = make_field(5, 1).unwrap();
        // D = T(T+1), l = 2, n = 1: beta = (1, 1)
        let spec = spec_single(&f5, 2, 1, 1, &[0, 1, 1]);
        let ram = ramification_exponents(&spec).unwrap();
        assert_eq!(ram.len(), 2);
        assert!(ram.iter().all(|(_, b)| *b == 1));

        // D1 = T^2, D2 = T(T+1): T ramifies only through D2
        let spec = KummerSpec {
            field: f5.clone(),
            l: 2,
            components: alloc::vec![
                KummerComponent {
                    n_eps: 1,
                    gamma: f5.one(),
                    d_poly: Poly::from_ints(&f5, &[0, 0, 1]),
                },
                KummerComponent {
                    n_eps: 1,
                    gamma: f5.one(),
                    d_poly: Poly::from_ints(&f5, &[0, 1, 1]),
                },
            ],
        };
        let ram = ramification_exponents(&spec).unwrap();
        assert_eq!(ram.len(), 2);
        assert!(ram.iter().all(|(_, b)| *b == 1));

        // q = 7, l = 3, D = T (T+1)^3, n = 2: beta_T = 2, beta_{T+1} = 1
        let f7 = make_field(7, 1).unwrap();
        let d = Poly::from_ints(&f7, &[0, 1]).mul(
            &f7,
            &Poly::from_ints(&f7, &[1, 1]).pow(&f7, 3),
        );
        let spec = KummerSpec {
            field: f7.clone(),
            l: 3,
            components: alloc::vec![KummerComponent {
                n_eps: 2,
                gamma: f7.one(),
                d_poly: d,
            }],
        };
        let ram = ramification_exponents(&spec).unwrap();
        let t = Poly::from_ints(&f7, &[0, 1]);
        let t1 = Poly::from_ints(&f7, &[1, 1]);
        let find = |p: &Poly| ram.iter().find(|(q, _)| q == p).unwrap().1;
        assert_eq!(find(&t), 2);
        assert_eq!(find(&t1), 1);
        // sorted with the full exponent first
        assert_eq!(ram[0].1, 2);
    }

    #[test]
    fn t_prime_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(
            infinity_exponent(&spec_single(&f5, 2, 1, 1, &[0, 1, 1])).unwrap(),
            0
        );
        assert_eq!(
            infinity_exponent(&spec_single(&f5, 2, 1, 1, &[0, 1])).unwrap(),
            1
        );
        assert_eq!(
            infinity_exponent(&spec_single(&f5, 2, 1, 1, &[0, 2, 0, 1])).unwrap(),
            1
        );
    }

    #[test]
    fn worked_example_t_times_t_plus_1() {
        // q = 5, K = k(sqrt(T(T+1))): the genus field is K itself
        let f5 = make_field(5, 1).unwrap();
        let spec = spec_single(&f5, 2, 1, 1, &[0, 1, 1]);
        let report = genus_field_kummer(&spec).unwrap();
        assert_eq!(report.beta, alloc::vec![1, 1]);
        assert_eq!(report.t_prime, 0);
        assert_eq!(report.m_prime, 1);
        assert_eq!(report.u_prime, 0);
        let tower = Tower::new(f5.clone(), 1).unwrap();
        let k_group = spec.group().unwrap();
        assert!(groups_equal(&tower, &report.genus_group, &k_group).unwrap());
    }

    #[test]
    fn worked_example_sqrt_t() {
        // q = 5, K = k(sqrt(T)): genus is K (since -T = 4T = T mod squares)
        let f5 = make_field(5, 1).unwrap();
        let spec = spec_single(&f5, 2, 1, 1, &[0, 1]);
        let report = genus_field_kummer(&spec).unwrap();
        assert_eq!(report.t_prime, 1);
        assert_eq!(report.m_prime, 1);
        assert_eq!(report.u_prime, 0);
        assert_eq!(report.main_index, Some(1));
        let tower = Tower::new(f5.clone(), 1).unwrap();
        let k_group = spec.group().unwrap();
        assert!(groups_equal(&tower, &report.genus_group, &k_group).unwrap());
        // the single generator is the sign-normalized prime
        assert_eq!(report.generators.len(), 1);
        assert_eq!(report.generators[0].0, 2);
        assert_eq!(report.generators[0].1.unit(), &f5.from_int(4));
    }

    #[test]
    fn worked_example_t_times_quadratic() {
        // q = 5, K = k(sqrt(T(T^2+2))): genus is k(sqrt(-T), sqrt(T^2+2))
        let f5 = make_field(5, 1).unwrap();
        let spec = spec_single(&f5, 2, 1, 1, &[0, 2, 0, 1]);
        let report = genus_field_kummer(&spec).unwrap();
        assert_eq!(report.beta, alloc::vec![1, 1]);
        assert_eq!(report.t_prime, 1);
        assert_eq!(report.m_prime, 1);
        assert_eq!(report.main_index, Some(1));
        assert_eq!(report.u_prime, 0);
        assert_eq!(report.y, alloc::vec![(2, 1)]);
        // generators: (-T) and (T^2+2) T^2 (the latter is T^2+2 mod squares)
        assert_eq!(report.generators.len(), 2);
        let tower = Tower::new(f5.clone(), 1).unwrap();
        let minus_t = Radicand::from_prime_power(&f5, Poly::from_ints(&f5, &[0, 1]), 1)
            .unwrap()
            .scale_unit(&f5, &f5.neg_one());
        let quad = Radicand::from_prime_power(&f5, Poly::from_ints(&f5, &[2, 0, 1]), 1).unwrap();
        let expected = KummerGroup::new(
            2,
            1,
            alloc::vec![(2, minus_t), (2, quad)],
        )
        .unwrap();
        assert!(groups_equal(&tower, &report.genus_group, &expected).unwrap());
        // the genus group strictly contains K's group
        let gl = group_lattice(&tower, &report.genus_group, &[]).unwrap();
        assert_eq!(gl.size(), 4);
    }

    #[test]
    fn rejects_nongeometric_and_wrong_exponent() {
        let f5 = make_field(5, 1).unwrap();
        // gamma = 2 with trivial poly part gives a constant extension
        let spec = spec_single(&f5, 2, 1, 2, &[1]);
        assert!(matches!(
            genus_field_kummer(&spec),
            Err(Error::NotGeometric(_))
        ));
        // D = T^2 with n = 1 collapses the class
        let spec = spec_single(&f5, 2, 1, 1, &[0, 0, 1]);
        assert!(genus_field_kummer(&spec).is_err());
    }
}
