//! Genus field of a finite abelian non-Kummer l-extension: the extension
//! becomes Kummer over the constant extension k_w with w = ord(q mod l^n),
//! where its radical data is a twisted product over Frobenius conorm orbits.
//! The output is the genus field composed with k_w, explicitly Kummer.

use crate::arith::{ext_gcd, gcd_u64, lcm_u64, pow_u64, val_l};
use crate::error::{Error, Result};
use crate::field::{ord_mod, radical_degree, FieldCtx, FieldElem};
use crate::group::{ensure_geometric, eta_representative, KummerGroup, Tower};
use crate::poly::{conorm_orbit, is_irreducible, Poly};
use crate::radicand::Radicand;
use crate::symbols::{composite_f_infinity_over_base, infinity_invariants};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

/// One cyclic component: gamma in F_{q^w} and the exponent alpha_{j,eps}
/// attached to the distinguished (last) member of each conorm orbit.
#[derive(Debug, Clone)]
pub struct NonKummerComponent {
    pub n_eps: u32,
    pub gamma: FieldElem,
    /// base prime -> exponent in [0, l^n_eps).
    pub alphas: BTreeMap<Poly, u64>,
}

#[derive(Debug, Clone)]
pub struct NonKummerSpec {
    pub field: FieldCtx,
    pub l: u64,
    pub n: u32,
    pub components: Vec<NonKummerComponent>,
}

/// Frame data shared by all later steps: the constant extension, the twisted
/// conorm products and the two ramification maxima.
#[derive(Debug, Clone)]
pub struct NonKummerFrame {
    pub w: usize,
    pub eta: u64,
    /// Ramified base primes, ramification exponents weakly decreasing.
    pub primes: Vec<Poly>,
    pub orbits: Vec<Vec<Poly>>,
    pub s: Vec<u64>,
    pub q_rads: Vec<Radicand>,
    /// deg Q_j = c_j * l^d_j.
    pub c: Vec<u64>,
    pub d: Vec<u32>,
    pub beta: Vec<u32>,
    pub t: u32,
    pub m: u32,
    pub deg_d_eps: Vec<i64>,
}

/// Knobs for the representative-independence property: a different (larger)
/// representative of q mod l^n and a rotation of each conorm orbit's start.
#[derive(Debug, Clone, Copy, Default)]
pub struct FrameOptions {
    pub eta_offset: u32,
    pub orbit_rotation: usize,
}

#[derive(Debug, Clone)]
pub struct NonKummerGenusReport {
    pub w: usize,
    pub eta: u64,
    pub primes: Vec<Poly>,
    pub s: Vec<u64>,
    pub q_rads: Vec<Radicand>,
    pub c: Vec<u64>,
    pub d: Vec<u32>,
    pub beta: Vec<u32>,
    pub t: u32,
    pub m: u32,
    pub main_index: Option<usize>,
    pub bezout: Option<(i64, i64)>,
    pub z: Vec<(usize, i64)>,
    pub y: Vec<(usize, u64)>,
    pub u: u32,
    pub v: u32,
    /// Degree of the constant extension EK/K measured at infinity.
    pub ek_over_k: u64,
    /// Degree of the infinite place of the descended field.
    pub deg_infinity: u64,
    /// L_j generators over k_w.
    pub generators: Vec<(u64, Radicand)>,
    /// Genus group over k_w (input classes plus the L_j).
    pub genus_group: KummerGroup,
    pub clamped_main_index: bool,
}

impl NonKummerSpec {
    pub fn modulus(&self) -> u64 {
        pow_u64(self.l, self.n)
    }

    /// w = ord(q mod l^n); 1 exactly in the Kummer regime.
    pub fn natural_w(&self) -> Result<usize> {
        Ok(ord_mod(self.field.order(), self.modulus())? as usize)
    }

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
        let mut prev = self.n;
        if prev == 0 {
            return Err(Error::MalformedSpec("exponent is zero".into()));
        }
        if self.components[0].n_eps != self.n {
            return Err(Error::MalformedSpec(
                "the first component must realize the declared exponent".into(),
            ));
        }
        for c in &self.components {
            if c.n_eps == 0 || c.n_eps > prev {
                return Err(Error::MalformedSpec(
                    "component exponents must be weakly decreasing and positive".into(),
                ));
            }
            prev = c.n_eps;
            for (p, &a) in &c.alphas {
                if !p.is_monic(&self.field) || !is_irreducible(&self.field, p) {
                    return Err(Error::MalformedSpec(
                        "ramified primes must be monic irreducibles over the base".into(),
                    ));
                }
                if a >= pow_u64(self.l, c.n_eps) {
                    return Err(Error::MalformedSpec(format!(
                        "exponent {a} out of range for index l^{}",
                        c.n_eps
                    )));
                }
            }
        }
        Ok(())
    }

    /// Union of base primes carrying a nonzero exponent somewhere.
    fn base_primes(&self) -> Vec<Poly> {
        let mut set: BTreeMap<Poly, ()> = BTreeMap::new();
        for c in &self.components {
            for (p, &a) in &c.alphas {
                if a != 0 {
                    set.insert(p.clone(), ());
                }
            }
        }
        set.into_keys().collect()
    }
}

/// Build the tower and frame. Errors with `UseKummerPipeline` when w = 1
/// unless `forced_w` pins the degenerate run.
pub fn kummer_frame(spec: &NonKummerSpec) -> Result<(Tower, NonKummerFrame)> {
    kummer_frame_with(spec, FrameOptions::default(), None)
}

pub fn kummer_frame_with(
    spec: &NonKummerSpec,
    opts: FrameOptions,
    forced_w: Option<usize>,
) -> Result<(Tower, NonKummerFrame)> {
    spec.validate_structure()?;
    let ln = spec.modulus();
    let natural_w = spec.natural_w()?;
    let w = match forced_w {
        None => {
            if natural_w == 1 {
                return Err(Error::UseKummerPipeline);
            }
            natural_w
        }
        Some(fw) => {
            if fw != natural_w {
                return Err(Error::InvalidParameter(format!(
                    "forced w = {fw} does not match ord(q mod l^n) = {natural_w}"
                )));
            }
            fw
        }
    };
    let tower = Tower::new(spec.field.clone(), w)?;
    let ext = tower.ext().clone();
    let eta = eta_representative(spec.field.order(), ln) + opts.eta_offset as u64 * ln;

    // per-prime data in a first pass keyed by the base prime
    struct PrimeData {
        orbit: Vec<Poly>,
        q_rad: Radicand,
        beta: u32,
    }
    let mut data: BTreeMap<Poly, PrimeData> = BTreeMap::new();
    for p in spec.base_primes() {
        let mut orbit = conorm_orbit(&spec.field, tower.emb(), &p, w)?;
        if opts.orbit_rotation > 0 {
            let k = opts.orbit_rotation % orbit.len();
            orbit.rotate_left(k);
        }
        let s = orbit.len();
        let mut q_rad = Radicand::one(&ext);
        for (nu, member) in orbit.iter().enumerate() {
            // exponent eta^(s - nu) with nu counted from 1
            let e = {
                let mut acc: i64 = 1;
                for _ in 0..(s - (nu + 1)) {
                    acc = acc
                        .checked_mul(eta as i64)
                        .expect("twisted exponent overflow");
                }
                acc
            };
            q_rad = q_rad.mul(
                &ext,
                &Radicand::from_prime_power(&ext, member.clone(), e)?,
            );
        }
        // ramification exponent at this prime
        let mut beta = 0u32;
        for c in &spec.components {
            if let Some(&a) = c.alphas.get(&p) {
                if a != 0 {
                    beta = beta.max(c.n_eps - val_l(a, spec.l));
                }
            }
        }
        data.insert(
            p,
            PrimeData {
                orbit,
                q_rad,
                beta,
            },
        );
    }

    let mut order: Vec<Poly> = data.keys().cloned().collect();
    order.sort_by(|a, b| {
        data[b]
            .beta
            .cmp(&data[a].beta)
            .then_with(|| a.cmp(b))
    });

    let mut primes = Vec::new();
    let mut orbits = Vec::new();
    let mut s = Vec::new();
    let mut q_rads = Vec::new();
    let mut c = Vec::new();
    let mut d = Vec::new();
    let mut beta = Vec::new();
    for p in order {
        let pd = data.remove(&p).unwrap();
        let deg_q = pd.q_rad.deg();
        debug_assert!(deg_q > 0);
        // closed form check: deg Q = (deg P / s) * (eta^s - 1)/(eta - 1)
        debug_assert_eq!(deg_q as u64, {
            let sj = pd.orbit.len() as u64;
            let geom: u64 = (0..sj).fold(0u64, |acc, i| {
                acc + pow_u64(eta, i as u32)
            });
            p.deg_or_zero() as u64 / sj * geom
        });
        let dv = val_l(deg_q as u64, spec.l);
        c.push(deg_q as u64 / pow_u64(spec.l, dv));
        d.push(dv);
        s.push(pd.orbit.len() as u64);
        beta.push(pd.beta);
        orbits.push(pd.orbit);
        q_rads.push(pd.q_rad);
        primes.push(p);
    }

    // deg D_eps = sum_j alpha_{j,eps} deg Q_j, then t and m
    let mut deg_d_eps = Vec::new();
    let mut t = 0u32;
    for comp in &spec.components {
        let mut deg = 0i64;
        for (j, p) in primes.iter().enumerate() {
            if let Some(&a) = comp.alphas.get(p) {
                deg += a as i64 * q_rads[j].deg();
            }
        }
        deg_d_eps.push(deg);
        let vd = if deg == 0 {
            comp.n_eps
        } else {
            val_l(deg as u64, spec.l)
        };
        t = t.max(comp.n_eps - comp.n_eps.min(vd));
    }
    let m = (0..primes.len())
        .map(|j| beta[j] - beta[j].min(d[j]))
        .max()
        .unwrap_or(0);

    Ok((
        tower,
        NonKummerFrame {
            w,
            eta,
            primes,
            orbits,
            s,
            q_rads,
            c,
            d,
            beta,
            t,
            m,
            deg_d_eps,
        },
    ))
}

/// The Kummer group of the extension over k_w presented by the frame.
pub fn spec_group(
    spec: &NonKummerSpec,
    tower: &Tower,
    frame: &NonKummerFrame,
) -> Result<KummerGroup> {
    let ext = tower.ext();
    let mut gens = Vec::new();
    for comp in &spec.components {
        let mut rad = Radicand::from_unit(ext, comp.gamma.clone()).map_err(|_| {
            Error::MalformedSpec("gamma must be a nonzero element of the extension".into())
        })?;
        if comp.gamma.coeffs().len() != ext.degree() {
            return Err(Error::MalformedSpec(format!(
                "gamma needs {} coefficients for the constant extension",
                ext.degree()
            )));
        }
        for (j, p) in frame.primes.iter().enumerate() {
            if let Some(&a) = comp.alphas.get(p) {
                if a != 0 {
                    rad = rad.mul(ext, &frame.q_rads[j].pow(ext, a as i64));
                }
            }
        }
        gens.push((pow_u64(spec.l, comp.n_eps), rad));
    }
    KummerGroup::new(spec.l, spec.n, gens)
}

/// Check that every component's radical class descends: tau(gamma D) times
/// (gamma D)^(-eta) must be an l^n_eps-th power in k_w.
pub fn validate_descent(spec: &NonKummerSpec) -> Result<()> {
    if spec.components.is_empty() {
        return Ok(());
    }
    let (tower, frame) = match kummer_frame(spec) {
        Err(Error::UseKummerPipeline) => {
            kummer_frame_with(spec, FrameOptions::default(), Some(1))?
        }
        other => other?,
    };
    let group = spec_group(spec, &tower, &frame)?;
    crate::group::validate_tau_stability(&tower, &group)
}

pub fn genus_field_nonkummer(spec: &NonKummerSpec) -> Result<NonKummerGenusReport> {
    genus_field_nonkummer_with(spec, FrameOptions::default(), None)
}

/// The degenerate w = 1 run used to cross-check the Kummer construction.
pub fn genus_field_nonkummer_at_w1(spec: &NonKummerSpec) -> Result<NonKummerGenusReport> {
    genus_field_nonkummer_with(spec, FrameOptions::default(), Some(1))
}

pub fn genus_field_nonkummer_with(
    spec: &NonKummerSpec,
    opts: FrameOptions,
    forced_w: Option<usize>,
) -> Result<NonKummerGenusReport> {
    let (tower, frame) = kummer_frame_with(spec, opts, forced_w)?;
    let ext = tower.ext().clone();
    let l = spec.l;
    let n = spec.n;
    let ln = spec.modulus();

    let group = spec_group(spec, &tower, &frame)?;
    crate::group::validate_tau_stability(&tower, &group)?;
    let gl = ensure_geometric(&tower, &group)?;
    if gl.lat.exponent() != ln {
        return Err(Error::MalformedSpec(format!(
            "the group exponent is smaller than the declared l^{n}"
        )));
    }
    let r = frame.primes.len();
    if r > 0 && frame.beta[0] != n {
        return Err(Error::MalformedSpec(
            "no prime realizes the full exponent".into(),
        ));
    }

    // u from the constant-field degrees of the twisted units
    let mut lcm_rad = 1u64;
    for (comp, &deg_d) in spec.components.iter().zip(&frame.deg_d_eps) {
        let sign = if deg_d.rem_euclid(2) == 0 {
            ext.one()
        } else {
            ext.neg_one()
        };
        let mu = ext.mul(&sign, &comp.gamma);
        lcm_rad = lcm_u64(lcm_rad, radical_degree(&ext, &mu, pow_u64(l, comp.n_eps))?);
    }
    let inv_inf_w = infinity_invariants(&tower, &group, false)?;
    let deg_p_inf_upstairs = inv_inf_w.degree_of_place_upstairs;
    if lcm_rad % deg_p_inf_upstairs != 0 {
        return Err(Error::MalformedSpec(
            "constant-field degree is not a multiple of the infinite place degree".into(),
        ));
    }
    let u = val_l(lcm_rad / deg_p_inf_upstairs, l);

    // descended infinity data and the constant-extension correction v
    let inv_inf_k = infinity_invariants(&tower, &group, true)?;
    let deg_infinity = inv_inf_k.degree_of_place_upstairs;
    let e_group = {
        // sign-normalized radical data of the cyclotomic part
        let mut gens = Vec::new();
        for comp in &spec.components {
            let mut rad = Radicand::one(&ext);
            for (j, p) in frame.primes.iter().enumerate() {
                if let Some(&a) = comp.alphas.get(p) {
                    if a != 0 {
                        rad = rad.mul(&ext, &frame.q_rads[j].pow(&ext, a as i64));
                    }
                }
            }
            gens.push((pow_u64(l, comp.n_eps), rad.star(&ext)));
        }
        KummerGroup::new(l, n, gens)?
    };
    let ek_over_k = composite_f_infinity_over_base(&tower, &group, &e_group)?;
    let w_u64 = frame.w as u64;
    let v_num = gcd_u64(ek_over_k, w_u64);
    let v_den = gcd_u64(deg_infinity, w_u64);
    if v_num % v_den != 0 {
        return Err(Error::MalformedSpec(
            "constant-extension correction is not integral".into(),
        ));
    }
    let v = val_l(v_num / v_den, l);

    let mut report = NonKummerGenusReport {
        w: frame.w,
        eta: frame.eta,
        primes: frame.primes.clone(),
        s: frame.s.clone(),
        q_rads: frame.q_rads.clone(),
        c: frame.c.clone(),
        d: frame.d.clone(),
        beta: frame.beta.clone(),
        t: frame.t,
        m: frame.m,
        main_index: None,
        bezout: None,
        z: Vec::new(),
        y: Vec::new(),
        u,
        v,
        ek_over_k,
        deg_infinity,
        generators: Vec::new(),
        genus_group: group.clone(),
        clamped_main_index: false,
    };

    let mut generators: Vec<(u64, Radicand)> = Vec::new();
    if frame.m == 0 && frame.t == 0 {
        for j in 0..r {
            generators.push((
                pow_u64(l, frame.beta[j]),
                frame.q_rads[j].star(&ext),
            ));
        }
    } else {
        let i = (0..r)
            .filter(|&j| frame.beta[j] - frame.beta[j].min(frame.d[j]) == frame.m)
            .max()
            .expect("a ramified prime attains the maximum");
        let d_i = frame.d[i];
        debug_assert_eq!(frame.beta[i].min(d_i), d_i);
        let deg_qi = frame.q_rads[i].deg();
        let modulus = pow_u64(l, n + d_i) as i128;
        let (g, a, b) = ext_gcd(deg_qi as i128, modulus);
        debug_assert_eq!(g, pow_u64(l, d_i) as i128);
        let (a, b) = (a as i64, b as i64);
        report.main_index = Some(i + 1);
        report.bezout = Some((a, b));

        for j in 0..r {
            if j < i {
                let d_j = frame.d[j];
                debug_assert!(d_j >= d_i);
                let z_j =
                    (-(a as i128) * frame.c[j] as i128 * pow_u64(l, d_j - d_i) as i128) as i64;
                report.z.push((j + 1, z_j));
                let rad = frame.q_rads[j].mul(&ext, &frame.q_rads[i].pow(&ext, z_j));
                generators.push((pow_u64(l, frame.beta[j]), rad));
            } else if j == i {
                let exp = d_i as i64 + frame.t as i64 - u as i64 - v as i64;
                if exp < 0 {
                    report.clamped_main_index = true;
                } else if exp > 0 {
                    generators.push((
                        pow_u64(l, exp as u32),
                        frame.q_rads[i].star(&ext),
                    ));
                }
            } else {
                let d_j = frame.d[j];
                let y_j = (-(a as i128) * frame.c[j] as i128).rem_euclid(ln as i128) as u64;
                report.y.push((j + 1, y_j));
                if d_j >= d_i {
                    let rad = frame.q_rads[j].mul(
                        &ext,
                        &frame.q_rads[i]
                            .pow(&ext, (y_j * pow_u64(l, d_j - d_i)) as i64),
                    );
                    generators.push((pow_u64(l, frame.beta[j]), rad));
                } else {
                    let rad = frame.q_rads[j]
                        .pow(&ext, pow_u64(l, d_i - d_j) as i64)
                        .mul(&ext, &frame.q_rads[i].pow(&ext, y_j as i64));
                    generators.push((pow_u64(l, frame.beta[j] + d_i - d_j), rad));
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

/// Convert a Kummer spec into the orbit-exponent form so the degenerate
/// pipeline can run on it.
pub fn kummer_spec_as_nonkummer(spec: &crate::kummer::KummerSpec) -> Result<NonKummerSpec> {
    let mut components = Vec::new();
    for c in &spec.components {
        let rad = Radicand::from_poly(&spec.field, &c.d_poly)?;
        let le = pow_u64(spec.l, c.n_eps);
        let mut alphas = BTreeMap::new();
        for (p, &e) in rad.factors() {
            let a = e.rem_euclid(le as i64) as u64;
            if a != 0 {
                alphas.insert(p.clone(), a);
            }
        }
        components.push(NonKummerComponent {
            n_eps: c.n_eps,
            gamma: c.gamma.clone(),
            alphas,
        });
    }
    Ok(NonKummerSpec {
        field: spec.field.clone(),
        l: spec.l,
        n: spec.exponent(),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::group::group_lattice;

    fn cubic_spec(f2: &FieldCtx) -> NonKummerSpec {
        let mut alphas = BTreeMap::new();
        alphas.insert(Poly::from_ints(f2, &[1, 1, 1]), 1);
        NonKummerSpec {
            field: f2.clone(),
            l: 3,
            n: 1,
            components: alloc::vec![NonKummerComponent {
                n_eps: 1,
                gamma: FieldElem(alloc::vec![1, 0]),
                alphas,
            }],
        }
    }

    #[test]
    fn frame_for_the_quadratic_cubic() {
        // q = 2, l = 3, n = 1, P = T^2+T+1
        let f2 = make_field(2, 1).unwrap();
        let spec = cubic_spec(&f2);
        let (tower, frame) = kummer_frame(&spec).unwrap();
        assert_eq!(frame.w, 2);
        assert_eq!(frame.eta, 2);
        assert_eq!(frame.q_rads[0].deg(), 3);
        assert_eq!((frame.c[0], frame.d[0]), (1, 1));
        assert_eq!(frame.beta, alloc::vec![1]);
        assert_eq!((frame.t, frame.m), (0, 0));
        // Q = P1^2 P2 over the ordered orbit
        let orbit = &frame.orbits[0];
        assert_eq!(frame.q_rads[0].valuation_at(&orbit[0]), 2);
        assert_eq!(frame.q_rads[0].valuation_at(&orbit[1]), 1);
        let _ = tower;
    }

    #[test]
    fn frame_for_two_primes() {
        // primes T^2+T+1 and T^4+T+1, alphas = 1
        let f2 = make_field(2, 1).unwrap();
        let mut spec = cubic_spec(&f2);
        spec.components[0]
            .alphas
            .insert(Poly::from_ints(&f2, &[1, 1, 0, 0, 1]), 1);
        let (_, frame) = kummer_frame(&spec).unwrap();
        assert_eq!(frame.primes.len(), 2);
        // deg Q2 = 6 for the quartic prime, d2 = 1; t = 0 (deg D = 9), m = 0
        let j4 = frame
            .primes
            .iter()
            .position(|p| p.deg_or_zero() == 4)
            .unwrap();
        assert_eq!(frame.q_rads[j4].deg(), 6);
        assert_eq!(frame.d[j4], 1);
        assert_eq!((frame.t, frame.m), (0, 0));
        assert_eq!(frame.deg_d_eps, alloc::vec![9]);
    }

    #[test]
    fn degree_one_prime_frame() {
        // q = 5, l = 3, n = 1 (w = 2), P = T: s = 1, Q = T, d = 0, m = 1
        let f5 = make_field(5, 1).unwrap();
        let mut alphas = BTreeMap::new();
        alphas.insert(Poly::from_ints(&f5, &[0, 1]), 1);
        let spec = NonKummerSpec {
            field: f5.clone(),
            l: 3,
            n: 1,
            components: alloc::vec![NonKummerComponent {
                n_eps: 1,
                gamma: FieldElem(alloc::vec![1, 0]),
                alphas,
            }],
        };
        let (_, frame) = kummer_frame(&spec).unwrap();
        assert_eq!(frame.w, 2);
        assert_eq!(frame.s, alloc::vec![1]);
        assert_eq!(frame.q_rads[0].deg(), 1);
        assert_eq!(frame.d[0], 0);
        assert_eq!(frame.beta, alloc::vec![1]);
        assert_eq!(frame.m, 1);
    }

    #[test]
    fn descent_validation() {
        let f2 = make_field(2, 1).unwrap();
        let spec = cubic_spec(&f2);
        validate_descent(&spec).unwrap();
        // the degree-one-prime spec over F_5 violates the wrap congruence
        let f5 = make_field(5, 1).unwrap();
        let mut alphas = BTreeMap::new();
        alphas.insert(Poly::from_ints(&f5, &[0, 1]), 1);
        let bad = NonKummerSpec {
            field: f5.clone(),
            l: 3,
            n: 1,
            components: alloc::vec![NonKummerComponent {
                n_eps: 1,
                gamma: FieldElem(alloc::vec![1, 0]),
                alphas,
            }],
        };
        assert!(matches!(
            validate_descent(&bad),
            Err(Error::DescentError(_))
        ));
        // empty component list is fine
        let empty = NonKummerSpec {
            field: f2,
            l: 3,
            n: 1,
            components: alloc::vec![],
        };
        validate_descent(&empty).unwrap();
    }

    #[test]
    fn w_equals_one_is_rejected() {
        // q = 4, l = 3: 3 | 4 - 1, so w = 1
        let f4 = make_field(2, 2).unwrap();
        let mut alphas = BTreeMap::new();
        alphas.insert(Poly::from_ints(&f4, &[0, 1]), 1);
        let spec = NonKummerSpec {
            field: f4.clone(),
            l: 3,
            n: 1,
            components: alloc::vec![NonKummerComponent {
                n_eps: 1,
                gamma: FieldElem(alloc::vec![1, 0]),
                alphas,
            }],
        };
        assert!(matches!(
            genus_field_nonkummer(&spec),
            Err(Error::UseKummerPipeline)
        ));
    }

    #[test]
    fn genus_of_the_cyclotomic_cubic_is_itself() {
        // K from P = T^2+T+1 is the full cyclotomic cubic: genus = K
        let f2 = make_field(2, 1).unwrap();
        let spec = cubic_spec(&f2);
        let report = genus_field_nonkummer(&spec).unwrap();
        assert_eq!((report.t, report.m), (0, 0));
        assert_eq!((report.u, report.v), (0, 0));
        let (tower, frame) = kummer_frame(&spec).unwrap();
        let k_group = spec_group(&spec, &tower, &frame).unwrap();
        let g_size = group_lattice(&tower, &report.genus_group, &[])
            .unwrap()
            .size();
        let k_size = group_lattice(&tower, &k_group, &[]).unwrap().size();
        assert_eq!(g_size, 3);
        assert_eq!(k_size, 3);
        assert!(crate::kummer::groups_equal(&tower, &report.genus_group, &k_group).unwrap());
    }

    #[test]
    fn genus_of_two_prime_cubic_has_index_three() {
        let f2 = make_field(2, 1).unwrap();
        let mut spec = cubic_spec(&f2);
        spec.components[0]
            .alphas
            .insert(Poly::from_ints(&f2, &[1, 1, 0, 0, 1]), 1);
        let report = genus_field_nonkummer(&spec).unwrap();
        assert_eq!((report.t, report.m), (0, 0));
        let (tower, frame) = kummer_frame(&spec).unwrap();
        let k_group = spec_group(&spec, &tower, &frame).unwrap();
        let g_size = group_lattice(&tower, &report.genus_group, &[])
            .unwrap()
            .size();
        let k_size = group_lattice(&tower, &k_group, &[]).unwrap().size();
        assert_eq!(g_size / k_size, 3, "[genus : K] = 3");
        // genus group = <(3, Q1), (3, Q2)>
        let expected = KummerGroup::new(
            3,
            1,
            alloc::vec![
                (3, report.q_rads[0].clone()),
                (3, report.q_rads[1].clone())
            ],
        )
        .unwrap();
        assert!(
            crate::kummer::groups_equal(&tower, &report.genus_group, &expected).unwrap()
        );
    }
}
