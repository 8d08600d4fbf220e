//! Independent brute-force verification of genus candidates: containment,
//! finite unramifiedness over the input field, full splitting of its
//! infinite places, and bounded maximality inside the radicand lattice
//! supported on the ramified primes. Uses only local measurements and
//! enumeration, never the construction formulas.

use crate::arith::{gcd_u64, pow_u64};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::group::{eta_representative, group_lattice, KummerGroup, Tower};
use crate::poly::{conorm_orbit, Poly};
use crate::radicand::Radicand;
use crate::ratfunc::RationalFunction;
use crate::symbols::{composite_infinity_inertia, infinity_invariants, local_invariants_finite};
use crate::witt::{
    class_member, infinity_splitting, local_ramification_order, ConstantClasses, WittCtx,
    WittSpec, WittVector,
};
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Enumeration bounds; exceeding any of them is an explicit error, never a
/// silent truncation.
#[derive(Debug, Clone)]
pub struct Budgets {
    pub max_primes: usize,
    pub max_exponent: u64,
    pub max_candidates: usize,
    pub max_closure: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_primes: 3,
            max_exponent: 9,
            max_candidates: 20000,
            max_closure: 1 << 16,
        }
    }
}

#[derive(Debug, Clone)]
pub enum MaximalityOutcome {
    Ok,
    KummerCounterexample(Radicand),
    WittCounterexample(WittVector),
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub contains_spec: bool,
    /// (base prime, unramified over the input field) pairs.
    pub finite_unramified: Vec<(Poly, bool)>,
    pub infinity_splits: bool,
    pub maximality: Option<MaximalityOutcome>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.contains_spec
            && self.finite_unramified.iter().all(|(_, ok)| *ok)
            && self.infinity_splits
            && !matches!(
                self.maximality,
                Some(MaximalityOutcome::KummerCounterexample(_))
                    | Some(MaximalityOutcome::WittCounterexample(_))
            )
    }
}

/// The monic base-field polynomial under an extension prime: the product of
/// its Frobenius orbit.
pub fn base_prime_below(tower: &Tower, ext_prime: &Poly) -> Poly {
    let ext = tower.ext();
    let mut orbit = vec![ext_prime.clone()];
    let mut cur = ext_prime.coeff_frobenius(ext, tower.q()).monic(ext);
    while &cur != ext_prime {
        orbit.push(cur.clone());
        cur = cur.coeff_frobenius(ext, tower.q()).monic(ext);
    }
    let prod = orbit
        .iter()
        .fold(Poly::one(ext), |acc, p| acc.mul(ext, p));
    // coefficients are Frobenius-fixed, i.e. they lie in the base image
    let base = tower.base();
    let coeffs: Vec<_> = prod
        .coeffs()
        .iter()
        .map(|c| {
            for code in 0..base.order() {
                let cand = base.from_int(code);
                if &tower.emb().apply(&cand) == c {
                    return cand;
                }
            }
            unreachable!("orbit product has base-field coefficients")
        })
        .collect();
    Poly::from_elems(base, coeffs)
}

/// Union of the base primes below the supports of both groups.
fn base_support(tower: &Tower, groups: &[&KummerGroup]) -> Vec<Poly> {
    let mut set = BTreeSet::new();
    for g in groups {
        for p in g.support() {
            set.insert(base_prime_below(tower, &p));
        }
    }
    set.into_iter().collect()
}

/// Verify the defining properties of a genus candidate for radical data:
/// containment of the input group, equality of ramification at every finite
/// prime of the support, and full splitting of the infinite places of the
/// descended input field.
pub fn verify_genus_kummer(
    tower: &Tower,
    spec_group: &KummerGroup,
    candidate: &KummerGroup,
) -> Result<VerificationReport> {
    let mut notes = Vec::new();
    // containment via the subgroup test in the class lattice
    let mut extra = spec_group.support();
    extra.extend(candidate.support());
    let cand_lat = group_lattice(tower, candidate, &extra)?;
    let spec_lat = group_lattice(tower, spec_group, &extra)?;
    let contains_spec = cand_lat.lat.contains_lattice(&spec_lat.lat);
    if !contains_spec {
        notes.push("candidate does not contain the input classes".into());
    }

    let mut finite_unramified = Vec::new();
    for base_prime in base_support(tower, &[spec_group, candidate]) {
        let e_spec = local_invariants_finite(tower, spec_group, &base_prime, false)?.e;
        let e_cand = local_invariants_finite(tower, candidate, &base_prime, false)?.e;
        finite_unramified.push((base_prime, e_spec == e_cand));
    }

    let infinity_splits = infinite_places_split(tower, spec_group, candidate, &mut notes)?;

    Ok(VerificationReport {
        contains_spec,
        finite_unramified,
        infinity_splits,
        maximality: None,
        notes,
    })
}

/// Full splitting of the infinite places of the descended input field in the
/// candidate composite: the relative inertia at infinity must be trivial and
/// the Frobenius of the input's infinite place must act trivially, i.e. the
/// composite's inertia degree over the base divides lcm(deg of the input's
/// infinite place, w). This works whether or not the candidate contains
/// constant classes.
fn infinite_places_split(
    tower: &Tower,
    spec_group: &KummerGroup,
    candidate: &KummerGroup,
    notes: &mut Vec<String>,
) -> Result<bool> {
    let inf_spec = infinity_invariants(tower, spec_group, true)?;
    let inf_cand_w = infinity_invariants(tower, candidate, false)?;
    let inf_spec_w = infinity_invariants(tower, spec_group, false)?;
    if inf_cand_w.e != inf_spec_w.e {
        notes.push(format!(
            "infinity ramification: spec e = {}, candidate e = {}",
            inf_spec_w.e, inf_cand_w.e
        ));
        return Ok(false);
    }
    let f_composite = composite_infinity_inertia(tower, candidate)?;
    let bound = crate::arith::lcm_u64(inf_spec.f, tower.w() as u64);
    if bound % f_composite != 0 {
        notes.push(format!(
            "infinity inertia: composite f = {f_composite} does not divide lcm({}, {})",
            inf_spec.f,
            tower.w()
        ));
        return Ok(false);
    }
    Ok(true)
}

/// Exhaustive bounded maximality: enumerate the Frobenius-stable classes on
/// the ramified support with exponents below l^n and unit twists; a class
/// that can be adjoined without changing the local invariants of the input
/// witnesses non-maximality. Returns the first such class in the
/// deterministic enumeration order.
pub fn maximality_search_kummer(
    tower: &Tower,
    spec_group: &KummerGroup,
    candidate: &KummerGroup,
    budgets: &Budgets,
) -> Result<MaximalityOutcome> {
    let ext = tower.ext();
    let (l, n) = (spec_group.l, spec_group.n);
    let ln = spec_group.modulus();
    if ln > budgets.max_exponent {
        return Err(Error::BudgetExceeded(format!(
            "exponent {ln} above the {} budget",
            budgets.max_exponent
        )));
    }
    // ramified base primes of the spec
    let mut ram_primes = Vec::new();
    for base_prime in base_support(tower, &[spec_group]) {
        let e = local_invariants_finite(tower, spec_group, &base_prime, false)?.e;
        if e > 1 {
            ram_primes.push(base_prime);
        }
    }
    if ram_primes.len() > budgets.max_primes {
        return Err(Error::BudgetExceeded(format!(
            "{} ramified primes above the {} budget",
            ram_primes.len(),
            budgets.max_primes
        )));
    }
    // twisted orbit products and their stability steps
    let eta = eta_representative(tower.q(), ln);
    let w = tower.w();
    let mut q_rads = Vec::new();
    let mut steps = Vec::new();
    for p in &ram_primes {
        let orbit = conorm_orbit(tower.base(), tower.emb(), p, w)?;
        let s = orbit.len();
        let mut q_rad = Radicand::one(ext);
        for (nu, member) in orbit.iter().enumerate() {
            let mut e: i64 = 1;
            for _ in 0..(s - (nu + 1)) {
                e *= eta as i64;
            }
            q_rad = q_rad.mul(ext, &Radicand::from_prime_power(ext, member.clone(), e)?);
        }
        // stability of Q^a requires a * (eta^s - 1) = 0 mod l^n
        let wrap = (pow_u64(eta, s as u32) - 1) % ln;
        let step = ln / gcd_u64(ln, if wrap == 0 { ln } else { wrap });
        q_rads.push(q_rad);
        steps.push(step);
    }
    let tuple_counts: Vec<u64> = steps.iter().map(|s| ln / s).collect();
    let total: u128 = tuple_counts
        .iter()
        .fold(ln as u128, |acc, &c| acc * c as u128);
    if total > budgets.max_candidates as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{total} candidate classes above the {} budget",
            budgets.max_candidates
        )));
    }

    // measured invariants of the input
    let spec_inf = infinity_invariants(tower, spec_group, true)?;
    let spec_inf_w = infinity_invariants(tower, spec_group, false)?;
    let f_bound = crate::arith::lcm_u64(spec_inf.f, tower.w() as u64);
    let mut spec_e = Vec::new();
    for p in &ram_primes {
        spec_e.push(local_invariants_finite(tower, spec_group, p, false)?.e);
    }

    let mut extra = spec_group.support();
    extra.extend(candidate.support());
    for q in &q_rads {
        for p in q.support() {
            extra.push(p.clone());
        }
    }
    let cand_lat = group_lattice(tower, candidate, &extra)?;

    let g_root = ext.primitive_root();
    let r = ram_primes.len();
    // odometer over exponent tuples (first prime fastest), unit twist inner
    let mut tuple = vec![0u64; r];
    loop {
        for t in 0..ln {
            if t == 0 && tuple.iter().all(|&a| a == 0) {
                continue;
            }
            let mut c = Radicand::from_unit(ext, ext.pow(&g_root, t as u128))?;
            for (j, &a) in tuple.iter().enumerate() {
                let a = a * steps[j];
                if a != 0 {
                    c = c.mul(ext, &q_rads[j].pow(ext, a as i64));
                }
            }
            if cand_lat.contains_class(tower, l, n, &c)? {
                continue;
            }
            let enlarged = candidate.extend((ln, c.clone()));
            let mut adjoinable = true;
            for (j, p) in ram_primes.iter().enumerate() {
                let e = local_invariants_finite(tower, &enlarged, p, false)?.e;
                if e != spec_e[j] {
                    adjoinable = false;
                    break;
                }
            }
            if adjoinable {
                let inf = infinity_invariants(tower, &enlarged, false)?;
                adjoinable = inf.e == spec_inf_w.e;
            }
            if adjoinable {
                let f_composite = composite_infinity_inertia(tower, &enlarged)?;
                adjoinable = f_bound % f_composite == 0;
            }
            if adjoinable {
                return Ok(MaximalityOutcome::KummerCounterexample(c));
            }
        }
        // advance the odometer
        let mut pos = 0;
        loop {
            if pos == r {
                return Ok(MaximalityOutcome::Ok);
            }
            tuple[pos] += 1;
            if tuple[pos] < tuple_counts[pos] {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

// ---- the Artin-Schreier-Witt side ----

/// Verify a genus candidate for an abelian p-extension: containment of the
/// defining classes, equal ramification orders at the finite primes of the
/// support, and unchanged splitting data at infinity.
pub fn verify_genus_witt(
    spec: &WittSpec,
    candidate: &[WittVector],
    budgets: &Budgets,
) -> Result<VerificationReport> {
    let ctx = &spec.field;
    let wctx = WittCtx::new(ctx.p(), spec.n)?;
    let consts = ConstantClasses::new(&wctx, ctx)?;
    let cap = budgets.max_closure;
    let mut notes = Vec::new();

    let mut contains_spec = true;
    for xi in &spec.vectors {
        if !class_member(&wctx, ctx, &consts, candidate, xi, cap)? {
            contains_spec = false;
            notes.push("candidate misses an input class".into());
            break;
        }
    }

    // union of the finite supports of the reduced forms
    let mut support: BTreeSet<Poly> = BTreeSet::new();
    for v in spec.vectors.iter().chain(candidate.iter()) {
        let dec = crate::witt::witt_decompose(&wctx, ctx, v)?;
        for p in dec.parts.keys() {
            support.insert(p.clone());
        }
    }
    let mut finite_unramified = Vec::new();
    for p in support {
        let e_spec = local_ramification_order(&wctx, ctx, &spec.vectors, &p, cap)?;
        let e_cand = local_ramification_order(&wctx, ctx, candidate, &p, cap)?;
        finite_unramified.push((p, e_spec == e_cand));
    }

    let (e_spec, f_spec) = infinity_splitting(&wctx, ctx, &consts, &spec.vectors, cap)?;
    let (e_cand, f_cand) = infinity_splitting(&wctx, ctx, &consts, candidate, cap)?;
    let infinity_splits = e_spec == e_cand && f_spec == f_cand;
    if !infinity_splits {
        notes.push(format!(
            "infinity: spec (e, f) = ({e_spec}, {f_spec}), candidate ({e_cand}, {f_cand})"
        ));
    }

    Ok(VerificationReport {
        contains_spec,
        finite_unramified,
        infinity_splits,
        maximality: None,
        notes,
    })
}

/// Enumerate reduced local candidates at a prime: vectors whose components
/// are proper fractions with pole order at most the bound and coprime to p.
fn witt_local_candidates(
    ctx: &FieldCtx,
    n: usize,
    prime: &Poly,
    max_pole: u64,
    budget: usize,
) -> Result<Vec<WittVector>> {
    let p = ctx.p();
    // options for a single component, zero first
    let mut options: Vec<RationalFunction> = vec![RationalFunction::zero(ctx)];
    for e in 1..=max_pole {
        if e % p == 0 {
            continue;
        }
        let den = prime.pow(ctx, e);
        let space = den.deg_or_zero();
        let count = (ctx.order() as u128).pow(space as u32);
        if count > budget as u128 {
            return Err(Error::BudgetExceeded(
                "numerator space at a prime above budget".into(),
            ));
        }
        for code in 1..count {
            let mut c = code;
            let mut coeffs = Vec::with_capacity(space);
            for _ in 0..space {
                coeffs.push(ctx.from_int((c % ctx.order() as u128) as u64));
                c /= ctx.order() as u128;
            }
            let num = Poly::from_elems(ctx, coeffs);
            if num.is_zero() {
                continue;
            }
            // numerator coprime to the prime and a genuine top pole
            if num.rem(ctx, prime).is_zero() {
                continue;
            }
            options.push(RationalFunction::new(ctx, num, den.clone()));
        }
    }
    // odometer over levels
    let mut out = Vec::new();
    let total = options.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded(
            "local candidate space above budget".into(),
        ));
    }
    for code in 1..total {
        let mut c = code;
        let mut comps = Vec::with_capacity(n);
        for _ in 0..n {
            comps.push(options[c % options.len()].clone());
            c /= options.len();
        }
        out.push(WittVector::from_components(comps));
    }
    Ok(out)
}

/// Polynomial-part candidates: vectors of polynomials with degree at most
/// the bound, degrees coprime to p, constants included.
fn witt_poly_candidates(
    ctx: &FieldCtx,
    n: usize,
    max_deg: usize,
    budget: usize,
) -> Result<Vec<WittVector>> {
    let p = ctx.p() as usize;
    let mut options: Vec<RationalFunction> = Vec::new();
    let count = (ctx.order() as u128).pow((max_deg + 1) as u32);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded(
            "polynomial candidate space above budget".into(),
        ));
    }
    for code in 0..count {
        let mut c = code;
        let mut coeffs = Vec::with_capacity(max_deg + 1);
        for _ in 0..=max_deg {
            coeffs.push(ctx.from_int((c % ctx.order() as u128) as u64));
            c /= ctx.order() as u128;
        }
        let f = Poly::from_elems(ctx, coeffs);
        let d = f.deg_or_zero();
        if d > 0 && d % p == 0 {
            continue;
        }
        options.push(RationalFunction::from_poly(ctx, f));
    }
    let mut out = Vec::new();
    let total = options.len().checked_pow(n as u32).unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded(
            "polynomial candidate space above budget".into(),
        ));
    }
    for code in 1..total {
        let mut c = code;
        let mut comps = Vec::with_capacity(n);
        for _ in 0..n {
            comps.push(options[c % options.len()].clone());
            c /= options.len();
        }
        out.push(WittVector::from_components(comps));
    }
    Ok(out)
}

/// Bounded maximality for the p-part: probe every reduced local candidate on
/// the spec's ramified primes and every bounded polynomial part.
pub fn maximality_search_witt(
    spec: &WittSpec,
    candidate: &[WittVector],
    budgets: &Budgets,
) -> Result<MaximalityOutcome> {
    let ctx = &spec.field;
    let wctx = WittCtx::new(ctx.p(), spec.n)?;
    let consts = ConstantClasses::new(&wctx, ctx)?;
    let cap = budgets.max_closure;

    // ramified primes and pole bounds from the spec's reduced forms
    let mut pole_bounds: alloc::collections::BTreeMap<Poly, u64> =
        alloc::collections::BTreeMap::new();
    let mut max_gamma_deg = 0usize;
    for xi in &spec.vectors {
        let dec = crate::witt::witt_decompose(&wctx, ctx, xi)?;
        for (p, part) in &dec.parts {
            let worst = part
                .comps
                .iter()
                .map(|c| (-c.valuation_at(ctx, p)).max(0) as u64)
                .max()
                .unwrap_or(0);
            let entry = pole_bounds.entry(p.clone()).or_insert(0);
            *entry = (*entry).max(worst);
        }
        for comp in &dec.gamma.comps {
            max_gamma_deg = max_gamma_deg.max(comp.num().deg_or_zero());
        }
    }
    if pole_bounds.len() > budgets.max_primes {
        return Err(Error::BudgetExceeded(format!(
            "{} ramified primes above the {} budget",
            pole_bounds.len(),
            budgets.max_primes
        )));
    }

    // invariants of the input
    let (e_inf_spec, f_inf_spec) =
        infinity_splitting(&wctx, ctx, &consts, &spec.vectors, cap)?;
    let mut spec_e = Vec::new();
    for (p, _) in &pole_bounds {
        spec_e.push((
            p.clone(),
            local_ramification_order(&wctx, ctx, &spec.vectors, p, cap)?,
        ));
    }

    let probe = |v: &WittVector| -> Result<bool> {
        // adjoinable: invariants unchanged after adding the class
        if class_member(&wctx, ctx, &consts, candidate, v, cap)? {
            return Ok(false);
        }
        let mut enlarged: Vec<WittVector> = candidate.to_vec();
        enlarged.push(v.clone());
        for (p, e) in &spec_e {
            if local_ramification_order(&wctx, ctx, &enlarged, p, cap)? != *e {
                return Ok(false);
            }
        }
        let (e_inf, f_inf) = infinity_splitting(&wctx, ctx, &consts, &enlarged, cap)?;
        Ok(e_inf == e_inf_spec && f_inf == f_inf_spec)
    };

    for (p, bound) in &pole_bounds {
        for v in witt_local_candidates(ctx, spec.n, p, *bound, budgets.max_candidates)? {
            if probe(&v)? {
                return Ok(MaximalityOutcome::WittCounterexample(v));
            }
        }
    }
    for v in witt_poly_candidates(ctx, spec.n, max_gamma_deg, budgets.max_candidates)? {
        if probe(&v)? {
            return Ok(MaximalityOutcome::WittCounterexample(v));
        }
    }
    Ok(MaximalityOutcome::Ok)
}

/// Helper for mutation tests: drop one generator from a group.
pub fn drop_generator(group: &KummerGroup, idx: usize) -> KummerGroup {
    let mut gens = group.gens.clone();
    gens.remove(idx);
    KummerGroup {
        l: group.l,
        n: group.n,
        gens,
    }
}
