//! Linear algebra over Z/l^n: Howell normal form, membership, span sizes and
//! kernels of linear functionals. This is the engine behind canonical Kummer
//! group computations.

use crate::arith::val_l;
use alloc::vec;
use alloc::vec::Vec;

/// Modular inverse of a unit mod l^n.
fn unit_inv(a: u64, modulus: u64) -> u64 {
    // extended Euclid on (a, modulus)
    let (mut r0, mut r1) = (a as i128, modulus as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        let s = s0 - q * s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    debug_assert_eq!(r0, 1, "not a unit");
    s0.rem_euclid(modulus as i128) as u64
}

/// A subgroup of (Z/l^n)^width in canonical Howell form, with the expression
/// of each canonical row in terms of the original generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub l: u64,
    pub n: u32,
    pub modulus: u64,
    pub width: usize,
    /// Canonical rows, echelon left to right.
    pub rows: Vec<Vec<u64>>,
    /// rows[i] = sum_j transform[i][j] * generator_j (coefficients mod l^n).
    pub transform: Vec<Vec<u64>>,
}

impl Lattice {
    pub fn from_generators(l: u64, n: u32, width: usize, gens: &[Vec<u64>]) -> Lattice {
        let modulus = crate::arith::pow_u64(l, n);
        let mut work: Vec<(Vec<u64>, Vec<u64>)> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                debug_assert_eq!(g.len(), width);
                let row: Vec<u64> = g.iter().map(|&x| x % modulus).collect();
                let mut tf = vec![0u64; gens.len()];
                tf[i] = 1;
                (row, tf)
            })
            .collect();

        let vl = |x: u64| -> u32 { val_l(x, l).min(n) };

        // pivot column -> (row, transform); pivots are normalized to l^v
        let mut placed: Vec<Option<(Vec<u64>, Vec<u64>)>> = vec![None; width];

        // Echelonize. Every placed pivot row of pivot l^v with v > 0 spawns
        // its shadow l^(n-v) * row, which starts strictly further right and
        // gives the span's intersections with trailing coordinate subspaces
        // (the Howell property the membership test relies on).
        while let Some((mut row, mut tf)) = work.pop() {
            loop {
                let col = match row.iter().position(|&x| x != 0) {
                    Some(c) => c,
                    None => break,
                };
                match placed[col].as_mut() {
                    Some((prow, ptf)) => {
                        let pv = vl(prow[col]);
                        let rv = vl(row[col]);
                        if rv >= pv {
                            let c = row[col] / prow[col];
                            sub_scaled(&mut row, prow, c, modulus);
                            sub_scaled(&mut tf, ptf, c, modulus);
                        } else {
                            // the incoming row has the smaller valuation:
                            // it takes over this pivot, the old row requeues
                            core::mem::swap(prow, &mut row);
                            core::mem::swap(ptf, &mut tf);
                            normalize_and_spawn(prow, ptf, col, l, n, modulus, &mut work);
                        }
                    }
                    None => {
                        let (mut r, mut t) = (row, tf);
                        normalize_and_spawn(&mut r, &mut t, col, l, n, modulus, &mut work);
                        placed[col] = Some((r, t));
                        break;
                    }
                }
            }
        }

        let mut final_rows: Vec<(Vec<u64>, Vec<u64>)> =
            placed.into_iter().flatten().collect();

        // reduce entries above pivots so the form is canonical
        for i in (0..final_rows.len()).rev() {
            let (pivot_col, pivot_val) = {
                let r = &final_rows[i].0;
                let c = r.iter().position(|&x| x != 0).unwrap();
                (c, r[c])
            };
            for j in 0..i {
                let entry = final_rows[j].0[pivot_col];
                let c = entry / pivot_val;
                if c > 0 {
                    let (pr, ptf) = final_rows[i].clone();
                    sub_scaled(&mut final_rows[j].0, &pr, c, modulus);
                    sub_scaled(&mut final_rows[j].1, &ptf, c, modulus);
                }
            }
        }

        let (rows, transform) = final_rows.into_iter().unzip();
        Lattice {
            l,
            n,
            modulus,
            width,
            rows,
            transform,
        }
    }

    /// Membership test; returns the coefficients on the canonical rows.
    pub fn reduce(&self, v: &[u64]) -> Option<Vec<u64>> {
        debug_assert_eq!(v.len(), self.width);
        let mut v: Vec<u64> = v.iter().map(|&x| x % self.modulus).collect();
        let mut coeffs = vec![0u64; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let col = row.iter().position(|&x| x != 0).unwrap();
            if v[col] == 0 {
                continue;
            }
            let pivot = row[col];
            if v[col] % pivot != 0 {
                return None;
            }
            let c = v[col] / pivot;
            sub_scaled(&mut v, row, c, self.modulus);
            coeffs[i] = c;
        }
        if v.iter().all(|&x| x == 0) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).is_some()
    }

    /// Does this lattice contain every row of the other?
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Number of elements spanned.
    pub fn size(&self) -> u128 {
        let mut s = 1u128;
        for row in &self.rows {
            let col = row.iter().position(|&x| x != 0).unwrap();
            s *= (self.modulus / row[col]) as u128;
        }
        s
    }

    /// Exponent of the quotient-free span: largest element order.
    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for row in &self.rows {
            let minval = row
                .iter()
                .filter(|&&x| x != 0)
                .map(|&x| val_l(x, self.l))
                .min()
                .unwrap_or(self.n);
            e = e.max(self.modulus / crate::arith::pow_u64(self.l, minval));
        }
        e
    }

    /// Rows whose support lies entirely in the coordinate set.
    pub fn rows_supported_on(&self, cols: &[usize]) -> Vec<&Vec<u64>> {
        self.rows
            .iter()
            .filter(|r| {
                r.iter()
                    .enumerate()
                    .all(|(i, &x)| x == 0 || cols.contains(&i))
            })
            .collect()
    }

    /// Enumerate all span elements; for tests and tiny cases only.
    pub fn enumerate(&self) -> Vec<Vec<u64>> {
        let mut all = vec![vec![0u64; self.width]];
        for row in &self.rows {
            let col = row.iter().position(|&x| x != 0).unwrap();
            let order = self.modulus / row[col];
            let mut next = Vec::new();
            for base in &all {
                for k in 0..order {
                    let mut v = base.clone();
                    for (i, &x) in row.iter().enumerate() {
                        v[i] = (v[i] + x * k) % self.modulus;
                    }
                    next.push(v);
                }
            }
            all = next;
            all.sort();
            all.dedup();
        }
        all
    }
}

/// Scale a row so its pivot is exactly l^v and queue its Howell shadow.
fn normalize_and_spawn(
    row: &mut Vec<u64>,
    tf: &mut Vec<u64>,
    col: usize,
    l: u64,
    n: u32,
    modulus: u64,
    work: &mut Vec<(Vec<u64>, Vec<u64>)>,
) {
    let v = val_l(row[col], l).min(n);
    let u = row[col] / crate::arith::pow_u64(l, v);
    let ui = unit_inv(u, modulus);
    scale_row(row, ui, modulus);
    scale_row(tf, ui, modulus);
    debug_assert_eq!(row[col], crate::arith::pow_u64(l, v));
    if v > 0 {
        let factor = modulus / crate::arith::pow_u64(l, v);
        let shadow: Vec<u64> = row.iter().map(|&x| x * factor % modulus).collect();
        if shadow.iter().any(|&x| x != 0) {
            let shtf: Vec<u64> = tf.iter().map(|&x| x * factor % modulus).collect();
            work.push((shadow, shtf));
        }
    }
}

fn sub_scaled(target: &mut [u64], source: &[u64], c: u64, modulus: u64) {
    let c = c % modulus;
    for (t, &s) in target.iter_mut().zip(source) {
        *t = (*t + (modulus - s * c % modulus)) % modulus;
    }
}

fn scale_row(row: &mut [u64], c: u64, modulus: u64) {
    for x in row.iter_mut() {
        *x = *x * c % modulus;
    }
}

/// Generators of the solution module of sum_i x_i a_i = 0 over Z/l^n.
pub fn kernel_of_functional(l: u64, n: u32, values: &[u64]) -> Vec<Vec<u64>> {
    let modulus = crate::arith::pow_u64(l, n);
    let g = values.len();
    let vals: Vec<u64> = values.iter().map(|&x| x % modulus).collect();
    let vl = |x: u64| -> u32 {
        if x == 0 {
            n
        } else {
            val_l(x, l).min(n)
        }
    };
    let j = match (0..g).min_by_key(|&i| vl(vals[i])) {
        Some(j) if vals[j] != 0 => j,
        _ => {
            // zero functional: the whole space
            return (0..g)
                .map(|i| {
                    let mut e = vec![0u64; g];
                    e[i] = 1;
                    e
                })
                .collect();
        }
    };
    let v = vl(vals[j]);
    let u = vals[j] / crate::arith::pow_u64(l, v);
    let ui = unit_inv(u, modulus);
    let mut out = Vec::new();
    for i in 0..g {
        if i == j {
            continue;
        }
        // c with c * vals[j] = vals[i]
        let c = vals[i] / crate::arith::pow_u64(l, v) % modulus * ui % modulus;
        let mut e = vec![0u64; g];
        e[i] = 1;
        e[j] = (modulus - c) % modulus;
        out.push(e);
    }
    let mut e = vec![0u64; g];
    e[j] = modulus / crate::arith::pow_u64(l, v);
    if e[j] % modulus != 0 {
        out.push(e);
    }
    out
}
