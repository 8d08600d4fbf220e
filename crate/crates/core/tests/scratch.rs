mod common;
use std::time::Instant;
use genusfield_core::nonkummer::*;
use genusfield_core::kummer::*;
use genusfield_core::oracle::*;
use genusfield_core::Tower;

#[test]
fn time_verifies() {
    let nk = common::nonkummer_specs(0xB0B, 12);
    for (i, s) in nk.iter().enumerate() {
        let t0 = Instant::now();
        let report = genus_field_nonkummer(s).unwrap();
        let t1 = t0.elapsed();
        let (tower, frame) = kummer_frame(s).unwrap();
        let group = spec_group(s, &tower, &frame).unwrap();
        let t2 = Instant::now();
        let v = verify_genus_kummer(&tower, &group, &report.genus_group).unwrap();
        println!("nk[{i}] q={} l={} n={} primes={} genus: {:?} verify: {:?} pass={}",
            s.field.order(), s.l, s.n, frame.primes.iter().map(|p| p.deg_or_zero()).collect::<Vec<_>>().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
            t1, t2.elapsed(), v.all_pass());
    }
    let ks = common::kummer_specs(0xA11CE, 12);
    for (i, s) in ks.iter().enumerate() {
        let tower = Tower::new(s.field.clone(), 1).unwrap();
        let t0 = Instant::now();
        let report = genus_field_kummer(s).unwrap();
        let t1 = t0.elapsed();
        let group = s.group().unwrap();
        let t2 = Instant::now();
        let v = verify_genus_kummer(&tower, &group, &report.genus_group).unwrap();
        println!("k[{i}] q={} l={} genus: {:?} verify: {:?} pass={}", s.field.order(), s.l, t1, t2.elapsed(), v.all_pass());
    }
}
