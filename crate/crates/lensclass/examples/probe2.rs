//! Second probe: pin down the gcd-on-level-0 tail term and the
//! gcd-on-level-1 middle-column entries.

use lensclass::lens::{modified_graph, LensParams};
use lensclass::numtheory::{gcd, mod_inverse, rep_half_open, rep_strictly_inside};

fn main() {
    // ---- L1 middle column: print brute values and candidates ----
    for (r, k) in [(6u64, 3u64), (8, 4), (9, 3), (12, 4)] {
        for m2 in (1..=r).filter(|m| gcd(*m, r) == 1).take(3) {
            let m1 = k;
            let weights = [1, m1, m2, 1];
            let p = LensParams::new(r, weights.to_vec()).unwrap();
            let brute = modified_graph(&p).matrix;
            let a2 = mod_inverse(m2 as i128, k).unwrap() as i128;
            let kk = k as usize;
            for t in 0..kk {
                let wb = brute.get(1 + t, 2 + kk);
                let base = (r * (r - k) / (2 * k)) as i128;
                let a2t = if t == 0 {
                    0
                } else {
                    rep_strictly_inside(a2 * t as i128, k).unwrap() as i128
                };
                println!(
                    "L1col r={r} k={k} m2={m2} a2={a2} t={t}: brute={wb} base={base} base-a2t*rk+c*rk for c=0..3: {:?}",
                    (0..4)
                        .map(|c| base - (a2t - c) * (r / k) as i128)
                        .collect::<Vec<_>>()
                );
            }
        }
    }
    // ---- L0 x_0: compute brute minus printed-sum, in units of r/K mod r ----
    println!("--- L0 tail analysis ---");
    for r in [4u64, 6, 8, 9, 12, 10] {
        for k in (2..=r).filter(|k| r % k == 0) {
            for m1 in (1..=r).filter(|m| gcd(*m, r) == 1) {
                for m2 in (1..=r).filter(|m| gcd(*m, r) == 1) {
                    let m0 = k;
                    let weights = [m0, m1, m2, 1];
                    let p = LensParams::new(r, weights.to_vec()).unwrap();
                    let brute = modified_graph(&p).matrix;
                    let xb = brute.get(0, 3).rem_euclid(r as i128);
                    let printed = (x0_ell0_printed(r, k, &weights) + (r / k) as i128).rem_euclid(r as i128);
                    let diff = (xb - printed).rem_euclid(r as i128);
                    // express diff as multiple of r/k when possible
                    let rk = (r / k) as i128;
                    let mult = if diff % rk == 0 {
                        format!("{}*(r/K)", diff / rk)
                    } else {
                        format!("{diff} (not mult of r/K)")
                    };
                    println!("L0 r={r} k={k} m1={m1} m2={m2}: diff={diff} = {mult}");
                }
            }
        }
    }
}

use num_rational::Ratio;
type Q = Ratio<i128>;
fn q(n: i128) -> Q {
    Ratio::from_integer(n)
}

fn x0_ell0_printed(r: u64, k: u64, weights: &[u64]) -> i128 {
    let (ri, ki) = (r as i128, k as i128);
    let m1 = weights[1] as i128;
    let m2inv = mod_inverse(weights[2] as i128, r).unwrap() as i128;
    let a1 = mod_inverse(weights[1] as i128, k).unwrap() as i128;
    let mut total = -q(m2inv) * q(m1) * q(ri) * q(ri - 2) * q(ri - 1) / (q(3) * q(ki));
    let rep_kl = |l: i128| -> (i128, i128) {
        let rep = rep_strictly_inside(m2inv * m1 * (l + 1), r).unwrap() as i128;
        ((rep - m2inv * m1 * (l + 1)) / ri, rep)
    };
    for l in 1..=(ri - 2) {
        let (k_l, _) = rep_kl(l);
        total += q(l) * q(ri) * q(1 - k_l) / q(ki);
    }
    for h in 0..ki {
        let shifted = rep_half_open(a1 * h, k) as i128;
        let residue = rep_half_open(a1 * h, k) as i128;
        for l in 1..=(ri - 2) {
            if l % ki == residue {
                let (_, rep) = rep_kl(l);
                total -= q(shifted) / q(ki) * q(ri - rep);
            }
        }
    }
    assert!(total.is_integer());
    total.to_integer().rem_euclid(ri)
}
