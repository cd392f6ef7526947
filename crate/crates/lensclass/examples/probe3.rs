//! Third probe: dim-5 and dim-3 closed forms, and K=1 reductions of the
//! dim-7 forms.

use lensclass::lens::{modified_graph, LensParams};
use lensclass::numtheory::{gcd, mod_inverse, rep_strictly_inside};

fn main() {
    let mut failures = 0;
    // dim 5, position 0: [[1, r/K, r/K + r(r-K)/2K], [0,1,r], [0,0,1]]
    for r in [4u64, 6, 8, 9, 12] {
        for k in (1..=r).filter(|k| r % k == 0) {
            for m1 in (1..=r).filter(|m| gcd(*m, r) == 1) {
                for m2 in (1..=r).filter(|m| gcd(*m, r) == 1) {
                    let p = LensParams::new(r, vec![k, m1, m2]).unwrap();
                    let brute = modified_graph(&p).matrix.to_rows();
                    let expect = vec![
                        vec![
                            1,
                            (r / k) as i128,
                            (r / k + r * (r - k) / (2 * k)) as i128,
                        ],
                        vec![0, 1, r as i128],
                        vec![0, 0, 1],
                    ];
                    if brute != expect {
                        println!("dim5 L0 mismatch r={r} k={k} m=({m1},{m2}): {brute:?}");
                        failures += 1;
                    }
                }
            }
        }
    }
    // dim 5, position 1: row0 = [1, r/K ... r/K, r(r+K)/2K]; mid rows -> last col r/K
    for r in [4u64, 6, 8, 9, 12] {
        for k in (1..=r).filter(|k| r % k == 0) {
            for m0 in (1..=r).filter(|m| gcd(*m, r) == 1) {
                for m2 in (1..=r).filter(|m| gcd(*m, r) == 1) {
                    let p = LensParams::new(r, vec![m0, k, m2]).unwrap();
                    let brute = modified_graph(&p).matrix;
                    let kk = k as usize;
                    let mut ok = brute.rows() == kk + 2;
                    if ok {
                        for t in 0..kk {
                            ok &= brute.get(0, 1 + t) == (r / k) as i128;
                            ok &= brute.get(1 + t, kk + 1) == (r / k) as i128;
                        }
                        ok &= brute.get(0, kk + 1) == (r * (r + k) / (2 * k)) as i128;
                    }
                    if !ok {
                        println!("dim5 L1 mismatch r={r} k={k}: {:?}", brute.to_rows());
                        failures += 1;
                    }
                }
            }
        }
    }
    // dim 5, position 2: z_0 exact, z_t mod r
    for r in [4u64, 6, 8, 9, 12] {
        for k in (1..=r).filter(|k| r % k == 0) {
            for m0 in (1..=r).filter(|m| gcd(*m, r) == 1).take(2) {
                for m1 in (1..=r).filter(|m| gcd(*m, r) == 1) {
                    let p = LensParams::new(r, vec![m0, m1, k]).unwrap();
                    let brute = modified_graph(&p).matrix;
                    let kk = k as usize;
                    let a1 = if k == 1 {
                        0
                    } else {
                        mod_inverse(m1 as i128, k).unwrap() as i128
                    };
                    let mut ok = brute.get(0, 1) == r as i128;
                    ok &= brute.get(0, 2) == (r * (r + k) / (2 * k)) as i128;
                    for t in 1..kk {
                        let z = brute.get(0, 2 + t).rem_euclid(r as i128);
                        let zf = ((r * (r - k) / (2 * k)) as i128 + a1 * t as i128 * (r / k) as i128)
                            .rem_euclid(r as i128);
                        ok &= z == zf;
                        // exactness candidate: reduced multiplier in (0, K)
                        let zr = (r * (r - k) / (2 * k)) as i128
                            + rep_strictly_inside(a1 * t as i128, k).unwrap() as i128
                                * (r / k) as i128;
                        if brute.get(0, 2 + t) != zr {
                            println!(
                                "dim5 L2 z exact candidate off r={r} k={k} m1={m1} t={t}: brute={} cand={zr}",
                                brute.get(0, 2 + t)
                            );
                        }
                    }
                    for t in 0..kk {
                        ok &= brute.get(1, 2 + t) == (r / k) as i128;
                    }
                    if !ok {
                        println!("dim5 L2 mismatch r={r} k={k} m1={m1}: {:?}", brute.to_rows());
                        failures += 1;
                    }
                }
            }
        }
    }
    // dim 3, both positions
    for r in [4u64, 6, 8, 9, 12] {
        for k in (1..=r).filter(|k| r % k == 0) {
            for m in (1..=r).filter(|m| gcd(*m, r) == 1) {
                let p0 = LensParams::new(r, vec![k, m]).unwrap();
                let b0 = modified_graph(&p0).matrix.to_rows();
                if b0 != vec![vec![1, (r / k) as i128], vec![0, 1]] {
                    println!("dim3 L0 mismatch r={r} k={k} m={m}: {b0:?}");
                    failures += 1;
                }
                let p1 = LensParams::new(r, vec![m, k]).unwrap();
                let b1 = modified_graph(&p1).matrix;
                let kk = k as usize;
                let mut ok = b1.rows() == kk + 1;
                if ok {
                    for t in 0..kk {
                        ok &= b1.get(0, 1 + t) == (r / k) as i128;
                    }
                }
                if !ok {
                    println!("dim3 L1 mismatch r={r} k={k} m={m}: {:?}", b1.to_rows());
                    failures += 1;
                }
            }
        }
    }
    println!("failures: {failures}");
}
