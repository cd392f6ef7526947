//! Number-theoretic isomorphism invariants for the one-non-coprime weight
//! patterns, canonical signatures and representatives, and isomorphism-class
//! counting.
//!
//! The deciding congruence multiplies a weight-ratio difference by
//! `r(r-1)(r-2)/3`; that factor vanishes modulo `r` unless `3 | r`, in which
//! case the condition collapses to a mod-3 comparison. Signatures package the
//! surviving residues so that two parameter sets are equivalent exactly when
//! their signatures coincide.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::numtheory::{gcd, mod_inverse, rep_half_open, Residue};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("weights do not match the required gcd pattern: {0}")]
    PatternError(String),
    #[error("{0} does not divide {1}")]
    DivisibilityError(u64, u64),
    #[error("unsupported dimension {0}")]
    BadDim(u8),
}

fn levels_for(dim: u8) -> Result<usize, ClassifyError> {
    match dim {
        3 => Ok(2),
        5 => Ok(3),
        7 => Ok(4),
        _ => Err(ClassifyError::BadDim(dim)),
    }
}

fn validate_pattern(
    order: u64,
    dim: u8,
    position: usize,
    level_gcd: u64,
    weights: &[u64],
) -> Result<(), ClassifyError> {
    let levels = levels_for(dim)?;
    if order < 2 {
        return Err(ClassifyError::PatternError(format!(
            "group order must be at least 2, got {order}"
        )));
    }
    if position >= levels {
        return Err(ClassifyError::PatternError(format!(
            "position {position} outside 0..{levels}"
        )));
    }
    if level_gcd == 0 || order % level_gcd != 0 {
        return Err(ClassifyError::DivisibilityError(level_gcd, order));
    }
    if weights.len() != levels {
        return Err(ClassifyError::PatternError(format!(
            "expected {levels} weights, got {}",
            weights.len()
        )));
    }
    if weights.iter().any(|&m| m == 0) {
        return Err(ClassifyError::PatternError(
            "weights must be positive".into(),
        ));
    }
    for (i, &m) in weights.iter().enumerate() {
        let g = gcd(m % order, order);
        let want = if i == position { level_gcd } else { 1 };
        if g != want {
            return Err(ClassifyError::PatternError(format!(
                "gcd(weight[{i}], {order}) = {g}, expected {want}"
            )));
        }
    }
    Ok(())
}

/// `x * r(r-1)(r-2)/3 = 0 (mod r)`; the deciding congruence factor.
fn cubic_congruence_vanishes(order: u64, x: i128) -> bool {
    let r = order as i128;
    let factor = r * (r - 1) * (r - 2) / 3;
    (x % r * (factor % r)).rem_euclid(r) == 0
}

/// Inverse of `w` modulo the group order as an `i128`.
fn inv(order: u64, w: u64) -> i128 {
    mod_inverse(w as i128, order).expect("validated unit") as i128
}

/// Isomorphism test in the all-coprime 7-dimensional case.
pub fn invariant_coprime7(order: u64, m: &[u64], n: &[u64]) -> Result<bool, ClassifyError> {
    validate_pattern(order, 7, 0, 1, m)?;
    validate_pattern(order, 7, 0, 1, n)?;
    let diff = inv(order, n[2]) * n[1] as i128 - inv(order, m[2]) * m[1] as i128;
    Ok(cubic_congruence_vanishes(order, diff))
}

/// Isomorphism test for 5-dimensional parameters sharing a pattern.
pub fn invariant_dim5(
    order: u64,
    position: usize,
    level_gcd: u64,
    m: &[u64],
    n: &[u64],
) -> Result<bool, ClassifyError> {
    validate_pattern(order, 5, position, level_gcd, m)?;
    validate_pattern(order, 5, position, level_gcd, n)?;
    Ok(match position {
        0 | 1 => true,
        _ => (m[1] % level_gcd) == (n[1] % level_gcd),
    })
}

/// Isomorphism test for 3-dimensional parameters sharing a pattern: for a
/// fixed group order the adjacency data is weight-independent.
pub fn invariant_dim3(
    order: u64,
    position: usize,
    level_gcd: u64,
    m: &[u64],
    n: &[u64],
) -> Result<bool, ClassifyError> {
    validate_pattern(order, 3, position, level_gcd, m)?;
    validate_pattern(order, 3, position, level_gcd, n)?;
    Ok(true)
}

/// Isomorphism test for 7-dimensional parameters sharing a pattern.
pub fn invariant_dim7(
    order: u64,
    position: usize,
    level_gcd: u64,
    m: &[u64],
    n: &[u64],
) -> Result<bool, ClassifyError> {
    validate_pattern(order, 7, position, level_gcd, m)?;
    validate_pattern(order, 7, position, level_gcd, n)?;
    let k = level_gcd;
    let same_mod_k = |i: usize| (m[i] % k) == (n[i] % k);
    Ok(match position {
        0 => {
            if k % 3 == 0 {
                true
            } else {
                let diff =
                    inv(order, m[2]) * m[1] as i128 - inv(order, n[2]) * n[1] as i128;
                cubic_congruence_vanishes(order, diff)
            }
        }
        1 => {
            let diff = inv(order, n[2]) * n[1] as i128 - inv(order, m[2]) * m[1] as i128;
            cubic_congruence_vanishes(order, diff) && same_mod_k(2)
        }
        2 => {
            let diff = inv(order, n[1]) * n[2] as i128 - inv(order, m[1]) * m[2] as i128;
            cubic_congruence_vanishes(order, diff) && same_mod_k(1)
        }
        _ => {
            let diff = inv(order, n[2]) * n[1] as i128 - inv(order, m[2]) * m[1] as i128;
            cubic_congruence_vanishes(order, diff) && same_mod_k(1) && same_mod_k(2)
        }
    })
}

/// One component of a signature: either a weight residue modulo the level
/// gcd, or a unit-ratio residue modulo 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SignaturePart {
    WeightModGcd(usize),
    UnitRatioMod3 { num: usize, den: usize },
}

impl fmt::Display for SignaturePart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignaturePart::WeightModGcd(i) => write!(f, "w{i} mod K"),
            SignaturePart::UnitRatioMod3 { num, den } => {
                write!(f, "w{num}*w{den}^-1 mod 3")
            }
        }
    }
}

/// The canonical residue tuple labeling an isomorphism class within a fixed
/// `(order, dim, position, gcd)` context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InvariantSignature {
    pub dim: u8,
    pub position: usize,
    pub gcd: u64,
    pub parts: Vec<(SignaturePart, Residue)>,
}

impl fmt::Display for InvariantSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "trivial");
        }
        let rendered: Vec<String> = self
            .parts
            .iter()
            .map(|(part, residue)| format!("{part}={}", residue.value()))
            .collect();
        write!(f, "{}", rendered.join(";"))
    }
}

/// Whether the mod-3 component survives: the group order divisible by 3 but
/// not the level gcd (when `3 | K` the mod-K residues already pin the mod-3
/// data, and when `3` does not divide `r` the congruence is vacuous).
fn mod3_part_active(order: u64, level_gcd: u64) -> bool {
    order % 3 == 0 && level_gcd % 3 != 0
}

fn ratio_mod3(order: u64, num_weight: u64, den_weight: u64) -> Residue {
    let value = inv(order, den_weight) * num_weight as i128;
    Residue::new(value, 3)
}

/// Canonical residue tuple; two same-pattern parameter sets are
/// invariant-equivalent exactly when their signatures are equal.
pub fn signature(
    order: u64,
    dim: u8,
    position: usize,
    level_gcd: u64,
    weights: &[u64],
) -> Result<InvariantSignature, ClassifyError> {
    validate_pattern(order, dim, position, level_gcd, weights)?;
    let mut parts: Vec<(SignaturePart, Residue)> = Vec::new();
    let k = level_gcd;
    let mod_k = |i: usize| {
        (
            SignaturePart::WeightModGcd(i),
            Residue::new(weights[i] as i128, k),
        )
    };
    match (dim, position) {
        (3, _) | (5, 0) | (5, 1) => {}
        (5, 2) => {
            if k > 1 {
                parts.push(mod_k(1));
            }
        }
        (7, 0) => {}
        (7, 1) => {
            if k > 1 {
                parts.push(mod_k(2));
            }
        }
        (7, 2) => {
            if k > 1 {
                parts.push(mod_k(1));
            }
        }
        (7, 3) => {
            if k > 1 {
                parts.push(mod_k(1));
                parts.push(mod_k(2));
            }
        }
        _ => return Err(ClassifyError::BadDim(dim)),
    }
    if dim == 7 && mod3_part_active(order, k) {
        let (num, den) = if position == 2 { (2, 1) } else { (1, 2) };
        parts.push((
            SignaturePart::UnitRatioMod3 { num, den },
            ratio_mod3(order, weights[num], weights[den]),
        ));
    }
    Ok(InvariantSignature {
        dim,
        position,
        gcd: k,
        parts,
    })
}

/// Smallest positive lift of `value` modulo `level_gcd` that is a unit
/// modulo the group order; exists for every unit residue class.
fn coprime_lift(order: u64, level_gcd: u64, value: u64) -> u64 {
    let mut x = if value == 0 { level_gcd } else { value };
    loop {
        if gcd(x % order, order) == 1 {
            return x;
        }
        x += level_gcd;
        assert!(
            x <= level_gcd * order + level_gcd,
            "no coprime lift found; the residue class is not a unit"
        );
    }
}

/// The printed representative of the same class as `weights`: entries from
/// the untwisted list when possible, with one slot multiplied by `r - 1`
/// when the mod-3 component demands it. The label's residues always match;
/// its entries need not themselves be coprime to the group order.
pub fn canonical_weights(
    order: u64,
    dim: u8,
    position: usize,
    level_gcd: u64,
    weights: &[u64],
) -> Result<Vec<u64>, ClassifyError> {
    let sig = signature(order, dim, position, level_gcd, weights)?;
    let k = level_gcd;
    let reduce = |i: usize| -> u64 {
        if k == 1 {
            1
        } else {
            rep_half_open(weights[i] as i128, k)
        }
    };
    let levels = levels_for(dim)?;
    let mut label: Vec<u64> = vec![1; levels];
    label[position] = k;
    match (dim, position) {
        (5, 2) => label[1] = reduce(1),
        (7, 1) => label[2] = reduce(2),
        (7, 2) => label[1] = reduce(1),
        (7, 3) => {
            label[1] = reduce(1);
            label[2] = reduce(2);
        }
        _ => {}
    }
    if dim == 7 && mod3_part_active(order, k) {
        // decide the twist by comparing mod-3 components on a coprime lift
        // of the untwisted label
        let lifted: Vec<u64> = label
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if i == position {
                    v
                } else {
                    coprime_lift(order, k, v % k.max(1))
                }
            })
            .collect();
        let base_sig = signature(order, dim, position, k, &lifted)?;
        if base_sig.parts.last() != sig.parts.last() {
            // twist slot: the ratio numerator for position 2, else the denominator
            let slot = if position == 2 { 1 } else { 2 };
            let residue = if k == 1 { 1 } else { k - reduce(slot) };
            label[slot] = residue * (order - 1);
        }
    }
    Ok(label)
}

/// One isomorphism class over the weight-residue space.
#[derive(Debug, Clone)]
pub struct ClassRow {
    pub order: u64,
    pub dim: u8,
    pub position: usize,
    pub gcd: u64,
    pub signature: InvariantSignature,
    pub representative: Vec<u64>,
    pub size: u64,
}

/// Enumerates all weight vectors with entries in `1..=order` matching the
/// pattern, grouped into classes by signature.
pub fn enumerate_classes(
    order: u64,
    dim: u8,
    position: usize,
    level_gcd: u64,
) -> Result<Vec<ClassRow>, ClassifyError> {
    let levels = levels_for(dim)?;
    if position >= levels {
        return Err(ClassifyError::PatternError(format!(
            "position {position} outside 0..{levels}"
        )));
    }
    if level_gcd == 0 || order % level_gcd != 0 {
        return Err(ClassifyError::DivisibilityError(level_gcd, order));
    }
    let units: Vec<u64> = (1..=order).filter(|&m| gcd(m, order) == 1).collect();
    let gcd_slot: Vec<u64> = (1..=order)
        .filter(|&m| gcd(m % order, order) == level_gcd)
        .collect();
    if gcd_slot.is_empty() {
        return Err(ClassifyError::PatternError(format!(
            "no residue in 1..={order} has gcd {level_gcd} with {order}"
        )));
    }
    let slots: Vec<&[u64]> = (0..levels)
        .map(|i| {
            if i == position && level_gcd > 1 {
                gcd_slot.as_slice()
            } else {
                units.as_slice()
            }
        })
        .collect();
    let mut classes: BTreeMap<InvariantSignature, (Vec<u64>, u64)> = BTreeMap::new();
    let mut weights = vec![0u64; levels];
    fill(&slots, 0, &mut weights, &mut |w| {
        let sig = signature(order, dim, position, level_gcd, w)
            .expect("enumerated vectors match the pattern");
        let entry = classes.entry(sig).or_insert_with(|| (w.to_vec(), 0));
        entry.1 += 1;
    });
    classes
        .into_iter()
        .map(|(sig, (first, size))| {
            let representative = canonical_weights(order, dim, position, level_gcd, &first)?;
            Ok(ClassRow {
                order,
                dim,
                position,
                gcd: level_gcd,
                signature: sig,
                representative,
                size,
            })
        })
        .collect()
}

fn fill(slots: &[&[u64]], i: usize, weights: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if i == slots.len() {
        f(weights);
        return;
    }
    for &v in slots[i] {
        weights[i] = v;
        fill(slots, i + 1, weights, f);
    }
}

/// Number of distinct signatures over the pattern's weight-residue space.
pub fn count_classes(
    order: u64,
    dim: u8,
    position: usize,
    level_gcd: u64,
) -> Result<u64, ClassifyError> {
    Ok(enumerate_classes(order, dim, position, level_gcd)?.len() as u64)
}

/// CSV report: one row per class.
pub fn class_report_csv(rows: &[ClassRow]) -> String {
    let mut out = String::from("r,dim,position,gcd,signature,representative,size\n");
    for row in rows {
        let rep: Vec<String> = row.representative.iter().map(|w| w.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.order,
            row.dim,
            row.position,
            row.gcd,
            row.signature,
            rep.join(" "),
            row.size
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime7_examples() {
        assert_eq!(invariant_coprime7(3, &[1, 1, 1, 1], &[1, 1, 2, 1]), Ok(false));
        assert_eq!(invariant_coprime7(3, &[1, 1, 1, 1], &[1, 1, 1, 1]), Ok(true));
        // no multiple of 3: always isomorphic
        for m1 in 1..5u64 {
            assert_eq!(
                invariant_coprime7(5, &[1, m1, 1, 1], &[1, 1, 1, 1]),
                Ok(true)
            );
        }
        assert!(invariant_coprime7(4, &[2, 1, 1, 1], &[1, 1, 1, 1]).is_err());
    }

    #[test]
    fn dim5_examples() {
        assert_eq!(invariant_dim5(6, 1, 3, &[1, 3, 1], &[5, 3, 5]), Ok(true));
        // 7 = 1 mod 3 agrees with 1
        assert_eq!(invariant_dim5(6, 2, 3, &[1, 1, 3], &[1, 7, 3]), Ok(true));
        // 5 = 2 mod 3 differs from 1
        assert_eq!(invariant_dim5(6, 2, 3, &[1, 1, 3], &[1, 5, 3]), Ok(false));
        // middle weight must stay a unit
        assert!(invariant_dim5(6, 2, 3, &[1, 1, 3], &[1, 4, 3]).is_err());
    }

    #[test]
    fn dim7_examples() {
        assert_eq!(
            invariant_dim7(6, 3, 3, &[1, 1, 1, 3], &[1, 1, 1, 3]),
            Ok(true)
        );
        assert_eq!(
            invariant_dim7(6, 3, 3, &[1, 1, 1, 3], &[1, 5, 5, 3]),
            Ok(false)
        );
        // position 0 with 3 | K: always isomorphic
        assert_eq!(
            invariant_dim7(6, 0, 3, &[3, 1, 1, 1], &[3, 5, 1, 5]),
            Ok(true)
        );
    }

    #[test]
    fn signature_examples() {
        // 3 does not divide 10: only the mod-K residues survive
        let sig = signature(10, 7, 3, 5, &[1, 3, 7, 5]).unwrap();
        assert_eq!(sig.parts.len(), 2);
        assert_eq!(sig.parts[0].1.value(), 3);
        assert_eq!(sig.parts[1].1.value(), 2);
        // 5-dimensional, position 0: nothing survives
        let sig = signature(10, 5, 0, 5, &[5, 1, 1]).unwrap();
        assert!(sig.parts.is_empty());
        assert_eq!(sig.to_string(), "trivial");
        // coprime pattern with 3 | r: a single mod-3 ratio
        let sig = signature(6, 7, 0, 1, &[1, 1, 5, 1]).unwrap();
        assert_eq!(sig.parts.len(), 1);
        assert_eq!(
            sig.parts[0].0,
            SignaturePart::UnitRatioMod3 { num: 1, den: 2 }
        );
        assert_eq!(sig.parts[0].1.value(), 2); // 5^-1 mod 6 = 5, 5*1 mod 3 = 2
    }

    #[test]
    fn signature_decides_invariant() {
        // pairwise agreement on sampled configurations; the exhaustive sweep
        // lives in the acceptance suite
        for (r, k, pos) in [(6u64, 3u64, 3usize), (6, 2, 1), (9, 3, 2), (12, 4, 3), (8, 1, 0)] {
            let units: Vec<u64> = (1..=r).filter(|&m| gcd(m, r) == 1).collect();
            let gcd_rep = (1..=r).find(|&m| gcd(m, r) == k).unwrap();
            let free: Vec<usize> = (0..4).filter(|&i| i != pos).collect();
            let mut vectors = Vec::new();
            for &a in &units {
                for &b in &units {
                    for &c in &units {
                        let mut w = vec![0u64; 4];
                        w[pos] = gcd_rep;
                        for (slot, val) in free.iter().zip([a, b, c]) {
                            w[*slot] = val;
                        }
                        vectors.push(w);
                    }
                }
            }
            for m in vectors.iter().take(40) {
                for n in vectors.iter().take(40) {
                    let inv = invariant_dim7(r, pos, k, m, n).unwrap();
                    let sig_eq = signature(r, 7, pos, k, m).unwrap()
                        == signature(r, 7, pos, k, n).unwrap();
                    assert_eq!(inv, sig_eq, "r={r} k={k} pos={pos} m={m:?} n={n:?}");
                }
            }
        }
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_weights(10, 7, 3, 5, &[1, 3, 7, 5]).unwrap(),
            vec![1, 3, 2, 5]
        );
        assert_eq!(
            canonical_weights(10, 7, 0, 5, &[5, 1, 3, 7]).unwrap(),
            vec![5, 1, 1, 1]
        );
        assert_eq!(
            canonical_weights(12, 5, 2, 4, &[1, 7, 4]).unwrap(),
            vec![1, 3, 4]
        );
        // twisted representative in the coprime case with 3 | r
        assert_eq!(
            canonical_weights(6, 7, 0, 1, &[1, 1, 5, 1]).unwrap(),
            vec![1, 1, 5, 1]
        );
        assert_eq!(
            canonical_weights(6, 7, 0, 1, &[1, 1, 1, 1]).unwrap(),
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_classes(12, 7, 3, 4), Ok(8));
        assert_eq!(count_classes(10, 7, 2, 5), Ok(4));
        assert_eq!(count_classes(12, 7, 1, 3), Ok(2));
    }

    #[test]
    fn counts_are_shift_invariant() {
        // adding the order to any weight never changes the signature
        let r = 12u64;
        for w in [[1u64, 5, 7, 4], [1, 7, 5, 4]] {
            let base = signature(r, 7, 3, 4, &w).unwrap();
            for i in 0..4 {
                let mut shifted = w.to_vec();
                shifted[i] += r;
                assert_eq!(base, signature(r, 7, 3, 4, &shifted).unwrap());
            }
        }
    }

    #[test]
    fn csv_report_shape() {
        let rows = enumerate_classes(6, 7, 3, 3).unwrap();
        let csv = class_report_csv(&rows);
        assert!(csv.starts_with("r,dim,position,gcd,signature,representative,size\n"));
        assert_eq!(csv.lines().count(), rows.len() + 1);
    }
}
