//! Closed-form path counts and adjacency matrices for the one-non-coprime
//! weight patterns in dimensions 3, 5 and 7.
//!
//! Positions whose entry is determined only modulo the group order carry a
//! residue mask and are normalized into `[0, r)`; all other entries are exact
//! counts. Every closed form here is cross-checked against the brute-force
//! counts from [`crate::lens`] by the test suites.

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::lens::LensParams;
use crate::matrix::{IntMatrix, ResidueMask};
use crate::numtheory::{gcd, mod_inverse, rep_half_open, rep_positive, rep_strictly_inside};
use crate::slp::poset_for;

type Q = Ratio<i128>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("{0} does not divide {1}")]
    DivisibilityError(u64, u64),
    #[error("invalid case selector: {0}")]
    BadCase(String),
    #[error("weights do not match the required gcd pattern: {0}")]
    PatternError(String),
}

/// Which weight pattern a formula matrix describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseTag {
    pub dim: u8,
    pub position: usize,
    pub order: u64,
    pub gcd: u64,
}

/// A closed-form adjacency matrix; `matrix.residue_mask` marks the positions
/// that are congruence classes rather than exact counts.
#[derive(Debug, Clone)]
pub struct FormulaMatrix {
    pub matrix: IntMatrix,
    pub case: CaseTag,
}

impl FormulaMatrix {
    pub fn masked_positions(&self) -> BTreeSet<(usize, usize)> {
        self.matrix
            .residue_mask
            .as_ref()
            .map(|m| m.positions.clone())
            .unwrap_or_default()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "r": self.case.order,
            "dim": self.case.dim,
            "position": self.case.position,
            "gcd": self.case.gcd,
            "matrix": self.matrix.to_rows().iter().map(|row| {
                row.iter().map(|e| *e as i64).collect::<Vec<i64>>()
            }).collect::<Vec<_>>(),
            "modr_mask": self.masked_positions().iter().map(|&(i, j)| vec![i, j]).collect::<Vec<_>>(),
        })
    }
}

/// Number of admissible paths into a gcd-`K` level that touch no
/// intermediate level: `r/K`.
pub fn one_step(order: u64, level_gcd: u64) -> Result<i128, FormulaError> {
    if level_gcd == 0 || order % level_gcd != 0 {
        return Err(FormulaError::DivisibilityError(level_gcd, order));
    }
    Ok((order / level_gcd) as i128)
}

/// The three 2-step path-count cases: into the gcd level, out of the gcd
/// level, and across it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoStepCase {
    IntoGcdLevel,
    OutOfGcdLevel,
    AcrossGcdLevel,
}

impl TwoStepCase {
    pub fn from_index(i: u8) -> Result<Self, FormulaError> {
        match i {
            1 => Ok(TwoStepCase::IntoGcdLevel),
            2 => Ok(TwoStepCase::OutOfGcdLevel),
            3 => Ok(TwoStepCase::AcrossGcdLevel),
            _ => Err(FormulaError::BadCase(format!("2-step case {i}"))),
        }
    }
}

/// The printed piecewise 2-step counts. `target_offset` is the offset `t`
/// at the gcd level and `transit_inverse` the inverse (mod `level_gcd`) of
/// the transit level's weight; both are ignored by the across case.
pub fn two_step(
    case: TwoStepCase,
    order: u64,
    level_gcd: u64,
    target_offset: u64,
    transit_inverse: u64,
) -> Result<i128, FormulaError> {
    if level_gcd == 0 || order % level_gcd != 0 {
        return Err(FormulaError::DivisibilityError(level_gcd, order));
    }
    let r = order as i128;
    let k = level_gcd as i128;
    let base = r * (r - k) / (2 * k);
    if matches!(case, TwoStepCase::AcrossGcdLevel) {
        return Ok(base);
    }
    if target_offset >= level_gcd {
        return Err(FormulaError::BadCase(format!(
            "offset {target_offset} outside 0..{level_gcd}"
        )));
    }
    if target_offset == 0 {
        return Ok(match case {
            TwoStepCase::IntoGcdLevel => r * (r + k - 2) / (2 * k),
            _ => base,
        });
    }
    if level_gcd > 1 && (transit_inverse == 0 || gcd(transit_inverse, level_gcd) != 1) {
        return Err(FormulaError::BadCase(format!(
            "transit inverse {transit_inverse} is not a unit modulo {level_gcd}"
        )));
    }
    let step = rep_half_open(
        transit_inverse as i128 * target_offset as i128 - 1,
        level_gcd,
    ) as i128
        * (r / k);
    Ok(match case {
        TwoStepCase::IntoGcdLevel => base + step,
        _ => base - step,
    })
}

/// Canonicalized weight context shared by the matrix builders.
struct Ctx {
    r: i128,
    k: i128,
    /// weights reduced into `[1, r]`
    w: Vec<i128>,
}

impl Ctx {
    fn new(
        order: u64,
        level_gcd: u64,
        position: usize,
        weights: &[u64],
        dim: u8,
    ) -> Result<Ctx, FormulaError> {
        let expected_len = match dim {
            3 => 2,
            5 => 3,
            7 => 4,
            _ => return Err(FormulaError::BadCase(format!("dimension {dim}"))),
        };
        if weights.len() != expected_len {
            return Err(FormulaError::PatternError(format!(
                "expected {expected_len} weights, got {}",
                weights.len()
            )));
        }
        if position >= expected_len {
            return Err(FormulaError::BadCase(format!(
                "position {position} outside 0..{expected_len}"
            )));
        }
        if level_gcd == 0 || order % level_gcd != 0 {
            return Err(FormulaError::DivisibilityError(level_gcd, order));
        }
        if weights.iter().any(|&m| m == 0) {
            return Err(FormulaError::PatternError(
                "weights must be positive".into(),
            ));
        }
        for (i, &m) in weights.iter().enumerate() {
            let g = gcd(m % order, order);
            let want = if i == position { level_gcd } else { 1 };
            if g != want {
                return Err(FormulaError::PatternError(format!(
                    "gcd(weight[{i}], {order}) = {g}, expected {want}"
                )));
            }
        }
        let w = weights
            .iter()
            .map(|&m| {
                let v = (m % order) as i128;
                if v == 0 {
                    order as i128
                } else {
                    v
                }
            })
            .collect();
        Ok(Ctx {
            r: order as i128,
            k: level_gcd as i128,
            w,
        })
    }

    /// Inverse of weight `i` modulo the group order, in `(0, r)`.
    fn inv_order(&self, i: usize) -> i128 {
        mod_inverse(self.w[i], self.r as u64).expect("pattern guarantees a unit") as i128
    }

    /// Inverse of weight `i` modulo the level gcd, in `(0, K)`; zero when
    /// the gcd is 1 (the value is then never used with a nonzero factor).
    fn inv_gcd(&self, i: usize) -> i128 {
        if self.k == 1 {
            0
        } else {
            mod_inverse(self.w[i], self.k as u64).expect("pattern guarantees a unit") as i128
        }
    }

    fn rk(&self) -> i128 {
        self.r / self.k
    }
}

fn q(n: i128) -> Q {
    Ratio::from_integer(n)
}

fn reduce_mod(total: Q, order: i128) -> i128 {
    assert!(
        total.is_integer(),
        "closed form did not reduce to an integer"
    );
    total.to_integer().rem_euclid(order)
}

/// The window-(0,r) representative of `x` together with the shift count
/// such that `x + shift * r` equals the representative.
fn rep_and_shift(x: i128, order: i128) -> (i128, i128) {
    let rep = rep_strictly_inside(x, order as u64)
        .expect("argument is a unit multiple, never divisible by the order")
        as i128;
    ((rep - x) / order, rep)
}

/// Masked entry for the gcd-on-last-level case: total admissible-path count
/// from the top vertex to the gcd-level vertex at offset `t`, modulo `r`.
fn dim7_last_level_masked(ctx: &Ctx, t: i128) -> i128 {
    let (r, k) = (ctx.r, ctx.k);
    let m1 = ctx.w[1];
    let m2 = ctx.w[2];
    let m2inv = ctx.inv_order(2);
    let (a1, a2) = (ctx.inv_gcd(1), ctx.inv_gcd(2));
    let s_t = rep_half_open(a2 * t - 1, k as u64) as i128;
    let mut total = -q(m2inv) * q(m1) * q(r) * q(r - 2) * q(r - 1) / (q(3) * q(k));
    for l in 1..=(r - 2) {
        let (shift, _) = rep_and_shift(m2inv * m1 * (l + 1), r);
        total += q(l) * q(r) * q(1 - shift) / q(k);
    }
    for h in 0..k {
        let residue = rep_half_open(m2 * a1 * h - 1, k as u64) as i128;
        for l in 1..=(r - 2) {
            if l % k == residue {
                total += q(l) * q(h) / q(k);
            }
        }
    }
    for h in (s_t + 1)..k {
        let residue = rep_half_open(m2 * a1 * h - 1, k as u64) as i128;
        for l in 1..=(r - 2) {
            if l % k == residue {
                total -= q(l);
            }
        }
    }
    total += q(ctx.rk()) * q(a2 * t + a1 * t - 1);
    reduce_mod(total, r)
}

/// Masked entry for the gcd-on-first-level case: the 3-step sum plus the
/// 1-step count `r/K` (the 2-step contributions vanish modulo `r`).
fn dim7_first_level_masked(ctx: &Ctx) -> i128 {
    let (r, k) = (ctx.r, ctx.k);
    let m1 = ctx.w[1];
    let m2inv = ctx.inv_order(2);
    let a1 = ctx.inv_gcd(1);
    let mut total = -q(m2inv) * q(m1) * q(r) * q(r - 2) * q(r - 1) / (q(3) * q(k));
    for l in 1..=(r - 2) {
        let (shift, _) = rep_and_shift(m2inv * m1 * (l + 1), r);
        total += q(l) * q(r) * q(1 - shift) / q(k);
    }
    for h in 0..k {
        let window = rep_half_open(a1 * h, k as u64) as i128;
        for l in 1..=(r - 2) {
            if l % k == window % k {
                let (_, rep) = rep_and_shift(m2inv * m1 * (l + 1), r);
                total -= q(window) / q(k) * q(r - rep);
            }
        }
    }
    total += q(ctx.rk());
    reduce_mod(total, r)
}

/// Masked corner entry for the gcd-on-a-middle-level cases: paths across the
/// gcd level from the top vertex to the bottom one. `num`/`den` select which
/// weight ratio appears.
fn dim7_middle_level_masked(ctx: &Ctx, num: usize, den: usize) -> i128 {
    let (r, k) = (ctx.r, ctx.k);
    let dinv = ctx.inv_order(den);
    let total = -q(dinv) * q(ctx.w[num]) * q(r) * q(2 * r - k) * q(r - k) / (q(6) * q(k) * q(k))
        + q(dinv) * q(r) * q(r - k) * q(k - 1) / (q(4) * q(k))
        + q(r) * q(r - 1) / q(2);
    reduce_mod(total, r)
}

fn finish(
    mut matrix: IntMatrix,
    dim: u8,
    position: usize,
    order: u64,
    level_gcd: u64,
    masked: BTreeSet<(usize, usize)>,
) -> FormulaMatrix {
    if !masked.is_empty() {
        matrix.residue_mask = Some(ResidueMask {
            modulus: order,
            positions: masked,
        });
    }
    matrix.block_poset =
        Some(poset_for(dim, position, level_gcd).expect("validated case has a block poset"));
    FormulaMatrix {
        matrix,
        case: CaseTag {
            dim,
            position,
            order,
            gcd: level_gcd,
        },
    }
}

/// Positions of the ≡-masked entries for a given case, in the level-major
/// matrix layout. Useful for masking brute-force matrices consistently.
pub fn masked_positions(dim: u8, position: usize, level_gcd: u64) -> BTreeSet<(usize, usize)> {
    let k = level_gcd as usize;
    match (dim, position) {
        (7, 0) => [(0, 3)].into_iter().collect(),
        (7, 1) | (7, 2) => [(0, k + 2)].into_iter().collect(),
        (7, 3) => (0..k).map(|t| (0, 3 + t)).collect(),
        (5, 2) => (1..k).map(|t| (0, 2 + t)).collect(),
        _ => BTreeSet::new(),
    }
}

/// The printed 2x2 matrix for dimension 3 with the gcd weight first:
/// `[[1, r/K], [0, 1]]`.
pub fn adjacency_dim3(order: u64, level_gcd: u64) -> Result<FormulaMatrix, FormulaError> {
    if level_gcd == 0 || order % level_gcd != 0 {
        return Err(FormulaError::DivisibilityError(level_gcd, order));
    }
    let r = order as i128;
    let k = level_gcd as i128;
    let m = IntMatrix::from_rows(&[vec![1, r / k], vec![0, 1]]);
    Ok(finish(m, 3, 0, order, level_gcd, BTreeSet::new()))
}

/// Dimension-3 closed forms for both gcd positions (position 1 has `K`
/// vertices on the lower level).
pub fn adjacency_dim3_at(
    position: usize,
    order: u64,
    level_gcd: u64,
) -> Result<FormulaMatrix, FormulaError> {
    match position {
        0 => adjacency_dim3(order, level_gcd),
        1 => {
            if level_gcd == 0 || order % level_gcd != 0 {
                return Err(FormulaError::DivisibilityError(level_gcd, order));
            }
            let k = level_gcd as usize;
            let mut m = IntMatrix::identity(k + 1);
            for t in 0..k {
                m.set(0, 1 + t, (order / level_gcd) as i128);
            }
            Ok(finish(m, 3, 1, order, level_gcd, BTreeSet::new()))
        }
        _ => Err(FormulaError::BadCase(format!(
            "position {position} for dimension 3"
        ))),
    }
}

/// Dimension-5 closed forms.
pub fn adjacency_dim5(
    position: usize,
    order: u64,
    level_gcd: u64,
    weights: &[u64],
) -> Result<FormulaMatrix, FormulaError> {
    let ctx = Ctx::new(order, level_gcd, position, weights, 5)?;
    let (r, k) = (ctx.r, ctx.k);
    let kk = k as usize;
    let rk = ctx.rk();
    let matrix = match position {
        0 => IntMatrix::from_rows(&[
            vec![1, rk, rk + r * (r - k) / (2 * k)],
            vec![0, 1, r],
            vec![0, 0, 1],
        ]),
        1 => {
            let mut m = IntMatrix::identity(kk + 2);
            for t in 0..kk {
                m.set(0, 1 + t, rk);
                m.set(1 + t, kk + 1, rk);
            }
            m.set(0, kk + 1, r * (r + k) / (2 * k));
            m
        }
        2 => {
            let a1 = ctx.inv_gcd(1);
            let mut m = IntMatrix::identity(kk + 2);
            m.set(0, 1, r);
            m.set(0, 2, r * (r + k) / (2 * k));
            for t in 1..kk {
                let z = (r * (r - k) / (2 * k) + a1 * t as i128 * rk).rem_euclid(r);
                m.set(0, 2 + t, z);
            }
            for t in 0..kk {
                m.set(1, 2 + t, rk);
            }
            m
        }
        _ => unreachable!("validated position"),
    };
    Ok(finish(
        matrix,
        5,
        position,
        order,
        level_gcd,
        masked_positions(5, position, level_gcd),
    ))
}

/// Dimension-7 closed forms.
pub fn adjacency_dim7(
    position: usize,
    order: u64,
    level_gcd: u64,
    weights: &[u64],
) -> Result<FormulaMatrix, FormulaError> {
    let ctx = Ctx::new(order, level_gcd, position, weights, 7)?;
    let (r, k) = (ctx.r, ctx.k);
    let kk = k as usize;
    let rk = ctx.rk();
    let matrix = match position {
        0 => {
            let mut m = IntMatrix::identity(4);
            m.set(0, 1, rk);
            m.set(0, 2, r * (r - k) / (2 * k) + rk);
            m.set(0, 3, dim7_first_level_masked(&ctx));
            m.set(1, 2, r);
            m.set(1, 3, r * (r + 1) / 2);
            m.set(2, 3, r);
            m
        }
        1 => {
            let a2 = ctx.inv_gcd(2);
            let mut m = IntMatrix::identity(kk + 3);
            for t in 0..kk {
                m.set(0, 1 + t, rk);
                m.set(1 + t, kk + 1, rk);
                let shifted = if k == 1 {
                    1
                } else {
                    rep_positive(a2 * t as i128, k as u64) as i128
                };
                m.set(
                    1 + t,
                    kk + 2,
                    r * (r - k) / (2 * k) + (k + 1 - shifted) * rk,
                );
            }
            m.set(0, kk + 1, r * (r + k) / (2 * k));
            m.set(0, kk + 2, dim7_middle_level_masked(&ctx, 1, 2));
            m.set(kk + 1, kk + 2, r);
            m
        }
        2 => {
            let a1 = ctx.inv_gcd(1);
            let mut m = IntMatrix::identity(kk + 3);
            m.set(0, 1, r);
            m.set(0, 2, r * (r + k) / (2 * k));
            for t in 1..kk {
                let shifted = rep_strictly_inside(a1 * t as i128, k as u64)
                    .expect("unit times nonzero offset is nonzero mod K")
                    as i128;
                m.set(0, 2 + t, r * (r - k) / (2 * k) + shifted * rk);
            }
            m.set(0, kk + 2, dim7_middle_level_masked(&ctx, 2, 1));
            for t in 0..kk {
                m.set(1, 2 + t, rk);
                m.set(2 + t, kk + 2, rk);
            }
            m.set(1, kk + 2, r * (r + k) / (2 * k));
            m
        }
        3 => {
            let a2 = ctx.inv_gcd(2);
            let mut m = IntMatrix::identity(kk + 3);
            m.set(0, 1, r);
            m.set(0, 2, r * (r + 1) / 2);
            m.set(1, 2, r);
            for t in 0..kk {
                let s_t = if k == 1 {
                    0
                } else {
                    rep_half_open(a2 * t as i128 - 1, k as u64) as i128
                };
                m.set(1, 3 + t, r * (r - k) / (2 * k) + (s_t + 1) * rk);
                m.set(2, 3 + t, rk);
                m.set(0, 3 + t, dim7_last_level_masked(&ctx, t as i128));
            }
            m
        }
        _ => unreachable!("validated position"),
    };
    Ok(finish(
        matrix,
        7,
        position,
        order,
        level_gcd,
        masked_positions(7, position, level_gcd),
    ))
}

/// Dispatch on the parameter dimension and gcd pattern; errors when more
/// than one weight is non-coprime to the group order.
pub fn closed_form(params: &LensParams) -> Result<FormulaMatrix, FormulaError> {
    let order = params.order();
    let (position, level_gcd) = params.noncoprime_pattern().ok_or_else(|| {
        FormulaError::PatternError(
            "more than one weight is non-coprime to the group order".into(),
        )
    })?;
    let weights = params.weights();
    match params.levels() {
        2 => adjacency_dim3_at(position, order, level_gcd),
        3 => adjacency_dim5(position, order, level_gcd, weights),
        4 => adjacency_dim7(position, order, level_gcd, weights),
        n => Err(FormulaError::BadCase(format!(
            "no closed form for {n} levels"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::modified_graph;

    #[test]
    fn one_step_examples() {
        assert_eq!(one_step(4, 2), Ok(2));
        assert_eq!(one_step(9, 1), Ok(9));
        assert_eq!(one_step(6, 6), Ok(1));
        assert_eq!(one_step(6, 4), Err(FormulaError::DivisibilityError(4, 6)));
    }

    #[test]
    fn two_step_examples() {
        assert_eq!(two_step(TwoStepCase::AcrossGcdLevel, 6, 3, 0, 0), Ok(3));
        assert_eq!(two_step(TwoStepCase::IntoGcdLevel, 6, 3, 0, 0), Ok(7));
        assert_eq!(two_step(TwoStepCase::OutOfGcdLevel, 6, 3, 0, 0), Ok(3));
        assert!(two_step(TwoStepCase::IntoGcdLevel, 6, 3, 3, 1).is_err());
        assert!(two_step(TwoStepCase::IntoGcdLevel, 6, 4, 0, 1).is_err());
        assert!(TwoStepCase::from_index(4).is_err());
        assert_eq!(
            TwoStepCase::from_index(3),
            Ok(TwoStepCase::AcrossGcdLevel)
        );
    }

    #[test]
    fn dim3_matches_example_and_is_weight_free() {
        let m = adjacency_dim3(4, 2).unwrap();
        assert_eq!(m.matrix.to_rows(), vec![vec![1, 2], vec![0, 1]]);
        let m = adjacency_dim3(2, 1).unwrap();
        assert_eq!(m.matrix.to_rows(), vec![vec![1, 2], vec![0, 1]]);
        let m = adjacency_dim3(9, 1).unwrap();
        assert_eq!(m.matrix.to_rows(), vec![vec![1, 9], vec![0, 1]]);
    }

    #[test]
    fn dim5_examples() {
        let m = adjacency_dim5(0, 4, 2, &[2, 1, 1]).unwrap();
        assert_eq!(
            m.matrix.to_rows(),
            vec![vec![1, 2, 4], vec![0, 1, 4], vec![0, 0, 1]]
        );
        // top-row entry over the final vertex
        let m = adjacency_dim5(2, 6, 3, &[1, 1, 3]).unwrap();
        assert_eq!(m.matrix.get(0, 2), 9);
        let m = adjacency_dim5(1, 6, 3, &[1, 3, 1]).unwrap();
        assert_eq!(m.matrix.get(0, 4), 9);
        assert!(adjacency_dim5(0, 4, 2, &[1, 2, 1]).is_err());
    }

    #[test]
    fn dim7_position3_example() {
        let m = adjacency_dim7(3, 6, 3, &[1, 1, 1, 3]).unwrap();
        // second-row entries over the gcd level: r(r+K)/2K, then the shifted step counts
        assert_eq!(m.matrix.get(1, 3), 9);
        assert_eq!(m.matrix.get(1, 4), 3 + 2);
        assert_eq!(m.matrix.get(1, 5), 3 + 2 * 2);
        assert_eq!(m.masked_positions().len(), 3);
    }

    #[test]
    fn dim7_matches_brute_on_spot_cases() {
        for (pos, weights, r, k) in [
            (0usize, vec![2u64, 1, 1, 1], 4u64, 2u64),
            (3, vec![1, 1, 1, 3], 6, 3),
            (1, vec![1, 3, 1, 1], 9, 3),
            (2, vec![1, 1, 4, 3], 8, 4),
        ] {
            let f = adjacency_dim7(pos, r, k, &weights).unwrap();
            let p = LensParams::new(r, weights.clone()).unwrap();
            let brute = modified_graph(&p).matrix;
            assert!(
                f.matrix.eq_with_mask(&brute),
                "pos {pos} weights {weights:?}: formula {:?} brute {:?}",
                f.matrix.to_rows(),
                brute.to_rows()
            );
        }
    }

    /// Reduces masked entries mod `r`, then relabels the (mutually
    /// incomparable) middle indices into the order that sorts their rows.
    fn canon_middle(
        m: &IntMatrix,
        middle: std::ops::Range<usize>,
        r: u64,
        masked: &std::collections::BTreeSet<(usize, usize)>,
    ) -> Vec<Vec<i128>> {
        let n = m.rows();
        let reduced: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = m.get(i, j);
                        if masked.contains(&(i, j)) {
                            v.rem_euclid(r as i128)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        let mut mids: Vec<usize> = middle.clone().collect();
        // sort middle indices by their entries at non-middle positions (the
        // middle-vs-middle block is an identity either way)
        let key = |i: usize| -> Vec<i128> {
            let mut v: Vec<i128> = (0..n)
                .filter(|c| !middle.contains(c))
                .map(|c| reduced[i][c])
                .collect();
            v.extend((0..n).filter(|r0| !middle.contains(r0)).map(|r0| reduced[r0][i]));
            v
        };
        mids.sort_by_key(|&i| key(i));
        for (slot, &src) in middle.clone().zip(mids.iter()) {
            order[slot] = src;
        }
        let mut out = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = reduced[order[i]][order[j]];
            }
        }
        out
    }

    #[test]
    fn dim7_anti_transpose_between_middle_positions() {
        // swapping the two middle weights mirrors the matrix, up to a
        // relabeling of the incomparable middle vertices and mod r at the
        // masked corner
        for (r, k, mw, m3) in [(6u64, 3u64, 1u64, 5u64), (8, 4, 3, 5), (12, 3, 5, 7)] {
            let kk = k as usize;
            let a = adjacency_dim7(1, r, k, &[1, k, mw, m3]).unwrap();
            let b = adjacency_dim7(2, r, k, &[1, mw, k, m3]).unwrap();
            let mut flipped = b.matrix.anti_transpose();
            flipped.residue_mask = None;
            let lhs = canon_middle(&a.matrix, 1..1 + kk, r, &a.masked_positions());
            let flipped_mask: std::collections::BTreeSet<(usize, usize)> = b
                .masked_positions()
                .iter()
                .map(|&(i, j)| (kk + 2 - j, kk + 2 - i))
                .collect();
            let rhs = canon_middle(&flipped, 1..1 + kk, r, &flipped_mask);
            assert_eq!(lhs, rhs, "r={r} k={k} mw={mw} m3={m3}");
        }
    }

    #[test]
    fn closed_form_rejects_bad_patterns() {
        let p = LensParams::new(4, vec![2, 2, 1, 1]).unwrap();
        assert!(matches!(closed_form(&p), Err(FormulaError::PatternError(_))));
    }
}
