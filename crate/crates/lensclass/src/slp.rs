//! Poset-constrained unimodular equivalence of the B-form matrices
//! (adjacency minus identity): upper-triangular unit-diagonal factors whose
//! support respects a partial order, elementary row/column moves, a bounded
//! search that semidecides `U * B1 * V = B2`, and exact witness checking.
//!
//! The search works in a quotient space: positions carrying a residue mask
//! are reduced modulo the mask modulus when states are hashed, and the final
//! residue multiples are repaired by column moves drawn from a column whose
//! only nonzero entry sits in the masked row. Every `Found` answer is
//! verified by exact integer multiplication before being returned.

use std::collections::{HashMap, VecDeque};

use serde_json::json;
use thiserror::Error;

use crate::matrix::IntMatrix;
use crate::poset::Poset;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SlpError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid case: {0}")]
    BadCase(String),
    #[error("matrix violates the required form: {0}")]
    BadForm(String),
}

/// Block poset for a one-non-coprime pattern. Position 0 gives a linear
/// order on the levels; a gcd level elsewhere contributes `K` mutually
/// incomparable elements squeezed between its neighbours.
pub fn poset_for(dim: u8, position: usize, level_gcd: u64) -> Result<Poset, SlpError> {
    let levels = match dim {
        3 => 2usize,
        5 => 3,
        7 => 4,
        _ => return Err(SlpError::BadCase(format!("dimension {dim}"))),
    };
    if position >= levels {
        return Err(SlpError::BadCase(format!(
            "position {position} outside 0..{levels}"
        )));
    }
    if level_gcd == 0 {
        return Err(SlpError::BadCase("gcd must be positive".into()));
    }
    let k = level_gcd as usize;
    if position == 0 {
        return Ok(Poset::chain(levels));
    }
    let size = levels + k - 1;
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for i in 1..position {
        gens.push((i - 1, i));
    }
    for i in position..position + k {
        gens.push((position - 1, i));
        if position + k < size {
            gens.push((i, position + k));
        }
    }
    for j in position + k + 1..size {
        gens.push((j - 1, j));
    }
    Poset::from_relations(size, &gens).map_err(|e| SlpError::BadCase(e.to_string()))
}

/// An upper-triangular unit-diagonal integer matrix whose off-diagonal
/// support respects the poset.
#[derive(Debug, Clone)]
pub struct SlpMatrix {
    matrix: IntMatrix,
    poset: Poset,
}

impl SlpMatrix {
    pub fn new(matrix: IntMatrix, poset: Poset) -> Result<Self, SlpError> {
        check_slp_form(&matrix, &poset)?;
        Ok(SlpMatrix { matrix, poset })
    }

    pub fn identity(poset: Poset) -> Self {
        SlpMatrix {
            matrix: IntMatrix::identity(poset.size()),
            poset,
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Exact inverse; unipotent upper-triangular matrices invert within the
    /// same poset support.
    pub fn inverse(&self) -> SlpMatrix {
        let n = self.matrix.rows();
        let mut inv = IntMatrix::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let mut acc: i128 = 0;
                for m in i + 1..=j {
                    acc = acc
                        .checked_add(
                            self.matrix
                                .get(i, m)
                                .checked_mul(inv.get(m, j))
                                .expect("inverse arithmetic overflow"),
                        )
                        .expect("inverse arithmetic overflow");
                }
                inv.set(i, j, -acc);
            }
        }
        SlpMatrix::new(inv, self.poset.clone()).expect("inverse keeps the support")
    }

    pub fn mul(&self, other: &SlpMatrix) -> Result<SlpMatrix, SlpError> {
        let prod = self
            .matrix
            .mul(&other.matrix)
            .map_err(|e| SlpError::ShapeMismatch(e.to_string()))?;
        SlpMatrix::new(prod, self.poset.clone())
    }
}

fn check_slp_form(matrix: &IntMatrix, poset: &Poset) -> Result<(), SlpError> {
    if !matrix.is_square() || matrix.rows() != poset.size() {
        return Err(SlpError::ShapeMismatch(format!(
            "{}x{} matrix against poset of size {}",
            matrix.rows(),
            matrix.cols(),
            poset.size()
        )));
    }
    for i in 0..matrix.rows() {
        if matrix.get(i, i) != 1 {
            return Err(SlpError::BadForm(format!("diagonal entry ({i},{i}) != 1")));
        }
        for j in 0..matrix.cols() {
            if i != j && matrix.get(i, j) != 0 && !poset.le(i, j) {
                return Err(SlpError::BadForm(format!(
                    "entry ({i},{j}) outside the poset support"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MoveKind {
    /// `row[dst] += mult * row[src]`, legal when `dst` is below `src`.
    Row,
    /// `col[dst] += mult * col[src]`, legal when `src` is below `dst`.
    Col,
}

/// A legal generator position (row pair or column pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MoveSlot {
    pub kind: MoveKind,
    pub src: usize,
    pub dst: usize,
}

/// A generator applied some integral number of times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub src: usize,
    pub dst: usize,
    pub mult: i128,
}

impl Move {
    fn slot(&self) -> MoveSlot {
        MoveSlot {
            kind: self.kind,
            src: self.src,
            dst: self.dst,
        }
    }
}

/// All legal move slots for matrices blocked by `poset`: add a later row to
/// an earlier one, or an earlier column to a later one.
pub fn elementary_moves(b: &IntMatrix, poset: &Poset) -> Vec<MoveSlot> {
    debug_assert_eq!(b.rows(), poset.size());
    let mut out = Vec::new();
    for (i, j) in poset.strict_pairs() {
        out.push(MoveSlot {
            kind: MoveKind::Row,
            src: j,
            dst: i,
        });
    }
    for (i, j) in poset.strict_pairs() {
        out.push(MoveSlot {
            kind: MoveKind::Col,
            src: i,
            dst: j,
        });
    }
    out
}

/// Applies a move in place.
pub fn apply_move(b: &mut IntMatrix, mv: &Move) {
    match mv.kind {
        MoveKind::Row => {
            for c in 0..b.cols() {
                let add = mv
                    .mult
                    .checked_mul(b.get(mv.src, c))
                    .expect("move arithmetic overflow");
                b.add_assign_at(mv.dst, c, add);
            }
        }
        MoveKind::Col => {
            for r in 0..b.rows() {
                let add = mv
                    .mult
                    .checked_mul(b.get(r, mv.src))
                    .expect("move arithmetic overflow");
                b.add_assign_at(r, mv.dst, add);
            }
        }
    }
}

/// The unimodular pair certifying `U * B1 * V = B2`, with the move log that
/// produced it.
#[derive(Debug, Clone)]
pub struct Witness {
    pub u: SlpMatrix,
    pub v: SlpMatrix,
    pub moves: Vec<Move>,
}

impl Witness {
    pub fn identity(poset: &Poset) -> Witness {
        Witness {
            u: SlpMatrix::identity(poset.clone()),
            v: SlpMatrix::identity(poset.clone()),
            moves: Vec::new(),
        }
    }

    /// Builds the factor pair from an ordered move log applied to `B1`:
    /// row moves multiply on the left (latest outermost), column moves on
    /// the right in application order.
    pub fn from_moves(moves: Vec<Move>, poset: &Poset) -> Result<Witness, SlpError> {
        let n = poset.size();
        let mut u = IntMatrix::identity(n);
        let mut v = IntMatrix::identity(n);
        for mv in &moves {
            match mv.kind {
                MoveKind::Row => {
                    if !poset.le(mv.dst, mv.src) {
                        return Err(SlpError::BadCase(format!(
                            "illegal row move {} -> {}",
                            mv.src, mv.dst
                        )));
                    }
                    for c in 0..n {
                        let add = mv
                            .mult
                            .checked_mul(u.get(mv.src, c))
                            .expect("witness arithmetic overflow");
                        u.add_assign_at(mv.dst, c, add);
                    }
                }
                MoveKind::Col => {
                    if !poset.le(mv.src, mv.dst) {
                        return Err(SlpError::BadCase(format!(
                            "illegal column move {} -> {}",
                            mv.src, mv.dst
                        )));
                    }
                    for r in 0..n {
                        let add = mv
                            .mult
                            .checked_mul(v.get(r, mv.src))
                            .expect("witness arithmetic overflow");
                        v.add_assign_at(r, mv.dst, add);
                    }
                }
            }
        }
        Ok(Witness {
            u: SlpMatrix::new(u, poset.clone())?,
            v: SlpMatrix::new(v, poset.clone())?,
            moves,
        })
    }

    /// Given witnesses `B1 -> C` and `B2 -> C`, produces one for `B1 -> B2`.
    pub fn through_common(first: &Witness, second: &Witness) -> Result<Witness, SlpError> {
        let u = second.u.inverse().mul(&first.u)?;
        let v = first.v.mul(&second.v.inverse())?;
        let mut moves = first.moves.clone();
        for mv in second.moves.iter().rev() {
            moves.push(Move {
                mult: -mv.mult,
                ..*mv
            });
        }
        Ok(Witness { u, v, moves })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "U": self.u.matrix().to_rows().iter().map(|r| r.iter().map(|e| *e as i64).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "V": self.v.matrix().to_rows().iter().map(|r| r.iter().map(|e| *e as i64).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "moves": self.moves.iter().map(|m| json!({
                "kind": match m.kind { MoveKind::Row => "row", MoveKind::Col => "col" },
                "src": m.src,
                "dst": m.dst,
                "mult": m.mult as i64,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Exact check `U * B1 * V = B2` plus the factor-form invariants. Returns
/// `Ok(false)` when a factor violates the form, errors on shape mismatch.
pub fn verify_witness(
    u: &IntMatrix,
    v: &IntMatrix,
    b1: &IntMatrix,
    b2: &IntMatrix,
    poset: &Poset,
) -> Result<bool, SlpError> {
    let n = poset.size();
    for (name, m) in [("U", u), ("V", v), ("B1", b1), ("B2", b2)] {
        if !m.is_square() || m.rows() != n {
            return Err(SlpError::ShapeMismatch(format!(
                "{name} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    if check_slp_form(u, poset).is_err() || check_slp_form(v, poset).is_err() {
        return Ok(false);
    }
    let prod = u
        .mul(b1)
        .and_then(|ub| ub.mul(v))
        .map_err(|e| SlpError::ShapeMismatch(e.to_string()))?;
    Ok(prod.flat() == b2.flat())
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Box<Witness>),
    Exhausted,
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::Exhausted => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Search-state cap; the search reports `Exhausted` when it runs out of
/// budget or space, never a negative verdict.
const MAX_STATES: usize = 60_000;

struct SearchSpace {
    n: usize,
    poset: Poset,
    masked: Vec<(usize, usize)>,
    modulus: i128,
    slots: Vec<MoveSlot>,
}

impl SearchSpace {
    fn canon(&self, m: &IntMatrix) -> Vec<i64> {
        let mut key = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let mut v = m.get(i, j);
                if self.modulus > 0 && self.masked.contains(&(i, j)) {
                    v = v.rem_euclid(self.modulus);
                }
                key.push(i64::try_from(v).expect("search entries stay within i64"));
            }
        }
        key
    }
}

/// Breadth-limited semidecision of poset-constrained equivalence between two
/// B-form matrices. `budget` bounds the total absolute multiplicity of the
/// searched move sequence; the final residue-repair multiplicities are
/// determined rather than searched and do not count against it. `Exhausted`
/// is inconclusive, never a non-equivalence verdict.
pub fn equivalent_bounded(
    b1: &IntMatrix,
    b2: &IntMatrix,
    poset: &Poset,
    budget: u64,
) -> Result<SearchOutcome, SlpError> {
    let n = poset.size();
    for (name, m) in [("B1", b1), ("B2", b2)] {
        if !m.is_square() || m.rows() != n {
            return Err(SlpError::ShapeMismatch(format!(
                "{name} is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
        for i in 0..n {
            if m.get(i, i) != 0 {
                return Err(SlpError::BadForm(format!(
                    "{name} must have a zero diagonal"
                )));
            }
        }
        if !m.respects_poset(poset) {
            return Err(SlpError::BadForm(format!(
                "{name} support does not respect the poset"
            )));
        }
    }
    let mask = b1.residue_mask.as_ref().or(b2.residue_mask.as_ref());
    let (masked, modulus) = match mask {
        Some(m) => (
            m.positions.iter().copied().collect::<Vec<_>>(),
            m.modulus as i128,
        ),
        None => (Vec::new(), 0),
    };
    let space = SearchSpace {
        n,
        poset: poset.clone(),
        masked,
        modulus,
        slots: elementary_moves(b1, poset),
    };
    let target_key = space.canon(b2);

    // BFS over quotient states; parent links reconstruct the move list.
    let mut states: Vec<IntMatrix> = vec![b1.clone()];
    let mut parents: Vec<Option<(usize, Move)>> = vec![None];
    let mut depth: Vec<u64> = vec![0];
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    seen.insert(space.canon(b1), 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);

    while let Some(id) = queue.pop_front() {
        if space.canon(&states[id]) == target_key {
            if let Some(witness) = finalize(&space, &states, &parents, id, b1, b2)? {
                return Ok(SearchOutcome::Found(Box::new(witness)));
            }
        }
        if depth[id] >= budget || states.len() >= MAX_STATES {
            continue;
        }
        for slot in &space.slots {
            for mult in [1i128, -1] {
                let mv = Move {
                    kind: slot.kind,
                    src: slot.src,
                    dst: slot.dst,
                    mult,
                };
                let mut next = states[id].clone();
                apply_move(&mut next, &mv);
                let key = space.canon(&next);
                if seen.contains_key(&key) {
                    continue;
                }
                let nid = states.len();
                seen.insert(key, nid);
                states.push(next);
                parents.push(Some((id, mv)));
                depth.push(depth[id] + 1);
                queue.push_back(nid);
                if states.len() >= MAX_STATES {
                    break;
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted)
}

/// Attempts to repair the residue-class difference between a reached state
/// and the target with column moves that only touch masked positions, then
/// assembles and verifies the witness.
fn finalize(
    space: &SearchSpace,
    states: &[IntMatrix],
    parents: &[Option<(usize, Move)>],
    id: usize,
    b1: &IntMatrix,
    b2: &IntMatrix,
) -> Result<Option<Witness>, SlpError> {
    let state = &states[id];
    let mut repair: Vec<Move> = Vec::new();
    for i in 0..space.n {
        for j in 0..space.n {
            let delta = b2.get(i, j) - state.get(i, j);
            if delta == 0 {
                continue;
            }
            if !space.masked.contains(&(i, j)) {
                return Ok(None);
            }
            // need a column whose only nonzero entry is in row i, dividing delta
            let mut fixed = false;
            for src in 0..space.n {
                if src == j || !space.poset.le(src, j) {
                    continue;
                }
                let pivot = state.get(i, src);
                if pivot == 0 || delta % pivot != 0 {
                    continue;
                }
                if (0..space.n).any(|row| row != i && state.get(row, src) != 0) {
                    continue;
                }
                repair.push(Move {
                    kind: MoveKind::Col,
                    src,
                    dst: j,
                    mult: delta / pivot,
                });
                fixed = true;
                break;
            }
            if !fixed {
                return Ok(None);
            }
        }
    }
    // reconstruct the searched prefix
    let mut prefix: Vec<Move> = Vec::new();
    let mut cur = id;
    while let Some((parent, mv)) = parents[cur] {
        prefix.push(mv);
        cur = parent;
    }
    prefix.reverse();
    // coalesce consecutive applications of the same slot
    let mut moves: Vec<Move> = Vec::new();
    for mv in prefix.into_iter().chain(repair.into_iter()) {
        match moves.last_mut() {
            Some(last) if last.slot() == mv.slot() => {
                last.mult += mv.mult;
                if last.mult == 0 {
                    moves.pop();
                }
            }
            _ => moves.push(mv),
        }
    }
    let witness = Witness::from_moves(moves, &space.poset)?;
    match verify_witness(witness.u.matrix(), witness.v.matrix(), b1, b2, &space.poset)? {
        true => Ok(Some(witness)),
        false => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::adjacency_dim7;

    #[test]
    fn poset_examples() {
        let p = poset_for(7, 0, 5).unwrap();
        assert!(p.is_linear());
        assert_eq!(p.size(), 4);

        let p = poset_for(7, 1, 2).unwrap();
        assert_eq!(p.size(), 5);
        assert!(p.le(0, 1) && p.le(0, 2));
        assert!(p.le(1, 3) && p.le(2, 3) && p.le(3, 4));
        assert!(!p.comparable(1, 2));
        assert!(p.le(0, 4));

        let p = poset_for(7, 2, 1).unwrap();
        assert!(p.is_linear());
        assert_eq!(p.size(), 4);

        let p = poset_for(7, 3, 3).unwrap();
        assert_eq!(p.size(), 6);
        assert!(p.le(2, 5) && !p.comparable(3, 4) && !p.comparable(3, 5));

        assert!(poset_for(4, 0, 1).is_err());
        assert!(poset_for(7, 4, 1).is_err());
    }

    #[test]
    fn move_slot_counts_on_a_chain() {
        let poset = Poset::chain(4);
        let b = IntMatrix::zero(4, 4);
        let slots = elementary_moves(&b, &poset);
        let rows = slots.iter().filter(|s| s.kind == MoveKind::Row).count();
        let cols = slots.iter().filter(|s| s.kind == MoveKind::Col).count();
        assert_eq!((rows, cols), (6, 6));
    }

    #[test]
    fn diamond_poset_excludes_incomparable_moves() {
        let poset = poset_for(7, 1, 2).unwrap();
        let b = IntMatrix::zero(5, 5);
        let slots = elementary_moves(&b, &poset);
        assert!(!slots
            .iter()
            .any(|s| (s.src, s.dst) == (1, 2) || (s.src, s.dst) == (2, 1)));
    }

    #[test]
    fn move_on_zero_row_is_identity() {
        let mut b = IntMatrix::from_rows(&[vec![0, 2], vec![0, 0]]);
        apply_move(
            &mut b,
            &Move {
                kind: MoveKind::Row,
                src: 1,
                dst: 0,
                mult: 1,
            },
        );
        assert_eq!(b.to_rows(), vec![vec![0, 2], vec![0, 0]]);
    }

    #[test]
    fn moves_are_invertible() {
        let poset = Poset::chain(3);
        let orig = IntMatrix::from_rows(&[vec![0, 3, 5], vec![0, 0, 7], vec![0, 0, 0]]);
        let slots = elementary_moves(&orig, &poset);
        for slot in slots {
            let mut b = orig.clone();
            let fwd = Move {
                kind: slot.kind,
                src: slot.src,
                dst: slot.dst,
                mult: 2,
            };
            let back = Move { mult: -2, ..fwd };
            apply_move(&mut b, &fwd);
            apply_move(&mut b, &back);
            assert_eq!(b.flat(), orig.flat());
        }
    }

    #[test]
    fn inverse_of_unipotent_factor() {
        let poset = Poset::chain(3);
        let m = SlpMatrix::new(
            IntMatrix::from_rows(&[vec![1, 4, -2], vec![0, 1, 9], vec![0, 0, 1]]),
            poset,
        )
        .unwrap();
        let inv = m.inverse();
        let prod = m.mul(&inv).unwrap();
        assert_eq!(prod.matrix().flat(), IntMatrix::identity(3).flat());
    }

    #[test]
    fn verify_identity_witness() {
        let poset = Poset::chain(2);
        let b = IntMatrix::from_rows(&[vec![0, 2], vec![0, 0]]);
        let id = IntMatrix::identity(2);
        assert_eq!(verify_witness(&id, &id, &b, &b, &poset), Ok(true));
    }

    #[test]
    fn verify_rejects_unsupported_entries() {
        let poset = poset_for(7, 1, 2).unwrap();
        let b = IntMatrix::zero(5, 5);
        let mut u = IntMatrix::identity(5);
        u.set(1, 2, 1); // incomparable pair
        assert_eq!(
            verify_witness(&u, &IntMatrix::identity(5), &b, &b, &poset),
            Ok(false)
        );
    }

    #[test]
    fn equivalent_on_equal_matrices_is_identity() {
        let poset = Poset::chain(4);
        let f = adjacency_dim7(3, 4, 1, &[1, 1, 1, 1]).unwrap();
        let b = f.matrix.minus_identity();
        match equivalent_bounded(&b, &b, &poset, 4).unwrap() {
            SearchOutcome::Found(w) => {
                assert!(w.moves.is_empty());
                assert_eq!(
                    verify_witness(w.u.matrix(), w.v.matrix(), &b, &b, &poset),
                    Ok(true)
                );
            }
            SearchOutcome::Exhausted => panic!("identity pair must be found"),
        }
    }

    #[test]
    fn coprime_r3_pairs() {
        let poset = Poset::chain(4);
        let b = |w: [u64; 4]| {
            adjacency_dim7(3, 3, 1, &w)
                .unwrap()
                .matrix
                .minus_identity()
        };
        // differing invariant: search must not find a witness
        let b1 = b([1, 1, 1, 1]);
        let b2 = b([1, 1, 2, 1]);
        assert!(matches!(
            equivalent_bounded(&b1, &b2, &poset, 6).unwrap(),
            SearchOutcome::Exhausted
        ));
        // congruent weights: matrices coincide
        let b3 = b([1, 1, 4, 1]);
        match equivalent_bounded(&b1, &b3, &poset, 6).unwrap() {
            SearchOutcome::Found(w) => {
                assert_eq!(
                    verify_witness(w.u.matrix(), w.v.matrix(), &b1, &b3, &poset),
                    Ok(true)
                );
            }
            SearchOutcome::Exhausted => panic!("equal matrices must be found"),
        }
    }

    #[test]
    fn search_never_touches_the_first_superdiagonal_entry() {
        // the entry over the diagonal in the first row is fixed by every
        // legal move sequence on these shapes
        let f1 = adjacency_dim7(3, 6, 3, &[1, 1, 1, 3]).unwrap();
        let f2 = adjacency_dim7(3, 6, 3, &[1, 7, 1, 3]).unwrap();
        let poset = f1.matrix.block_poset.clone().unwrap();
        let b1 = f1.matrix.minus_identity();
        let b2 = f2.matrix.minus_identity();
        if let SearchOutcome::Found(w) = equivalent_bounded(&b1, &b2, &poset, 24).unwrap() {
            let mut cur = b1.clone();
            for mv in &w.moves {
                apply_move(&mut cur, mv);
                assert_eq!(cur.get(0, 1), b1.get(0, 1));
            }
        } else {
            panic!("congruent weights should be equivalent");
        }
    }

    #[test]
    fn constructive_witness_for_first_level_pairs() {
        // matched gcd-on-first-level instances admit a witness built from
        // "add row 1 to row 0" plus column repairs
        let r = 6u64;
        let k = 2u64;
        let f1 = adjacency_dim7(0, r, k, &[2, 1, 1, 1]).unwrap();
        let f2 = adjacency_dim7(0, r, k, &[2, 7, 1, 1]).unwrap();
        let poset = Poset::chain(4);
        let b1 = f1.matrix.minus_identity();
        let b2 = f2.matrix.minus_identity();
        let mut found = false;
        for j_mult in -2i128..=2 {
            let delta02 = b2.get(0, 2) - (b1.get(0, 2) + j_mult * b1.get(1, 2));
            let delta03 = b2.get(0, 3) - (b1.get(0, 3) + j_mult * b1.get(1, 3));
            if delta02 % b1.get(0, 1) != 0 || delta03 % b1.get(0, 1) != 0 {
                continue;
            }
            let mut u = IntMatrix::identity(4);
            u.set(0, 1, j_mult);
            let mut v = IntMatrix::identity(4);
            v.set(1, 2, delta02 / b1.get(0, 1));
            v.set(1, 3, delta03 / b1.get(0, 1));
            if verify_witness(&u, &v, &b1, &b2, &poset) == Ok(true) {
                found = true;
                break;
            }
        }
        assert!(found, "no proof-shaped witness located");
    }
}
