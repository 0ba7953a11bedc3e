use std::collections::HashMap;

use super::game::{Ranks, RELATED};
use crate::lts::SuccTable;
use crate::modal::Formula;

/// Builds distinguishing formulas from recorded removal rounds.
///
/// For a pair removed in round k every candidate has modal depth exactly k;
/// among candidates the smallest [`Formula::witness_key`] wins.
pub(crate) struct Distinguisher<'a> {
    pub left: &'a SuccTable,
    pub right: &'a SuccTable,
    pub ranks: &'a Ranks,
    pub names: &'a [String],
    /// false: only positive formulas (simulation ranks)
    pub back: bool,
    memo: HashMap<(u32, u32, bool), Formula>,
}

impl<'a> Distinguisher<'a> {
    pub fn new(left: &'a SuccTable, right: &'a SuccTable, ranks: &'a Ranks, names: &'a [String], back: bool) -> Self {
        Distinguisher { left, right, ranks, names, back, memo: HashMap::new() }
    }

    fn consider(best: &mut Option<Formula>, cand: Formula) {
        let better = match best {
            None => true,
            Some(b) => cand.witness_key() < b.witness_key(),
        };
        if better {
            *best = Some(cand);
        }
    }

    /// With `left_holds`, a formula satisfied by left state `s` and not by
    /// right state `t`; otherwise the other way round.
    pub fn formula(&mut self, s: u32, t: u32, left_holds: bool) -> Formula {
        if let Some(f) = self.memo.get(&(s, t, left_holds)) {
            return f.clone();
        }
        let k = self.ranks.get(s as usize, t as usize);
        assert!(k != RELATED, "pair is related");
        let (left, right, ranks) = (self.left, self.right, self.ranks);
        let below = |s2: u32, t2: u32| ranks.get(s2 as usize, t2 as usize) < k;
        let mut best = None;

        // a move of the left state that no right move answers
        let left_moves = |this: &mut Self, best: &mut Option<Formula>, negate: bool| {
            for &a in left.enabled(s as usize) {
                let ts = right.get(t as usize, a as usize);
                for &s2 in left.get(s as usize, a as usize) {
                    if ts.iter().all(|&t2| below(s2, t2)) {
                        let body = Formula::and(ts.iter().map(|&t2| this.formula(s2, t2, true)));
                        let f = Formula::diamond(this.names[a as usize].clone(), body);
                        Self::consider(best, if negate { Formula::neg(f) } else { f });
                    }
                }
            }
        };
        let right_moves = |this: &mut Self, best: &mut Option<Formula>, negate: bool| {
            for &a in right.enabled(t as usize) {
                let ss = left.get(s as usize, a as usize);
                for &t2 in right.get(t as usize, a as usize) {
                    if ss.iter().all(|&s2| below(s2, t2)) {
                        let body = Formula::and(ss.iter().map(|&s2| this.formula(s2, t2, false)));
                        let f = Formula::diamond(this.names[a as usize].clone(), body);
                        Self::consider(best, if negate { Formula::neg(f) } else { f });
                    }
                }
            }
        };

        if left_holds {
            left_moves(self, &mut best, false);
            if self.back {
                right_moves(self, &mut best, true);
            }
        } else {
            right_moves(self, &mut best, false);
            left_moves(self, &mut best, true);
        }
        let f = best.expect("a removed pair has a failing move");
        self.memo.insert((s, t, left_holds), f.clone());
        f
    }
}
