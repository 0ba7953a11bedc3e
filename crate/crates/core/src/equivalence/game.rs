use rayon::prelude::*;

use crate::bitset::BitMatrix;
use crate::lts::SuccTable;

pub(crate) const RELATED: u32 = u32::MAX;

// below this many pairs a round runs on the calling thread
const PAR_THRESHOLD: usize = 1 << 12;

/// For every pair of a left and a right state, the refinement round in which
/// the pair was removed, or [`RELATED`] if it survived. A pair removed in
/// round k is related by the approximant of depth k - 1 but not of depth k.
#[derive(Clone, Debug)]
pub(crate) struct Ranks {
    pub nl: usize,
    pub nr: usize,
    pub r: Vec<u32>,
}

impl Ranks {
    #[inline]
    pub fn get(&self, s: usize, t: usize) -> u32 {
        self.r[s * self.nr + t]
    }

    pub fn to_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::new(self.nl, self.nr);
        for s in 0..self.nl {
            for t in 0..self.nr {
                if self.get(s, t) == RELATED {
                    m.set(s, t, true);
                }
            }
        }
        m
    }
}

/// Greatest fixpoint of the simulation (`back = false`) or bisimulation
/// (`back = true`) refinement operator, computed in Jacobi rounds so that the
/// removal round of each pair is recorded.
pub(crate) fn pair_ranks(left: &SuccTable, right: &SuccTable, back: bool) -> Ranks {
    let (nl, nr) = (left.num_states(), right.num_states());
    let mut r = vec![RELATED; nl * nr];
    let mut round = 0u32;
    loop {
        round += 1;
        let cur = &r;
        let alive = |s2: u32, t2: u32| cur[s2 as usize * nr + t2 as usize] == RELATED;
        let ok = |s: usize, t: usize| {
            for &a in left.enabled(s) {
                let ts = right.get(t, a as usize);
                if ts.is_empty() {
                    return false;
                }
                for &s2 in left.get(s, a as usize) {
                    if !ts.iter().any(|&t2| alive(s2, t2)) {
                        return false;
                    }
                }
            }
            if back {
                for &a in right.enabled(t) {
                    let ss = left.get(s, a as usize);
                    if ss.is_empty() {
                        return false;
                    }
                    for &t2 in right.get(t, a as usize) {
                        if !ss.iter().any(|&s2| alive(s2, t2)) {
                            return false;
                        }
                    }
                }
            }
            true
        };
        let row = |s: usize| -> Vec<usize> {
            (0..nr).filter(|&t| cur[s * nr + t] == RELATED && !ok(s, t)).map(|t| s * nr + t).collect()
        };
        let removed: Vec<usize> = if nl * nr < PAR_THRESHOLD {
            (0..nl).flat_map(row).collect()
        } else {
            (0..nl).into_par_iter().flat_map_iter(row).collect()
        };
        if removed.is_empty() {
            break;
        }
        for i in removed {
            r[i] = round;
        }
    }
    Ranks { nl, nr, r }
}
