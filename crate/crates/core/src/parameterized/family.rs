use rayon::prelude::*;

use crate::equivalence::RELATED;
use crate::lts::SuccTable;

const PAR_THRESHOLD: usize = 1 << 12;

/// Removal rounds of `(f, p, q)` triples under the family refinement
/// operator: environment state `f`, left process state `p`, right `q`.
#[derive(Clone, Debug)]
pub(crate) struct FamilyRanks {
    pub ne: usize,
    pub nl: usize,
    pub nr: usize,
    pub r: Vec<u32>,
}

impl FamilyRanks {
    #[inline]
    pub fn index(&self, f: usize, p: usize, q: usize) -> usize {
        (f * self.nl + p) * self.nr + q
    }

    #[inline]
    pub fn get(&self, f: usize, p: usize, q: usize) -> u32 {
        self.r[self.index(f, p, q)]
    }
}

/// Greatest fixpoint of the parameterized (bi)simulation operator: a triple
/// `(f, p, q)` is removed when some `f -a-> f'` and some `a`-move of `p`
/// (or, with `back`, of `q`) has no answer landing in component `f'`.
pub(crate) fn family_ranks(env: &SuccTable, left: &SuccTable, right: &SuccTable, back: bool) -> FamilyRanks {
    let (ne, nl, nr) = (env.num_states(), left.num_states(), right.num_states());
    let mut r = vec![RELATED; ne * nl * nr];
    let mut round = 0u32;
    loop {
        round += 1;
        let cur = &r;
        let alive = |f: u32, p: u32, q: u32| cur[(f as usize * nl + p as usize) * nr + q as usize] == RELATED;
        let ok = |f: usize, p: usize, q: usize| {
            for &a in env.enabled(f) {
                let a = a as usize;
                let (fs, ps, qs) = (env.get(f, a), left.get(p, a), right.get(q, a));
                for &f2 in fs {
                    for &p2 in ps {
                        if !qs.iter().any(|&q2| alive(f2, p2, q2)) {
                            return false;
                        }
                    }
                    if back {
                        for &q2 in qs {
                            if !ps.iter().any(|&p2| alive(f2, p2, q2)) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        };
        let row = |fp: usize| -> Vec<usize> {
            let (f, p) = (fp / nl.max(1), fp % nl.max(1));
            (0..nr).map(|q| fp * nr + q).filter(|&i| cur[i] == RELATED && !ok(f, p, i % nr)).collect()
        };
        let removed: Vec<usize> = if ne * nl * nr < PAR_THRESHOLD {
            (0..ne * nl).flat_map(row).collect()
        } else {
            (0..ne * nl).into_par_iter().flat_map_iter(row).collect()
        };
        if removed.is_empty() {
            break;
        }
        for i in removed {
            r[i] = round;
        }
    }
    FamilyRanks { ne, nl, nr, r }
}
