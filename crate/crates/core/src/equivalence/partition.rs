use std::collections::VecDeque;

/// Coarsest partition of `0..out.len()` that is stable under every action:
/// the bisimilarity classes. `out[s]` lists `(action, target)` pairs.
///
/// Splitter-based refinement: every block is used as a splitter when it is
/// created, and a block split by a splitter re-enters the queue as both
/// halves. Block ids are renumbered by first member.
pub(crate) fn coarsest_partition(out: &[Vec<(u32, u32)>]) -> Vec<u32> {
    let n = out.len();
    if n == 0 {
        return Vec::new();
    }
    let mut pred: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    for (s, succ) in out.iter().enumerate() {
        for &(a, t) in succ {
            pred[t as usize].push((a, s as u32));
        }
    }
    for p in &mut pred {
        p.sort_unstable();
        p.dedup();
    }

    let mut block = vec![0u32; n];
    let mut blocks: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
    let mut queued = vec![true];
    let mut queue = VecDeque::from([0u32]);
    let mut mark = vec![0u32; n];
    let mut stamp = 0u32;

    while let Some(b) = queue.pop_front() {
        queued[b as usize] = false;
        // predecessors of the splitter grouped by action
        let mut by_action: Vec<(u32, u32)> =
            blocks[b as usize].iter().flat_map(|&t| pred[t as usize].iter().copied()).collect();
        by_action.sort_unstable();
        by_action.dedup();
        for group in by_action.chunk_by(|x, y| x.0 == y.0) {
            stamp += 1;
            let mut touched = Vec::new();
            for &(_, s) in group {
                mark[s as usize] = stamp;
                touched.push(block[s as usize]);
            }
            touched.sort_unstable();
            touched.dedup();
            for x in touched {
                let members = &blocks[x as usize];
                let hit = members.iter().filter(|&&s| mark[s as usize] == stamp).count();
                if hit == members.len() {
                    continue;
                }
                let (inside, outside): (Vec<u32>, Vec<u32>) = members.iter().partition(|&&s| mark[s as usize] == stamp);
                let y = blocks.len() as u32;
                for &s in &inside {
                    block[s as usize] = y;
                }
                blocks[x as usize] = outside;
                blocks.push(inside);
                queued.push(true);
                queue.push_back(y);
                if !queued[x as usize] {
                    queued[x as usize] = true;
                    queue.push_back(x);
                }
            }
        }
    }

    let mut renum = vec![u32::MAX; blocks.len()];
    let mut next = 0;
    block
        .iter()
        .map(|&b| {
            if renum[b as usize] == u32::MAX {
                renum[b as usize] = next;
                next += 1;
            }
            renum[b as usize]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_fig1_processes() {
        // 0: a.b  1: b  2: 0  3: a.b + a
        let out = vec![vec![(0, 1)], vec![(1, 2)], vec![], vec![(0, 1), (0, 2)]];
        let p = coarsest_partition(&out);
        assert_eq!(p, vec![0, 1, 2, 3]);
    }

    #[test]
    fn merges_unfolded_loops() {
        // 0 -a-> 0 versus 1 -a-> 2 -a-> 1
        let out = vec![vec![(0, 0)], vec![(0, 2)], vec![(0, 1)]];
        assert_eq!(coarsest_partition(&out), vec![0, 0, 0]);
    }
}
