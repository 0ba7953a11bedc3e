use crate::equivalence::dedup_by_bisimilarity;
use crate::error::Result;
use crate::interaction::join_lts;
use crate::lts::Process;

/// Adds `x & y` for every unordered pair of members (including `x & x`),
/// `rounds` times, keeping one representative per bisimilarity class.
/// Existing members keep their positions; new ones follow in pair order.
pub fn close_under_join(universe: Vec<Process>, rounds: usize) -> Result<Vec<Process>> {
    let mut current = dedup_by_bisimilarity(universe);
    for _ in 0..rounds {
        let n = current.len();
        let mut next = current.clone();
        for i in 0..n {
            for j in i..n {
                next.push(join_lts(&current[i], &current[j])?.into_process());
            }
        }
        let next = dedup_by_bisimilarity(next);
        if next.len() == n {
            break;
        }
        current = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::compile_source;

    fn names(v: &[Process]) -> Vec<String> {
        v.iter().map(|p| p.name().to_string()).collect()
    }

    #[test]
    fn closure_examples() {
        let p = |s: &str| compile_source(s).unwrap();
        assert_eq!(names(&close_under_join(vec![p("0")], 1).unwrap()), vec!["0"]);
        let base = vec![p("a.b"), p("a")];
        assert_eq!(names(&close_under_join(base.clone(), 0).unwrap()), vec!["a.b", "a"]);
        // a.b & a ~ a, a.b & a.b ~ a.b, a & a ~ a
        assert_eq!(close_under_join(base, 1).unwrap().len(), 2);
        let grown = close_under_join(vec![p("a.b + a.c"), p("a.b")], 1).unwrap();
        // the self-join gains a dead a-branch
        assert_eq!(names(&grown), vec!["a.b + a.c", "a.b", "(a.b + a.c) & (a.b + a.c)", "(a.b + a.c) & a.b"]);
        let grown = close_under_join(vec![p("a.(b + c)"), p("a.b + a.c")], 1).unwrap();
        assert_eq!(grown.len(), 3);
    }
}
