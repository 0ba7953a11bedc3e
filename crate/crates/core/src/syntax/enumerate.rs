use super::ProcessTerm;

/// `1 + number of action prefixes`. Nil has size 1, `a.0` size 2, `a.b + a` size 4.
pub fn term_size(t: &ProcessTerm) -> usize {
    fn prefixes(t: &ProcessTerm) -> usize {
        match t {
            ProcessTerm::Nil | ProcessTerm::Ref(_) => 0,
            ProcessTerm::Prefix(_, b) => 1 + prefixes(b),
            ProcessTerm::Sum(l, r) | ProcessTerm::Join(l, r) => prefixes(l) + prefixes(r),
        }
    }
    1 + prefixes(t)
}

/// Every term over Nil, prefix and sum with `term_size <= max_size`, one per
/// class modulo associativity and commutativity of `+` (and without `0`
/// summands). Sums are right-nested with summands in ascending canonical
/// order. The output is sorted by (size, structural order).
pub fn enumerate_terms<S: AsRef<str>>(alphabet: &[S], max_size: usize) -> Vec<ProcessTerm> {
    let mut actions: Vec<&str> = alphabet.iter().map(AsRef::as_ref).collect();
    actions.sort_unstable();
    actions.dedup();

    // by_size[n] holds the terms of size exactly n
    let mut by_size: Vec<Vec<ProcessTerm>> = vec![Vec::new(), vec![ProcessTerm::Nil]];
    for n in 2..=max_size {
        let mut out = Vec::new();
        for a in &actions {
            for body in &by_size[n - 1] {
                out.push(ProcessTerm::prefix(*a, body.clone()));
            }
        }
        // summands: prefix-headed terms, keyed by (size, index) so a
        // nondecreasing key sequence picks each multiset once
        let heads: Vec<(usize, usize, &ProcessTerm)> = (2..n)
            .flat_map(|k| {
                by_size[k]
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| matches!(t, ProcessTerm::Prefix(..)))
                    .map(move |(i, t)| (k, i, t))
            })
            .collect();
        let mut acc = Vec::new();
        multisets(&heads, 0, n - 1, &mut acc, &mut out);
        out.sort();
        by_size.push(out);
    }
    by_size.into_iter().take(max_size + 1).flatten().collect()
}

// `remaining` counts prefixes still to distribute; a head of size k uses k - 1.
fn multisets<'a>(
    heads: &[(usize, usize, &'a ProcessTerm)],
    from: usize,
    remaining: usize,
    acc: &mut Vec<&'a ProcessTerm>,
    out: &mut Vec<ProcessTerm>,
) {
    if remaining == 0 {
        if acc.len() >= 2 {
            out.push(nest(acc));
        }
        return;
    }
    for (i, &(k, _, t)) in heads.iter().enumerate().skip(from) {
        if k - 1 > remaining {
            break;
        }
        acc.push(t);
        multisets(heads, i, remaining - (k - 1), acc, out);
        acc.pop();
    }
}

fn nest(summands: &[&ProcessTerm]) -> ProcessTerm {
    let mut sorted: Vec<&ProcessTerm> = summands.to_vec();
    sorted.sort_by(|a, b| (term_size(a), *a).cmp(&(term_size(b), *b)));
    let mut it = sorted.into_iter().rev();
    let mut t = it.next().expect("at least two summands").clone();
    for s in it {
        t = ProcessTerm::sum(s.clone(), t);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    // counts produced by tests/oracles/count_terms.py
    #[test]
    fn counts_match_oracle() {
        assert_eq!(enumerate_terms(&["a"], 1).len(), 1);
        assert_eq!(enumerate_terms(&["a"], 2).len(), 2);
        assert_eq!(enumerate_terms(&["a"], 3).len(), 4);
        assert_eq!(enumerate_terms(&["a", "b"], 3).len(), 10);
        assert_eq!(enumerate_terms(&["a", "b"], 4).len(), 36);
        assert_eq!(enumerate_terms(&["a", "b"], 5).len(), 143);
    }

    #[test]
    fn small_cases() {
        assert_eq!(enumerate_terms(&["a"], 1), vec![ProcessTerm::Nil]);
        assert_eq!(enumerate_terms(&["a"], 2), vec![ProcessTerm::Nil, ProcessTerm::action("a")]);
    }

    #[test]
    fn fig1_terms_occur_once() {
        let all = enumerate_terms(&["a", "b"], 4);
        let text: Vec<String> = all.iter().map(|t| t.to_string()).collect();
        assert_eq!(text.iter().filter(|s| *s == "a.b").count(), 1);
        assert_eq!(text.iter().filter(|s| *s == "a + a.b" || *s == "a.b + a").count(), 1);
        let unique: HashSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        assert!(all.iter().all(|t| term_size(t) <= 4));
        assert!(all.windows(2).all(|w| (term_size(&w[0]), &w[0]) < (term_size(&w[1]), &w[1])));
    }

    #[test]
    fn stable_across_runs() {
        assert_eq!(enumerate_terms(&["b", "a"], 4), enumerate_terms(&["a", "b"], 4));
    }
}
