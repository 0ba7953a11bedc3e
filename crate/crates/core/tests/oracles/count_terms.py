# Independent oracle: counts canonical process terms and canonical positive
# formulas by brute-force tree generation (no shared code with the crate).
import itertools, sys
from functools import lru_cache

def terms(alphabet, max_size):
    # size = 1 + number of prefixes; sums have >= 2 non-nil summands,
    # represented as sorted tuples (multisets).
    @lru_cache(None)
    def exact(n):
        # canonical terms with exactly n-1 prefixes
        out = set()
        if n == 1:
            out.add(('0',))
            return frozenset(out)
        # prefix
        for a in alphabet:
            for t in exact(n - 1):
                out.add(('.', a, t))
        # sums: multiset of >= 2 prefix-headed summands whose prefix counts sum to n-1
        heads = {}
        for k in range(2, n):
            heads[k - 1] = [t for t in exact(k) if t[0] == '.']
        def parts(remaining, min_key, acc):
            if remaining == 0:
                if len(acc) >= 2:
                    out.add(('+',) + tuple(sorted(acc)))
                return
            for k in range(1, remaining + 1):
                for t in heads.get(k, []):
                    key = (k, t)
                    if key < min_key:
                        continue
                    parts(remaining - k, key, acc + [t])
        parts(n - 1, (0, ()), [])
        return frozenset(out)
    allt = set()
    for n in range(1, max_size + 1):
        allt |= exact(n)
    return allt

def positives(alphabet, depth, width):
    @lru_cache(None)
    def upto(d):
        if d == 0:
            return frozenset([('T',)])
        inner = upto(d - 1)
        diamonds = [('<>', a, f) for a in alphabet for f in inner]
        out = {('T',)}
        for k in range(1, width + 1):
            for combo in itertools.combinations(sorted(diamonds), k):
                out.add(combo[0] if k == 1 else ('&',) + combo)
        return frozenset(out)
    return upto(depth)

if __name__ == '__main__':
    for (al, n) in [(('a',), 1), (('a',), 2), (('a',), 3), (('a', 'b'), 3), (('a', 'b'), 4), (('a', 'b'), 5)]:
        print('terms', ''.join(al), n, len(terms(al, n)))
    for (al, d, w) in [(('a',), 1, 1), (('a', 'b'), 1, 2), (('a', 'b'), 2, 2), (('a', 'b'), 3, 2)]:
        print('positive', ''.join(al), d, w, len(positives(al, d, w)))
