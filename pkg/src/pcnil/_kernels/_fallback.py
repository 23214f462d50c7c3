"""Pure-Python trace-monoid kernels.

Monomials are tuples of vertex ranks. ``masks[i]`` has bit ``j`` set iff
letters ``i`` and ``j`` commute; bit ``i`` of ``masks[i]`` is never set.
"""


def normalize(word, masks):
    """Lexicographically least word in the commutation class of ``word``."""
    rest = list(word)
    out = []
    while rest:
        seen = 0
        best = best_pos = -1
        for pos, x in enumerate(rest):
            # x can move to the front iff it commutes with every earlier letter
            if not seen & ~masks[x] and (best < 0 or x < best):
                best, best_pos = x, pos
            seen |= 1 << x
        out.append(best)
        del rest[best_pos]
    return tuple(out)


def series_mul(left, right, bound, masks, cache):
    """Product of two ``{monomial: int}`` maps, truncated above ``bound``.

    ``cache`` maps raw concatenations to their normal forms and is shared
    across calls for one graph.
    """
    by_degree = {}
    for v, b in right.items():
        by_degree.setdefault(len(v), []).append((v, b))
    degrees = sorted(by_degree)
    out = {}
    get = out.get
    for u, a in left.items():
        room = bound - len(u)
        for d in degrees:
            if d > room:
                break
            for v, b in by_degree[d]:
                key = u + v
                w = cache.get(key)
                if w is None:
                    w = cache[key] = normalize(key, masks)
                out[w] = get(w, 0) + a * b
    return {w: c for w, c in out.items() if c}


def expand_word(syllables, right, degree, n, bound, size):
    """Dense expansion of a word under ``x -> 1 + X``.

    Monomials are integer ids; ``right[i * n + x]`` is the id of the normal
    form of monomial ``i`` followed by letter ``x`` (or -1 past ``bound``), and
    ``degree[i]`` its degree. ``syllables`` holds ``(x, coeffs)`` pairs where
    ``coeffs[j]`` is the binomial coefficient of ``X**j`` in ``(1 + X)**e``.
    Returns the coefficient list indexed by id; id 0 is the empty monomial.
    """
    s = [0] * size
    s[0] = 1
    # ids are numbered by nondecreasing degree; top-degree ids never spread
    limit = sum(1 for d in degree if d < bound)
    order = range(limit - 1, -1, -1)
    for x, coeffs in syllables:
        # descending ids: every target has higher degree, so is already read
        for i in order:
            a = s[i]
            if not a:
                continue
            v = i
            for j in range(1, bound - degree[i] + 1):
                v = right[v * n + x]
                s[v] += coeffs[j] * a
    return s
