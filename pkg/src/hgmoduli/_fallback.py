"""Pure-Python versions of the hot integer kernels.

Same call signatures as the compiled ``_kernels`` extension; used when the
extension is not built, and whenever the compiled path would overflow
64-bit integers.
"""


def convolve(a, b):
    """Product of two dense integer coefficient lists (low degree first)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def exact_div(a, b):
    """Quotient of ``a`` by ``b`` over the integers, or None.

    None means some long-division step was not integral or the remainder is
    nonzero.  ``b`` must have a nonzero leading coefficient.
    """
    n, m = len(a), len(b)
    if n == 0:
        return []
    if n < m:
        return None
    rem = list(a)
    lead = b[-1]
    q = [0] * (n - m + 1)
    for i in range(n - m, -1, -1):
        c = rem[i + m - 1]
        if c:
            t, r = divmod(c, lead)
            if r:
                return None
            q[i] = t
            for j in range(m):
                rem[i + j] -= t * b[j]
    if any(rem[: m - 1]):
        return None
    return q


def strom_counts(r, k, delta):
    """Cell counts m_i of Stromme's torus decomposition, i = 0..k*delta+r*(k-r).

    Dynamic programme over the s = k - r column blocks.  State after block j
    is (b_j, c_j); block j contributes L^(a_j + c_j*(1 + b_j - b_{j-1})) with
    b_{j-1} <= a_j <= b_j and c_{j-1} <= c_j.  The sum over a_j is a
    geometric series, the sum over c_{j-1} a prefix sum.
    """
    s = k - r
    top = k * delta + r * s
    size = top + 1
    # dp[b][c] -> count vector
    dp = [[None] * (r + 1) for _ in range(delta + 1)]
    dp[0][0] = [1] + [0] * top
    for j in range(1, s + 1):
        # prefix[b'][c] = sum_{c' <= c} dp[b'][c']
        prefix = []
        for bp in range(delta + 1):
            row = []
            acc = None
            for c in range(r + 1):
                cur = dp[bp][c]
                if cur is not None:
                    acc = list(cur) if acc is None else [x + y for x, y in zip(acc, cur)]
                row.append(acc)
            prefix.append(row)
        new = [[None] * (r + 1) for _ in range(delta + 1)]
        b_values = [delta] if j == s else range(delta + 1)
        for b in b_values:
            for c in range(r + 1):
                out = None
                for bp in range(b + 1):
                    src = prefix[bp][c]
                    if src is None:
                        continue
                    shift0 = c * (1 + b - bp)
                    if out is None:
                        out = [0] * size
                    for a in range(bp, b + 1):
                        sh = shift0 + a
                        for i in range(size - sh):
                            v = src[i]
                            if v:
                                out[i + sh] += v
                new[b][c] = out
        dp = new
    total = [0] * size
    for c in range(r + 1):
        cur = dp[delta][c]
        if cur is not None:
            total = [x + y for x, y in zip(total, cur)]
    return total
