"""Small builders shared by the module tests."""
from mdsconv.convolution import SplitPlan, split_and_lift
from mdsconv.cyclic import bch_code, bch_parity_matrix
from mdsconv.galois import make_field


def field_of(q: int):
    for p in (2, 3, 5, 7):
        t, x = 0, q
        while x % p == 0:
            x //= p
            t += 1
        if x == 1 and t:
            return make_field(p, t)
    raise ValueError(q)


def split_code(F, n, reps, split):
    H = bch_parity_matrix(bch_code(n, F, reps)).data
    return split_and_lift(SplitPlan(F, H, tuple(split)))


def random_small_codes(count: int = 12, seed: int = 2024):
    """Deterministic random reduced-basic codes with n <= 6, q <= 4, gamma <= 3.

    Shapes are chosen so that exhaustive input enumeration up to degree gamma + 4
    stays below about 3 * 10^5 messages.
    """
    import numpy as np

    from mdsconv.convolution import ConvCode
    from mdsconv.linalg import PolyMat, full_row_rank, is_row_reduced, minor_gcd_is_unit

    shapes = [(2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 2, 6), (3, 1, 3), (3, 1, 4), (4, 1, 4), (4, 1, 6),
              (2, 1, 5), (3, 1, 6), (4, 1, 3), (2, 2, 5)]
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        q, k, n = shapes[len(out) % len(shapes)]
        F = field_of(q)
        limit = 3 * 10**5
        degs = [int(rng.integers(0, 4)) for _ in range(k)]
        gamma = sum(degs)
        if gamma == 0 or gamma > 3 or q ** (k * (gamma + 5)) > limit:
            continue
        L = max(degs) + 1
        C = rng.integers(0, q, size=(L, k, n))
        for j, d in enumerate(degs):
            C[d + 1:, j] = 0
            while not C[d, j].any():
                C[d, j] = rng.integers(0, q, size=n)
        G = PolyMat(F, C)
        if G.degree != gamma or not full_row_rank(G):
            continue
        if not (is_row_reduced(G) and minor_gcd_is_unit(G)):
            continue
        out.append(ConvCode(F, G))
    return out
