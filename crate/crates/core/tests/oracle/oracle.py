"""Brute-force reference values for tests/oracles.rs.

Plain double-precision arithmetic on the real line with the standard
induced fuzzy metric m(a, b, t) = t / (t + |a - b|). Run with python3; the
printed values are frozen in the Rust tests.
"""

from fractions import Fraction


def m(a, b, t):
    return t / (t + abs(a - b))


def lattice(t_max, per_decade=4, t_min=1e-2):
    import math
    decades = math.log10(t_max / t_min)
    n = int(math.floor(decades * per_decade + 1e-9)) + 1
    vals = [10 ** (math.log10(t_min) + i / per_decade) for i in range(n)]
    if vals[-1] < t_max * (1 - 1e-9):
        vals.append(t_max)
    return vals


def pair_k_hat(T, S, xs, grid, exclude_diagonal=True):
    """max over ordered pairs and t of min{...} / m(STx, STx')."""
    best, witness = 0.0, None
    for x in xs:
        for x2 in xs:
            if exclude_diagonal and abs(x - x2) <= 1e-9:
                continue
            for t in grid:
                stx, stx2 = S(T(x)), S(T(x2))
                lhs = m(stx, stx2, t)
                rhs = min(m(x, x2, t), m(x, stx, t), m(x2, stx2, t), m(T(x), T(x2), t))
                r = rhs / lhs
                if r > best:
                    best, witness = r, (x, x2, t)
    return best, witness


def quad_terms(A, B, S, T, x, x2, y, y2, t):
    """(f, g, h, mu(SAx, TBx'), nu(BSy, ATy')) for the two-space quadruple."""
    f = min(m(x, x2, t) * m(A(x), B(x2), t),
            m(x, x2, t) * m(S(y), T(y2), t),
            m(x, T(y2), t) * m(A(x), A(T(y2)), t),
            m(x2, S(y), t) * m(B(x2), B(S(y)), t))
    g = min(m(y, y2, t) * m(S(y), T(y2), t),
            m(y, y2, t) * m(A(x), B(x2), t),
            m(y, B(x2), t) * m(S(y), T(B(x2)), t),
            m(y2, A(x), t) * m(T(y2), S(A(x)), t))
    h = min(m(A(x), B(x2), t), m(S(A(x)), T(B(x2)), t),
            m(S(y), T(y2), t), m(B(S(y)), A(T(y2)), t))
    return f, g, h, m(S(A(x)), T(B(x2)), t), m(B(S(y)), A(T(y2)), t)


def self_quad_terms(A, B, S, T, x, y, t):
    """(f, g, h, mu(SAx, TBy), mu(BSx, ATy)) when all four maps act on one space."""
    f = min(m(S(x), T(y), t) * m(A(x), B(S(x)), t),
            m(S(x), T(B(y)), t) * m(x, S(x), t),
            m(x, y, t) * m(S(A(x)), T(y), t),
            m(x, T(y), t) * m(x, A(T(y)), t))
    g = min(m(x, S(x), t) * m(x, y, t),
            m(y, T(B(y)), t) * m(y, A(x), t),
            m(S(A(x)), T(y), t) * m(A(x), B(y), t),
            m(A(x), A(T(y)), t) * m(S(A(x)), S(x), t))
    h = min(m(A(x), B(S(x)), t), m(x, S(A(x)), t), m(S(x), T(B(y)), t), m(B(y), A(T(y)), t))
    return f, g, h, m(S(A(x)), T(B(y)), t), m(B(S(x)), A(T(y)), t)


def admitted_max(tuples, terms):
    """k_hat, witness and admission count of both inequalities; first maximum kept."""
    best = [[0.0, None, 0], [0.0, None, 0]]
    for tup in tuples:
        f, g, h, lx, ly = terms(*tup)
        for side, (num, lhs) in enumerate(((f, lx), (g, ly))):
            if num < h < 1:
                best[side][2] += 1
                r = (num / h) / lhs
                if r > best[side][0]:
                    best[side][0], best[side][1] = r, tup
    return best


def quad_k_hat(A, B, S, T, xs, ys, grid):
    tuples = [(x, x2, y, y2, t) for x in xs for x2 in xs for y in ys for y2 in ys for t in grid]
    (kx, _, nx), (ky, _, ny) = admitted_max(tuples, lambda *a: quad_terms(A, B, S, T, *a))
    return kx, nx, ky, ny


if __name__ == "__main__":
    T = lambda x: x / 2 + 1
    S = lambda y: y / 3 + 1
    k, w = pair_k_hat(T, S, [0, 0.5, 1, 1.5, 2], [0.5, 1, 2])
    print("linear pair, 5 points, grid {0.5,1,2}:", repr(k), w)

    # expansive pair at (0, 0.5, t = 2), exact rational arithmetic
    fm = lambda a, b, t: t / (t + abs(a - b))
    t, x, x2 = Fraction(2), Fraction(0), Fraction(1, 2)
    lhs = fm(4 * x, 4 * x2, t)
    rhs = min(fm(x, x2, t), fm(x, 4 * x, t), fm(x2, 4 * x2, t), fm(2 * x, 2 * x2, t))
    print("expansive witness ratio:", rhs / lhs, float(rhs / lhs))
    k, w = pair_k_hat(lambda x: 2 * x, lambda y: 2 * y, [0, 0.5], [2])
    print("expansive pair, {0, 0.5}, t = 2:", repr(k), w)

    xs = [0.4 * i for i in range(9)]
    for t_max in (1e2, 1e3, 1e4):
        g = lattice(t_max)
        k, w = pair_k_hat(T, S, xs, g)
        print(f"vacuity t_max={t_max:g} ({len(g)} points):", repr(k), w)

    A = lambda x: 0.5 * x + 1.5
    B = lambda x: -0.3 * x + 2.3
    S4 = lambda y: 0.25 * y + 0.5
    T4 = lambda y: 0.6 * y - 0.2
    print("quadruple k_hat:", quad_k_hat(A, B, S4, T4, [0, 1, 2.5, -3], [0, 1, 2.5, -3], [0.1, 1, 10]))

    # mixed affine quadruple without a common fixed point: even/odd limits
    A = lambda x: x / 2 + 1
    B = lambda x: x / 3 + 1
    S = lambda y: y / 4 + 1
    T = lambda y: y / 5 + 1
    even = lambda x: T(B(S(A(x))))
    c, slope = even(Fraction(0)), even(Fraction(1)) - even(Fraction(0))
    z_even = c / (1 - slope)
    z_odd = S(A(z_even))
    print("two-cycle slope:", slope, "even limit:", z_even, float(z_even), "odd limit:", z_odd, float(z_odd))
    print("two-cycle y limits: B(odd) =", B(z_odd), float(B(z_odd)), " A(even) =", A(z_even), float(A(z_even)))

    # dual pair terms for T(x) = x/2 + 1, S(y) = y/3 + 1 at y = 0, y' = 1, t = 1
    T = lambda x: x / 2 + 1
    S = lambda y: y / 3 + 1
    y, y2, t = Fraction(0), Fraction(1), Fraction(1)
    lhs = m(T(S(y)), T(S(y2)), t)
    rhs = min(m(y, y2, t), m(y, T(S(y)), t), m(y2, T(S(y2)), t), m(S(y), S(y2), t))
    print("dual pair at (0, 1, t = 1): lhs", lhs, float(lhs), "rhs", rhs, float(rhs))

    # linear quadruple A = x/2, B = x/3, S = y/4, T = y/5
    A = lambda x: x / 2
    B = lambda x: x / 3
    S = lambda y: y / 4
    T = lambda y: y / 5
    one, two = Fraction(1), Fraction(2)
    f, g, h, lx, ly = quad_terms(A, B, S, T, one, two, one, two, one)
    print("linear quadruple terms at (1, 2, 1, 2, t = 1):")
    for name, v in (("f", f), ("g", g), ("h", h), ("lhs_x", lx), ("lhs_y", ly)):
        print(f"  {name} = {v} = {float(v)!r}")

    pts = [0.0, 1.0, 2.0, -1.5]
    grid = [0.5, 1.0, 2.0]
    tuples = [(x, x2, y, y2, t) for x in pts for x2 in pts for y in pts for y2 in pts for t in grid]
    (kx, wx, nx), (ky, wy, ny) = admitted_max(tuples, lambda *a: quad_terms(A, B, S, T, *a))
    print("linear quadruple on", pts, "grid", grid)
    print("  X side:", repr(kx), "witness", wx, "admitted", nx)
    print("  Y side:", repr(ky), "witness", wy, "admitted", ny)

    f, g, h, lx, ly = self_quad_terms(A, B, S, T, one, two, one)
    print("linear self-quadruple terms at (1, 2, t = 1):")
    for name, v in (("f", f), ("g", g), ("h", h), ("lhs_x", lx), ("lhs_y", ly)):
        print(f"  {name} = {v} = {float(v)!r}")
    tuples = [(x, y, t) for x in pts for y in pts for t in grid]
    (kx, wx, nx), (ky, wy, ny) = admitted_max(tuples, lambda *a: self_quad_terms(A, B, S, T, *a))
    print("linear self-quadruple on", pts, "grid", grid)
    print("  X side:", repr(kx), "witness", wx, "admitted", nx)
    print("  Y side:", repr(ky), "witness", wy, "admitted", ny)
