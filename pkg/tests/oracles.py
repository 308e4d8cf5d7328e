"""Independent reference computations used to freeze expected values.

Nothing here imports the package's simulation or frame code.
"""

from fractions import Fraction


def ring_simulate(bodies, ring, steps):
    """Brute-force standard-rule dynamics on a ring of ``ring`` sites.

    ``bodies`` maps id -> (x, dir) with unwrapped coordinates; the returned
    history keeps coordinates unwrapped so displacements stay visible.
    """
    state = dict(bodies)
    history = [dict(state)]
    for _ in range(steps):
        occupied = {}
        for x, d in state.values():
            key = (x % ring, d)
            occupied[key] = occupied.get(key, 0) + 1
        new = {}
        for bid, (x, d) in state.items():
            opposite = ((x + d) % ring, -d)
            if occupied.get(opposite, 0) > 0:
                new[bid] = (x, -d)
            else:
                new[bid] = (x + d, d)
        state = new
        history.append(dict(state))
    return history


def ring_period(history):
    """Smallest p where every body moved by the same d and kept its direction."""
    start = history[0]
    for p in range(1, len(history)):
        shifts = {history[p][b][0] - start[b][0] for b in start}
        same_dirs = all(history[p][b][1] == start[b][1] for b in start)
        if len(shifts) == 1 and same_dirs:
            return p, shifts.pop()
    return None


def periodic_bodies(period_placements, period, copies):
    """Unroll one stored period into ``copies`` consecutive periods.

    ``period_placements`` are (id, x, dir); copy m of id j gets key (j, m).
    """
    out = {}
    for m in range(copies):
        for bid, x, d in period_placements:
            out[(bid, m)] = (x + m * period, d)
    return out


def mat_mul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def mat_inv(a):
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    return [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]


def mat_apply(a, v):
    return [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]


def boost(v, w):
    v, w = Fraction(v), Fraction(w)
    return [[1 / w, v / w], [v / w, 1 / w]]


def separation_by_intersection(frame_a, frame_c, dx):
    """Separation in C of two bodies at rest in A, ``dx`` apart.

    ``frame_a``/``frame_c`` are linear maps from each rest frame into a common
    frame.  A sits at the origin of both frames.  B's world line in A is
    ``(dx, tau)``; find the tau at which it crosses C's time zero by solving
    the line through two of its events, then read C's space coordinate there.
    """
    a_to_c = mat_mul(mat_inv(frame_c), frame_a)
    p0 = mat_apply(a_to_c, [Fraction(dx), Fraction(0)])
    p1 = mat_apply(a_to_c, [Fraction(dx), Fraction(1)])
    s = -p0[1] / (p1[1] - p0[1])
    x = p0[0] + s * (p1[0] - p0[0])
    return abs(x)
