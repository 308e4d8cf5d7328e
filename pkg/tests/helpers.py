from automaton_frames.lattice import Configuration

EXAMPLE1 = Configuration.build([(0, 1, 0, 1), (1, 1, 1, -1)], period=2)
EXAMPLE2 = Configuration.build(
    [(n, 1, 4 * (n // 3) + n % 3, -1 if n % 3 == 1 else 1) for n in range(3)], period=4
)
EXAMPLE2_PITCH8 = Configuration.build(
    [(n, 1, 8 * (n // 3) + n % 3, -1 if n % 3 == 1 else 1) for n in range(3)], period=8
)
A1 = [0, 1, "0@1"]
A2 = [0, 1, 2]


def lone(x=0, d=1):
    return Configuration.build([(0, 1, x, d)])
