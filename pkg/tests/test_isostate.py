from fractions import Fraction as F

import pytest

from automaton_frames.errors import NotInertialError
from automaton_frames.frames import frame_of
from automaton_frames.isostate import (
    affine_isomorphic, external_state_equal, proper_time_grid, state_snapshot,
)
from automaton_frames.kinematics import simulate
from automaton_frames.lattice import Configuration, mirror

from helpers import A1, A2, EXAMPLE1, EXAMPLE2, EXAMPLE2_PITCH8

# Every coordinate of Example 2 doubled: bodies never meet, so nothing recurs.
EXAMPLE2_DOUBLED = Configuration.build(
    [(n, 1, 2 * (4 * (n // 3) + n % 3), -1 if n % 3 == 1 else 1) for n in range(3)], period=8
)


class TestExternal:
    def test_shifted_copy(self):
        tr = simulate(EXAMPLE2, 6)
        assert external_state_equal(tr, A2, 0, tr, A2, 3)
        assert external_state_equal(tr, A2, 0, tr, ["0@1", "1@1", "2@1"], 0)

    def test_different_phase(self):
        tr = simulate(EXAMPLE2, 6)
        assert not external_state_equal(tr, A2, 0, tr, A2, 1)

    def test_size_mismatch(self):
        tr = simulate(EXAMPLE1, 2)
        assert not external_state_equal(tr, A1, 0, tr, [0, 1], 0)

    def test_example1_every_two_steps(self):
        tr = simulate(EXAMPLE1, 4)
        assert external_state_equal(tr, A1, 0, tr, A1, 2)
        assert not external_state_equal(tr, A1, 0, tr, A1, 1)


class TestSnapshots:
    def test_a1_at_zero(self):
        snap = state_snapshot(simulate(EXAMPLE1, 2), A1, 0)
        assert sorted(x for _, _, x in snap.parts) == [-1, 0, 1]

    def test_a2_at_zero(self):
        snap = state_snapshot(simulate(EXAMPLE2, 2), A2, 0)
        assert sorted(x for _, _, x in snap.parts) == [-1, 0, 1]

    def test_negative_and_late_tau(self):
        fa = frame_of(EXAMPLE2, A2)
        assert len(fa.sample(F(-10))) == 3
        assert len(fa.sample(F(100))) == 3

    def test_grid(self):
        assert proper_time_grid(frame_of(EXAMPLE2, A2)) == [F(j, 3) for j in range(6)]


class TestAffineIsomorphism:
    def test_reflexive(self):
        tr = simulate(EXAMPLE2, 3)
        w = affine_isomorphic(tr, A2, tr, A2)
        assert w is not None and w.frame.matrix == ((1, 0), (0, 1))

    def test_a1_a2(self):
        w = affine_isomorphic(simulate(EXAMPLE1, 2), A1, simulate(EXAMPLE2, 3), A2)
        assert w is not None
        assert w.frame.matrix == ((F(3, 2), F(1, 2)), (F(1, 2), F(3, 2)))
        assert len(w.bijection) == 3

    def test_symmetric(self):
        w = affine_isomorphic(simulate(EXAMPLE2, 3), A2, simulate(EXAMPLE1, 2), A1)
        assert w is not None
        assert w.frame.matrix == ((F(3, 4), F(-1, 4)), (F(-1, 4), F(3, 4)))

    def test_mirror_image_moves_left(self):
        mirrored = mirror(EXAMPLE2)
        assert frame_of(mirrored, A2).signature.velocity == F(-1, 3)
        assert affine_isomorphic(mirrored, A2, EXAMPLE2, A2) is not None

    def test_pitch_doubled_is_different(self):
        assert affine_isomorphic(EXAMPLE1, A1, EXAMPLE2_PITCH8, A2) is None

    def test_fully_doubled_has_no_frame(self):
        with pytest.raises(NotInertialError):
            affine_isomorphic(EXAMPLE1, A1, EXAMPLE2_DOUBLED, A2)
