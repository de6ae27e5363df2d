import itertools
import random

import pytest

from chainphase.actions import get_action
from chainphase.boundary import (
    boundary_action_phase,
    boundary_symmetry_phase,
    coboundary_phase,
    cone_phi,
    cylinder_theta,
    delta_on,
    explicit_hopping_phase,
    modified_excitation_phase,
)
from chainphase.simplicial import Cochain, Phase


def rand_cochain(rng, deg, verts, span=3):
    return Cochain(deg, {t: rng.randint(-span, span)
                         for t in itertools.combinations(verts, deg + 1)})


def theta_closed_form(B, h, N, s):
    """Printed three-term expansion of Theta for the cubic theory."""
    def g(i, j, k):
        t = (s[i], s[j], s[k])
        return B.value(t) + h.on_boundary(t)

    def b(i, j, k):
        return B.value((s[i], s[j], s[k]))

    def hv(i, j):
        return h.value((s[i], s[j]))

    total = (g(0, 1, 2) * g(2, 3, 4) * hv(4, 5)
             + g(0, 1, 2) * hv(2, 3) * b(3, 4, 5)
             + hv(0, 1) * b(1, 2, 3) * b(3, 4, 5))
    return Phase(total, N)


class TestDeltaOn:
    def test_values_are_integer_coboundaries(self):
        rng = random.Random(1)
        b = rand_cochain(rng, 1, range(5))
        out = delta_on(b, (0, 1, 2, 3, 4))
        assert out.degree == 2 and out.modulus == 0
        for t in itertools.combinations(range(5), 3):
            assert out.value(t) == b.on_boundary(t)

    def test_modulus_is_stripped(self):
        b = Cochain(1, {(0, 1): 1, (1, 2): 1}, modulus=2)
        out = delta_on(b, (0, 1, 2))
        # The integer coboundary of the canonical lift is 2, not its
        # mod-2 reduction 0.
        assert dict(out.items()) == {(0, 1, 2): 2}
        assert out.modulus == 0

    def test_double_coboundary_vanishes(self):
        rng = random.Random(2)
        b = rand_cochain(rng, 1, range(6))
        d = delta_on(b, tuple(range(6)))
        assert not delta_on(d, tuple(range(6)))


class TestConePhi:
    # delta Phi_cone[b] = (-1)^D T[delta b]: the cone potential
    # differentiates to the bulk action of the coboundary, up to the
    # orientation sign of the bulk face.  cone_phi appends its apex
    # after the base, so inside the boundary of the (D+1)-dimensional
    # cone the bulk face enters with sign (-1)^{D+1}; for even D this
    # is the familiar sign-free identity, for odd D the derivative is
    # -T[delta b].  Placing the apex first instead removes the sign
    # for every D (checked below).
    CASES = [
        ("cube3", 2, 10),
        ("cube3", 3, 10),
        ("pontryagin9", 3, 8),
        ("particle-quad", 3, 10),
        ("particle-quad-even", 2, 10),
        ("cs-b3", 2, 6),
        ("p1b3", 3, 6),
        ("p1b4", 3, 4),
        ("p1b5", 3, 3),
        ("sq4-b5", 2, 3),
    ]

    @pytest.mark.parametrize("name,N,draws", CASES)
    def test_cone_derivative_is_bulk_action(self, name, N, draws):
        action = get_action(name, N)
        D = action.spacetime
        u = tuple(range(D + 1))
        rng = random.Random(f"cone:{name}:{N}")
        for _ in range(draws):
            b = rand_cochain(rng, action.degree - 1, u, span=2)
            lhs = coboundary_phase(lambda f: cone_phi(action, b, f), u)
            rhs = action.phase(delta_on(b, u), u)
            assert lhs == (rhs if D % 2 == 0 else -rhs)

    @staticmethod
    def apex_first_phi(action, b, f):
        # Cone over f with the apex preceding the base: shift the base
        # labels up by one, use label 0 as the apex, extend b by zero.
        shifted = Cochain(b.degree, {tuple(v + 1 for v in t): c
                                     for t, c in b.items()})
        cone = (0,) + tuple(v + 1 for v in f)
        return action.phase(delta_on(shifted, cone), cone)

    @pytest.mark.parametrize("name,N,draws", [
        ("cube3", 3, 6),
        ("p1b3", 3, 6),
        ("p1b5", 3, 3),
    ])
    def test_apex_first_cone_is_sign_free(self, name, N, draws):
        # The same telescoping with the apex in front has no residual
        # orientation sign in any dimension, odd ones included.
        action = get_action(name, N)
        u = tuple(range(action.spacetime + 1))
        rng = random.Random(f"first:{name}")
        nonzero = 0
        for _ in range(draws):
            b = rand_cochain(rng, action.degree - 1, u, span=2)
            lhs = coboundary_phase(
                lambda f: self.apex_first_phi(action, b, f), u)
            rhs = action.phase(delta_on(b, u), u)
            assert lhs == rhs
            nonzero += rhs != Phase(0, 1)
        assert nonzero > 0  # the check is not vacuous

    def test_sign_free_form_fails_in_odd_dimensions(self):
        # With the apex-last convention the sign-free identity breaks
        # as soon as the bulk value does not self-negate.
        action = get_action("p1b3", 3)
        u = tuple(range(action.spacetime + 1))
        rng = random.Random("first:p1b3")
        broken = 0
        for _ in range(6):
            b = rand_cochain(rng, action.degree - 1, u, span=2)
            lhs = coboundary_phase(lambda f: cone_phi(action, b, f), u)
            rhs = action.phase(delta_on(b, u), u)
            broken += lhs != rhs
        assert broken > 0

    def test_wrong_base_dimension(self):
        action = get_action("cube3", 2)
        with pytest.raises(ValueError):
            cone_phi(action, Cochain(1, {}), (0, 1, 2))

    def test_wrong_configuration_degree(self):
        action = get_action("cube3", 2)
        with pytest.raises(ValueError):
            cone_phi(action, Cochain(2, {}), tuple(range(6)))


class TestCylinderTheta:
    # delta Theta[B, h] = (-1)^D (T[B + delta h] - T[B]) for closed B:
    # the cylinder interpolates between the shifted and unshifted
    # actions, with the same bulk-face orientation sign as the cone.
    CASES = [
        ("cube3", 2, 8),
        ("cube3", 3, 6),
        ("pontryagin9", 3, 5),
        ("particle-quad", 3, 8),
        ("particle-quad-even", 2, 8),
        ("cs-b3", 2, 4),
        ("p1b3", 3, 4),
        ("p1b4", 3, 3),
        ("p1b5", 3, 2),
        ("sq4-b5", 2, 2),
    ]

    @pytest.mark.parametrize("name,N,draws", CASES)
    def test_theta_difference_identity(self, name, N, draws):
        action = get_action(name, N)
        D = action.spacetime
        u = tuple(range(D + 1))
        rng = random.Random(f"theta:{name}:{N}")
        for _ in range(draws):
            eta = rand_cochain(rng, action.degree - 1, u, span=2)
            B = delta_on(eta, u)  # closed by construction
            h = rand_cochain(rng, action.degree - 1, u, span=2)
            lhs = coboundary_phase(
                lambda f: cylinder_theta(action, B, h, f), u)
            rhs = (action.phase(B + delta_on(h, u), u)
                   - action.phase(B, u))
            assert lhs == (rhs if D % 2 == 0 else -rhs)

    def test_matches_printed_expansion(self):
        # The cubic theory's Theta on one 5-simplex equals the explicit
        # three-term formula.
        rng = random.Random(23)
        for N in (2, 3, 5):
            action = get_action("cube3", N)
            for _ in range(20):
                s = tuple(range(6))
                B = rand_cochain(rng, 2, s)
                h = rand_cochain(rng, 1, s)
                assert cylinder_theta(action, B, h, s) \
                    == theta_closed_form(B, h, N, s)

    def test_wrong_degrees_rejected(self):
        action = get_action("cube3", 2)
        s = tuple(range(6))
        with pytest.raises(ValueError):
            cylinder_theta(action, Cochain(1, {}), Cochain(1, {}), s)
        with pytest.raises(ValueError):
            cylinder_theta(action, Cochain(2, {}), Cochain(2, {}), s)

    def test_hop_phase_is_minus_theta_of_coboundary(self):
        rng = random.Random(29)
        action = get_action("cube3", 3)
        s = tuple(range(6))
        b = rand_cochain(rng, 1, s)
        h = rand_cochain(rng, 1, s)
        assert modified_excitation_phase(action, b, h, s) \
            == -cylinder_theta(action, delta_on(b, s), h, s)


class TestExactDensityIsClosed:
    # The density of an exact configuration integrates to zero over the
    # boundary of a (D+1)-simplex, for every registered action.  This is
    # the closedness that feeds the telescoping behind the cone law.
    @pytest.mark.parametrize("name,N", [
        ("cube3", 3),
        ("pontryagin9", 3),
        ("particle-quad", 3),
        ("cs-b3", 2),
        ("p1b3", 3),
        ("p1b4", 3),
        ("sq4-b5", 2),
    ])
    def test_boundary_integral_vanishes(self, name, N):
        action = get_action(name, N)
        cone = tuple(range(action.spacetime + 2))
        rng = random.Random(f"closed:{name}")
        for _ in range(5):
            b = rand_cochain(rng, action.degree - 1, cone, span=2)
            B = delta_on(b, cone)
            total = coboundary_phase(lambda f: action.phase(B, f), cone)
            assert total == Phase(0, 1)


class TestExplicitDensities:
    def test_dimension_checks(self):
        b = Cochain(1, {})
        eps = Cochain(0, {})
        with pytest.raises(ValueError):
            boundary_action_phase(b, 2, (0, 1, 2, 3, 4))
        with pytest.raises(ValueError):
            boundary_symmetry_phase(b, eps, 2, (0, 1, 2, 3))
        with pytest.raises(ValueError):
            explicit_hopping_phase(b, b, 2, (0, 1, 2, 3))

    def test_symmetry_shift_is_defect_coboundary(self):
        # Phi[b + delta eps] - Phi[b] = delta F[b, eps] on a 5-simplex.
        rng = random.Random(31)
        s = tuple(range(6))
        for N in (2, 3, 5):
            for _ in range(20):
                b = rand_cochain(rng, 1, s)
                eps = rand_cochain(rng, 0, s)
                shifted = b + delta_on(eps, s)
                lhs = (boundary_action_phase(shifted, N, s)
                       - boundary_action_phase(b, N, s))
                rhs = coboundary_phase(
                    lambda t: boundary_symmetry_phase(b, eps, N, t), s)
                assert lhs == rhs


class TestHoppingIdentity:
    # The boundary Lagrangian L, the boundary action Phi, and the hop
    # correction Theta close into an exact identity in the inverse-hop
    # form; the naive forward form only holds at about 1/N of draws.

    def run_form(self, N, draws, corrected, seed):
        rng = random.Random(seed)
        action = get_action("cube3", N)
        s = tuple(range(6))
        hits = 0
        for _ in range(draws):
            b = rand_cochain(rng, 1, s)
            h = rand_cochain(rng, 1, s)
            dL = coboundary_phase(
                lambda t: explicit_hopping_phase(b, h, N, t), s)
            phi_b = boundary_action_phase(b, N, s)
            phi_bh = boundary_action_phase(b + h, N, s)
            if corrected:
                lhs = dL + phi_bh - phi_b
                rhs = -cylinder_theta(action, delta_on(b + h, s), -h, s)
            else:
                lhs = dL - phi_bh + phi_b
                rhs = -cylinder_theta(action, delta_on(b, s), h, s)
            hits += lhs == rhs
        return hits

    @pytest.mark.parametrize("N", [2, 3, 5, 7])
    def test_inverse_hop_form_is_exact(self, N):
        assert self.run_form(N, 50, corrected=True, seed=N) == 50

    @pytest.mark.xfail(strict=True,
                       reason="forward form holds only on a measure-1/N "
                       "slice of configurations")
    def test_forward_form_is_not_exact(self):
        assert self.run_form(3, 50, corrected=False, seed=77) == 50

    def test_forward_form_holds_at_chance_rate(self):
        # Quantitative version of the xfail: agreement is rare but not
        # impossible (it contains the h = 0 slice).
        hits = self.run_form(3, 150, corrected=False, seed=101)
        assert 0 < hits < 150


class TestCoboundaryPhase:
    def test_alternating_sum(self):
        values = {(0, 1): Phase(1, 4), (0, 2): Phase(1, 2),
                  (1, 2): Phase(1, 4)}
        out = coboundary_phase(lambda f: values[f], (0, 1, 2))
        # (12) - (02) + (01) = 1/4 - 1/2 + 1/4 = 0.
        assert out == Phase(0, 1)
