"""Discrete mode minimization, the two lower bounds, and decomposition."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rellich_cone import (
    CylinderFunction,
    LineBump,
    ModeProblem,
    best_mode_constant,
    cylinder_quotient,
    decompose_and_bound,
    derive,
    drift_bound_check,
    full_sphere_spectrum,
    minimize_mode,
    phi,
    scaled_family_value,
    window_bound_check,
)

# unit-test resolution: coarser than the verification default but sharp
# enough for every bound below (truncation only raises the minimum)
FAST = dict(L=60.0, N=2400)


class TestModeProblem:
    def test_validation(self):
        with pytest.raises(ValueError):
            ModeProblem(A=0.0, Bl=1.0, Cl=0.0)
        with pytest.raises(ValueError):
            ModeProblem(A=0.0, Bl=1.0, Cl=1.0, N=2)
        with pytest.raises(ValueError):
            ModeProblem(A=0.0, Bl=1.0, Cl=1.0, L=0.0)

    def test_bound(self):
        assert ModeProblem(A=0.0, Bl=3.0, Cl=2.0).bound == 4.5

    def test_from_params(self):
        prob = ModeProblem.from_params(derive(3, 0.0), 2.0)
        assert prob.A == -2.0 and prob.Bl == 1.25 and prob.Cl == 2.25


class TestMinimizeMode:
    @pytest.mark.parametrize("Bl,Cl,target", [
        (-0.75, 0.25, 9 / 4),     # radial mode of (3, 0)
        (1.25, 2.25, 25 / 36),    # lambda = 2 mode of (3, 0)
        (5.25, 6.25, 441 / 100),  # lambda = 6 mode of (3, 0)
    ])
    def test_closed_forms_fast_grid(self, Bl, Cl, target):
        mm = minimize_mode(ModeProblem(A=-2.0, Bl=Bl, Cl=Cl, **FAST))
        assert mm.value == pytest.approx(target, abs=5e-3)
        assert mm.value >= target  # discrete minimum converges from above
        assert mm.residual <= 1e-10
        assert mm.bound == pytest.approx(target, rel=1e-12)

    def test_one_full_resolution_case(self):
        mm = minimize_mode(ModeProblem(A=-2.0, Bl=1.25, Cl=2.25, L=100.0, N=8000))
        assert mm.value == pytest.approx(25 / 36, abs=1e-3)

    def test_critical_first_mode_full_resolution(self):
        # (4, 0) at lambda = 3: Bl = Cl = 3, the quotient bottoms out at 3
        mm = minimize_mode(ModeProblem(A=-2.0, Bl=3.0, Cl=3.0, L=100.0, N=8000))
        assert mm.value == pytest.approx(3.0, abs=1e-3)

    def test_dense_and_sparse_agree(self):
        dense = minimize_mode(ModeProblem(A=-2.0, Bl=1.25, Cl=2.25, L=60.0, N=1800))
        sparse = minimize_mode(ModeProblem(A=-2.0, Bl=1.25, Cl=2.25, L=60.0, N=2400))
        assert dense.value == pytest.approx(sparse.value, abs=2e-5)

    def test_negative_Bl_no_spurious_zero_mode(self):
        # one-sided exponentials must not leak through the truncation boundary
        mm = minimize_mode(ModeProblem(A=-2.0, Bl=-0.75, Cl=0.25, **FAST))
        assert mm.value == pytest.approx(9 / 4, abs=5e-3)

    def test_weakly_decreasing_in_L(self):
        # nested grids with the same spacing: the function class only grows
        values = [
            minimize_mode(ModeProblem(A=-2.0, Bl=1.25, Cl=2.25, L=L, N=N)).value
            for L, N in ((25.0, 999), (50.0, 1999), (100.0, 3999))
        ]
        assert values[0] >= values[1] >= values[2] - 1e-12

    def test_minimizer_returned(self):
        mm = minimize_mode(ModeProblem(A=-2.0, Bl=1.25, Cl=2.25, **FAST))
        assert mm.minimizer.shape == mm.grid.shape == (2400,)
        assert np.linalg.norm(mm.minimizer) > 0

    @pytest.mark.parametrize("A,Bl,Cl", [
        (-2.0, 1.25, 2.25),
        (-2.0, -0.75, 0.25),
        (0.0, 1.0, 1.0),
    ])
    def test_eigenvalue_matches_quadrature_of_minimizer(self, A, Bl, Cl):
        # cross-system consistency: feeding the discrete minimizer back
        # through the sampled-profile quadrature reproduces the eigenvalue
        from rellich_cone import CylinderFunction, SampledLineProfile, cylinder_quotient
        from rellich_cone.params import Params

        mm = minimize_mode(ModeProblem(A=A, Bl=Bl, Cl=Cl, **FAST))
        prof = SampledLineProfile(mm.grid[0], mm.grid[1] - mm.grid[0], mm.minimizer)
        carrier = Params(n=2, alpha=0.0, gamma=Bl, h=Cl, A=A, B=Bl, C=Cl)
        q = cylinder_quotient(CylinderFunction(profile=prof, eigenvalue=0.0), carrier)
        assert q.ratio == pytest.approx(mm.value, rel=1e-6)

    def test_consistency_with_mode_minimum(self):
        # min over low modes of the discrete value tracks the closed-form
        # minimum over the sphere spectrum; needs the default truncation
        # (the L = 60 bias alone is about 2e-3)
        for n, alpha in ((3, 0.0), (5, 0.0)):
            p = derive(n, alpha)
            spec = full_sphere_spectrum(n)
            target = float(best_mode_constant(p, spec))
            discrete = min(
                minimize_mode(ModeProblem.from_params(p, float(lam), L=100.0, N=4000)).value
                for lam in spec.eigenvalues[:4]
            )
            assert discrete == pytest.approx(target, abs=1e-3)


class TestScaledFamily:
    def test_small_eps_hits_mode_value(self):
        p = derive(3, 0.0)
        assert scaled_family_value(p, 2.0, 1e-2) == pytest.approx(25 / 36, abs=1e-3)

    def test_quadratic_rate(self):
        p = derive(3, 0.0)
        target = 25 / 36
        e1 = scaled_family_value(p, 2.0, 0.1) - target
        e2 = scaled_family_value(p, 2.0, 0.05) - target
        assert e1 / e2 == pytest.approx(4.0, abs=0.5)

    def test_critical_family(self):
        for n in (4, 5):
            p = derive(n, float(4 - n))
            lam = float(n - 1)
            assert scaled_family_value(p, lam, 1e-2) == pytest.approx(n - 1, abs=2e-3)

    def test_validation(self):
        p = derive(3, 0.0)
        with pytest.raises(ValueError):
            scaled_family_value(p, 2.0, 0.0)
        with pytest.raises(ValueError):
            scaled_family_value(derive(4, 0.0), 0.0, 0.1)


class TestWindowBound:
    @pytest.mark.parametrize("A,Bl,Cl", [
        (-2.0, 1.25, 2.25),
        (0.0, 1.0, 1.0),
        (-2.0, 2.0, 1.0),   # boundary case Bl = 2 Cl
    ])
    def test_holds(self, A, Bl, Cl):
        assert window_bound_check(ModeProblem(A=A, Bl=Bl, Cl=Cl, **FAST))

    def test_hypothesis_violation_raises(self):
        with pytest.raises(ValueError):
            window_bound_check(ModeProblem(A=0.0, Bl=3.0, Cl=1.0, **FAST))
        with pytest.raises(ValueError):
            window_bound_check(ModeProblem(A=0.0, Bl=-1.0, Cl=1.0, **FAST))


class TestDriftBound:
    @pytest.mark.parametrize("A,Bl,Cl", [
        (-2.0, 1.25, 2.25),
        (-2.0, -0.25, 1.0),   # negative Bl is covered
        (3.0, 2.0, 0.5),      # window fails (Bl > 2 Cl), drift holds
    ])
    def test_holds(self, A, Bl, Cl):
        prob = ModeProblem(A=A, Bl=Bl, Cl=Cl, **FAST)
        assert prob.A**2 + 2 * prob.Bl > prob.bound
        assert drift_bound_check(prob)

    def test_hypothesis_violation_raises(self):
        # A = 0, Bl = -1, Cl = 1: A^2 + 2 Bl = -2 < Bl^2/Cl = 1
        with pytest.raises(ValueError):
            drift_bound_check(ModeProblem(A=0.0, Bl=-1.0, Cl=1.0, **FAST))

    def test_randomized_instances(self):
        rng = np.random.default_rng(7)
        done = 0
        while done < 25:
            A = rng.uniform(-3, 3)
            Cl = rng.uniform(0.1, 3.0)
            Bl = rng.uniform(-1.5, 4.0)
            if A * A + 2 * Bl <= Bl * Bl / Cl + 0.05:
                continue
            done += 1
            assert drift_bound_check(ModeProblem(A=A, Bl=Bl, Cl=Cl, L=40.0, N=1600))


class TestPhi:
    def test_value_at_zero_is_h_squared(self):
        for n, alpha in ((3, Fraction(0)), (5, Fraction(1)), (2, Fraction(-2))):
            p = derive(n, alpha)
            assert phi(p, 0) == p.h**2

    def test_derivative_at_zero(self):
        # phi is quadratic, so the central difference is exact
        for n, alpha in ((3, 0.0), (6, 2.5)):
            p = derive(n, alpha)
            d = 1e-3
            fd = (phi(p, d) - phi(p, -d)) / (2 * d)
            assert fd == pytest.approx(2 * p.h + (alpha - 2) ** 2, abs=1e-6)

    def test_exact_rational_value(self):
        # frozen by direct Fraction evaluation of the defining product
        p = derive(3, Fraction(0))
        expected = (4 + Fraction(1, 2) + 2) * (2 + Fraction(1, 4)) - (2 - Fraction(3, 4)) ** 2
        assert expected == Fraction(209, 16)
        assert phi(p, 2) == Fraction(209, 16)

    def test_links_to_drift_hypothesis(self):
        # A^2 + 2(B+t) - (B+t)^2/(C+t) = phi(t) / (h + t)
        p = derive(5, 0.7)
        for t in (0.0, 1.3, 8.0):
            lhs = p.A**2 + 2 * (p.B + t) - (p.B + t) ** 2 / (p.C + t)
            assert lhs == pytest.approx(phi(p, t) / (p.h + t), rel=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(2, 12),
           alpha=st.floats(-6, 12, allow_nan=False, allow_infinity=False))
    def test_positive_on_nonnegative_axis(self, n, alpha):
        # phi(0) = h^2 underflows when alpha sits within ~1e-77 of the
        # critical exponent; keep a representable margin
        assume(abs(n - 4 + alpha) > 1e-6)
        p = derive(n, alpha)
        ts = np.linspace(0.0, 50.0, 51)
        assert all(phi(p, float(t)) > 0 for t in ts)


class _Scaled:
    """Test helper: amplitude-scaled line profile."""

    def __init__(self, base, amp):
        self.base, self.amp = base, amp

    @property
    def support(self):
        return self.base.support

    def value(self, s):
        return self.amp * self.base.value(s)

    def d1(self, s):
        return self.amp * self.base.d1(s)

    def d2(self, s):
        return self.amp * self.base.d2(s)


class TestDecomposeAndBound:
    def test_single_mode_is_its_quotient(self):
        p = derive(3, 0.0)
        prof = LineBump(0.0, 1.5)
        q = cylinder_quotient(CylinderFunction(profile=prof, eigenvalue=2.0), p)
        assert decompose_and_bound([(2.0, prof)], p) == pytest.approx(q.ratio, rel=1e-14)

    def test_equal_mass_mixture_is_mean_of_quotients(self):
        p = derive(5, 1.0)
        prof1, prof2 = LineBump(0.0, 1.5), LineBump(0.3, 1.1)
        q1 = cylinder_quotient(CylinderFunction(profile=prof1, eigenvalue=4.0), p)
        q2 = cylinder_quotient(CylinderFunction(profile=prof2, eigenvalue=10.0), p)
        # scale the second profile so both modes carry the same D-mass
        amp = np.sqrt(q1.denominator / q2.denominator)
        combined = decompose_and_bound([(4.0, prof1), (10.0, _Scaled(prof2, amp))], p)
        assert combined == pytest.approx((q1.ratio + q2.ratio) / 2, rel=1e-9)

    def test_convex_combination_bounds(self):
        p = derive(3, -1.0)
        modes = [(0.0, LineBump(0.0, 2.0)), (2.0, LineBump(0.5, 1.0)),
                 (6.0, LineBump(-0.3, 1.4))]
        qs = [cylinder_quotient(CylinderFunction(profile=prof, eigenvalue=lam), p).ratio
              for lam, prof in modes]
        combined = decompose_and_bound(modes, p)
        assert min(qs) - 1e-12 <= combined <= max(qs) + 1e-12

    def test_critical_two_mode_bound(self):
        # (4, 0): radial + first-mode sum stays above min(q0, q3) >= 3 - tol
        p = derive(4, 0.0)
        prof = LineBump(0.0, 2.0)
        q0 = cylinder_quotient(CylinderFunction(profile=prof, eigenvalue=0.0), p).ratio
        q3 = cylinder_quotient(CylinderFunction(profile=prof, eigenvalue=3.0), p).ratio
        combined = decompose_and_bound([(0.0, prof), (3.0, prof)], p)
        assert combined >= min(q0, q3) - 1e-12
        assert min(q0, q3) >= 3.0 - 1e-3

    def test_validation(self):
        p = derive(3, 0.0)
        with pytest.raises(ValueError):
            decompose_and_bound([], p)
        with pytest.raises(ValueError):
            decompose_and_bound([(-1.0, LineBump(0, 1))], p)
