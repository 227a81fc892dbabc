"""Cost model, greedy CNOT extraction, regrouping, divide and conquer."""

import random

import pytest

import zxpoly as zx
from zxpoly import sim
from zxpoly.parity import identity_map
from conftest import random_invertible_map, random_zx_poly

PH = zx.Phase


class TestGadgetCost:
    def test_single_leg_free(self):
        assert zx.gadget_cost(zx.PhaseGadget.z([1], PH(1, 4)), zx.line(3)) == 0

    def test_adjacent_pair(self):
        assert zx.gadget_cost(zx.PhaseGadget.z([0, 1], PH(1, 4)), zx.line(2)) == 2

    def test_gap_pair(self):
        assert zx.gadget_cost(zx.PhaseGadget.z([0, 2], PH(1, 4)), zx.line(3)) == 4


class TestEffectZx:
    def test_empty(self):
        assert zx.effect_zx(zx.ZXPolynomial(3), zx.Cnot(0, 1), zx.line(3)) == 0

    def test_leg_removal(self):
        poly = zx.ZXPolynomial(3, (zx.PhaseGadget.z([0, 2], PH(1, 4)),))
        assert zx.effect_zx(poly, zx.Cnot(2, 0), zx.line(3)) == -4

    def test_leg_addition_neutral(self):
        poly = zx.ZXPolynomial(3, (zx.PhaseGadget.z([0, 2], PH(1, 4)),))
        # legs become {0,1,2}; the tree weight stays 2
        assert zx.effect_zx(poly, zx.Cnot(1, 2), zx.line(3)) == 0


class TestEffectParity:
    def test_identity_absorbs_edge(self):
        assert zx.effect_parity(identity_map(3), zx.Cnot(0, 1), "left", zx.line(3)) == -1
        assert zx.effect_parity(identity_map(3), zx.Cnot(0, 1), "right", zx.line(3)) == -1

    def test_cancellation_gains(self):
        m = zx.append_cnot(identity_map(3), zx.Cnot(0, 1))
        assert zx.effect_parity(m, zx.Cnot(0, 1), "left", zx.line(3)) == 1

    def test_bad_side(self):
        with pytest.raises(ValueError):
            zx.effect_parity(identity_map(2), zx.Cnot(0, 1), "middle", zx.line(2))


class TestOptimizeGauss:
    def test_already_optimal_unchanged(self):
        arch = zx.line(3)
        poly = zx.ZXPolynomial(3, (zx.PhaseGadget.z([0], PH(1, 4)),))
        pl, out, pr = zx.optimize_gauss(identity_map(3), poly, identity_map(3), arch)
        assert pl.is_identity() and pr.is_identity() and out == poly

    def test_extracts_shared_structure(self):
        # three gadgets on legs {0,2}: pulling a CNOT pair through all of
        # them beats the parity overhead
        arch = zx.line(3)
        gadgets = tuple(
            zx.PhaseGadget("Z" if i % 2 else "X", 0b101, PH(1 + i, 4)) for i in range(3)
        )
        poly = zx.ZXPolynomial(3, gadgets)
        pl, out, pr = zx.optimize_gauss(identity_map(3), poly, identity_map(3), arch)
        before = sum(zx.gadget_cost(g, arch) for g in poly.gadgets)
        after = (
            sum(zx.gadget_cost(g, arch) for g in out.gadgets)
            + zx.cnot_cost(pl, arch) + zx.cnot_cost(pr, arch)
        )
        assert after < before
        u_before = sim.poly_unitary(poly)
        u_after = sim.parity_unitary(pr) @ sim.poly_unitary(out) @ sim.parity_unitary(pl)
        assert sim.equal_up_to_global_phase(u_before, u_after, 1e-9)

    def test_never_increases_total_estimate(self):
        rng = random.Random(21)
        for _ in range(80):
            q = rng.randint(2, 5)
            arch = [zx.line(q), zx.circle(q), zx.complete(q)][rng.randrange(3)]
            poly = random_zx_poly(rng, q, rng.randint(0, 10))
            before = sum(zx.gadget_cost(g, arch) for g in poly.gadgets)
            pl, out, pr = zx.optimize_gauss(identity_map(q), poly, identity_map(q), arch)
            after = (
                sum(zx.gadget_cost(g, arch) for g in out.gadgets)
                + zx.cnot_cost(pl, arch) + zx.cnot_cost(pr, arch)
            )
            assert after <= before

    def test_unitary_preserved(self):
        rng = random.Random(22)
        for _ in range(40):
            q = rng.randint(2, 4)
            arch = [zx.line(q), zx.circle(q), zx.complete(q)][rng.randrange(3)]
            poly = random_zx_poly(rng, q, rng.randint(1, 8))
            pl0, pr0 = random_invertible_map(rng, q), random_invertible_map(rng, q)
            pl, out, pr = zx.optimize_gauss(pl0, poly, pr0, arch)
            u_before = sim.parity_unitary(pr0) @ sim.poly_unitary(poly) @ sim.parity_unitary(pl0)
            u_after = sim.parity_unitary(pr) @ sim.poly_unitary(out) @ sim.parity_unitary(pl)
            assert sim.equal_up_to_global_phase(u_before, u_after, 1e-9)


class TestOptimizeFast:
    def test_no_improvable_pair_unchanged(self):
        arch = zx.line(3)
        poly = zx.ZXPolynomial(3, (zx.PhaseGadget.z([0], PH(1, 4)),))
        pl, out, pr = zx.optimize_fast(identity_map(3), poly, identity_map(3), arch)
        assert pl.is_identity() and pr.is_identity() and out == poly

    def test_strictly_below_threshold_propagates(self):
        # two identical-leg gadgets: effect -4 < -2*d with d=1
        arch = zx.line(3)
        g = zx.PhaseGadget.z([0, 1, 2], PH(1, 4))
        poly = zx.ZXPolynomial(3, (g, g.with_phase(PH(3, 4))))
        assert zx.effect_zx(poly, zx.Cnot(0, 1), arch) == -4
        pl, out, pr = zx.optimize_fast(identity_map(3), poly, identity_map(3), arch)
        assert not pl.is_identity()
        u_before = sim.poly_unitary(poly)
        u_after = sim.parity_unitary(pr) @ sim.poly_unitary(out) @ sim.parity_unitary(pl)
        assert sim.equal_up_to_global_phase(u_before, u_after, 1e-9)

    def test_at_threshold_does_not_propagate(self):
        # single gadget: effect -2 is not strictly below -2*1
        arch = zx.line(3)
        poly = zx.ZXPolynomial(3, (zx.PhaseGadget.z([0, 1, 2], PH(1, 4)),))
        assert zx.effect_zx(poly, zx.Cnot(0, 1), arch) == -2
        pl, out, pr = zx.optimize_fast(identity_map(3), poly, identity_map(3), arch)
        assert pl.is_identity() and pr.is_identity() and out == poly


class TestScore:
    def test_identical_full_legs(self):
        a = zx.PhaseGadget.z([0, 1, 2], PH(1, 4))
        b = zx.PhaseGadget.x([0, 1, 2], PH(1, 4))
        assert zx.score(a, b, 3) == 3

    def test_disjoint_singles(self):
        a = zx.PhaseGadget.z([0], PH(1, 4))
        b = zx.PhaseGadget.x([1], PH(1, 4))
        assert zx.score(a, b, 2) == -2

    def test_mixed(self):
        a = zx.PhaseGadget.z([0, 2], PH(1, 4))
        b = zx.PhaseGadget.x([1, 2], PH(1, 4))
        # wire 0: mismatch, wire 1: mismatch, wire 2: both
        assert zx.score(a, b, 3) == -1
        # an empty fourth wire counts -1
        assert zx.score(a, b, 4) == -2


class TestRegroup:
    def test_already_grouped_unchanged(self):
        poly = zx.ZXPolynomial(2, (
            zx.PhaseGadget.z([0, 1], PH(1, 4)),
            zx.PhaseGadget.x([0, 1], PH(1, 8)),
            zx.PhaseGadget.z([0], PH(3, 8)),
        ))
        assert zx.regroup(poly) == poly

    def test_worked_example(self):
        # [a1, b2, b1, b4]: b1 shares a1's legs and should move next to it
        a1 = zx.PhaseGadget.z([0, 2], PH(1, 4))
        b2 = zx.PhaseGadget.x([1, 2], PH(1, 8))
        b1 = zx.PhaseGadget.x([0, 2], PH(3, 8))
        b4 = zx.PhaseGadget.x([1, 2], PH(5, 8))
        out = zx.regroup(zx.ZXPolynomial(3, (a1, b2, b1, b4)))
        assert out.gadgets == (a1, b1, b2, b4)

    def test_illegal_swap_blocked(self):
        # the score prefers bringing the third gadget forward, but the
        # adjacent pair neither commutes nor carries a pi phase
        poly = zx.ZXPolynomial(2, (
            zx.PhaseGadget.z([0, 1], PH(1, 4)),
            zx.PhaseGadget.x([1], PH(1, 4)),
            zx.PhaseGadget.z([0, 1], PH(3, 8)),
        ))
        assert zx.score(poly.gadgets[0], poly.gadgets[1], 2) < zx.score(
            poly.gadgets[0], poly.gadgets[2], 2
        )
        assert zx.regroup(poly) == poly

    def test_preserves_multiset_and_unitary(self):
        rng = random.Random(23)
        for _ in range(60):
            q = rng.randint(1, 5)
            poly = random_zx_poly(rng, q, rng.randint(0, 10))
            out = zx.regroup(poly)
            key = lambda g: (g.basis, g.legs)
            assert sorted(map(key, poly.gadgets)) == sorted(map(key, out.gadgets))
            assert sim.equal_up_to_global_phase(
                sim.poly_unitary(poly), sim.poly_unitary(out), 1e-9
            )


class TestSplit:
    @pytest.mark.parametrize("n,expected", [(4, (2, 2)), (5, (3, 2)), (1, (1, 0))])
    def test_ceiling_split(self, n, expected):
        rng = random.Random(n)
        poly = random_zx_poly(rng, 3, n)
        head, tail = zx.split(poly)
        assert (len(head), len(tail)) == expected
        assert head.gadgets + tail.gadgets == poly.gadgets

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            zx.split(zx.ZXPolynomial(2))


class TestSynthesize:
    def test_empty_polynomial(self):
        regions = zx.synthesize(zx.ZXPolynomial(3), zx.line(3))
        assert len(regions) == 1
        assert isinstance(regions[0], zx.ParityRegion) and regions[0].map.is_identity()

    def test_two_gadgets_no_split(self):
        rng = random.Random(24)
        poly = random_zx_poly(rng, 3, 2)
        regions = zx.synthesize(poly, zx.line(3), "fast")
        assert len(regions) == 3
        assert isinstance(regions[0], zx.ParityRegion)
        assert isinstance(regions[1], zx.GadgetRegion)
        assert isinstance(regions[2], zx.ParityRegion)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            zx.synthesize(zx.ZXPolynomial(2), zx.line(2), "annealing")

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            zx.synthesize(zx.ZXPolynomial(3), zx.line(2))

    def test_alternation_and_unitary(self):
        rng = random.Random(25)
        for _ in range(40):
            q = rng.randint(2, 5)
            archs = [zx.line(q), zx.circle(q), zx.complete(q)]
            poly = random_zx_poly(rng, q, rng.randint(0, 16), min(4, q))
            for arch in archs:
                for mode in ("fast", "gauss"):
                    regions = zx.synthesize(poly, arch, mode)
                    assert isinstance(regions[0], zx.ParityRegion)
                    assert isinstance(regions[-1], zx.ParityRegion)
                    for idx, region in enumerate(regions):
                        expected = zx.ParityRegion if idx % 2 == 0 else zx.GadgetRegion
                        assert isinstance(region, expected)
                        if isinstance(region, zx.GadgetRegion):
                            assert 1 <= len(region.poly.gadgets) <= 2
                    assert sim.equal_up_to_global_phase(
                        sim.regions_unitary(regions), sim.poly_unitary(poly), 1e-9
                    )
