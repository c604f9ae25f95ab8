import pytest

from chaincodes import GaloisRing, TruncatedPolyRing, make_ring, residue_ring, zmod
from chaincodes.errors import (DigitNotInT, InvalidConvention, MixedRings,
                               NotAUnit, RejectedModulus)


@pytest.fixture(scope="module")
def z8():
    return zmod(8)


@pytest.fixture(scope="module")
def z9():
    return zmod(9)


@pytest.fixture(scope="module")
def gr83():
    # GR(8, 3): p=2, r=3, s=3 with modulus z^3 + 6z^2 + 5z + 7 over Z8
    return GaloisRing(2, 3, 3, modulus=(7, 5, 6, 1))


def test_zmod_basic(z8):
    assert z8.nu == 3
    assert z8.q == 2
    assert z8.size() == 8
    assert z8.gamma == (2,)


def test_teichmuller_set_z8(z8):
    reps = sorted(z8.representative_set())
    assert reps == [(0,), (1,)]


def test_decompose_compose_z8(z8):
    digits = z8.decompose(z8.coerce(6))
    assert digits == ((0,), (1,), (1,))  # 6 = 0 + 1*2 + 1*4
    assert z8.compose(digits) == (6,)


def test_decompose_roundtrip_exhaustive(z8, z9):
    for ring in (z8, z9):
        for a in ring.elements():
            assert ring.compose(ring.decompose(a)) == a


def test_teichmuller_idempotent_under_frobenius():
    # tau(c)^q == tau(c) for every residue code c
    z9 = zmod(9, convention="teichmuller")
    for c in z9.residue.elements():
        t = z9.lift(c)
        assert z9._pow(t, z9.q) == t
        assert z9.project(t) == c


def test_teichmuller_z9():
    z9 = zmod(9, convention="teichmuller")
    assert z9.lift(2) == (8,)  # 8^3 = 512 = 8 mod 9


def test_digits_convention_z9():
    z9d = zmod(9, convention="digits")
    assert z9d.lift(2) == (2,)
    assert sorted(z9d.representative_set()) == [(0,), (1,), (2,)]


def test_digits_convention_rejected_for_extension():
    with pytest.raises(InvalidConvention):
        GaloisRing(2, 2, 2, convention="digits")


def test_galois_ring_modulus_rejected():
    # z^3 + z^2 projects to a reducible polynomial over F_2
    with pytest.raises(RejectedModulus):
        GaloisRing(2, 3, 3, modulus=(0, 0, 1, 1))


def test_gr83_xi_order_seven(gr83):
    xi = gr83.teichmuller_generator()
    powers = {gr83._pow(xi, k) for k in range(1, 8)}
    assert len(powers) == 7
    assert gr83._pow(xi, 7) == gr83.one
    assert len(gr83.representative_set()) == 8


def test_gr83_homomorphism_exhaustive(gr83):
    f = gr83.residue
    els = list(gr83.elements())
    for a in els[:64]:
        for b in els[:64]:
            assert gr83.project(gr83.mul(a, b)) == f.mul(gr83.project(a),
                                                         gr83.project(b))
            assert gr83.project(gr83.add(a, b)) == f.add(gr83.project(a),
                                                         gr83.project(b))


def test_valuation_and_units(z8):
    assert z8.valuation(z8.coerce(6)) == 1
    assert z8.valuation(z8.coerce(4)) == 2
    assert z8.valuation(z8.zero) == 3
    assert z8.is_unit(z8.coerce(3))
    assert not z8.is_unit(z8.coerce(6))
    assert z8.mul(z8.coerce(3), z8.invert_unit(z8.coerce(3))) == z8.one


def test_invert_unit_z121():
    z121 = zmod(121)
    assert z121.invert_unit(z121.coerce(2)) == (61,)
    with pytest.raises(NotAUnit):
        z121.invert_unit(z121.coerce(11))


def test_unit_part(z8):
    a = z8.coerce(6)
    u = z8.unit_part(a)
    assert z8.is_unit(u)
    assert z8.mul(u, z8.gamma_power(1)) == a


def test_shift_down(z8):
    assert z8.shift_down(z8.coerce(6), 1) == (3,)
    assert z8.shift_down(z8.coerce(4), 2) == (1,)


def test_valuation_laws_exhaustive():
    ring = zmod(27)
    for a in ring.elements():
        for b in ring.elements():
            va, vb = ring.valuation(a), ring.valuation(b)
            vm = ring.valuation(ring.mul(a, b))
            assert vm == min(va + vb, ring.nu)
            assert ring.valuation(ring.add(a, b)) >= min(va, vb)


def test_truncated_poly_ring():
    ring = TruncatedPolyRing(4, 2)  # F_4[u]/(u^2)
    assert ring.size() == 16
    assert ring.q == 4
    assert ring.mul(ring.gamma, ring.gamma) == ring.zero
    for a in ring.elements():
        assert ring.compose(ring.decompose(a)) == a
        assert ring.project(ring.lift(ring.project(a))) == ring.project(a)


def test_truncated_lift_is_constant():
    ring = TruncatedPolyRing(9, 3)
    for c in ring.residue.elements():
        t = ring.lift(c)
        assert t[1:] == (0,) * (ring.nu - 1)
        assert ring.project(t) == c


def test_element_wrapper_mixed_rings(z8, z9):
    a = z8.element(3)
    b = z9.element(3)
    with pytest.raises(MixedRings):
        _ = a + b
    assert (a * a).coords == (1,)
    assert a.is_unit()
    assert (a.inverse() * a).coords == (1,)


def test_compose_rejects_non_digits(z8):
    with pytest.raises(DigitNotInT):
        z8.compose(((0,), (1,)))  # wrong length
    with pytest.raises(DigitNotInT):
        z8.compose(((0,), (3,), (1,)))  # 3 is not in T


def test_make_ring_roundtrip(gr83):
    for ring in (zmod(8), gr83, TruncatedPolyRing(4, 2)):
        clone = make_ring(ring.descriptor())
        assert clone == ring


def test_residue_ring_wraps_field(z9):
    rr = residue_ring(z9)
    assert rr.nu == 1
    assert rr.q == 3
    assert rr.size() == 3
