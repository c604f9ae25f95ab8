import random

import pytest

from chaincodes import GaloisRing, TruncatedPolyRing, zmod
from chaincodes.constructions import (EXHAUSTIVE, RANDOM, ROWS_EXAMPLE,
                                      ROWS_FORMULA, ToeplitzSpec,
                                      binomial_bound, binomial_encoder,
                                      binomial_field_large_enough,
                                      extract_mdp_blocks, is_gamma_superregular,
                                      is_proper, is_reverse_gamma_superregular,
                                      lift_from_residue_field, lift_matrix,
                                      proper_index_pairs, search_superregular,
                                      stack_gamma_layers)
from chaincodes.conv import MINORS, ConvCode, PolyMatrix, is_mdp, \
    is_reverse_mdp
from chaincodes.errors import (BadCounts, BudgetExceeded, DependentRows,
                               InvalidParams, NotSuperregular, SizeMismatch)
from chaincodes.linalg import (RingMatrix, is_gamma_generator_sequence,
                               is_gamma_linearly_independent)


def M(ring, rows):
    return RingMatrix(ring, rows)


@pytest.fixture(scope="module")
def z11():
    return zmod(11)


@pytest.fixture(scope="module")
def z121():
    return zmod(121)


@pytest.fixture(scope="module")
def toeplitz6(z11):
    return ToeplitzSpec(z11, (1, 2, 1, 1, 3, 4))


# ------------------------------------------------------- Toeplitz basics

def test_materialize(z11):
    A = ToeplitzSpec(z11, (1, 2, 3)).materialize()
    assert [[e[0] for e in row] for row in A.data] == \
        [[1, 2, 3], [0, 1, 2], [0, 0, 1]]


def test_json_round_trip(toeplitz6):
    clone = ToeplitzSpec.from_json(toeplitz6.to_json())
    assert clone == toeplitz6


def test_is_proper():
    assert is_proper((1, 3), (2, 3))
    assert not is_proper((2, 3), (1, 3))
    with pytest.raises(SizeMismatch):
        is_proper((1,), (1, 2))
    with pytest.raises(SizeMismatch):
        is_proper((2, 1), (1, 2))


def test_proper_index_pair_counts():
    assert sum(1 for _ in proper_index_pairs(3)) == 13
    assert sum(1 for _ in proper_index_pairs(6)) == 428


# ------------------------------------------------------- superregularity

def test_example_matrix_superregular(toeplitz6, z121):
    # residue and exact-ring determinant paths are cross-checked inside
    assert is_gamma_superregular(toeplitz6)
    assert is_gamma_superregular(ToeplitzSpec(z121, (1, 2, 1, 1, 3, 4)))


def test_example_matrix_not_reverse_superregular(toeplitz6):
    # the coefficient-reversed matrix has vanishing proper minors, e.g.
    # rows (1,2,4) x columns (2,5,6) of (4,3,1,1,2,1) has determinant -11
    assert not is_gamma_superregular(toeplitz6.reversed_spec())
    assert not is_reverse_gamma_superregular(toeplitz6)
    ok, cert = is_gamma_superregular(toeplitz6.reversed_spec(),
                                     certificate=True)
    assert not ok
    bad = [(tuple(c["rows"]), tuple(c["cols"])) for c in cert
           if c["minor_valuation"] > 0]
    assert ((1, 2, 4), (2, 5, 6)) in bad
    assert len(bad) == 4


def test_superregular_iff_residue_superregular(z121, z11):
    rng = random.Random(29)
    for _ in range(40):
        first = (1,) + tuple(rng.randrange(121) for _ in range(3))
        ring_spec = ToeplitzSpec(z121, first)
        res_spec = ToeplitzSpec(z11, tuple(a % 11 for a in first))
        assert is_gamma_superregular(ring_spec) == \
            is_gamma_superregular(res_spec)


# ------------------------------------------------------- layer stacking

def test_stack_gamma_layers_identity(zmod_ring=zmod(4)):
    ring = zmod_ring
    out = stack_gamma_layers(RingMatrix.identity(ring, 2), (2, 2))
    assert [[e[0] for e in row] for row in out.data] == \
        [[1, 0], [0, 1], [2, 0], [0, 2]]


def test_stack_gamma_layers_errors():
    z4 = zmod(4)
    I2 = RingMatrix.identity(z4, 2)
    with pytest.raises(BadCounts):
        stack_gamma_layers(I2, (2,))
    with pytest.raises(BadCounts):
        stack_gamma_layers(I2, (2, 1))
    with pytest.raises(BadCounts):
        stack_gamma_layers(I2, (0, 2))
    with pytest.raises(BadCounts):
        stack_gamma_layers(M(z4, [[1, 0]]), (1, 1))
    with pytest.raises(DependentRows):
        stack_gamma_layers(M(z4, [[2, 0], [0, 1]]), (1, 1))


def test_stack_output_is_gamma_basis_random():
    rng = random.Random(61)
    checked = 0
    for ring in (zmod(4), zmod(9), TruncatedPolyRing(4, 2)):
        els = list(ring.elements())
        done = 0
        while done < 70:
            A = M(ring, [[rng.choice(els) for _ in range(2)]
                         for _ in range(2)])
            counts = tuple(sorted(rng.randint(1, 2) for _ in range(2)))
            try:
                out = stack_gamma_layers(A, counts)
            except DependentRows:
                continue
            assert is_gamma_generator_sequence(out)
            assert is_gamma_linearly_independent(out)
            done += 1
        checked += done
    assert checked >= 200


# ------------------------------------------------------- lifting

def test_lift_matrix(z11, z121):
    lifted = lift_matrix(M(z11, [[1, 10], [0, 5]]), z121)
    assert [[e[0] for e in row] for row in lifted.data] == \
        [[1, 10], [0, 5]]


def test_lift_matrix_rejects_residue_mismatch(z11):
    with pytest.raises(InvalidParams):
        lift_matrix(M(z11, [[1]]), zmod(9))


def test_lift_from_residue_field_layers(z11, z121):
    Gt = PolyMatrix(z11, [M(z11, [[1, 2, 1]]), M(z11, [[1, 3, 4]])])
    C = lift_from_residue_field(Gt, z121)
    assert C.k == 2 and C.delta == 2
    got = [[[e[0] for e in row] for row in c.data] for c in C.encoder.coeffs]
    assert got == [[[1, 2, 1], [11, 22, 11]], [[1, 3, 4], [11, 33, 44]]]
    assert is_reverse_mdp(C)


# ------------------------------------------------------- binomial encoders

def test_binomial_encoder_values():
    enc, warnings = binomial_encoder(3, 1, 1, 11)
    assert [[e[0] for e in m.data[0]] for m in enc.coeffs] == \
        [[10, 5, 1], [1, 5, 10]]
    assert len(warnings) == 1  # 11 is below the sufficient field size
    enc7, _ = binomial_encoder(3, 1, 1, 7)
    assert [[e[0] for e in m.data[0]] for m in enc7.coeffs] == \
        [[3, 5, 1], [1, 5, 3]]


def test_binomial_encoder_rejects_bad_params():
    with pytest.raises(InvalidParams):
        binomial_encoder(3, 2, 3, 11)  # k does not divide delta
    with pytest.raises(InvalidParams):
        binomial_encoder(2, 2, 2, 11)  # k = n


def test_binomial_bound_exact():
    assert binomial_bound(3, 1, 1) == 200
    assert binomial_field_large_enough(3, 1, 1, 211)
    assert not binomial_field_large_enough(3, 1, 1, 199)


def binomial_field_code(n, k, delta, p):
    Fp = GaloisRing(p, 1, 1)
    enc, _ = binomial_encoder(n, k, delta, p)
    coeffs = [M(Fp, [[e[0] for e in row] for row in m.data])
              for m in enc.coeffs]
    return ConvCode(Fp, n, PolyMatrix(Fp, coeffs))


def test_binomial_codes_are_reverse_mdp():
    # the sufficient field size (200 here) is far from strict: small
    # primes often work, and over 211 the construction is guaranteed
    for p in (7, 13, 211):
        field_code = binomial_field_code(3, 1, 1, p)
        assert is_reverse_mdp(field_code)
        lifted = lift_from_residue_field(field_code.encoder,
                                         GaloisRing(p, 2, 1))
        assert is_reverse_mdp(lifted)


def test_binomial_code_can_fail_below_bound():
    # over F_11 an admissible minor (10*10 - 1*1 = 99) vanishes
    assert not is_mdp(binomial_field_code(3, 1, 1, 11), MINORS)


# ------------------------------------------------------- block extraction

def test_extract_blocks_example_rows(toeplitz6, z121):
    Gt = extract_mdp_blocks(toeplitz6, n=3, k=1, L=1, rows=ROWS_EXAMPLE)
    got = [[[e[0] for e in row] for row in c.data] for c in Gt.coeffs]
    assert got == [[[1, 2, 1]], [[1, 3, 4]]]
    lifted = lift_from_residue_field(Gt, z121)
    assert is_mdp(lifted, MINORS)
    assert is_reverse_mdp(lifted)


def test_extract_blocks_formula_rows(toeplitz6):
    # the alternative row convention picks blocks whose admissible minors
    # are not all units on this matrix, so the assertion must be disabled
    Gt = extract_mdp_blocks(toeplitz6, n=3, k=1, L=1, rows=ROWS_FORMULA,
                            assert_minors=False)
    got = [[[e[0] for e in row] for row in c.data] for c in Gt.coeffs]
    assert got == [[[0, 0, 1]], [[2, 1, 1]]]
    with pytest.raises(NotSuperregular):
        extract_mdp_blocks(toeplitz6, n=3, k=1, L=1, rows=ROWS_FORMULA)


def test_extract_blocks_size_check(toeplitz6):
    with pytest.raises(SizeMismatch):
        extract_mdp_blocks(toeplitz6, n=3, k=2, L=1)


def test_extract_blocks_requires_superregular(z11):
    spec = ToeplitzSpec(z11, (1, 0, 0, 0, 0, 0))
    with pytest.raises(NotSuperregular):
        extract_mdp_blocks(spec, n=3, k=1, L=1)


# ------------------------------------------------------- search

def test_search_exhaustive_f2():
    hits = search_superregular(2, zmod(2), strategy=EXHAUSTIVE)
    assert [h.first_row for h in hits] == [((1,), (1,))]
    assert search_superregular(3, zmod(2), strategy=EXHAUSTIVE) == []


def test_search_exhaustive_budget():
    with pytest.raises(BudgetExceeded):
        search_superregular(6, zmod(11), strategy=EXHAUSTIVE, budget=10)


def test_search_random_requires_seed(z11):
    with pytest.raises(InvalidParams):
        search_superregular(3, z11, strategy=RANDOM)


def test_search_random_reverse(z11):
    hits = search_superregular(3, z11, strategy=RANDOM, seed=1, budget=60,
                               reverse=True)
    assert len(hits) == 36
    for spec in hits[:5]:
        assert is_reverse_gamma_superregular(spec)
    # deterministic under the seed
    again = search_superregular(3, z11, strategy=RANDOM, seed=1, budget=60,
                                reverse=True)
    assert [h.first_row for h in again] == [h.first_row for h in hits]
