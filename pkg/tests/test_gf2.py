import random

import pytest

from deltatwist.errors import DimensionMismatch, TooLarge
from deltatwist.gf2 import (
    Gf2Matrix,
    Gf2SymMatrix,
    IntMatrix,
    JoinBlocks,
    assemble_join,
    check_det_identity,
    det_gf2,
    det_int,
    max_nonsingular_principal_order,
    principal_submatrix,
    rank_gf2,
)

P3 = Gf2SymMatrix.from_entries([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
K3 = Gf2SymMatrix.from_entries([[0, 1, 1], [1, 0, 1], [1, 1, 0]])


def sym_from_bits(n, bits):
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    rows = [0] * n
    for k, (i, j) in enumerate(pairs):
        if (bits >> k) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Gf2SymMatrix(n, rows)


def test_symmetry_enforced():
    with pytest.raises(DimensionMismatch):
        Gf2SymMatrix.from_entries([[0, 1], [0, 0]])
    Gf2Matrix.from_entries([[0, 1], [0, 0]])  # general class allows it


def test_principal_submatrix():
    assert principal_submatrix(P3, [0, 1]).to_entries() == [[0, 1], [1, 0]]
    assert principal_submatrix(P3, []).order == 0
    assert principal_submatrix(K3, [1, 2]).to_entries() == [[0, 1], [1, 0]]
    with pytest.raises(IndexError):
        principal_submatrix(P3, [3])


def test_det_gf2():
    assert det_gf2(Gf2SymMatrix.from_entries([[0, 1], [1, 0]])) == 1
    assert det_gf2(Gf2SymMatrix(0, ())) == 1  # by convention
    assert det_gf2(P3) == 0  # the two leaf rows coincide


def test_rank_gf2():
    assert rank_gf2(Gf2SymMatrix.from_entries([[0, 0], [0, 0]])) == 0
    eye3 = Gf2SymMatrix.from_entries([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank_gf2(eye3) == 3
    assert rank_gf2(K3) == 2  # the three rows sum to zero


def test_max_nonsingular_principal_order():
    assert max_nonsingular_principal_order(K3) == 2
    assert max_nonsingular_principal_order(Gf2SymMatrix(3, (0, 0, 0))) == 0
    eye4 = Gf2SymMatrix(4, tuple(1 << i for i in range(4)))
    assert max_nonsingular_principal_order(eye4) == 4
    with pytest.raises(TooLarge):
        max_nonsingular_principal_order(Gf2SymMatrix(21, (0,) * 21))


def test_assemble_join_examples():
    b = JoinBlocks(a=Gf2SymMatrix.from_entries([[1]]), u=(1,), v=(1,), c=0,
                   x=(1,), y=(1,), b=Gf2SymMatrix.from_entries([[0]]))
    assert assemble_join(b).to_entries() == [[1, 1, 0], [1, 0, 1], [0, 1, 0]]

    b0 = JoinBlocks(a=IntMatrix(()), u=(), v=(), c=5, x=(), y=(), b=IntMatrix(()))
    assert assemble_join(b0).rows == ((5,),)

    bi = JoinBlocks(a=IntMatrix([[2]]), u=(1,), v=(3,), c=1,
                    x=(2,), y=(1,), b=IntMatrix([[4]]))
    assert assemble_join(bi).rows == ((2, 1, 0), (3, 1, 2), (0, 1, 4))


def test_check_det_identity_examples():
    b = JoinBlocks(a=Gf2SymMatrix.from_entries([[1]]), u=(1,), v=(1,), c=0,
                   x=(1,), y=(1,), b=Gf2SymMatrix.from_entries([[0]]))
    res = check_det_identity(b)
    assert (res.lhs, res.rhs, res.holds) == (1, 1, True)

    bi = JoinBlocks(a=IntMatrix([[2]]), u=(1,), v=(3,), c=1,
                    x=(2,), y=(1,), b=IntMatrix([[4]]))
    res = check_det_identity(bi)
    assert (res.lhs, res.rhs, res.holds) == (-8, -8, True)

    for c in (-4, 0, 3):
        b0 = JoinBlocks(a=IntMatrix(()), u=(), v=(), c=c, x=(), y=(), b=IntMatrix(()))
        res = check_det_identity(b0)
        assert res.lhs == res.rhs == c


def test_join_blocks_validation():
    with pytest.raises(DimensionMismatch):
        JoinBlocks(a=Gf2SymMatrix(1, (0,)), u=(0, 1), v=(0,), c=0,
                   x=(), y=(), b=Gf2SymMatrix(0, ()))
    with pytest.raises(DimensionMismatch):
        JoinBlocks(a=Gf2SymMatrix(1, (0,)), u=(0,), v=(0,), c=0,
                   x=(), y=(), b=IntMatrix(()))
    with pytest.raises(DimensionMismatch):
        JoinBlocks(a=Gf2SymMatrix(1, (0,)), u=(2,), v=(0,), c=0,
                   x=(), y=(), b=Gf2SymMatrix(0, ()))


def test_det_int():
    assert det_int(IntMatrix([[2, 1], [3, 1]])) == -1
    eye4 = IntMatrix([[1 if i == j else 0 for j in range(4)] for i in range(4)])
    assert det_int(eye4) == 1
    assert det_int(IntMatrix([[2, 1, 0], [3, 1, 2], [0, 1, 4]])) == -8
    assert det_int(IntMatrix(())) == 1
    assert det_int(IntMatrix([[0, 1], [0, 2]])) == 0
    with pytest.raises(DimensionMismatch):
        det_int(IntMatrix([[1, 2]]))


def brute_det_int(rows):
    # cofactor expansion, independent of the Bareiss path
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * brute_det_int(minor)
    return total


def test_det_int_matches_cofactor_expansion():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(0, 5)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert det_int(IntMatrix(rows)) == brute_det_int(rows)


def test_rank_equals_max_principal_order_small_exhaustive():
    # full sweep at order 5 lives in the acceptance suite
    for n in range(4):
        for bits in range(1 << (n * (n + 1) // 2)):
            m = sym_from_bits(n, bits)
            assert rank_gf2(m) == max_nonsingular_principal_order(m)


def test_rank_monotone_under_principal_restriction():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(0, 6)
        m = sym_from_bits(n, rng.getrandbits(n * (n + 1) // 2))
        full_rank = rank_gf2(m)
        for _ in range(5):
            idx = [i for i in range(n) if rng.random() < 0.5]
            assert rank_gf2(principal_submatrix(m, idx)) <= full_rank


def test_det_iff_full_rank():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(0, 6)
        m = sym_from_bits(n, rng.getrandbits(n * (n + 1) // 2))
        assert (det_gf2(m) == 1) == (rank_gf2(m) == m.order)
