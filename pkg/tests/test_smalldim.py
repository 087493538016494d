from hypothesis import given, strategies as st

from polyspace_ilp.core import Instance, Metrics, Status, lex_less
from polyspace_ilp.oracles import l1_cap, oracle_solve
from polyspace_ilp.ratlp import LPStatus, simplex_solve
from polyspace_ilp.smalldim import (TruncatedInstance, compute_sigma_bound, polyhedral_l1_bound,
                                    solve_fixed_support)

from conftest import instances


def test_sigma_formula():
    assert compute_sigma_bound([[1, 2]], [4], 2) == 192
    assert compute_sigma_bound([[1]], [0], 2) == 16
    assert compute_sigma_bound([[1, 3], [2, 1]], [5, 0], 3) == 300000


def test_examples():
    inst = Instance.create([[1, 2]], [4], [1, 1])
    assert solve_fixed_support(TruncatedInstance(inst, (1,))).x == (0, 2)
    assert solve_fixed_support(TruncatedInstance(inst.with_rhs([3]), (0, 1))).x == (1, 1)
    assert solve_fixed_support(TruncatedInstance(Instance.create([[2, 1]], [5], [0, 0]), (0,))) is None
    assert solve_fixed_support(TruncatedInstance(inst.with_rhs([0]), ())).x == (0, 0)
    assert solve_fixed_support(TruncatedInstance(inst, ())) is None


@given(instances(m=st.integers(1, 3), n=st.integers(1, 4), rhs=st.integers(-8, 8)))
def test_bound_matches_oracle_route(inst):
    """Cramer/minor enumeration and the oracle's elimination give the same cap."""
    tight = polyhedral_l1_bound(inst.A, inst.b)
    assert (tight if tight is not None else -1) == l1_cap(inst)


@given(instances(m=st.integers(1, 3), n=st.integers(1, 4), rhs=st.integers(-8, 8)),
       st.data())
def test_equivalence_with_brute_force(inst, data):
    S = tuple(sorted(data.draw(st.sets(st.integers(0, inst.n - 1), min_size=1))))
    trunc = TruncatedInstance(inst, S)
    sub = trunc.instance()
    if simplex_solve(sub).status is not LPStatus.OPTIMAL:
        return
    v = oracle_solve(sub).status
    got = solve_fixed_support(trunc)
    if v.status is Status.INFEASIBLE:
        assert got is None
    else:
        assert got.x == trunc.embed(v.solution.x)
        assert got.objective == v.solution.objective


@given(st.lists(st.integers(0, 3), min_size=2, max_size=2), st.lists(st.integers(0, 3), min_size=2, max_size=2))
def test_embedding_preserves_lex(y, z):
    inst = Instance.create([[1, 1, 1, 1]], [0], [0, 0, 0, 0])
    t = TruncatedInstance(inst, (1, 3))
    assert lex_less(t.embed(y), t.embed(z)) == lex_less(y, z)


def test_peak_words_track_log_sigma():
    peaks = []
    for bv in (20, 200, 2000):
        met = Metrics()
        res = solve_fixed_support(TruncatedInstance(Instance.create([[2, 3]], [bv], [3, 4]), (0, 1)), met)
        assert res is not None
        peaks.append(met.peak_live_words)
    assert max(peaks) == min(peaks)
