import itertools

import pytest
import sympy

from qmds.config import resolve_threads
from qmds.constructions import (
    ConstructionError,
    ConstructionParams,
    ConstructionRouter,
    ParameterError,
    build_t4,
    build_t5,
    build_t6,
    check_hypotheses,
    choose_lambda,
    construct,
    coset_sets,
    count_coset_collisions,
    lemma6_solve,
    lemma9_solve,
    lemma12_solve,
    make_params,
    params_from_dict,
)
from qmds.constructions.lemmas import lemma6_system, lemma9_system, lemma12_system
from qmds.enumeration import enumerate_params
from qmds.exactlinalg import Matrix, rank
from qmds.gf import ZERO, make_field, prime_power
from qmds.grs import GrsCode, criterion_counterexample, gram_check, is_hermitian_self_orthogonal
from qmds.verify import verify_code


class TestParams:
    def test_small_t4(self):
        params = make_params(5, 1, "t4", 3, 4, 1, 1)
        assert (params.l, params.m, params.overlap) == (8, 6, 2)
        assert params.n == 13
        assert params.d_max == 3
        assert params.label() == "T4 q=5 (s,t,h,r)=(3,4,1,1)"

    @pytest.mark.parametrize(
        "p,theorem,s,t,h,r,n,d_max",
        [
            (37, "t5", 19, 4, 1, 1, 396, 18),
            (37, "t6", 38, 6, 10, 1, 588, 22),
            (37, "t6", 38, 4, 17, 1, 954, 25),
            (5, "t6", 6, 4, 3, 2, 24, 2),
        ],
    )
    def test_lengths_and_dimensions(self, p, theorem, s, t, h, r, n, d_max):
        params = make_params(p, 1, theorem, s, t, h, r)
        assert params.n == n
        assert params.d_max == d_max

    def test_even_h_rejected_for_t4(self):
        with pytest.raises(ParameterError) as info:
            make_params(5, 1, "t4", 3, 4, 2, 1)
        assert any("odd h <= s-1" in v for v in info.value.violations)

    def test_overlap_too_large(self):
        violations = check_hypotheses(5, "t4", 3, 2, 1, 1)
        assert len(violations) == 1
        assert "q-1 > (q^2-1)/(st)*hr" in violations[0]

    def test_every_violation_is_reported(self):
        violations = check_hypotheses(5, "t4", 4, 3, 5, 5)
        assert len(violations) == 5
        assert all(v.startswith("hypothesis '") for v in violations)

    def test_unknown_theorem(self):
        assert check_hypotheses(5, "t7", 3, 4, 1, 1)
        with pytest.raises(ParameterError):
            make_params(5, 1, "t7", 3, 4, 1, 1)

    def test_check_dimension(self):
        params = make_params(5, 1, "t4", 3, 4, 1, 1)
        assert params.check_dimension(None) == 3
        assert params.check_dimension(2) == 2
        for d in (0, 4):
            with pytest.raises(ParameterError, match="1 <= d <= d_max"):
                params.check_dimension(d)

    def test_dict_round_trip(self):
        params = make_params(37, 1, "t6", 38, 6, 10, 1)
        again, d = params_from_dict(params.to_dict(20))
        assert again == params
        assert d == 20
        with pytest.raises(ParameterError, match="malformed"):
            params_from_dict({"p": 37})


class TestLemmaSystems:
    def test_lemma6_single_unknown(self, f25):
        assert lemma6_system(f25, 3, 1).rows == 0
        assert lemma6_solve(f25, 3, 1) == [f25.one]

    @pytest.mark.parametrize(
        "p,e,s,h,system,solve,normalized",
        [
            (5, 1, 3, 1, lemma9_system, lemma9_solve, True),
            (5, 1, 3, 2, lemma9_system, lemma9_solve, False),
            (13, 1, 7, 3, lemma9_system, lemma9_solve, True),
            (13, 1, 7, 2, lemma9_system, lemma9_solve, False),
            (13, 1, 7, 3, lemma6_system, lemma6_solve, True),
            (11, 1, 3, 2, lemma9_system, lemma9_solve, False),
            (5, 1, 6, 3, lemma12_system, lemma12_solve, False),
            (7, 1, 8, 3, lemma12_system, lemma12_solve, False),
            (7, 1, 8, 4, lemma12_system, lemma12_solve, True),
        ],
    )
    def test_solution_agrees_with_exhaustive_search(self, p, e, s, h, system, solve, normalized):
        ctx = make_field(p, e)
        A = system(ctx, s, h)
        assert A.rows == (h - 1 if normalized else h - 2)

        def satisfies(u):
            if normalized and ctx.sum(u) != ctx.one:
                return False
            return all(x == ZERO for x in A.matvec(list(u)))

        base = ctx.base_field_elements()
        assert any(satisfies(u) for u in itertools.product(base, repeat=h))

        u = solve(ctx, s, h)
        assert len(u) == h
        assert all(x != ZERO and ctx.in_base_field(x) for x in u)
        assert satisfies(u)

    def test_all_ones_row_falls_back_to_kernel(self):
        # q = 3, s = 4, h = 2: mu l = q + 1, so the only row is (1, 1)
        ctx = make_field(3, 1)
        A = lemma12_system(ctx, 4, 2)
        assert A.to_rows() == [[ctx.one, ctx.one]]
        u = lemma12_solve(ctx, 4, 2)
        assert u == [ctx.neg(ctx.one), ctx.one]
        assert ctx.sum(u) == ZERO

    def test_hypotheses_are_checked(self, f25):
        with pytest.raises(ParameterError):
            lemma6_solve(f25, 3, 2)
        with pytest.raises(ParameterError):
            lemma9_solve(f25, 2, 1)
        with pytest.raises(ParameterError):
            lemma12_solve(f25, 6, 4)


class TestCosets:
    def test_small_t4_sets(self):
        sets = coset_sets(make_params(5, 1, "t4", 3, 4, 1, 1))
        assert len(sets.a) == 8
        assert len(sets.b) == 6
        assert sets.both == (0, 12)
        assert sets.a == tuple(range(0, 24, 3))
        assert sets.b == tuple(range(0, 24, 4))

    def test_collisions(self, f25):
        assert count_coset_collisions(f25, 3, 4, 0, 0) == 2
        ctx = make_field(37, 1)
        assert all(count_coset_collisions(ctx, 1, 4, alpha, 0) == 342 for alpha in range(4))

    def test_choose_lambda(self, f25):
        assert choose_lambda(f25, [], []) == f25.one
        assert choose_lambda(f25, [0], [0]) == 0
        # -1 + lambda vanishes at lambda = 1, the first candidate
        neg_one = f25.neg(f25.one)
        assert choose_lambda(f25, [neg_one], [0]) == 6
        with pytest.raises(ConstructionError):
            choose_lambda(f25, [0], [])


class TestBuilders:
    def test_small_t4(self, f25, t4_small):
        code, witness = t4_small.code, t4_small.witness
        assert code.n == 13
        assert code.a[0] == ZERO
        assert witness.lam == 6
        assert witness.u == (f25.one,)
        assert f25.norm(witness.e) == f25.from_int(2)
        assert str(t4_small.quantum) == "[[13,7,4]]_5"
        assert is_hermitian_self_orthogonal(code)
        assert t4_small.provenance["lemma"] == "lemma6"
        assert t4_small.provenance["d_max"] == 3

    def test_t5(self):
        params = make_params(37, 1, "t5", 19, 4, 1, 1)
        code = build_t5(params)
        assert (code.n, code.d) == (396, 18)
        assert is_hermitian_self_orthogonal(code)
        assert gram_check(code)

    @pytest.mark.parametrize("h,r,n,d", [(10, 1, 588, 22), (17, 1, 954, 25)])
    def test_t6_q37(self, h, r, n, d):
        t = 6 if h == 10 else 4
        code = build_t6(make_params(37, 1, "t6", 38, t, h, r))
        assert (code.n, code.d) == (n, d)
        assert is_hermitian_self_orthogonal(code)

    def test_t6_covers_every_nonzero_element(self):
        construction = construct(make_params(5, 1, "t6", 6, 4, 3, 2))
        assert sorted(construction.code.a) == list(range(24))
        assert construction.d == 2
        assert construction.witness.lam == 0
        assert gram_check(construction.code)

    def test_t6_q3_with_unnormalized_solution(self):
        assert check_hypotheses(3, "t6", 4, 2, 2, 1) == []
        construction = construct(make_params(3, 1, "t6", 4, 2, 2, 1))
        assert (construction.code.n, construction.d) == (8, 1)
        assert is_hermitian_self_orthogonal(construction.code)
        assert gram_check(construction.code)

    def test_t4_below_d_max(self):
        code = build_t4(make_params(5, 1, "t4", 3, 4, 1, 1), 2)
        assert code.d == 2
        assert is_hermitian_self_orthogonal(code)

    def test_dimension_above_d_max(self):
        with pytest.raises(ParameterError):
            construct(make_params(5, 1, "t4", 3, 4, 1, 1), 4)

    def test_wrong_builder(self):
        with pytest.raises(ConstructionError):
            build_t5(make_params(5, 1, "t4", 3, 4, 1, 1))

    def test_construction_is_deterministic(self):
        params = make_params(29, 1, "t6", 30, 14, 4, 1)
        assert construct(params).code == construct(params).code


class TestRouter:
    def test_routes_by_theorem(self):
        router = ConstructionRouter()
        assert router.route(make_params(5, 1, "t4", 3, 4, 1, 1)).name == "t4_builder"
        assert router.route(make_params(37, 1, "t5", 19, 4, 1, 1)).name == "t5_builder"
        assert router.route(make_params(5, 1, "t6", 6, 4, 3, 2)).name == "t6_builder"

    def test_process_reports_parameter_errors(self):
        state = ConstructionRouter().process({"params": make_params(5, 1, "t4", 3, 4, 1, 1), "d": 9})
        assert state["exit_code"] == 2
        assert "1 <= d <= d_max" in state["diagnostics"][0]

    def test_process_builds(self):
        state = ConstructionRouter().process({"params": make_params(5, 1, "t4", 3, 4, 1, 1), "d": None})
        assert state["d"] == 3
        assert state["construction"].code.n == 13

    def test_debug_output(self, capsys):
        construct(make_params(5, 1, "t4", 3, 4, 1, 1), debug=True)
        out = capsys.readouterr().out
        assert "router       | Routing T4 q=5" in out
        assert "t4_builder   | " in out


ODD_Q = [q for q in range(3, 50) if q % 2 and len(sympy.factorint(q)) == 1]
SEARCH_LIMIT = 10 ** 5


def _lemma_cases(q):
    for s in sympy.divisors(q + 1):
        if s % 2:
            for h in range(1, s):
                yield s, h, lemma9_system, lemma9_solve
                if h % 2:
                    yield s, h, lemma6_system, lemma6_solve
        else:
            for h in range(1, s // 2 + 1):
                yield s, h, lemma12_system, lemma12_solve


def _ones_in_row_space(A):
    ones = Matrix.from_rows(A.ctx, [[A.ctx.one] * A.cols], cols=A.cols)
    return rank(ones.stack(A)) == rank(A)


@pytest.mark.slow
@pytest.mark.parametrize("q", ODD_Q)
def test_every_lemma_system_is_solved(q):
    ctx = make_field(*prime_power(q))
    base = ctx.base_field_elements()
    for s, h, system, solve in _lemma_cases(q):
        A = system(ctx, s, h)
        u = solve(ctx, s, h)
        assert all(x != ZERO and ctx.in_base_field(x) for x in u)
        assert all(x == ZERO for x in A.matvec(u))
        if A.rows == h - 1 and not _ones_in_row_space(A):
            assert ctx.sum(u) == ctx.one
        if len(base) ** h <= SEARCH_LIMIT and h > 1:
            assert any(all(x == ZERO for x in A.matvec(list(w))) for w in itertools.product(base, repeat=h))


def _mutation_sample(n):
    return sorted({0, n // 2, n - 1})


@pytest.mark.slow
@pytest.mark.parametrize("q", [3, 5, 7, 9, 13, 17, 25, 29, 37])
def test_every_tuple_builds_a_self_orthogonal_code(q):
    p, e = prime_power(q)
    records = enumerate_params(q)
    assert records
    for rec in records:
        construction = construct(make_params(p, e, rec.theorem, rec.s, rec.t, rec.h, rec.r))
        code = construction.code
        assert code.n == rec.n
        report = verify_code(code, ["criterion", "gram", "lemma_ranges"], provenance=construction.provenance)
        assert report.passed, report.render()
        if code.d < 2:
            continue
        for index in _mutation_sample(code.n):
            v = list(code.v)
            v[index] = code.ctx.mul(v[index], code.ctx.g)
            broken = GrsCode(code.ctx, code.a, tuple(v), code.d)
            assert criterion_counterexample(broken) is not None, (rec, index)


@pytest.mark.slow
def test_q641_t4_code():
    construction = construct(make_params(641, 1, "t4", 107, 32, 5, 1))
    assert (construction.code.n, construction.d) == (31441, 335)
    assert is_hermitian_self_orthogonal(construction.code, threads=resolve_threads(None))
