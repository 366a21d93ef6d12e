import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgsurf.errors import DomainError, SpecError
from pgsurf.funcs import Constant, Exp, Linear, Power, Product, Quadratic, Scale, Sum, Tanh, from_dict

coef = st.floats(-2, 2, allow_nan=False)
t_vals = st.floats(-1, 1, allow_nan=False)

primitives = st.one_of(
    st.builds(Constant, coef),
    st.builds(Linear, coef, coef),
    st.builds(Quadratic, coef, coef, coef),
    st.builds(Exp, st.floats(0.1, 2), st.floats(-1.5, 1.5)),
    st.builds(Tanh, coef, st.floats(0.2, 2), coef),
    # base >= 0.5 on [-1, 1]
    st.builds(Power, st.floats(0.1, 1), st.floats(1.5, 3), st.floats(-2.5, 2.5)),
)


def test_eval_examples():
    assert Exp(8, 1).eval(0) == 8
    assert Tanh(1, 1, 0).eval(0) == 0
    assert Power(1, 0, 0.5).eval(4) == 2


def test_derivative_examples():
    assert Tanh(1, 1, 0).d1(0) == 1
    ts = np.linspace(-3, 3, 7)
    assert np.all(Quadratic(-1, 2, 1).d2(ts) == -2)
    for t in (-1.0, 0.3, 2.0):
        e = Exp(1.7, -0.4)
        assert e.d1(t) == pytest.approx(-0.4 * e.eval(t), rel=1e-15)


def test_fd_examples():
    first, _ = Linear(2, 0).fd_check(0.7, 1e-4)
    assert abs(first - 2) <= 1e-10
    _, second = Quadratic(1, 0, 0).fd_check(1.0, 1e-4)
    assert abs(second - 2) <= 1e-6
    first, _ = Tanh(1, 1, 0).fd_check(0.5, 1e-5)
    assert abs(first - Tanh(1, 1, 0).d1(0.5)) <= 1e-8


def test_power_domain():
    p = Power(1, 0, 0.5)
    with pytest.raises(DomainError):
        p.eval(-1.0)
    with pytest.raises(DomainError):
        p.eval(0.0)
    assert p.valid(np.array([-1.0, 1.0])).tolist() == [False, True]


def test_declared_interval():
    f = Linear(1, 0, domain=(0.0, 1.0))
    assert f.eval(1.0) == 1.0
    with pytest.raises(DomainError):
        f.eval(1.5)
    s = Sum((Linear(1, 0), f))
    assert not s.valid(2.0)


@settings(max_examples=200, deadline=None)
@given(primitives, t_vals)
def test_fd_second_order_convergence(fn, t):
    exact = fn.d1(t)
    errs = [abs(fn.fd_check(t, h)[0] - exact) for h in (1e-3, 1e-4)]
    scale = 1 + abs(fn.eval(t))
    # roundoff floor at h=1e-4 is about eps*|f|/h
    assert errs[1] <= 1e-6 * scale
    if errs[0] > 1e-8 * scale:
        ratio = errs[0] / errs[1]
        assert 100 / 4 <= ratio <= 100 * 4


@settings(max_examples=200, deadline=None)
@given(primitives, t_vals)
def test_second_derivative_matches_fd(fn, t):
    _, second = fn.fd_check(t, 1e-4)
    assert second == pytest.approx(fn.d2(t), rel=1e-4, abs=1e-5 * (1 + abs(fn.eval(t))))


@given(primitives, primitives, t_vals)
def test_leibniz_and_linearity(u, v, t):
    p = Product((u, v))
    assert p.d1(t) == pytest.approx(u.d1(t) * v.eval(t) + u.eval(t) * v.d1(t), rel=1e-14, abs=1e-14)
    assert p.d2(t) == pytest.approx(
        u.d2(t) * v.eval(t) + 2 * u.d1(t) * v.d1(t) + u.eval(t) * v.d2(t), rel=1e-14, abs=1e-14)
    s = Sum((u, Scale(3.0, v)))
    assert s.d1(t) == pytest.approx(u.d1(t) + 3.0 * v.d1(t), rel=1e-14, abs=1e-14)


def test_array_and_scalar_agree():
    fn = Product((Tanh(0.5, 1.2, 0.1), Sum((Exp(1, 0.3), Quadratic(1, 0, -2)))))
    ts = np.linspace(-1, 1, 11)
    vals, d1s, d2s = fn.jet(ts)
    for i, t in enumerate(ts):
        v, d1, d2 = fn.jet(float(t))
        assert (v, d1, d2) == (vals[i], d1s[i], d2s[i])


def test_json_round_trip():
    fn = Sum((Scale(2.0, Power(1, 3, -0.5)), Product((Tanh(1, 2, 0), Linear(1, 1))), Constant(3.0)))
    again = from_dict(fn.to_dict())
    assert again == fn


@pytest.mark.parametrize("doc, path", [
    ({"kind": "nope"}, "/kind"),
    ({"kind": "linear", "m": 1}, "/b"),
    ({"kind": "linear", "m": "x", "b": 0}, "/m"),
    ({"kind": "sum", "args": [{"kind": "const", "c": 1}, {"kind": "exp", "c": 1}]}, "/args/1/k"),
    ({"kind": "scale", "c": 2, "args": []}, "/args"),
])
def test_schema_error_paths(doc, path):
    with pytest.raises(SpecError) as info:
        from_dict(doc)
    assert info.value.path == path


def test_finite_on_domain():
    fn = Power(0.5, 1.0, 1.5, domain=(-1.0, 1.0))
    v, d1, d2 = fn.jet(np.linspace(-1, 1, 101))
    assert all(np.all(np.isfinite(a)) for a in (v, d1, d2))
    assert math.isclose(fn.eval(1.0), 1.5 ** 1.5)
