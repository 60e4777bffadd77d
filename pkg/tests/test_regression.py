import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.base import clone

from windcost.errors import DomainError, NoViableCandidate, RankDeficient
from windcost.regression import (
    Basis,
    BasisSelectionRegressor,
    Dataset,
    design_matrix,
    fit_least_squares,
    make_synthetic_dataset,
    polynomial_fit_rmse,
    polynomial_interpolation_demo,
    select_model,
)

PUBLISHED = np.array([620.0, -1.68, 182.0, -1005.0])


def test_identity_design_appends_ones():
    X = np.arange(12.0).reshape(4, 3) + 1
    A = design_matrix(Dataset(X, np.zeros(4)), [Basis.IDENTITY] * 3)
    np.testing.assert_array_equal(A, np.column_stack([X, np.ones(4)]))


def test_log_of_e_is_one():
    A = design_matrix(Dataset(np.full((3, 1), math.e), np.zeros(3)), [Basis.LOG])
    np.testing.assert_allclose(A[:, 0], 1.0)


def test_sqrt_of_negative_names_column_and_row():
    X = np.array([[1.0, 4.0], [2.0, -1.0], [3.0, 9.0]])
    with pytest.raises(DomainError, match=r"'b'.*row 1"):
        design_matrix(Dataset(X, np.zeros(3), ("a", "b")), [Basis.IDENTITY, Basis.SQRT])


def test_exact_system_interpolates():
    A = np.array([[1.0, 1.0], [2.0, 1.0]])
    fit = fit_least_squares(A, [3.0, 5.0])
    np.testing.assert_allclose(fit.coefficients, [2.0, 1.0])
    assert fit.rmse < 1e-10


def test_zero_response_null_fit():
    A = np.column_stack([np.linspace(1, 2, 10), np.ones(10)])
    fit = fit_least_squares(A, np.zeros(10))
    assert np.all(fit.coefficients == 0) and fit.rmse == 0


def test_rank_deficient():
    x = np.linspace(1, 2, 10)
    with pytest.raises(RankDeficient):
        fit_least_squares(np.column_stack([x, 2 * x, np.ones(10)]), x)
    with pytest.raises(RankDeficient):
        fit_least_squares(np.ones((1, 2)), [1.0])


def test_condition_warning():
    x = np.linspace(1, 2, 50)
    A = np.column_stack([x, x + 1e-9 * np.sin(x * 50), np.ones(50)])
    assert fit_least_squares(A, x).condition_warning


def test_recovers_published_form_coefficients():
    rng = np.random.default_rng(7)
    hh, sp, age = rng.uniform(50, 150, 200), rng.uniform(200, 600, 200), rng.uniform(0, 16, 200)
    y = 620 * np.log(hh) - 1.68 * sp + 182 * np.sqrt(age) - 1005
    A = design_matrix(Dataset(np.column_stack([hh, sp, age]), y), [Basis.LOG, Basis.IDENTITY, Basis.SQRT])
    fit = fit_least_squares(A, y)
    np.testing.assert_allclose(fit.coefficients, PUBLISHED, rtol=1e-6)


def test_residual_orthogonal_to_columns():
    rng = np.random.default_rng(3)
    A = np.column_stack([rng.normal(size=(40, 3)), np.ones(40)])
    y = rng.normal(size=40)
    r = y - A @ fit_least_squares(A, y).coefficients
    assert np.all(np.abs(A.T @ r) < 1e-8 * np.linalg.norm(A, axis=0))


def test_select_model_enumerates_64_and_ranks_generator_first():
    data = make_synthetic_dataset((Basis.LOG, Basis.IDENTITY, Basis.SQRT), rng=0)
    sel = select_model(data)
    assert sel.attempted == 64 and len(sel) == 64
    assert sel.best.basis_assignment == (Basis.LOG, Basis.IDENTITY, Basis.SQRT)
    assert sel.best.rmse < 1e-8
    rmses = [c.rmse for c in sel]
    assert rmses == sorted(rmses)


def test_single_basis_gives_one_candidate():
    sel = select_model(make_synthetic_dataset([Basis.IDENTITY] * 3, rng=1), {Basis.IDENTITY})
    assert sel.attempted == 1


def test_negative_column_skips_log_and_sqrt():
    data = make_synthetic_dataset([Basis.IDENTITY] * 3, rng=2)
    X = data.predictors.copy()
    X[:, 1] -= 400  # specific power now spans negative values
    sel = select_model(Dataset(X, data.response))
    assert len(sel.skipped) == 32 and len(sel) == 32
    assert all(s.basis_assignment[1] in (Basis.LOG, Basis.SQRT) for s in sel.skipped)
    assert all("domain" in s.reason for s in sel.skipped)


def test_no_viable_candidate():
    X = -np.ones((6, 1)) * np.arange(1, 7)[:, None]
    with pytest.raises(NoViableCandidate):
        select_model(Dataset(X, np.arange(6.0)), {Basis.LOG})
    with pytest.raises(NoViableCandidate):
        select_model(Dataset(np.zeros((0, 3)), np.zeros(0)))


def test_tie_break_by_declaration_order():
    # x in {1, 4}: identity and square columns are both affine in the indicator
    X = np.array([[1.0], [4.0], [1.0], [4.0]])
    sel = select_model(Dataset(X, [0.0, 1.0, 0.0, 1.0]))
    assert [c.basis_assignment[0] for c in sel][:2] in ([Basis.IDENTITY, Basis.SQUARE], [Basis.IDENTITY, Basis.LOG])


def test_superset_never_worse():
    data = make_synthetic_dataset((Basis.SQRT, Basis.SQUARE, Basis.LOG), rng=4, noise=5.0)
    small = select_model(data, {Basis.IDENTITY, Basis.LOG}).best.rmse
    big = select_model(data).best.rmse
    assert big <= small


def test_interpolation_two_points():
    coefs, rmse = polynomial_interpolation_demo([0.0, 2.0], [1.0, 5.0])
    np.testing.assert_allclose(coefs, [1.0, 2.0])
    assert rmse < 1e-12


def test_interpolation_recovers_quartic():
    true = np.array([1.0, -2.0, 0.5, 3.0, -0.25])
    x = np.array([-2.0, -1.0, 0.5, 1.5, 3.0])
    coefs, rmse = polynomial_interpolation_demo(x, np.polynomial.polynomial.polyval(x, true))
    np.testing.assert_allclose(coefs, true, rtol=1e-6, atol=1e-9)
    assert rmse < 1e-8


def test_interpolation_guards():
    with pytest.raises(DomainError):
        polynomial_interpolation_demo([1.0, 1.0, 2.0], [0, 1, 2])
    with pytest.raises(DomainError):
        polynomial_interpolation_demo(np.arange(14.0), np.arange(14.0))


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_training_rmse_non_increasing_in_degree(seed):
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1, 1, 30)
    y = rng.normal(size=30)
    rmses = [polynomial_fit_rmse(x, y, deg) for deg in range(11)]
    assert all(b <= a + 1e-12 for a, b in zip(rmses, rmses[1:]))


def test_estimator_api():
    data = make_synthetic_dataset((Basis.LOG, Basis.IDENTITY, Basis.SQRT), rng=5)
    est = BasisSelectionRegressor()
    est.fit(data.predictors, data.response)
    assert est.best_.basis_assignment == (Basis.LOG, Basis.IDENTITY, Basis.SQRT)
    np.testing.assert_allclose(est.coef_, PUBLISHED[:3], rtol=1e-6)
    np.testing.assert_allclose(est.predict(data.predictors), data.response, atol=1e-6)
    assert est.score(data.predictors, data.response) == pytest.approx(1.0)
    restricted = clone(est).set_params(allowed_bases=["identity"])
    assert restricted.fit(data.predictors, data.response).selection_.attempted == 1
    with pytest.raises(ValueError):
        est.predict(data.predictors[:, :2])


def test_round_trip_all_assignments_quick():
    for i, a in enumerate(itertools.product(list(Basis), repeat=3)):
        if i % 9:
            continue
        assert select_model(make_synthetic_dataset(a, rng=i)).best.basis_assignment == a
