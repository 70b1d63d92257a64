import numpy as np
import pytest
from sklearn.base import clone

from nestsearch import CuckooSearch, InvalidParameterError, get_function
from nestsearch.baselines import GeneticAlgorithm, ParticleSwarm

ESTIMATORS = [CuckooSearch, GeneticAlgorithm, ParticleSwarm]
SPHERE = get_function("sphere")


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_get_set_params_roundtrip(cls):
    est = cls(seed=4, max_evals=1_000)
    params = est.get_params()
    assert params["seed"] == 4 and params["max_evals"] == 1_000
    assert cls(**params).get_params() == params
    est.set_params(max_evals=2_000)
    assert est.max_evals == 2_000


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_clone_is_unfitted_copy(cls):
    est = cls(seed=4, max_evals=1_000).fit(SPHERE, SPHERE.space(3))
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    assert not hasattr(twin, "result_")
    assert twin.fit(SPHERE, SPHERE.space(3)).result_ == est.result_


@pytest.mark.parametrize("cls", ESTIMATORS)
def test_fit_attributes(cls):
    est = cls(seed=0, max_evals=1_000)
    assert est.fit(SPHERE, SPHERE.space(3), known_optimum=0.0) is est
    assert est.n_features_in_ == 3
    assert est.best_position_.shape == (3,)
    assert est.best_value_ == SPHERE(est.best_position_)
    assert est.n_evals_ <= 1_000
    assert isinstance(est.success_, bool)


def test_bounds_as_pair_of_arrays():
    est = CuckooSearch(seed=1, max_evals=500)
    est.fit(SPHERE, (np.full(2, -1.0), np.full(2, 1.0)))
    assert np.all(np.abs(est.best_position_) <= 1.0)


def test_invalid_params_surface_on_fit():
    with pytest.raises(InvalidParameterError):
        CuckooSearch(p_a=2.0).fit(SPHERE, SPHERE.space(2))


def test_plain_callable_objective():
    calls = []

    def f(x):
        calls.append(1)
        return float(np.sum(np.asarray(x) ** 2))

    res = CuckooSearch(seed=2, max_evals=300).minimize(f, [[-1, -1], [1, 1]])
    assert len(calls) == res.evals_used == 300
