import numpy as np
import pytest

from conftest import binary_entropy, loop_reduced_state
from qabn.analysis import (im_batch, im_series, im_series_density, multipartite_mutual_information,
                           reduced_qubit_state, trace_distance, validate_density,
                           von_neumann_entropy)
from qabn.errors import DomainError, NumericalDomainError
from qabn.network import PureState, evolve, product_state, random_network, build_step_operator

S = 1 / np.sqrt(2)
BELL = PureState(2, np.array([S, 0, 0, S]))


def test_reduced_plus():
    assert np.allclose(reduced_qubit_state(product_state("+"), 0), 0.5)


def test_reduced_bell():
    for i in (0, 1):
        assert np.allclose(reduced_qubit_state(BELL, i), np.eye(2) / 2)


def test_fig7_x1_diagonal_mixtures(net):
    # x1 passes through a maximally mixed reduced state only if the dynamics
    # produce a balanced mixture; record which diagonal mixtures actually occur
    _, W, init = net("fig7")
    diags = {round(reduced_qubit_state(s, 0)[0, 0].real, 9) for s in evolve(init, W, 30)}
    assert diags <= {0.25, 0.5, 0.75, 1.0}
    assert 0.75 in diags


def test_reduced_out_of_range():
    with pytest.raises(DomainError):
        reduced_qubit_state(BELL, 2)


@pytest.mark.parametrize("seed", range(8))
def test_reduced_matches_loop_oracle(seed):
    rng = np.random.default_rng(seed)
    q = 4
    v = rng.normal(size=1 << q) + 1j * rng.normal(size=1 << q)
    v /= np.linalg.norm(v)
    dense = PureState(q, v)
    idx = np.flatnonzero(v)
    sparse = PureState(q, indices=idx, values=v[idx])
    for i in range(q):
        ref = loop_reduced_state(v, q, i)
        assert np.allclose(reduced_qubit_state(dense, i), ref)
        assert np.allclose(reduced_qubit_state(sparse, i), ref)


def test_entropy_values():
    assert von_neumann_entropy(np.diag([1.0, 0.0])) == 0
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0)
    assert von_neumann_entropy(np.diag([0.25, 0.75])) == pytest.approx(binary_entropy(0.25))
    assert binary_entropy(0.25) == pytest.approx(0.8112781244591328, abs=1e-15)


def test_entropy_pure_full_density():
    rho = np.outer(BELL.amplitudes, BELL.amplitudes)
    assert von_neumann_entropy(rho) == pytest.approx(0, abs=1e-12)


def test_entropy_rejects_negative():
    with pytest.raises(NumericalDomainError):
        von_neumann_entropy(np.diag([1.5, -0.5]))


def test_im_examples():
    assert multipartite_mutual_information(product_state("01+-")) == 0
    assert multipartite_mutual_information(BELL) == pytest.approx(2.0)


def test_trace_distances():
    z, o, m = np.diag([1.0, 0]), np.diag([0, 1.0]), np.eye(2) / 2
    assert trace_distance(z, z) == 0
    assert trace_distance(z, o) == pytest.approx(1)
    assert trace_distance(z, m) == pytest.approx(0.5)


def test_validate_density():
    validate_density(np.eye(2) / 2)
    with pytest.raises(NumericalDomainError):
        validate_density(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(NumericalDomainError):
        validate_density(np.eye(2))


@pytest.mark.parametrize("name", ["fig5_caption", "fig5_text", "fig6", "fig7"])
def test_batch_matches_per_state(net, name):
    _, W, init = net(name)
    states = list(evolve(init, W, 30))
    per = np.array([multipartite_mutual_information(s) for s in states])
    batch = im_batch(np.array([s.amplitudes for s in states]), W.qubit_count)
    assert np.allclose(per, batch, atol=1e-12)
    assert np.allclose(im_series(W, init, 30), per, atol=1e-12)
    assert per.min() >= -1e-10


@pytest.mark.parametrize("name", ["or_cycle", "fig5_caption", "fig5_text", "fig6"])
def test_density_backend_agrees(net, name):
    _, W, init = net(name)
    assert np.allclose(im_series(W, init, 24), im_series_density(W, init, 24), atol=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_density_backend_random(seed):
    s = random_network(seed, 2, [1, 1])
    W = build_step_operator(s)
    init = s.initial_state()
    assert np.allclose(im_series(W, init, 12), im_series_density(W, init, 12), atol=1e-9)


@pytest.mark.parametrize("name", ["fig5_caption", "fig7"])
def test_reduced_states_valid_along_trajectory(net, name):
    _, W, init = net(name)
    for s in evolve(init, W, 40):
        for i in range(W.qubit_count):
            validate_density(reduced_qubit_state(s, i))
