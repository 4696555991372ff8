"""Random object builders shared by the test modules."""

import numpy as np

from varwit import DensityMatrix, HermitianOperator, NoiseChannel, Povm, PureState


def random_hermitian(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return HermitianOperator((g + g.conj().T) / 2.0)


def random_pure(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return PureState(v / np.linalg.norm(v))


def random_density(rng, dim, rank=None):
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_unitary(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_povm(rng, dim, n_elements):
    """A random POVM from normalized Wishart blocks, with random real outcomes."""
    blocks = []
    for _ in range(n_elements):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        blocks.append(g @ g.conj().T)
    total = np.sum(blocks, axis=0)
    vals, vecs = np.linalg.eigh(total)
    inv_sqrt = vecs @ np.diag(1.0 / np.sqrt(vals)) @ vecs.conj().T
    elements = [inv_sqrt @ b @ inv_sqrt for b in blocks]
    outcomes = [float(x) for x in rng.normal(size=n_elements)]
    return Povm(outcomes=tuple(outcomes), elements=tuple(elements))


def random_channel(rng, dim, n_branches):
    probs = rng.dirichlet(np.ones(n_branches))
    return NoiseChannel(
        branches=tuple(
            (float(p), random_unitary(rng, dim)) for p in probs
        )
    )
