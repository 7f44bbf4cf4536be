import numpy as np

from circfrechet.circle import PI, wrap


def mixed_sample(rng, n):
    """Draws mixing a few repeated atoms with wrapped-normal or uniform noise."""
    n_atoms = rng.integers(0, 4)
    atoms = rng.uniform(-PI, PI, n_atoms)
    p_atom = rng.uniform(0.0, 0.7) if n_atoms else 0.0
    center = rng.uniform(-PI, PI)
    spread = rng.choice([0.3, 1.0, 2.5])
    out = np.empty(n)
    for j in range(n):
        u = rng.uniform()
        if u < p_atom:
            out[j] = atoms[rng.integers(n_atoms)]
        elif u < p_atom + (1 - p_atom) / 2:
            out[j] = center + spread * rng.standard_normal()
        else:
            out[j] = rng.uniform(-PI, PI)
    return np.sort(wrap(out))


def random_piecewise(rng, n_atoms=None, n_segments=None, degree=3):
    """Random normalized mixture of atoms and nonnegative polynomial segments."""
    from circfrechet.distributions import CircularDistribution
    from numpy.polynomial import Polynomial

    n_atoms = rng.integers(0, 3) if n_atoms is None else n_atoms
    n_segments = rng.integers(1, 4) if n_segments is None else n_segments
    cuts = np.sort(rng.uniform(-PI, PI, 2 * n_segments))
    polys = []
    for j in range(n_segments):
        a, b = cuts[2 * j], cuts[2 * j + 1]
        # squares of random polynomials are nonnegative
        p = Polynomial(rng.normal(size=degree // 2 + 1))
        p = p * p + Polynomial([rng.uniform(0, 1)])
        polys.append((a, b, p))
    atom_w = rng.uniform(0.05, 0.3, n_atoms)
    cont = 1.0 - atom_w.sum()
    masses = [(p.integ()(b - a) - p.integ()(0)) for a, b, p in polys]
    scale = cont / sum(masses)
    segs = [(a, b, (p * scale).coef) for a, b, p in polys]
    atoms = list(zip(rng.uniform(-PI, PI, n_atoms), atom_w))
    return CircularDistribution(atoms, segs)
