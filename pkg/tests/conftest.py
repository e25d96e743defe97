import numpy as np

import olsconv as oc


def rel_err(got, ref):
    got = np.asarray(got)
    ref = np.asarray(ref)
    scale = float(np.abs(ref).max()) or 1.0
    return float(np.abs(got - ref).max()) / scale


def rng_for(*key):
    return np.random.default_rng(list(key))


def random_signal(mode, n_s, precision, rng):
    if mode == "r2r":
        return oc.make_signal(rng.standard_normal(n_s), "real", precision)
    return oc.make_signal(
        rng.standard_normal(n_s) + 1j * rng.standard_normal(n_s),
        "complex", precision)


def random_filters(mode, n_fil, m, origin, precision, rng):
    if mode == "r2r":
        taps = rng.standard_normal((n_fil, m))
    else:
        taps = (rng.standard_normal((n_fil, m))
                + 1j * rng.standard_normal((n_fil, m)))
    return oc.make_filterset(taps, origin, precision)


def global_postproc(ref, spec):
    """Reference post-processing applied to a whole (n_fil, n_s) result."""
    return np.stack([
        oc.apply_postproc(row, spec, (0, ref.shape[1]), True, True)
        for row in ref])
