"""See-saw backend selection.

The compiled Cython kernel is preferred; the pure-numpy fallback is used
when the extension was not built.  Both implement the same algorithm on
the same precomputed random starts, so results agree to convergence
tolerance.
"""

from __future__ import annotations

try:
    from . import _seesaw_cy as _impl
except ImportError:  # extension not compiled
    from . import _seesaw_py as _impl

from . import _seesaw_py

SEESAW_BACKEND = _impl.BACKEND_NAME


def seesaw_batch(W, d, starts_psi, starts_phi, max_iters, conv_tol, backend=None):
    """Dispatch to the selected backend; `backend` overrides for
    benchmarking ("numpy" forces the fallback)."""
    impl = _impl
    if backend is not None:
        if backend == _seesaw_py.BACKEND_NAME:
            impl = _seesaw_py
        elif backend == _impl.BACKEND_NAME:
            impl = _impl
        else:
            raise ValueError(f"unknown see-saw backend {backend!r}")
    return impl.seesaw_batch(W, d, starts_psi, starts_phi, max_iters, conv_tol)
