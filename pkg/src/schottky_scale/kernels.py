"""Hot kernels, taken from the compiled extension when it is importable.

``BACKEND`` names the active one (``"cython"`` or ``"python"``).  Both modules expose the same
functions with identical results; the pure-Python one is the reference.
"""

from . import _pykernels as python_backend

try:
    from . import _ckernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

canonical_form = _impl.canonical_form
canon_search = _impl.canon_search
prune_dead = _impl.prune_dead


def use_backend(name):
    """Switch the active backend (``"cython"`` or ``"python"``) at runtime."""
    global _impl, BACKEND, canonical_form, canon_search, prune_dead
    if name == "cython":
        if compiled_backend is None:
            raise RuntimeError("compiled kernels are not built")
        _impl = compiled_backend
    elif name == "python":
        _impl = python_backend
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    canonical_form = _impl.canonical_form
    canon_search = _impl.canon_search
    prune_dead = _impl.prune_dead
