"""Hot-loop kernels: compiled extension when built, pure Python otherwise.

``BACKEND`` names the implementation picked at import. Both modules expose
``expm``, ``closed_form_grid``, ``state_based_grid``, ``closed_form_point``
and ``state_point``; grid rows are ``(zeta, x, p11, p12, p11_herm, p12_herm)``.
"""
from . import _kernels_py as python_backend

try:
    from . import _kernels as compiled_backend
except ImportError:  # extension not built
    compiled_backend = None

_impl = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

expm = _impl.expm
closed_form_grid = _impl.closed_form_grid
state_based_grid = _impl.state_based_grid
closed_form_point = _impl.closed_form_point
state_point = _impl.state_point


def available_backends():
    """Map backend name to module for every importable implementation."""
    found = {"python": python_backend}
    if compiled_backend is not None:
        found["cython"] = compiled_backend
    return found
