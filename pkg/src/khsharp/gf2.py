"""GF(2) rank with a compiled kernel when available."""
from . import _gf2

try:
    from . import _gf2c
    rank = _gf2c.rank
    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on the build
    _gf2c = None
    rank = _gf2.rank
    BACKEND = "python"

python_rank = _gf2.rank
