"""Generating-set recipes, bound formulas and certificate checks."""

from .certificates import *  # noqa: F401,F403
from .certificates import __all__ as _c
from .qbinom import *  # noqa: F401,F403
from .qbinom import __all__ as _q
from .recipes import *  # noqa: F401,F403
from .recipes import __all__ as _r

__all__ = [*_c, *_q, *_r]
