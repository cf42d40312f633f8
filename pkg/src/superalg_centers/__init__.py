"""Exact computations with centers of reduced enveloping superalgebras.

Modules:
    field     GF(p^e) arithmetic on integer codes, Artin-Schreier roots
    linalg    dense linear algebra over GF(p^e)
    superalg  gl(m|n), sl(m|n), osp(1|2n): brackets, p-map, roots, Weyl group
    env       U(g) in PBW form, Casimir, Harish-Chandra projection
    redenv    U_chi(g): center, anti-center, central characters, blocks
    verma     baby Verma modules, intertwiners, Weyl twists
    cli       the superalg-centers command
"""

__version__ = "0.1.0"

from .field import FieldElement, make_field
from .superalg import LieSuperalgebra, build

__all__ = ["FieldElement", "LieSuperalgebra", "build", "make_field", "__version__"]
