"""
Deciding equality in graph algebras through injective models.

The rewrite rules of ``presentations.free`` do not decide equality, so
graph-algebra elements are compared after pushing them through

    C(Σᵐ) --ωₘ--> C(S^{2m+1}_H)      C(Γᵐ) --ρₘ--> T^{⊗m}

(tensored with the identity of C(S¹) when present). Both maps are injective
and have exact normal forms in their targets.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Optional

from mpkcheck.core.presentations.assignment import GenAssignment, tensor_identity
from mpkcheck.core.presentations.free import FreeElement, FreeSignature


@lru_cache(maxsize=None)
def faithful_model(fsig: FreeSignature) -> Optional[GenAssignment]:
    from mpkcheck.core.presentations.maps import build_map

    graph = fsig.graph
    if graph.name == "sigma":
        base = build_map("omega", graph.n)
    elif graph.name == "gamma" and graph.n >= 1:
        base = build_map("rho", graph.n)
    else:
        return None
    return tensor_identity(base) if fsig.circle else base


def model_label(domain: Any) -> Optional[str]:
    if not isinstance(domain, FreeSignature):
        return None
    model = faithful_model(domain)
    return model.label if model is not None else "syntactic (no faithful model)"


def same_element(a: Any, b: Any) -> bool:
    """Equality in the algebra, not just of representatives."""
    if a == b:
        return True
    if isinstance(a, FreeElement) and isinstance(b, FreeElement):
        model = faithful_model(a.signature)
        if model is None:
            return False
        return model(a) == model(b)
    return False


def is_zero_element(x: Any) -> bool:
    if isinstance(x, FreeElement) and not x.is_zero:
        model = faithful_model(x.signature)
        return model is not None and model(x).is_zero
    return x.is_zero
