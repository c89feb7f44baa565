"""Identification of total causal effects in DAGs.

Covariate adjustment is only one way to express an interventional
distribution in terms of the observational one.  This module layers a
small identification toolkit on top of :mod:`causalsep.adjustment`:

* the *plain* formula ``P(y | do(x)) = P(y)``, valid whenever every
  proper causal path from X to Y is blocked once edges into X are cut;
* *parent adjustment* for a single exposure, which stays valid even when
  outcomes are themselves parents of the exposure;
* the *partition product*, a truncated factorization that identifies
  the joint effect on Y = V \\ X without any separation requirement;
* a classifier ranking these criteria by strength (BC < CBC < CBC+),
  so experiment code can tally how often each one succeeds.

Every successful identification is returned as an :class:`IdentFormula`,
a small algebraic value with a deterministic text rendering and a JSON
form.  "Not identified by these criteria" is a possible outcome and is
never conflated with "not identifiable".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .adjustment import _require_directed, find_adjustment, pearl_backdoor
from .graph import MixedGraph, transform
from .separation import ANY, SepQuery, _check_endpoints, _check_known, test_sep

__all__ = [
    "IdentFormula",
    "classify",
    "identify_effect",
    "parent_adjustment",
    "partition_effect",
    "plain_formula_applies",
]

# Classifier labels, ordered from strongest criterion to weakest.
LABEL_BC = "BC"
LABEL_CBC = "CBC"
LABEL_CBC_PLUS = "CBC_PLUS"
LABEL_PARENT_ADJ = "PARENT_ADJ"
LABEL_PARTITION = "PARTITION"
LABEL_UNDECIDED = "UNDECIDED"

_VARIANTS = ("ADJUSTMENT", "PLAIN", "PARENT_ADJ", "PARTITION_PRODUCT", "NOT_FOUND")


def _names(nodes: Iterable[str]) -> tuple[str, ...]:
    # Case-insensitive alphabetical order, with the raw id as tie-break,
    # so renderings are stable however the caller ordered the input.
    return tuple(sorted(nodes, key=lambda v: (v.lower(), v)))


def _vals(names: Iterable[str]) -> str:
    return ", ".join(v.lower() for v in _names(names))


@dataclass(frozen=True)
class IdentFormula:
    """One identification result: P(y | do(x)) expressed observationally.

    ``variant`` selects the shape of the right-hand side:

    ``ADJUSTMENT``
        ``sum_{z} P(y | x, z) P(z)`` for the stored adjustment set ``z``.
    ``PLAIN``
        ``P(y)``; intervening on X does not move Y.
    ``PARENT_ADJ``
        ``sum_{z} P(z, y_pa) P(y_np | x, z, y_pa)`` where ``y_pa`` are the
        outcomes that are parents of the single exposure and ``z`` the
        remaining parents.
    ``PARTITION_PRODUCT``
        the truncated factorization ``prod_i P(y_i | pa(y_i))`` over all
        outcomes, applicable when X and Y partition the node set.
    ``NOT_FOUND``
        none of the implemented criteria applied.

    Instances are plain values: build them through the module functions,
    render with :meth:`render`, serialize with :meth:`to_json`.
    """

    variant: str
    x: tuple[str, ...]
    y: tuple[str, ...]
    z: Optional[tuple[str, ...]] = None
    y_pa: Optional[tuple[str, ...]] = None
    y_np: Optional[tuple[str, ...]] = None
    factors: Optional[tuple[tuple[str, tuple[str, ...]], ...]] = None
    empty_adjustment_valid: Optional[bool] = None
    plain_valid: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.variant not in _VARIANTS:
            raise ValueError(f"unknown formula variant {self.variant!r}")

    def render(self) -> str:
        """Deterministic one-line text form with alphabetized value lists."""
        if self.variant == "NOT_FOUND":
            return "not identified"
        if self.variant == "PLAIN":
            return f"P({_vals(self.y)})"
        if self.variant == "ADJUSTMENT":
            if not self.z:
                return f"P({_vals(self.y)} | {_vals(self.x)})"
            cond = self.x + self.z
            return (
                f"sum_{{{_vals(self.z)}}} "
                f"P({_vals(self.y)} | {_vals(cond)}) P({_vals(self.z)})"
            )
        if self.variant == "PARENT_ADJ":
            marginal = (self.z or ()) + (self.y_pa or ())
            cond = self.x + (self.z or ()) + (self.y_pa or ())
            parts = []
            if marginal:
                parts.append(f"P({_vals(marginal)})")
            if self.y_np:
                parts.append(f"P({_vals(self.y_np)} | {_vals(cond)})")
            body = " ".join(parts)
            if self.z:
                return f"sum_{{{_vals(self.z)}}} {body}"
            return body
        # PARTITION_PRODUCT
        parts = []
        for yi, pa in self.factors or ():
            if pa:
                parts.append(f"P({yi.lower()} | {_vals(pa)})")
            else:
                parts.append(f"P({yi.lower()})")
        return " ".join(parts)

    def to_json(self) -> dict:
        """JSON-ready dict; keys mirror the variant's fields."""
        doc: dict = {
            "variant": self.variant,
            "x": list(self.x),
            "y": list(self.y),
            "text": self.render(),
        }
        if self.variant in ("ADJUSTMENT", "PARENT_ADJ"):
            doc["z"] = list(self.z or ())
        if self.variant == "PARENT_ADJ":
            doc["y_pa"] = list(self.y_pa or ())
            doc["y_np"] = list(self.y_np or ())
        if self.variant == "PARTITION_PRODUCT":
            doc["factors"] = [[yi, list(pa)] for yi, pa in self.factors or ()]
            doc["empty_adjustment_valid"] = self.empty_adjustment_valid
            doc["plain_valid"] = self.plain_valid
        return doc


def plain_formula_applies(g: MixedGraph, x, y) -> bool:
    """True iff ``P(y | do(x)) = P(y)``, i.e. Y is untouched by the intervention.

    Holds exactly when X and Y are m-separated by the empty set after
    removing every edge into X.  Outcomes that merely cause the exposure
    qualify; anything downstream of X does not.
    """
    _require_directed(g)
    x, y = _check_endpoints(g, x, y)
    return test_sep(transform(g, remove_into=x), x, y, frozenset())


def parent_adjustment(g: MixedGraph, x, y, r=None) -> Optional[IdentFormula]:
    """Identify the effect of a single exposure by adjusting for its parents.

    Unlike generic covariate adjustment this remains valid when some
    outcomes are parents of the exposure: with ``y_pa = y & pa(x)``,
    ``y_np = y - y_pa`` and ``z = pa(x) - y_pa``,

        P(y | do(x)) = sum_{z} P(z, y_pa) P(y_np | x, z, y_pa).

    Requires every parent of the exposure to lie in the candidate set
    ``r`` (default: all nodes); returns None otherwise.  Raises if the
    exposure is not a single node or overlaps the outcomes.
    """
    _require_directed(g)
    if isinstance(x, str):
        xs = frozenset((x,))
    else:
        xs = frozenset(x)
    if len(xs) != 1:
        raise ValueError("parent adjustment requires exactly one exposure node")
    xs, ys = _check_endpoints(g, xs, y)
    (xnode,) = xs
    rset = g.node_set if r is None else _check_known(g, r, "candidate")
    pa = g.parents(xnode)
    if not pa <= rset:
        return None
    y_pa = ys & pa
    y_np = ys - pa
    return IdentFormula(
        variant="PARENT_ADJ",
        x=_names(xs),
        y=_names(ys),
        z=_names(pa - y_pa),
        y_pa=_names(y_pa),
        y_np=_names(y_np),
    )


def partition_effect(g: MixedGraph, x, y) -> IdentFormula:
    """Identify the joint effect on Y = V \\ X as a truncated factorization.

    Requires X and Y to partition the node set; then

        P(y | do(x)) = prod_{Yi in Y} P(yi | pa(Yi))

    always holds, with no separation requirement at all.  The result
    additionally reports two refinements as boolean facts:
    ``empty_adjustment_valid`` (the empty set is a valid adjustment set,
    equivalently no edge points from an outcome into an exposure, giving
    ``P(y | x)``) and ``plain_valid`` (no edge points from an exposure
    into an outcome, giving ``P(y)``; outcome-to-exposure edges are
    irrelevant here since interventions cut them).
    """
    _require_directed(g)
    x, y = _check_endpoints(g, x, y)
    if x | y != g.node_set:
        raise ValueError("exposures and outcomes must partition the node set")
    factors = tuple((yi, _names(g.parents(yi))) for yi in _names(y))
    no_y_to_x = not any(g.parents(xi) & y for xi in x)
    no_x_to_y = not any(g.parents(yi) & x for yi in y)
    return IdentFormula(
        variant="PARTITION_PRODUCT",
        x=_names(x),
        y=_names(y),
        factors=factors,
        empty_adjustment_valid=no_y_to_x,
        plain_valid=no_x_to_y,
    )


def identify_effect(
    g: MixedGraph,
    x,
    y,
    r=None,
    extended: bool = False,
) -> tuple[str, IdentFormula]:
    """Classify identifiability of P(y | do(x)) and return a witness formula.

    Criteria are tried from strongest to weakest and the first success
    labels the instance:

    * ``BC`` — Pearl's back-door criterion admits a set within ``r``;
    * ``CBC`` — a (constructive back-door) adjustment set exists in ``r``;
    * ``CBC_PLUS`` — no adjustment set, but the plain formula applies;
    * with ``extended=True`` two further fallbacks are tried:
      ``PARENT_ADJ`` (single exposure whose parents are all in ``r``) and
      ``PARTITION`` (X and Y partition the nodes);
    * ``UNDECIDED`` — none of the above.  This is a statement about the
      implemented criteria, not a proof of non-identifiability.

    ``r`` is the observed/candidate node set and must contain X and Y
    (default: all nodes).
    """
    _require_directed(g)
    x, y = _check_endpoints(g, x, y)
    rset = g.node_set if r is None else _check_known(g, r, "candidate")
    if not x | y <= rset:
        raise ValueError("exposures and outcomes must lie in the candidate set")

    z = pearl_backdoor(g, x, y, mode="find", r=rset)
    if z is not None:
        return LABEL_BC, IdentFormula("ADJUSTMENT", _names(x), _names(y), z=_names(z))
    z = find_adjustment(g, SepQuery.of(x, y, r=rset))
    if z is not None:
        return LABEL_CBC, IdentFormula("ADJUSTMENT", _names(x), _names(y), z=_names(z))
    if plain_formula_applies(g, x, y):
        return LABEL_CBC_PLUS, IdentFormula("PLAIN", _names(x), _names(y))
    if extended:
        if len(x) == 1:
            formula = parent_adjustment(g, x, y, r=rset)
            if formula is not None:
                return LABEL_PARENT_ADJ, formula
        if x | y == g.node_set:
            return LABEL_PARTITION, partition_effect(g, x, y)
    return LABEL_UNDECIDED, IdentFormula("NOT_FOUND", _names(x), _names(y))


def classify(g: MixedGraph, x, y, r=None, extended: bool = False) -> str:
    """Label only; see :func:`identify_effect`."""
    return identify_effect(g, x, y, r=r, extended=extended)[0]
