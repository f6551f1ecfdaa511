"""Profile documents and wire formats.

Rankings travel as compact ``"a>b>c"`` strings, complex amplitudes as
``[re, im]`` pairs inside ``[re, im, ranking]`` terms, and densities as
term lists rather than raw matrices. A profile document carries either a
``voters`` list (product form) or a ``correlated`` term list, never both.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import InvalidArgument, ParseError
from .hilbert import (
    DEFAULT_EPS,
    AlternativeState,
    DensityOperator,
    ProfileState,
    RankingSpace,
    density_terms,
    mixed_state,
    pure_state,
)
from .rankings import AlternativeSet, Ranking


def format_probability(value: float) -> float:
    """Probabilities are reported with 12 significant digits."""
    return float(f"{value:.12g}")


def serialize_alternative_state(state: AlternativeState) -> dict[str, float]:
    return {name: format_probability(p) for name, p in state.as_dict().items()}


def serialize_density(state: DensityOperator, eps: float = DEFAULT_EPS) -> dict:
    kind, terms = density_terms(state, eps)
    if kind == "pure":
        return {
            "pure": [
                [format_probability(amp.real), format_probability(amp.imag), r.to_string()]
                for amp, r in terms
            ]
        }
    return {"mixed": [[format_probability(w), r.to_string()] for w, r in terms]}


def serialize_profile(profile: ProfileState, eps: float = DEFAULT_EPS) -> dict:
    document: dict[str, Any] = {"alternatives": list(profile.space.alternatives.names)}
    if profile.factors is not None:
        document["voters"] = [serialize_density(b, eps) for b in profile.factors]
    else:
        document["correlated"] = [
            [format_probability(w), [r.to_string() for r in rankings]]
            for w, rankings in profile.joint
        ]
    return document


def _parse_ranking(alternatives: AlternativeSet, text: Any, locus: str) -> Ranking:
    if not isinstance(text, str):
        raise ParseError(f"expected a ranking string, got {text!r}", locus)
    try:
        return Ranking.from_string(alternatives, text)
    except InvalidArgument as exc:
        raise ParseError(str(exc), locus) from None


def _parse_number(value: Any, locus: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {value!r}", locus)
    # json.loads admits the Infinity/NaN literals; they stop here.
    if not math.isfinite(value):
        raise ParseError(f"expected a finite number, got {value!r}", locus)
    return float(value)


def _parse_voter(space: RankingSpace, spec: Any, locus: str, eps: float) -> DensityOperator:
    if not isinstance(spec, dict):
        raise ParseError("voter ballot must be an object", locus)
    keys = set(spec)
    if keys == {"pure"}:
        entries = spec["pure"]
        if not isinstance(entries, list) or not entries:
            raise ParseError("pure ballot needs a nonempty term list", f"{locus}.pure")
        terms = []
        for t, entry in enumerate(entries):
            term_locus = f"{locus}.pure[{t}]"
            if not isinstance(entry, list) or len(entry) != 3:
                raise ParseError("pure term must be [re, im, ranking]", term_locus)
            re = _parse_number(entry[0], term_locus)
            im = _parse_number(entry[1], term_locus)
            terms.append((complex(re, im), _parse_ranking(space.alternatives, entry[2], term_locus)))
        try:
            return pure_state(space, terms, eps)
        except InvalidArgument as exc:
            raise ParseError(str(exc), f"{locus}.pure") from None
    if keys == {"mixed"}:
        entries = spec["mixed"]
        if not isinstance(entries, list) or not entries:
            raise ParseError("mixed ballot needs a nonempty term list", f"{locus}.mixed")
        terms = []
        for t, entry in enumerate(entries):
            term_locus = f"{locus}.mixed[{t}]"
            if not isinstance(entry, list) or len(entry) != 2:
                raise ParseError("mixed term must be [weight, ranking]", term_locus)
            weight = _parse_number(entry[0], term_locus)
            terms.append((weight, _parse_ranking(space.alternatives, entry[1], term_locus)))
        try:
            return mixed_state(space, terms, eps)
        except InvalidArgument as exc:
            raise ParseError(str(exc), f"{locus}.mixed") from None
    raise ParseError(
        f"voter ballot must have exactly one of 'pure' or 'mixed', got {sorted(keys)}", locus
    )


def parse_density(space: RankingSpace, document: dict, eps: float = DEFAULT_EPS) -> DensityOperator:
    """Parse a single serialized ballot (term-list form)."""
    return _parse_voter(space, document, "ballot", eps)


def parse_profile(document: str | dict, eps: float = DEFAULT_EPS) -> ProfileState:
    """Parse and validate a profile document (JSON text or loaded object)."""
    if isinstance(document, str):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None
    else:
        data = document
    if not isinstance(data, dict):
        raise ParseError("profile document must be a JSON object", "$")

    labels = data.get("alternatives")
    if not isinstance(labels, list) or not labels:
        raise ParseError("'alternatives' must be a nonempty list of labels", "alternatives")
    if not all(isinstance(x, str) for x in labels):
        raise ParseError("alternative labels must be strings", "alternatives")
    try:
        alternatives = AlternativeSet(tuple(labels))
    except InvalidArgument as exc:
        raise ParseError(str(exc), "alternatives") from None
    space = RankingSpace(alternatives)

    has_voters = "voters" in data
    has_correlated = "correlated" in data
    if has_voters and has_correlated:
        raise ParseError("document cannot mix 'voters' and 'correlated' blocks", "$")
    if not has_voters and not has_correlated:
        raise ParseError("document needs a 'voters' or 'correlated' block", "$")

    unknown = set(data) - {"alternatives", "voters", "correlated"}
    if unknown:
        raise ParseError(f"unknown top-level fields {sorted(unknown)}", "$")

    if has_voters:
        voters = data["voters"]
        if not isinstance(voters, list) or not voters:
            raise ParseError("'voters' must be a nonempty list", "voters")
        ballots = [
            _parse_voter(space, spec, f"voters[{v}]", eps) for v, spec in enumerate(voters)
        ]
        return ProfileState.product_of(ballots)

    entries = data["correlated"]
    if not isinstance(entries, list) or not entries:
        raise ParseError("'correlated' must be a nonempty term list", "correlated")
    terms = []
    total = 0.0
    for t, entry in enumerate(entries):
        locus = f"correlated[{t}]"
        if not isinstance(entry, list) or len(entry) != 2:
            raise ParseError("correlated term must be [weight, [rankings...]]", locus)
        weight = _parse_number(entry[0], locus)
        if weight <= 0:
            raise ParseError(f"correlated weight must be positive, got {weight}", locus)
        tuple_spec = entry[1]
        if not isinstance(tuple_spec, list) or not tuple_spec:
            raise ParseError("correlated term needs one ranking per voter", locus)
        rankings = tuple(
            _parse_ranking(alternatives, r, f"{locus}[{k}]") for k, r in enumerate(tuple_spec)
        )
        terms.append((weight, rankings))
        total += weight
    if total <= 0:
        raise ParseError("correlated weights must have positive total", "correlated")
    normalized = [(w / total, rankings) for w, rankings in terms]
    try:
        return ProfileState.correlated(space, normalized, eps)
    except InvalidArgument as exc:
        raise ParseError(str(exc), "correlated") from None
