"""JSON documents for quantales, spaces, relations, contexts and automata.

Every top-level document may carry ``"formatVersion": 1``; any other
version, and any unknown field, is rejected with :class:`InvalidInput`.
"""

from __future__ import annotations

import json

from .errors import InvalidInput
from .macneille import Context
from .quantale import (
    Bool2,
    LanguageTrunc,
    LawvereChain,
    Quantale,
    SimilarityChain,
    opposite,
)
from .relation import QRel
from .space import FinSpace, SpaceMap, discrete_space, generated_space

__all__ = [
    "FORMAT_VERSION",
    "quantale_from_json",
    "parse_quantale_arg",
    "space_from_json",
    "space_to_json",
    "relation_from_json",
    "context_from_json",
    "context_to_json",
    "map_from_json",
    "canext_config_from_json",
    "automaton_from_json",
    "load_json",
    "dumps",
]

FORMAT_VERSION = 1


def _obj(obj, what, required=(), optional=()):
    if not isinstance(obj, dict):
        raise InvalidInput(f"{what}: expected a JSON object")
    allowed = set(required) | set(optional) | {"formatVersion"}
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise InvalidInput(f"{what}: unknown field(s) {unknown}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise InvalidInput(f"{what}: missing field(s) {missing}")
    if "formatVersion" in obj and obj["formatVersion"] != FORMAT_VERSION:
        raise InvalidInput(f"{what}: unsupported formatVersion {obj['formatVersion']!r}")
    return obj


def _int(v, what):
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidInput(f"{what} must be an integer")
    return v


def quantale_from_json(obj) -> Quantale:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInput("quantale: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "bool2":
        _obj(obj, "bool2 quantale", ("kind",), ("opposite",))
        q = Bool2()
    elif kind in ("lawvere", "similarity"):
        _obj(obj, f"{kind} quantale", ("kind", "N"), ("opposite",))
        n = _int(obj["N"], "N")
        q = LawvereChain(n) if kind == "lawvere" else SimilarityChain(n)
    elif kind == "language":
        _obj(obj, "language quantale", ("kind", "alphabet", "maxLen"), ("opposite",))
        alphabet = obj["alphabet"]
        if not isinstance(alphabet, list) or not all(isinstance(a, str) for a in alphabet):
            raise InvalidInput("alphabet must be a list of strings")
        q = LanguageTrunc(alphabet, _int(obj["maxLen"], "maxLen"))
    else:
        raise InvalidInput(f"unknown quantale kind {kind!r}")
    opp = obj.get("opposite", False)
    if not isinstance(opp, bool):
        raise InvalidInput("'opposite' must be true or false")
    return opposite(q) if opp else q


def parse_quantale_arg(text: str) -> Quantale:
    """Parse ``bool2``, ``lawvere:N``, ``similarity:N``, ``language:ab:L`` or inline JSON."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return quantale_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"--quantale: {exc}") from None
    parts = text.split(":")
    try:
        if parts == ["bool2"]:
            return Bool2()
        if parts[0] == "lawvere" and len(parts) == 2:
            return LawvereChain(int(parts[1]))
        if parts[0] == "similarity" and len(parts) == 2:
            return SimilarityChain(int(parts[1]))
        if parts[0] == "language" and len(parts) == 3:
            return LanguageTrunc(list(parts[1]), int(parts[2]))
    except ValueError:
        pass
    raise InvalidInput(f"cannot parse quantale {text!r}")


def _matrix(q, rows, what):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InvalidInput(f"{what} must be a list of lists")
    return tuple(tuple(q.value_from_json(v) for v in r) for r in rows)


def _names(points, what):
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise InvalidInput(f"{what} must be a list of strings")
    return tuple(points)


def _resolve_quantale(obj, default, what):
    if "quantale" in obj:
        q = quantale_from_json(obj["quantale"])
        if default is not None and q != default:
            raise InvalidInput(f"{what}: quantale differs from the enclosing document")
        return q
    if default is None:
        raise InvalidInput(f"{what}: no quantale given")
    return default


def space_from_json(obj, quantale: Quantale | None = None) -> FinSpace:
    _obj(obj, "space", ("points", "hom"), ("quantale",))
    q = _resolve_quantale(obj, quantale, "space")
    return FinSpace(q, _names(obj["points"], "points"), _matrix(q, obj["hom"], "hom"))


def space_to_json(X: FinSpace) -> dict:
    q = X.quantale
    return {
        "formatVersion": FORMAT_VERSION,
        "quantale": q.describe(),
        "points": list(X.points),
        "hom": [[q.value_to_json(v) for v in row] for row in X.hom],
    }


def _side(obj, q, what):
    if isinstance(obj, dict) and "discretePoints" in obj:
        _obj(obj, what, ("discretePoints",))
        return discrete_space(q, _names(obj["discretePoints"], f"{what}.discretePoints"))
    return space_from_json(obj, q)


def relation_from_json(obj, quantale: Quantale | None = None) -> QRel:
    _obj(obj, "relation", ("source", "target", "matrix"), ("quantale",))
    q = quantale
    if "quantale" in obj:
        q = _resolve_quantale(obj, quantale, "relation")
    elif q is None and isinstance(obj["source"], dict) and "quantale" in obj["source"]:
        q = quantale_from_json(obj["source"]["quantale"])
    if q is None:
        raise InvalidInput("relation: no quantale given")
    X, Y = _side(obj["source"], q, "source"), _side(obj["target"], q, "target")
    return QRel(X, Y, _matrix(q, obj["matrix"], "matrix"))


def context_from_json(obj, quantale: Quantale | None = None) -> Context:
    _obj(obj, "context", ("X", "A", "I"), ("quantale",))
    q = _resolve_quantale(obj, quantale, "context")
    X, A = _side(obj["X"], q, "X"), _side(obj["A"], q, "A")
    return Context(X, A, _matrix(q, obj["I"], "I"))


def context_to_json(I: Context) -> dict:
    q = I.quantale

    def side(S):
        if all(S.hom[i][j] == (q.unit if i == j else q.bottom)
               for i in range(len(S)) for j in range(len(S))):
            return {"discretePoints": list(S.points)}
        d = space_to_json(S)
        del d["formatVersion"], d["quantale"]
        return d

    return {
        "formatVersion": FORMAT_VERSION,
        "quantale": q.describe(),
        "X": side(I.X),
        "A": side(I.A),
        "I": [[q.value_to_json(v) for v in row] for row in I.matrix],
    }


def map_from_json(obj, source: FinSpace, target: FinSpace) -> SpaceMap:
    _obj(obj, "functor", ("assignment",))
    a = obj["assignment"]
    if not isinstance(a, dict):
        raise InvalidInput("assignment must map source point names to target point names")
    extra = sorted(set(a) - set(source.points))
    if extra:
        raise InvalidInput(f"assignment mentions unknown source points {extra}")
    missing = [p for p in source.points if p not in a]
    if missing:
        raise InvalidInput(f"assignment misses source points {missing}")
    return SpaceMap.from_names(source, target, a)


def canext_config_from_json(obj, quantale: Quantale | None = None):
    """``(space, filter class, ideal class)`` from a canonical-extension config."""
    _obj(obj, "canext config", ("space",), ("filters", "ideals"))
    X = space_from_json(obj["space"], quantale)
    classes = []
    for key in ("filters", "ideals"):
        v = obj.get(key, "finlim")
        if v not in ("all", "representables", "finlim"):
            raise InvalidInput(f"{key} must be all, representables or finlim")
        classes.append(v)
    return X, classes[0], classes[1]


def automaton_from_json(obj, quantale: Quantale | None = None):
    """``(space, transitions, initial flags, final flags)`` of an automaton.

    Transitions are ``[source, letter, target]`` triples; the hom of the
    space is the closure of the one-letter matrix.
    """
    _obj(obj, "automaton", ("states", "transitions"), ("quantale", "initial", "final"))
    q = _resolve_quantale(obj, quantale, "automaton")
    if not isinstance(q, LanguageTrunc):
        raise InvalidInput("automata need a language quantale")
    states = _names(obj["states"], "states")
    index = {s: k for k, s in enumerate(states)}
    if len(index) != len(states):
        raise InvalidInput("duplicate state names")
    matrix = [[set() for _ in states] for _ in states]
    transitions = {}
    for t in obj["transitions"]:
        if (not isinstance(t, list) or len(t) != 3 or not all(isinstance(x, str) for x in t)
                or t[0] not in index or t[2] not in index or t[1] not in q.alphabet):
            raise InvalidInput(f"bad transition {t!r}")
        if q.max_len >= 1:
            matrix[index[t[0]]][index[t[2]]].add(t[1])
        transitions.setdefault((t[0], t[1]), []).append(t[2])
    hom = [[frozenset(c) for c in row] for row in matrix]
    A = generated_space(q, states, hom)

    def flags(key):
        names = obj.get(key, [])
        if not isinstance(names, list) or any(n not in index for n in names):
            raise InvalidInput(f"{key} must list known states")
        return tuple(q.unit if s in names else q.bottom for s in states)

    return A, transitions, flags("initial"), flags("final")


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
