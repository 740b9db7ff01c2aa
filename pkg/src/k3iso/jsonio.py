"""Lossless JSON interchange for exact integer data.

Every value in the artifact is an exact integer; JSON numbers are only safe
up to 64 bits for many consumers, so integers at or beyond 2^63 in magnitude
are rendered as decimal strings, and parsers accept either form everywhere.
Converters keep a stable field order (dict insertion order) so that output
is byte-identical across runs.
"""

from __future__ import annotations

import json
import re
from typing import Any, Optional

from .errors import InvalidLattice
from .lattice import LatticeVector, PolarizedLattice, from_gram
from .moduli import (
    TERMINAL,
    Chain,
    ChainStep,
    Morphism,
    MukaiVector,
    Nu,
    NuInverse,
    Reflection,
    Twist,
    Tyurin,
)

_INT64 = 2**63
_INT_RE = re.compile(r"^[+-]?[0-9]+$")


def encode(obj: Any) -> Any:
    """Recursively convert to JSON-ready data, stringifying wide integers."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj if -_INT64 < obj < _INT64 else str(obj)
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__} to JSON")


def dumps(obj: Any, indent: Optional[int] = None) -> str:
    if indent is None:
        return json.dumps(encode(obj), separators=(",", ":"))
    return json.dumps(encode(obj), indent=indent)


def as_int(value: Any) -> int:
    """Exact integer from an int or a decimal string (either JSON form)."""
    if isinstance(value, bool):
        raise ValueError("booleans are not integers")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INT_RE.match(value):
        return int(value)
    raise ValueError(f"not an exact integer: {value!r}")


# ---------------------------------------------------------------------------
# Vectors and lattices
# ---------------------------------------------------------------------------

def vector_to_json(z: LatticeVector) -> dict:
    return {"x": z.x, "y": z.y}


def vector_from_json(d: dict) -> LatticeVector:
    return LatticeVector(as_int(d["x"]), as_int(d["y"]))


def lattice_to_json(lat: PolarizedLattice) -> dict:
    return {
        "n_half": lat.n_half,
        "gamma": lat.gamma,
        "delta": lat.delta,
        "mu": lat.mu,
    }


def lattice_from_json(d: dict) -> PolarizedLattice:
    """Accepts {"n_half", "gamma", "delta", "mu"} or {"gram": 2x2, "h": pair}."""
    if "gram" in d or "h" in d:
        if "gram" not in d or "h" not in d:
            raise InvalidLattice("gram form needs both 'gram' and 'h'")
        gram = [[as_int(v) for v in row] for row in d["gram"]]
        h = tuple(as_int(v) for v in d["h"])
        if len(gram) != 2 or any(len(r) != 2 for r in gram) or len(h) != 2:
            raise InvalidLattice("gram must be 2x2 and h a pair")
        return from_gram(gram, h).lattice
    try:
        return PolarizedLattice(
            as_int(d["n_half"]), as_int(d["gamma"]), as_int(d["delta"]), as_int(d["mu"])
        )
    except KeyError as exc:
        raise InvalidLattice(f"lattice JSON missing field {exc}") from exc


# ---------------------------------------------------------------------------
# Mukai vectors, morphisms, chains
# ---------------------------------------------------------------------------

def mukai_to_json(v: MukaiVector) -> dict:
    return {"rho": v.rho, "ell": vector_to_json(v.ell), "sigma": v.sigma}


def mukai_from_json(d: dict) -> MukaiVector:
    return MukaiVector(as_int(d["rho"]), vector_from_json(d["ell"]), as_int(d["sigma"]))


def _morphism_fields(m: Morphism) -> dict:
    if isinstance(m, Reflection):
        return {"kind": "reflection"}
    if isinstance(m, Twist):
        return {"kind": "twist", "D": vector_to_json(m.d)}
    if isinstance(m, Nu):
        return {"kind": "nu", "d1": m.d1, "d2": m.d2}
    if isinstance(m, NuInverse):
        return {"kind": "nu_inverse", "d1": m.d1, "d2": m.d2}
    if isinstance(m, Tyurin):
        return {"kind": "tyurin", "sign": m.sign, "h1": vector_to_json(m.h1)}
    raise TypeError(f"unknown morphism {m!r}")


def _morphism_from_fields(d: dict) -> Morphism:
    kind = d["kind"]
    if kind == "reflection":
        return Reflection()
    if kind == "twist":
        return Twist(vector_from_json(d["D"]))
    if kind == "nu":
        return Nu(as_int(d["d1"]), as_int(d["d2"]))
    if kind == "nu_inverse":
        return NuInverse(as_int(d["d1"]), as_int(d["d2"]))
    if kind == "tyurin":
        return Tyurin(as_int(d["sign"]), vector_from_json(d["h1"]))
    raise ValueError(f"unknown morphism kind {kind!r}")


def chain_to_json(chain: Chain) -> list[dict]:
    out = []
    for step in chain.steps:
        entry = _morphism_fields(step.morphism)
        entry["source"] = mukai_to_json(step.source)
        entry["target"] = (
            TERMINAL if step.target == TERMINAL else mukai_to_json(step.target)
        )
        out.append(entry)
    return out


def chain_from_json(steps: list[dict], lat: PolarizedLattice) -> Chain:
    parsed = []
    for d in steps:
        target = d["target"]
        parsed.append(
            ChainStep(
                _morphism_from_fields(d),
                mukai_from_json(d["source"]),
                TERMINAL if target == TERMINAL else mukai_from_json(target),
            )
        )
    if not parsed:
        raise ValueError("empty chain")
    return Chain(lat, parsed[0].source, tuple(parsed))


# ---------------------------------------------------------------------------
# Certificates and verdicts
# ---------------------------------------------------------------------------

def certificate_to_json(cert) -> dict:
    return {
        "series": cert.series,
        "sign": cert.sign,
        "witness": vector_to_json(cert.witness),
        "p1": cert.p1,
        "q1": cert.q1,
        "d2": cert.d2,
        "D": vector_to_json(cert.big_d),
        "chain": chain_to_json(cert.chain),
        "caveat": cert.chain.caveat,
    }


def certificate_from_json(d: dict, lat: PolarizedLattice):
    from .decide import Certificate

    chain = chain_from_json(d["chain"], lat)
    if d.get("caveat") is not None:
        chain = Chain(lat, chain.source, chain.steps, d["caveat"])
    return Certificate(
        series=d["series"],
        sign=as_int(d["sign"]),
        witness=vector_from_json(d["witness"]),
        p1=as_int(d["p1"]),
        q1=as_int(d["q1"]),
        d2=as_int(d["d2"]),
        big_d=vector_from_json(d["D"]),
        chain=chain,
    )


def verdict_to_json(verdict) -> dict:
    return {
        "verdict": verdict.kind,
        "certificate": (
            None
            if verdict.certificate is None
            else certificate_to_json(verdict.certificate)
        ),
        "reason": verdict.reason,
        "stats": dict(verdict.stats),
    }


def verdict_from_json(d: dict, lat: PolarizedLattice):
    from .decide import Verdict

    cert = d.get("certificate")
    return Verdict(
        kind=d["verdict"],
        certificate=None if cert is None else certificate_from_json(cert, lat),
        reason=d.get("reason", ""),
        stats=dict(d.get("stats", {})),
    )
