"""End-to-end component count and the command-line front end.

Input files look like::

    char: 3
    ext: 1              # optional
    vars: x y u v
    weights: 1 1 1 1    # optional
    ideal:
      u^2 - 2*x^2
      v*x - u*y

Exit codes: 0 success, 2 bad input, 3 search budget or stabilisation bound hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .field import GF
from .frobenius import build_frobenius, stable_part
from .groebner import Ideal, NotHomogeneousError, krull_dimension, saturate_irrelevant
from .hsop import HsopSearchError, ParameterSystem, find_hsop
from .koszul import StabilizationError, h1_degree_zero, stabilize, stabilize_heuristic
from .oracle import NotSquarefreeMonomialError, graph_component_count, minimal_primes_squarefree
from .parser import PolynomialSyntaxError
from .poly import ExponentOverflowError, PolynomialRing
from .resolution import ext_strand_length, free_resolution

log = logging.getLogger("geomconn")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
DEFAULT_T_MAX = 8
STRATEGIES = ("ext", "heuristic")


class InputError(ValueError):
    """Malformed problem file or ineligible input."""


@dataclass
class ProblemSpec:
    char: int
    variables: tuple[str, ...]
    generators: tuple[str, ...]
    ext: int = 1
    weights: tuple[int, ...] | None = None
    strategy: str = "ext"
    seed: int = 0
    t_max: int = DEFAULT_T_MAX

    def ring(self) -> PolynomialRing:
        try:
            return PolynomialRing(GF(self.char, self.ext), self.variables, self.weights)
        except ValueError as exc:
            raise InputError(str(exc)) from exc

    def ideal(self, ring: PolynomialRing | None = None) -> Ideal:
        ring = ring or self.ring()
        try:
            return Ideal(ring, [ring(g) for g in self.generators])
        except (PolynomialSyntaxError, NotHomogeneousError, ExponentOverflowError) as exc:
            raise InputError(str(exc)) from exc


def _ints(key: str, value: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in value.split()]
    except ValueError:
        raise InputError(f"line {lineno}: '{key}' expects integers, got {value!r}") from None


def parse_problem_file(text: str) -> ProblemSpec:
    fields: dict[str, Any] = {}
    gens: list[str] = []
    in_ideal = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if sep and key in ("char", "ext", "vars", "weights", "ideal"):
            value = value.strip()
            in_ideal = False
            if key in fields:
                raise InputError(f"line {lineno}: duplicate key '{key}'")
            if key == "ideal":
                in_ideal = True
                fields[key] = True
                if value:
                    gens.append(value)
            elif key == "vars":
                fields[key] = tuple(value.split())
            elif key == "weights":
                fields[key] = tuple(_ints(key, value, lineno))
            else:
                vals = _ints(key, value, lineno)
                if len(vals) != 1:
                    raise InputError(f"line {lineno}: '{key}' expects one integer")
                fields[key] = vals[0]
        elif in_ideal:
            gens.append(line)
        else:
            raise InputError(f"line {lineno}: unrecognised line {raw.strip()!r}")
    for key in ("char", "vars", "ideal"):
        if key not in fields:
            raise InputError(f"missing '{key}:' entry")
    if not fields["vars"]:
        raise InputError("'vars:' lists no variables")
    return ProblemSpec(
        char=fields["char"],
        ext=fields.get("ext", 1),
        variables=fields["vars"],
        weights=fields.get("weights"),
        generators=tuple(gens),
    )


@dataclass
class RunReport:
    components: int
    connected_geom: bool
    dim_r: int
    ell: int | None
    stab_n: int | None
    hsop: list[str]
    hsop_degrees: list[int]
    chain: list[int]
    strategy: str
    certified: bool
    f_matrix: list[list[int]]
    koszul_dims: list[int]
    field: str
    seed: int
    timings_ms: dict[str, float] = dc_field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        d = dict(self.__dict__)
        if not timings:
            d.pop("timings_ms")
        return d

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True)


class _Clock:
    def __init__(self):
        self.timings: dict[str, float] = {}

    def stage(self, name: str):
        clock = self

        class _Stage:
            def __enter__(self):
                self.t0 = time.perf_counter()
                log.info("stage %s", name)

            def __exit__(self, *exc):
                clock.timings[name] = round((time.perf_counter() - self.t0) * 1000, 3)
                return False

        return _Stage()


def _field_name(ring: PolynomialRing) -> str:
    F = ring.field
    return f"F_{F.p}" if F.e == 1 else f"F_{F.p}^{F.e}"


def run_pipeline(spec: ProblemSpec) -> RunReport:
    """Saturate, find parameters, certify N, build Frobenius, count components."""
    if spec.strategy not in STRATEGIES:
        raise InputError(f"unknown strategy {spec.strategy!r}")
    clock = _Clock()
    ring = spec.ring()
    with clock.stage("parse"):
        I = spec.ideal(ring)
    with clock.stage("saturate"):
        J = saturate_irrelevant(I)
        G = J.groebner()
    base = dict(field=_field_name(ring), seed=spec.seed, strategy=spec.strategy)
    if G.is_unit():
        return RunReport(
            components=0, connected_geom=False, dim_r=0, ell=0, stab_n=None, hsop=[], hsop_degrees=[],
            chain=[], certified=True, f_matrix=[], koszul_dims=[], timings_ms=clock.timings, **base,
        )
    d = krull_dimension(G)
    with clock.stage("hsop"):
        P = find_hsop(G, seed=spec.seed)
    ell: int | None = None
    if spec.strategy == "ext":
        with clock.stage("ext"):
            res = free_resolution(J, length=ring.nvars)
            ell = ext_strand_length(res)
        with clock.stage("stabilize"):
            N, _, dims = stabilize(G, P, ell, spec.t_max)
    else:
        with clock.stage("stabilize"):
            N, _, dims = stabilize_heuristic(G, P, t_max=spec.t_max)
    with clock.stage("frobenius"):
        PN = P.powered(N)
        B = h1_degree_zero(G, PN, 1)
        if spec.strategy == "ext" and B.dim != ell:
            raise ArithmeticError(f"strand at t = 1 after powering has dimension {B.dim}, expected {ell}")
        Fm = build_frobenius(B)
        sp = stable_part(Fm)
    components = 1 + sp.stable_dim
    log.info("dim R = %d, ell = %s, N = %d, chain = %s", d, ell, N, list(sp.image_chain_dims))
    return RunReport(
        components=components,
        connected_geom=components == 1,
        dim_r=d,
        ell=ell,
        stab_n=N,
        hsop=[str(f) for f in P.forms],
        hsop_degrees=list(P.degrees),
        chain=list(sp.image_chain_dims),
        certified=spec.strategy == "ext",
        f_matrix=[list(r) for r in Fm.matrix],
        koszul_dims=dims,
        timings_ms=clock.timings,
        **base,
    )


def run_oracle(spec: ProblemSpec) -> RunReport:
    clock = _Clock()
    ring = spec.ring()
    with clock.stage("oracle"):
        I = spec.ideal(ring)
        try:
            primes = minimal_primes_squarefree(I)
        except NotSquarefreeMonomialError as exc:
            raise InputError(str(exc)) from exc
        count = graph_component_count(primes, ring.nvars)
    full = frozenset(range(ring.nvars))
    dim_r = max((ring.nvars - len(P) for P in primes if P != full), default=0)
    return RunReport(
        components=count, connected_geom=count == 1, dim_r=dim_r, ell=None, stab_n=None,
        hsop=[], hsop_degrees=[], chain=[], strategy="oracle", certified=True, f_matrix=[],
        koszul_dims=[], field=_field_name(ring), seed=spec.seed, timings_ms=clock.timings,
    )


def run_info(spec: ProblemSpec) -> dict[str, Any]:
    ring = spec.ring()
    J = saturate_irrelevant(spec.ideal(ring))
    G = J.groebner()
    if G.is_unit():
        return {"dim_r": 0, "ell": 0, "hsop": []}
    P: ParameterSystem = find_hsop(G, seed=spec.seed)
    ell = ext_strand_length(free_resolution(J, length=ring.nvars))
    return {"dim_r": krull_dimension(G), "ell": ell, "hsop": [str(f) for f in P.forms]}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="geomconn", description="Count geometric connected components of Proj(A/I) over a finite field."
    )
    sub = ap.add_subparsers(dest="command", required=True)
    c = sub.add_parser("count", help="run the Frobenius pipeline")
    c.add_argument("file")
    c.add_argument("--strategy", choices=STRATEGIES, default="ext")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--t-max", type=int, default=DEFAULT_T_MAX)
    c.add_argument("--json", action="store_true")
    c.add_argument("--verbose", action="store_true")
    o = sub.add_parser("oracle", help="graph count for square-free monomial ideals")
    o.add_argument("file")
    o.add_argument("--json", action="store_true")
    i = sub.add_parser("info", help="dimension, Ext length and parameters only")
    i.add_argument("file")
    return ap


def _load(path: str) -> ProblemSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_problem_file(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _print_report(report: RunReport, as_json: bool) -> None:
    if as_json:
        print(report.to_json())
        return
    print(f"components: {report.components}")
    print(f"geometrically connected: {'yes' if report.connected_geom else 'no'}")
    print(f"dim R: {report.dim_r}")
    if report.strategy != "oracle":
        print(f"ell: {report.ell if report.ell is not None else 'n/a'}")
        print(f"N: {report.stab_n}")
        print(f"parameters: {', '.join(report.hsop) or '-'}")
        print(f"image chain: {report.chain}")
        if not report.certified:
            print("UNCERTIFIED: stabilisation chosen by the plateau heuristic")


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        spec = _load(args.file)
        if args.command == "count":
            spec.strategy, spec.seed, spec.t_max = args.strategy, args.seed, args.t_max
            _print_report(run_pipeline(spec), args.json)
        elif args.command == "oracle":
            _print_report(run_oracle(spec), args.json)
        else:
            print(json.dumps(run_info(spec), sort_keys=True))
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (HsopSearchError, StabilizationError) as exc:
        print(f"limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
