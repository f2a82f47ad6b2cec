"""Command-line entry point.

Exit codes: 0 success, 1 a verification verdict did not pass, 2 malformed
input, 3 dependent generators or a sign-ambiguous Q, 4 closure cap exceeded.
"""
from __future__ import annotations

import argparse
import re
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from .closure import analyze
from .constructions import (
    complete_graph,
    cycle_graph,
    extend_naive,
    extend_subset,
    qaoa_generators,
    tensor_q,
)
from .dense import build_hermitian_with_spectrum, matrix_from_json, sign_unambiguous
from .errors import (
    DependentGeneratorsError,
    DLAError,
    InvalidGeneratorError,
    SignAmbiguousError,
    SpecFormatError,
)
from .numeric import DEFAULT_POLICY, TolerancePolicy, hermitian_eig, power_span_check
from .serialize import graph_from_json, load_json, spec_from_json, spec_to_json, write_json
from .verify import (
    BASE_SETS,
    THEOREMS,
    base_spec,
    random_connected_pauli_set,
    random_pauli_set,
    random_two_generator_set,
    verify_theorem,
)

EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_DEPENDENT = 3
EXIT_CAPPED = 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    tol: float | None
    max_dim: int | None
    max_rounds: int
    out: str | None
    seed: int

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(args.command, getattr(args, "spec", None), args.tol, args.max_dim,
                   args.max_rounds, args.out, args.seed)

    @property
    def policy(self) -> TolerancePolicy:
        return DEFAULT_POLICY if self.tol is None else DEFAULT_POLICY.with_rank(self.tol)

    @property
    def caps(self) -> dict:
        return {"max_dim": self.max_dim, "max_rounds": self.max_rounds}


def _summary(text: str) -> None:
    print(text, file=sys.stderr)


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise SpecFormatError(f"bad number list {text!r}") from None


def _ancilla(args, rng) -> np.ndarray:
    if getattr(args, "chi_file", None):
        return matrix_from_json(load_json(args.chi_file))
    spectrum = _floats(args.chi_spectrum)
    return build_hermitian_with_spectrum(spectrum, style=args.chi_style, rng=rng, distinct=True)


def _graph(text: str) -> tuple[int, list]:
    m = re.fullmatch(r"(cycle|complete)(\d+)", text)
    if m:
        n = int(m.group(2))
        return cycle_graph(n) if m.group(1) == "cycle" else complete_graph(n)
    return graph_from_json(load_json(text))


def cmd_analyze(cfg: RunConfig, args) -> int:
    spec = spec_from_json(load_json(args.spec))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        report = analyze(spec.generators, cfg.max_dim, cfg.max_rounds, cfg.policy)
    out = report.to_dict()
    out["family_tag"] = spec.family_tag
    write_json(out, cfg.out)
    if report.capped:
        _summary(f"closure capped at dim {report.dim_g} after {report.rounds} rounds")
        return EXIT_CAPPED
    _summary(f"dim_g={report.dim_g} dim_gg={report.dim_gg} dim_center={report.dim_center} "
             f"L={report.generator_count} lemma7={'ok' if report.lemma7_ok else 'FAILED'}")
    return 0


def _subset(text: str, L: int) -> list[int]:
    if text == "all":
        return list(range(L))
    try:
        idx = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError:
        raise SpecFormatError(f"bad subset {text!r}") from None
    return idx


def cmd_extend(cfg: RunConfig, args) -> int:
    spec = spec_from_json(load_json(args.spec))
    rng = np.random.default_rng(cfg.seed)
    op = _ancilla(args, rng)
    if args.mode == "naive":
        new = extend_naive(spec, op, args.q, cfg.policy)
    elif args.mode == "subset":
        new = extend_subset(spec, op, _subset(args.subset, spec.L))
    else:
        new = tensor_q(spec, op, check_sign=not args.no_sign_check, policy=cfg.policy)
    write_json(spec_to_json(new), cfg.out)
    _summary(f"{args.mode}: {spec.L} -> {new.L} generators on {new.qubit_count} qubits")
    return 0


def _verify_inputs(cfg: RunConfig, args) -> list[tuple]:
    """(spec, aux) pairs for the requested theorem and sweep."""
    rng = np.random.default_rng(cfg.seed)
    tid = args.theorem
    aux: dict = {}
    if args.chi_spectrum or args.chi_file:
        key = "Q" if tid == "thm5" else "chi"
        aux[key] = _ancilla(args, rng)
    elif args.k is not None:
        aux["K"] = args.k
    if args.q is not None:
        aux["q"] = args.q
    if args.index is not None:
        aux["index"] = args.index - 1
    if args.sweep:
        items = []
        for _ in range(args.sweep):
            if tid == "thm3":
                spec = random_connected_pauli_set(rng)
            elif tid == "thm4":
                spec = random_two_generator_set(rng)
            elif tid == "thm8-identity":
                spec = random_pauli_set(rng, qubits=(1, 4), sizes=(2, 2))
            else:
                spec = random_pauli_set(rng)
            extra = dict(aux)
            if "index" not in extra and tid in ("thm3", "thm4"):
                extra["index"] = int(rng.integers(0, spec.L))
            items.append((spec, extra))
        return items
    if args.spec:
        spec = spec_from_json(load_json(args.spec))
    elif args.graph:
        spec = qaoa_generators(*_graph(args.graph), family=args.family)
    else:
        spec = base_spec(args.base)
    return [(spec, aux)]


def cmd_verify(cfg: RunConfig, args) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        verdicts = [verify_theorem(args.theorem, spec, aux, cfg.caps, cfg.policy)
                    for spec, aux in _verify_inputs(cfg, args)]
    write_json([v.to_dict(timings=not args.no_timings) for v in verdicts], cfg.out)
    counts: dict = {}
    for v in verdicts:
        counts[v.status] = counts.get(v.status, 0) + 1
    _summary(f"{args.theorem}: " + ", ".join(f"{n} {s}" for s, n in sorted(counts.items())))
    if any("capped" in v.notes for v in verdicts):
        return EXIT_CAPPED
    if any(v.status in ("fail", "ambiguous") for v in verdicts):
        return EXIT_VERIFY
    return 0


def cmd_graph(cfg: RunConfig, args) -> int:
    spec = qaoa_generators(*_graph(args.graph), family=args.family)
    write_json(spec_to_json(spec), cfg.out)
    _summary(f"{args.family} on {args.graph}: {spec.L} generators, {spec.qubit_count} qubits")
    return 0


def cmd_spectrum(cfg: RunConfig, args) -> int:
    rng = np.random.default_rng(cfg.seed)
    op = _ancilla(args, rng)
    decomp = hermitian_eig(op, cfg.policy)
    nz = decomp.nonzero(cfg.policy)
    check = power_span_check(decomp, policy=cfg.policy)
    out = {
        "dimension": decomp.dim,
        "eigenvalues": [format(v, ".17g") for v in decomp.eigenvalues],
        "multiplicities": list(decomp.multiplicities),
        "K": decomp.K,
        "K_nonzero": nz.K,
        "sign_unambiguous": sign_unambiguous(op, cfg.policy),
        "powers_span_projectors": check.independent,
        "hadamard_ratio": check.hadamard_ratio,
    }
    write_json(out, cfg.out)
    _summary(f"K={decomp.K} (non-zero {nz.K}), sign unambiguous: {out['sign_unambiguous']}")
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="rank threshold (default 1e-9)")
    common.add_argument("--max-dim", type=int, default=None)
    common.add_argument("--max-rounds", type=int, default=64)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output file (default stdout)")

    ancilla = argparse.ArgumentParser(add_help=False)
    ancilla.add_argument("--chi-spectrum", default=None, help="comma-separated distinct eigenvalues")
    ancilla.add_argument("--chi-style", choices=("diagonal", "random-conjugated"), default="diagonal")
    ancilla.add_argument("--chi-file", default=None, help="JSON dense matrix instead of a spectrum")

    p = argparse.ArgumentParser(prog="dlakit", description="Dynamical Lie algebra closure and direct-power checks")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="closure, [g,g] and center of a spec")
    a.add_argument("spec")

    e = sub.add_parser("extend", parents=[common, ancilla], help="build a modified generator set")
    e.add_argument("spec")
    e.add_argument("--mode", choices=("naive", "subset", "tensor-q"), required=True)
    e.add_argument("--subset", default="all", help="'all' or 1-based indices, e.g. 1,3")
    e.add_argument("--q", type=int, default=None, help="number of chi powers for naive mode")
    e.add_argument("--no-sign-check", action="store_true")

    v = sub.add_parser("verify", parents=[common, ancilla], help="check a theorem's prediction")
    v.add_argument("--theorem", choices=THEOREMS, required=True)
    v.add_argument("--spec", default=None)
    v.add_argument("--base", choices=BASE_SETS, default="pauli-xz")
    v.add_argument("--graph", default=None, help="cycleN, completeN or a graph JSON file")
    v.add_argument("--family", choices=("maxcut", "sn_equivariant"), default="maxcut")
    v.add_argument("--k", type=int, default=None, help="use chi = diag(1..K)")
    v.add_argument("--q", type=int, default=None)
    v.add_argument("--index", type=int, default=None, help="1-based generator index")
    v.add_argument("--sweep", type=int, default=0, help="number of seeded random inputs")
    v.add_argument("--no-timings", action="store_true")

    g = sub.add_parser("graph", parents=[common], help="emit a QAOA generator spec")
    g.add_argument("--graph", required=True, help="cycleN, completeN or a graph JSON file")
    g.add_argument("--family", choices=("maxcut", "sn_equivariant"), default="maxcut")

    s = sub.add_parser("spectrum", parents=[common, ancilla], help="inspect a chi or Q operator")
    return p


_COMMANDS = {
    "analyze": cmd_analyze,
    "extend": cmd_extend,
    "verify": cmd_verify,
    "graph": cmd_graph,
    "spectrum": cmd_spectrum,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    cfg = RunConfig.from_args(args)
    if args.command in ("extend", "spectrum") and not (args.chi_spectrum or args.chi_file):
        args.chi_spectrum = "1,2"
    try:
        return _COMMANDS[args.command](cfg, args)
    except (DependentGeneratorsError, SignAmbiguousError) as exc:
        _summary(f"error: {exc}")
        return EXIT_DEPENDENT
    except (SpecFormatError, InvalidGeneratorError, OSError) as exc:
        _summary(f"error: {exc}")
        return EXIT_INPUT
    except (DLAError, ValueError) as exc:
        _summary(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
