"""Command-line entry point: ``swdegree <command> ...``.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
precondition errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import ChartabValidationError, InternalCheckError, SwDegreeError
from .formulas import (
    bryan_degree,
    bryan_exponent,
    furuta_degree,
    is_prime,
    odd_sum_alpha0,
    odd_sum_coefficient,
    z6_abc,
    z6_constraints,
    z6_solve,
    zp_closed_form,
    zp_degree,
)
from .groups import AbelianGroup, Group, TabledGroup, parse_character_table, parse_group_spec
from .reprings import EquivElem, equiv_decompose, parse_pin2, render_equiv
from .verify import (
    ApproximationParams,
    VerificationReport,
    VerifyConfig,
    check_cover_identity,
    check_product_lemma,
    check_z6_consistency,
    default_grid,
    run_all,
)

TABLE_PATH_ENV = "SWDEGREE_TABLE_PATH"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(SwDegreeError):
    pass


@dataclass
class CliConfig:
    format: str = "text"
    table_path: list[str] = field(default_factory=list)
    max_n: int = 99
    audit_max_n: int = 25
    primes: tuple[int, ...] = (3, 5, 7, 11)
    grid: tuple[tuple[int, int], ...] = tuple(default_grid())
    params: tuple[tuple[int, int], ...] = ((0, 0), (1, 1), (2, 3))
    jobs: int = 1
    assert_bryan_hypothesis: bool = False

    KEYS = ("format", "table_path", "max_n", "audit_max_n", "primes", "grid", "params", "jobs",
            "assert_bryan_hypothesis")

    def validate(self) -> None:
        if self.format not in ("text", "json"):
            raise UsageError(f"format must be 'text' or 'json', got {self.format!r}")
        for name in ("max_n", "audit_max_n", "jobs"):
            if int(getattr(self, name)) < 1:
                raise UsageError(f"{name} must be positive, got {getattr(self, name)}")
        for p in self.primes:
            if p % 2 == 0 or not is_prime(p):
                raise UsageError(f"prime list entries must be odd primes, got {p}")
        if not self.grid:
            raise UsageError("the (m, k) grid is empty")
        for N, M in self.params:
            if N < 0 or M < 0:
                raise UsageError(f"approximation parameters must be non-negative, got N={N}, M={M}")

    def update(self, values: dict) -> None:
        for key, value in values.items():
            if key not in self.KEYS:
                raise UsageError(f"unknown configuration key {key!r}")
            if value is None:
                continue
            if key in ("primes",):
                value = tuple(int(p) for p in (parse_int_list(value) if isinstance(value, str) else value))
            elif key == "grid":
                value = tuple(parse_grid(value) if isinstance(value, str) else (tuple(x) for x in value))
            elif key == "params":
                value = tuple(parse_params(value) if isinstance(value, str) else (tuple(x) for x in value))
            elif key == "table_path" and isinstance(value, str):
                value = [p for p in value.split(os.pathsep) if p]
            setattr(self, key, value)

    def verify_config(self) -> VerifyConfig:
        return VerifyConfig(
            max_n=self.max_n,
            audit_max_n=self.audit_max_n,
            primes=tuple(self.primes),
            grid=tuple(self.grid),
            params=tuple(self.params),
        )


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from None


def parse_grid(text: str) -> list[tuple[int, int]]:
    """``m0..m1,k0..k1``: every (m, k) in the box with m - 2k - 1 >= 0."""
    m = re.fullmatch(r"\s*(\d+)\.\.(\d+)\s*,\s*(\d+)\.\.(\d+)\s*", text)
    if not m:
        raise UsageError(f"grid must look like 'm0..m1,k0..k1', got {text!r}")
    m0, m1, k0, k1 = map(int, m.groups())
    grid = [(mm, kk) for kk in range(k0, k1 + 1) for mm in range(m0, m1 + 1) if mm > 0 and mm - 2 * kk - 1 >= 0]
    if not grid:
        raise UsageError(f"grid {text!r} contains no (m, k) with m - 2k - 1 >= 0")
    return grid


def parse_params(text: str) -> list[tuple[int, int]]:
    """``N:M,N:M,...`` uniform approximation parameters."""
    out = []
    for part in text.split(","):
        mm = re.fullmatch(r"\s*(\d+):(\d+)\s*", part)
        if not mm:
            raise UsageError(f"params must look like '0:0,1:1,2:3', got {text!r}")
        out.append((int(mm.group(1)), int(mm.group(2))))
    return out


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config file {path}: top level must be an object")
    return data


def table_search_path(config: CliConfig) -> list[Path]:
    dirs = list(config.table_path)
    env = os.environ.get(TABLE_PATH_ENV, "")
    dirs += [p for p in env.split(os.pathsep) if p]
    return [Path(d) for d in dirs]


def find_table(name: str, config: CliConfig) -> Path:
    candidates = [Path(name)]
    for d in table_search_path(config):
        candidates += [d / name, d / f"{name}.tbl"]
    for c in candidates:
        if c.is_file():
            return c
    raise UsageError(f"no group spec or character-table file matches {name!r}")


def resolve_group(spec: str, config: CliConfig) -> Group:
    if re.fullmatch(r"1|Z\d+(xZ\d+)*", spec.strip()):
        return parse_group_spec(spec)
    path = find_table(spec, config)
    return TabledGroup(parse_character_table(path.read_text(encoding="utf-8")))


def factored(x: EquivElem) -> str:
    """``alpha ⊗ (1 - c)`` when x has that shape, else the per-irrep listing."""
    alpha0, alpha0_tilde, higher = equiv_decompose(x)
    if not higher and alpha0 == alpha0_tilde and alpha0.coeffs:
        return f"{alpha0} ⊗ (1 - c)"
    return render_equiv(x, sep=" + ")


# --- output -----------------------------------------------------------------


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, payload: dict, text: str) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
        else:
            self.stream.write(text.rstrip("\n") + "\n")

    def error(self, exc: BaseException, err_stream=None) -> None:
        kind = type(exc).__name__
        if self.fmt == "json":
            self.stream.write(json.dumps({"error": kind, "message": str(exc)}, ensure_ascii=False) + "\n")
        else:
            (err_stream or sys.stderr).write(f"error: {exc}\n")


def degree_payload(kind: str, inputs: dict, closed: str, x: EquivElem) -> tuple[dict, str]:
    payload = {"kind": kind, "inputs": inputs, "closed_form": closed, "degree": x.to_json()}
    text = f"closed form: {closed}\nexpansion:   {factored(x)}\nby irrep:\n  " + render_equiv(x, sep="\n  ")
    return payload, text


def cmd_degree(args, config: CliConfig, out: Output) -> int:
    if args.what == "furuta":
        value = furuta_degree(args.m, args.k)
        e = args.m - 2 * args.k - 1
        closed = f"2^{e}(1 - c)"
        out.emit(
            {"kind": "furuta", "inputs": {"m": args.m, "k": args.k}, "closed_form": closed, "degree": value.to_json()},
            f"closed form: {closed}\nvalue:       {value}",
        )
        return EXIT_OK
    if args.what == "zp":
        form = zp_closed_form(args.p, args.m, args.k)
        payload, text = degree_payload(
            "zp", {"p": args.p, "m": args.m, "k": args.k}, str(form), zp_degree(args.p, args.m, args.k)
        )
        out.emit(payload, text)
        return EXIT_OK
    if args.what == "bryan":
        x = bryan_degree(args.q, args.m, args.k)
        closed = f"2^{bryan_exponent(args.q, args.m, args.k)}[L2((Z2)^{args.q})](1 - c)"
        ack = args.assert_bryan_hypothesis or config.assert_bryan_hypothesis
        payload, text = degree_payload("bryan", {"q": args.q, "m": args.m, "k": args.k}, closed, x)
        payload["bryan_hypothesis"] = "acknowledged" if ack else "assumed, not checked"
        if not ack:
            text += "\nnote: assumes b+(X) != b+(X/<g>) for every non-trivial g (pass --assert-bryan-hypothesis)"
        out.emit(payload, text)
        return EXIT_OK
    if args.what == "odd-sum":
        G = resolve_group(args.group, config)
        rep = odd_sum_alpha0(G, args.m, args.k)
        x = odd_sum_coefficient(G.order, args.m, args.k)
        closed = f"2^{args.m - 2 * args.k}({x}·[L2({G.name})] + rho_triv)"
        payload = {
            "kind": "odd-sum",
            "inputs": {"group": G.spec, "m": args.m, "k": args.k},
            "closed_form": closed,
            "alpha0_plus_alpha0_tilde": rep.to_json(),
        }
        out.emit(payload, f"closed form: {closed}\nexpansion:   {rep}")
        return EXIT_OK
    raise UsageError(f"unknown degree kind {args.what!r}")


def cmd_solve(args, config: CliConfig, out: Output) -> int:
    beta0, beta1 = parse_pin2(args.beta0), parse_pin2(args.beta1)
    A, B, C = z6_abc(args.mx, args.kx)
    betas = (beta0, beta1, *z6_solve(args.mx, args.kx, beta0, beta1))
    checks = z6_constraints(args.mx, args.kx, betas)
    payload = {
        "kind": "z6",
        "inputs": {"m_X": args.mx, "k_X": args.kx},
        "A": A.to_json(),
        "B": B.to_json(),
        "C": C.to_json(),
        "betas": [b.to_json() for b in betas],
        "constraints": [{"name": n, "holds": lhs == rhs} for n, lhs, rhs in checks],
    }
    lines = [f"A = {A}", f"B = {B}", f"C = {C}"]
    lines += [f"beta{i} = {b}" for i, b in enumerate(betas)]
    lines += [f"{'ok ' if lhs == rhs else 'BAD'} {n}" for n, lhs, rhs in checks]
    out.emit(payload, "\n".join(lines))
    return EXIT_OK


def emit_reports(reports: Sequence[VerificationReport], out: Output) -> int:
    failed = [r for r in reports if not r.passed]
    payload = {"pass": not failed, "total": len(reports), "failed": len(failed),
               "reports": [r.to_json() for r in reports]}
    text = "\n".join(r.render() for r in reports)
    if len(reports) > 1:
        text += f"\n{len(reports) - len(failed)}/{len(reports)} checks passed"
    out.emit(payload, text)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_verify(args, config: CliConfig, out: Output) -> int:
    if args.what == "all":
        return emit_reports(run_all(config.verify_config(), jobs=config.jobs), out)
    if args.what == "lemma":
        return emit_reports([check_product_lemma(args.n)], out)
    if args.what == "cover":
        G = AbelianGroup([args.p])
        x = zp_degree(args.p, args.m, args.k)
        params = ApproximationParams.uniform(args.N, args.M)
        return emit_reports([check_cover_identity(G, args.m, args.k, x, params)], out)
    if args.what == "z6":
        beta0, beta1 = parse_pin2(args.beta0), parse_pin2(args.beta1)
        betas = None
        if args.betas:
            betas = [parse_pin2(b) for b in args.betas.split(";")]
            if len(betas) != 6:
                raise UsageError(f"--betas needs six ';'-separated entries, got {len(betas)}")
        return emit_reports([check_z6_consistency(args.mx, args.kx, beta0, beta1, betas)], out)
    raise UsageError(f"unknown verify target {args.what!r}")


def cmd_chartab(args, config: CliConfig, out: Output) -> int:
    path = find_table(args.file, config)
    try:
        table = parse_character_table(path.read_text(encoding="utf-8"))
    except ChartabValidationError as exc:
        out.emit({"valid": False, "file": str(path), "error": str(exc)}, f"invalid: {exc}")
        return EXIT_FAIL
    payload = {
        "valid": True,
        "file": str(path),
        "group": table.name,
        "order": table.order,
        "classes": [c.label for c in table.classes],
        "irreps": [{"label": r.label, "dim": r.dim} for r in table.rows],
        "power_maps": all(c.powers is not None for c in table.classes),
    }
    dims = ", ".join(f"{r.label}:{r.dim}" for r in table.rows)
    out.emit(payload, f"valid: {table.name} (order {table.order}, {len(table.classes)} classes; dims {dims})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swdegree", description="Equivariant Seiberg-Witten degrees on finite covers.")
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.add_argument("--config", help="JSON file with default option values (flags win)")
    parser.add_argument("--table-path", help=f"extra character-table directories (also ${TABLE_PATH_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    deg = sub.add_parser("degree", help="closed-form degrees").add_subparsers(dest="what", required=True)
    p = deg.add_parser("furuta")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = deg.add_parser("zp")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = deg.add_parser("bryan")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--assert-bryan-hypothesis", action="store_true")
    p = deg.add_parser("odd-sum")
    p.add_argument("--group", required=True, help="Z<n>[xZ<m>...] or a character-table file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    solve = sub.add_parser("solve", help="solve for degrees from constraints").add_subparsers(dest="what", required=True)
    p = solve.add_parser("z6")
    p.add_argument("--mx", type=int, required=True)
    p.add_argument("--kx", type=int, required=True)
    p.add_argument("--beta0", default="0")
    p.add_argument("--beta1", default="0")

    ver = sub.add_parser("verify", help="run identity checks").add_subparsers(dest="what", required=True)
    p = ver.add_parser("all")
    p.add_argument("--max-n", type=int)
    p.add_argument("--audit-max-n", type=int)
    p.add_argument("--primes")
    p.add_argument("--grid", help="m0..m1,k0..k1")
    p.add_argument("--params", help="N:M pairs, e.g. 0:0,1:1,2:3")
    p.add_argument("--jobs", type=int)
    p = ver.add_parser("lemma")
    p.add_argument("--n", type=int, required=True)
    p = ver.add_parser("cover")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--M", type=int, default=1)
    p = ver.add_parser("z6")
    p.add_argument("--mx", type=int, required=True)
    p.add_argument("--kx", type=int, required=True)
    p.add_argument("--beta0", default="0")
    p.add_argument("--beta1", default="0")
    p.add_argument("--betas", help="override all six betas, ';'-separated")

    tab = sub.add_parser("chartab", help="character tables").add_subparsers(dest="what", required=True)
    p = tab.add_parser("check")
    p.add_argument("file")
    return parser


def make_config(args) -> CliConfig:
    config = CliConfig()
    if args.config:
        config.update(load_config_file(args.config))
    flags = {"format": args.format, "table_path": args.table_path}
    if args.command == "verify" and args.what == "all":
        flags.update(max_n=args.max_n, audit_max_n=args.audit_max_n, primes=args.primes,
                     grid=args.grid, params=args.params, jobs=args.jobs)
    config.update(flags)
    config.validate()
    return config


COMMANDS = {"degree": cmd_degree, "solve": cmd_solve, "verify": cmd_verify, "chartab": cmd_chartab}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.format or "text", stdout)
    try:
        config = make_config(args)
        out.fmt = config.format
        return COMMANDS[args.command](args, config, out)
    except InternalCheckError as exc:
        out.error(exc, stderr)
        return EXIT_FAIL
    except (SwDegreeError, ValueError) as exc:
        out.error(exc, stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
