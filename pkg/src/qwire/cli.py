"""Command-line interface.

Exit codes: 0 success, 1 a box fails to check or two boxes differ,
2 parse, lookup or usage error.

A FILE argument of ``builtin:`` addresses the built-in corpus, where BOX
names an entry such as ``coin_flips@3``.  ``builtin:NAME.qw`` reads one of
the bundled source files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, TextIO

import numpy as np

from . import matrix as M
from .check import WireTypeError, box_type, check_box
from .corpus import FAMILIES, FIXED, UnknownBox, builtin, builtin_corpus, source_files
from .denote import box_dims, denote_box, superop_distance
from .ir import Box, format_wtype
from .surface import ElaborationError, ParseError, elaborate_each, format_register, lower, parse

OK, FAIL, USAGE = 0, 1, 2
BUILTIN = "builtin:"


class CliError(Exception):
    """Reported on stderr with exit code 2."""


def _read_source(file: str) -> str:
    if file.startswith(BUILTIN):
        name = file[len(BUILTIN):]
        files = source_files()
        if name not in files:
            raise CliError(f"no bundled source {name!r}")
        return files[name]
    try:
        return Path(file).read_text()
    except OSError as e:
        raise CliError(f"cannot read {file}: {e.strerror or e}") from None


def _load_all(file: str) -> list[tuple[str, object]]:
    """``(name, Box | error)`` for every box of FILE."""
    if file == BUILTIN:
        return list(builtin_corpus().items())
    text = _read_source(file)
    try:
        prog = parse(text)
    except ParseError as e:
        raise CliError(f"parse error: {file}:{e}") from None
    return list(elaborate_each(prog))


def _load_box(file: str, name: str) -> Box:
    if file == BUILTIN:
        try:
            return builtin(name)
        except UnknownBox as e:
            raise CliError(str(e)) from None
    for n, r in _load_all(file):
        if n == name:
            if isinstance(r, ElaborationError):
                raise CliError(f"{name}: {r}")
            if isinstance(r, WireTypeError):
                raise r
            return r
    raise CliError(f"no box {name!r} in {file}")


def _signature(b: Box) -> str:
    w1, w2 = box_type(b)
    return f"{format_wtype(w1)} -> {format_wtype(w2)}"


def cmd_check(args, out: TextIO, err: TextIO) -> int:
    code = OK
    for name, r in _load_all(args.file):
        if isinstance(r, Box):
            try:
                check_box(r)
            except WireTypeError as e:
                r = e
        if isinstance(r, Box):
            out.write(f"ok: {name} : {_signature(r)}\n")
        elif isinstance(r, ElaborationError):
            out.write(f"error: {name}: {r}\n")
            code = USAGE
        else:
            out.write(f"error: {name}: {r}\n")
            code = max(code, FAIL)
    return code


def _input_matrix(spec: str, dim: int) -> np.ndarray:
    if spec == "id":
        return M.identity(dim) / dim
    try:
        text = Path(spec).read_text()
    except OSError as e:
        raise CliError(f"cannot read {spec}: {e.strerror or e}") from None
    try:
        rho = M.parse_matrix(text)
    except ValueError as e:
        raise CliError(f"bad matrix in {spec}: {e}") from None
    if rho.shape != (dim, dim):
        raise CliError(f"input is {rho.shape[0]}x{rho.shape[1]}, box expects {dim}x{dim}")
    return rho


def cmd_sim(args, out: TextIO, err: TextIO) -> int:
    b = _load_box(args.file, args.box)
    dim, _ = box_dims(b)
    rho = _input_matrix(args.input, dim)
    if not M.is_density(rho, args.eps):
        err.write("warning: input is not a density matrix\n")
    out.write(M.format_matrix(denote_box(b).fn(rho)))
    return OK


def _snap(x: float) -> str:
    return f"{0.0 if abs(x) < 5e-10 else x:.9f}"


def cmd_eq(args, out: TextIO, err: TextIO) -> int:
    b1 = _load_box(args.file1, args.box1)
    b2 = _load_box(args.file2, args.box2)
    # Boxes are compared as maps between density matrices, so only the
    # dimensions have to agree; Bit and Qubit share a space.
    if box_dims(b1) != box_dims(b2):
        raise CliError(f"type mismatch: {_signature(b1)} vs {_signature(b2)}")
    if box_type(b1) != box_type(b2):
        err.write(f"note: comparing {_signature(b1)} with {_signature(b2)}\n")
    d = superop_distance(denote_box(b1), denote_box(b2))
    out.write(f"max deviation: {_snap(d)}\n")
    if d <= args.eps:
        out.write("equivalent\n")
        return OK
    out.write("not equivalent\n")
    return FAIL


def cmd_lower(args, out: TextIO, err: TextIO) -> int:
    out.write(format_register(lower(_load_box(args.file, args.box))))
    return OK


def cmd_list(args, out: TextIO, err: TextIO) -> int:
    for name, make in FIXED.items():
        out.write(f"{name} : {_signature(make())}\n")
    for name, param in FAMILIES.items():
        out.write(f"{name}@{param}\n")
    for name in source_files():
        out.write(f"{BUILTIN}{name}\n")
    return OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qwire", description="Check, simulate, compare and lower linear quantum circuits.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="type-check every box in a file")
    c.add_argument("file")
    c.set_defaults(run=cmd_check)

    s = sub.add_parser("sim", help="apply a box to a density matrix")
    s.add_argument("file")
    s.add_argument("box")
    s.add_argument("--input", default="id", help="matrix file, or 'id' for the maximally mixed state")
    s.add_argument("--eps", type=float, default=M.DEFAULT_EPS)
    s.set_defaults(run=cmd_sim)

    e = sub.add_parser("eq", help="compare two boxes as superoperators")
    e.add_argument("file1")
    e.add_argument("box1")
    e.add_argument("file2")
    e.add_argument("box2")
    e.add_argument("--eps", type=float, default=M.DEFAULT_EPS)
    e.set_defaults(run=cmd_eq)

    lo = sub.add_parser("lower", help="print the register program of a box")
    lo.add_argument("file")
    lo.add_argument("box")
    lo.set_defaults(run=cmd_lower)

    ls = sub.add_parser("list", help="list the built-in corpus")
    ls.set_defaults(run=cmd_list)
    return p


def main(argv: Optional[list[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = make_parser().parse_args(argv)
        return args.run(args, out, err)
    except CliError as e:
        err.write(f"error: {e}\n")
        return USAGE
    except WireTypeError as e:
        err.write(f"error: {e}\n")
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
