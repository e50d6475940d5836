"""Command-line front end.

Presentation arguments are ``.cub`` paths or ``builtin:NAME``.  Exit status is
0 on success, 1 when a verification fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import boxcat as bc
from . import chains as ch
from . import cset as cs
from . import homotopy_checks as hc
from . import moore as mo
from .cubfile import CubError, read_cub, serialize, write_cub

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def load(name: str, check: bool = True, base_dir: str | None = None) -> cs.CubePresentation:
    if name.startswith("builtin:"):
        return cs.builtin(name[len("builtin:"):])
    path = name if base_dir is None else os.path.join(base_dir, name)
    return read_cub(path, check=check)


def _with_base(X: cs.CubePresentation, base: str | None) -> cs.CubePresentation:
    return X if base is None else X.with_basepoint(base)


def cmd_validate(args) -> int:
    X = load(args.file, check=False)
    bad = cs.validate(X)
    for v in bad:
        print(v)
    if not bad:
        print("ok")
    return FAILED if bad else OK


def cmd_homology(args) -> int:
    X = _with_base(load(args.file), args.base)
    top = args.max_dim if args.max_dim is not None else args.dim + 1
    if top < args.dim + 1:
        raise InputError(f"--max-dim must be at least {args.dim + 1} for degree {args.dim}")
    C = mo.build_complex(X, args.variant, None, top, reduced=args.reduced)
    print(ch.homology_at(C, args.dim))
    return OK


def cmd_normalized(args) -> int:
    X = _with_base(load(args.file), args.base)
    C = mo.normalized_complex(X, None, args.dim + 1)
    print(ch.homology_at(C, args.dim))
    return OK


def cmd_decompose(args) -> int:
    X = _with_base(load(args.file), args.base)
    r = mo.check_decomposition(X, args.dim, args.variant)
    print(r)
    return OK if r.ok else FAILED


def cmd_product(args) -> int:
    P = cs.product(load(args.a), load(args.b))
    if args.output:
        write_cub(args.output, P)
    else:
        sys.stdout.write(serialize(P))
    return OK


def cmd_pi0(args) -> int:
    for cls in cs.pi0(load(args.file)):
        print(" ".join(cls))
    return OK


def cmd_normalize(args) -> int:
    word = bc.parse_word(args.word)
    print(bc.from_word(word, args.dom))
    return OK


def cmd_count(args) -> int:
    value = bc.count_closed_form(args.n, args.i, args.cls)
    print(value)
    if args.n <= 8:
        kinds = {"gm": {bc.Kind.NEG}, "sgm": {bc.Kind.DEGEN, bc.Kind.NEG}}[args.cls]
        enumerated = len(bc.enumerate_morphisms(args.n, args.i, kinds))
        if enumerated != value:
            print(f"enumeration gives {enumerated}", file=sys.stderr)
            return FAILED
    return OK


def cmd_counterexample(args) -> int:
    r = mo.counterexample_witness()
    print("witness: " + " ".join(f"{a:+d} {c}" for c, a in r.chain.items()))
    for (i, e), v in r.faces.items():
        print(f"face {i} {e}: {v or 0}")
    print(f"nonzero: {r.nonzero}")
    print(f"in N: {r.in_normalized}")
    print(f"in D_s + D_n + D_p: {r.in_degenerate}")
    for v, k in r.intersections.items():
        print(f"rank of N meet D ({v.value}): {k}")
    return OK if r.ok else FAILED


def cmd_check_pin(args) -> int:
    X = _with_base(load(args.file), args.base)
    r = mo.check_pi_n(X, None, args.dim)
    print(f"H_{args.dim}(N) = {r.normalized}")
    print(f"H~_{args.dim} = {r.moore}")
    print("equal" if r.equal else "different")
    return OK if r.equal else FAILED


def cmd_variants(args) -> int:
    X = _with_base(load(args.file), args.base)
    r = hc.variant_agreement(X, None, args.dim)
    for v, g in r.groups.items():
        print(f"{v.value}: {g}")
    print("agree" if r.agree else "disagree")
    return OK if r.agree else FAILED


def homotopy_from_json(desc: dict, base_dir: str | None = None) -> tuple[hc.HomotopyData, dict]:
    """Build HomotopyData from the JSON structure described in the README."""
    try:
        X = load(desc["source"], base_dir=base_dir)
        Y = load(desc["target"], base_dir=base_dir)
        based = bool(desc.get("based", True))
        if based:
            X = _with_base(X, desc.get("source_base"))
            Y = _with_base(Y, desc.get("target_base"))
        f = cs.CubicalMap(X, Y, {k: cs.parse_cube(Y, v) for k, v in desc["f"].items()})
        g = cs.CubicalMap(X, Y, {k: cs.parse_cube(Y, v) for k, v in desc["g"].items()})
        paths = {k: cs.parse_cube(Y, v) for k, v in desc["h"].items()}
    except KeyError as exc:
        raise InputError(f"homotopy file is missing {exc}") from None
    missing = set(X.dims) - set(paths)
    if missing:
        raise InputError(f"h has no image for {sorted(missing)}")
    try:
        d = hc.homotopy(f, g, paths, based)
    except KeyError as exc:
        raise InputError(f"map is missing generator {exc}") from None
    opts = {"variant": desc.get("variant", "sn"), "max_dim": int(desc.get("max_dim", 3))}
    return d, opts


def cmd_check_homotopy(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        desc = json.load(fh)
    d, opts = homotopy_from_json(desc, os.path.dirname(os.path.abspath(args.file)))
    try:
        r = hc.verify_chain_homotopy(d, opts["variant"], opts["max_dim"])
    except hc.InvalidHomotopy as exc:
        print(f"invalid homotopy: {exc}", file=sys.stderr)
        return FAILED
    print(r)
    for n, msgs in r.failures.items():
        for m in msgs:
            print(m)
    for m in r.degeneracy_failures:
        print(f"degenerate input, nondegenerate alpha: {m}")
    return OK if r.ok else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubical", description="Exact homology of cubical sets with connections.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_):
        q = sub.add_parser(name, help=help_)
        q.set_defaults(func=func)
        return q

    variants = [v.value for v in mo.Variant]

    q = cmd("validate", cmd_validate, "check the face identities of a presentation")
    q.add_argument("file")

    q = cmd("homology", cmd_homology, "homology of a Moore complex")
    q.add_argument("file")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--variant", choices=variants, default="sn")
    q.add_argument("--reduced", action="store_true")
    q.add_argument("--base")
    q.add_argument("--max-dim", type=int)

    q = cmd("normalized", cmd_normalized, "homology of the normalized subcomplex")
    q.add_argument("file")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--base")

    q = cmd("decompose", cmd_decompose, "check A_n = N_n + D_n")
    q.add_argument("file")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--variant", choices=["sn", "sp"], default="sn")
    q.add_argument("--base")

    q = cmd("product", cmd_product, "geometric product of two presentations")
    q.add_argument("a")
    q.add_argument("b")
    q.add_argument("-o", "--output")

    q = cmd("pi0", cmd_pi0, "connected components")
    q.add_argument("file")

    q = cmd("normalize", cmd_normalize, "standard form of a word (letters applied to points left to right)")
    q.add_argument("word")
    q.add_argument("--dom", type=int, required=True)

    q = cmd("count", cmd_count, "closed-form count of box maps")
    q.add_argument("n", type=int)
    q.add_argument("i", type=int)
    q.add_argument("--class", dest="cls", choices=["gm", "sgm"], required=True)

    cmd("counterexample", cmd_counterexample, "the square with all faces zero")

    for name, func, help_ in (("check-pin", cmd_check_pin, "H_n(N) against reduced homology"),
                              ("variants", cmd_variants, "reduced homology of all quotient variants")):
        q = cmd(name, func, help_)
        q.add_argument("file")
        q.add_argument("--dim", type=int, required=True)
        q.add_argument("--base")

    q = cmd("check-homotopy", cmd_check_homotopy, "verify the chain homotopy of a cubical homotopy")
    q.add_argument("file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except (InputError, CubError, cs.PresentationError, bc.BoxError, mo.MooreError,
            ch.ChainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


run = main


if __name__ == "__main__":
    sys.exit(main())
