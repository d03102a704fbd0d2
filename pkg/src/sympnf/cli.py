"""Command-line front end.

Subcommands: check, normal-form, verify, random.  Exit codes are a stable
contract: 0 success, 1 predicate false, 2 unsupported field path, 3 parse
or flag error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .errors import (
    BadSpecError,
    ExactAlgebraError,
    InstanceParseError,
    NotSelfAdjointError,
    UnsupportedFieldPathError,
)
from .fields import make_field
from .normalform import random_self_adjoint, symplectic_normal_form, verify_certificate
from .poly import Poly
from .serialize import (
    certificate_from_json,
    certificate_to_json,
    dumps_canonical,
    instance_from_json,
    instance_to_json,
)
from .symplectic import SymplecticSpace, is_self_adjoint

EXIT_OK = 0
EXIT_PREDICATE_FALSE = 1
EXIT_UNSUPPORTED = 2
EXIT_PARSE = 3


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InstanceParseError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_field_flag(flag: str):
    """rational | prime:p | ext:p:c0,c1,...,1 (modulus low-to-high)."""
    parts = flag.split(":")
    try:
        if parts == ["rational"]:
            return make_field("rational")
        if parts[0] == "prime" and len(parts) == 2:
            return make_field("prime", p=int(parts[1]))
        if parts[0] == "ext" and len(parts) == 3:
            modulus = [int(c) for c in parts[2].split(",")]
            return make_field("extension", p=int(parts[1]), modulus=modulus)
    except (ValueError, ExactAlgebraError) as exc:
        raise InstanceParseError(f"bad --field value {flag!r}: {exc}") from exc
    raise InstanceParseError(f"bad --field value {flag!r}")


def _parse_spec_scalar(field, text: str):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        if field.kind != "extension":
            raise InstanceParseError("coefficient-vector eigenvalues need an extension field")
        from .fields import ExtElement

        coeffs = [field.base.from_int(int(c)) for c in text[1:-1].split(",")]
        if len(coeffs) != field.degree:
            raise InstanceParseError(f"eigenvalue needs {field.degree} coefficients")
        return ExtElement(field, tuple(coeffs))
    if field.kind == "rational":
        return Fraction(text)
    return field.from_int(int(text))


def parse_block_spec(field, text: str):
    """Entries separated by ';'.  Jordan blocks: '<eigenvalue>:[s1,s2]';
    companion blocks of P^m: 'irr(c0,...,1):[m1,m2]'."""
    entries = []
    for raw in text.split(";"):
        raw = raw.strip()
        if not raw:
            continue
        head, _, tail = raw.rpartition(":")
        if not head or not (tail.startswith("[") and tail.endswith("]")):
            raise InstanceParseError(f"bad spec entry {raw!r}")
        try:
            sizes = tuple(int(s) for s in tail[1:-1].split(","))
        except ValueError as exc:
            raise InstanceParseError(f"bad sizes in spec entry {raw!r}") from exc
        if any(s < 1 for s in sizes):
            raise InstanceParseError(f"sizes must be positive in {raw!r}")
        if head.startswith("irr(") and head.endswith(")"):
            try:
                coeffs = [field.from_int(int(c)) for c in head[4:-1].split(",")]
            except ValueError as exc:
                raise InstanceParseError(f"bad polynomial in {raw!r}") from exc
            entries.append(("companion", Poly(field, coeffs), sizes))
        else:
            entries.append(("jordan", _parse_spec_scalar(field, head), sizes))
    if not entries:
        raise InstanceParseError("empty --spec")
    return entries


# --- subcommands ------------------------------------------------------------


def cmd_check(args) -> int:
    space, a = instance_from_json(_load_json(args.path))
    ok = is_self_adjoint(space, a)
    print(f"self-adjoint: {'true' if ok else 'false'}")
    return EXIT_OK if ok else EXIT_PREDICATE_FALSE


def cmd_normal_form(args) -> int:
    space, a = instance_from_json(_load_json(args.path))
    try:
        cert = symplectic_normal_form(space, a, seed=args.seed)
    except NotSelfAdjointError:
        print("error: matrix is not self-adjoint", file=sys.stderr)
        return EXIT_PREDICATE_FALSE
    except UnsupportedFieldPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    print(f"case: {cert.case}")
    if cert.jordan_spec is not None:
        from .serialize import encode_scalar

        parts = []
        for lam, sizes in cert.jordan_spec:
            enc = encode_scalar(space.field, lam)
            if isinstance(enc, list):
                enc = "(" + ",".join(enc) + ")"
            parts.append(f"{enc}:{list(sizes)}")
        print("jordan_spec: " + "; ".join(parts))
    _emit(dumps_canonical(certificate_to_json(cert)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = certificate_from_json(_load_json(args.path))
    report = verify_certificate(cert)
    for name, passed in report.checks.items():
        print(f"{name}: {'pass' if passed else 'FAIL'}")
    return EXIT_OK if report.ok else EXIT_PREDICATE_FALSE


def cmd_random(args) -> int:
    field = parse_field_flag(args.field)
    spec = parse_block_spec(field, args.spec)
    total = 0
    for entry in spec:
        if entry[0] == "jordan":
            total += sum(entry[2])
        else:
            total += entry[1].degree * sum(entry[2])
    if args.n is not None and args.n != total:
        raise InstanceParseError(f"--spec dimensions sum to {total}, but --n is {args.n}")
    space = SymplecticSpace(field, total)
    rng = random.Random(args.seed)
    try:
        a = random_self_adjoint(space, rng, spec)
    except BadSpecError as exc:
        raise InstanceParseError(str(exc)) from exc
    _emit(dumps_canonical(instance_to_json(space, a)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympnf",
        description="Symplectic normal forms of self-adjoint operators over exact fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test an instance for self-adjointness")
    p.add_argument("path")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normal-form", help="compute a normal-form certificate")
    p.add_argument("path")
    p.add_argument("-o", "--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("verify", help="independently verify a certificate")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="generate a seeded self-adjoint instance")
    p.add_argument("--field", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_random)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InstanceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnsupportedFieldPathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ExactAlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PREDICATE_FALSE


if __name__ == "__main__":
    sys.exit(main())
