"""Command-line front end.

Subcommands: ``spectrum``, ``vps``, ``duality``, ``modular``, ``u1-coset``.
Exit codes: 0 on success or PASS, 2 when a mathematical check fails
(duality mismatch, failed self-audit), 1 on operational errors (bad
arguments, exceeded budgets, cache verification failures).

Resolved spectra are cached as JSON documents under a directory keyed by
(m, n, k, schema version); ``KSCOSET_CACHE_DIR`` overrides the default
location, ``--cache-dir`` overrides both, ``--no-cache`` bypasses the cache
entirely, and ``--verify-cache`` recomputes alongside a hit and insists the
bytes agree.  Writes are atomic (temp file then rename).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .coset import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    CosetSpec,
    resolve_spectrum,
    vp_group,
)
from .duality import compare_fingerprints, dual_spec
from .modular import h_spin, h_su, h_u1
from .output import (
    SCHEMA_VERSION,
    document,
    duality_payload,
    modular_document_spin,
    modular_document_su,
    modular_document_u1,
    payload_fingerprint,
    render,
    render_json,
    spectrum_payload,
    u1_coset_payload,
    vp_group_payload,
)

CACHE_ENV_VAR = "KSCOSET_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "kscoset"


def _cache_path(cache_dir: Path, spec: CosetSpec) -> Path:
    return cache_dir / f"spectrum_m{spec.m}_n{spec.n}_k{spec.k}_v{SCHEMA_VERSION}.json"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_cached_document(path: Path, spec: CosetSpec) -> dict | None:
    """Read a cached spectrum document; None when absent or unusable."""
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        print(
            f"warning: cache entry {path} is corrupt ({exc}); recomputing",
            file=sys.stderr,
        )
        return None
    expected_spec = {"m": spec.m, "n": spec.n, "k": spec.k}
    if (
        not isinstance(doc, dict)
        or doc.get("schema_version") != SCHEMA_VERSION
        or doc.get("kind") != "spectrum"
        or doc.get("spec") != expected_spec
        or "payload" not in doc
    ):
        print(
            f"warning: cache entry {path} does not match its key; recomputing",
            file=sys.stderr,
        )
        return None
    return doc


def _spectrum_document(
    spec: CosetSpec,
    budget: int,
    cache_dir: Path,
    no_cache: bool,
    verify_cache: bool,
) -> dict:
    """Load the spectrum document from cache or compute and store it."""
    if no_cache:
        return document(
            "spectrum", spectrum_payload(resolve_spectrum(spec, budget)), spec
        )
    path = _cache_path(cache_dir, spec)
    cached = _load_cached_document(path, spec)
    if cached is not None and not verify_cache:
        return cached
    fresh = document("spectrum", spectrum_payload(resolve_spectrum(spec, budget)), spec)
    if cached is not None and verify_cache:
        if render_json(cached) != render_json(fresh):
            raise RuntimeError(
                f"cache entry {path} differs from fresh computation; "
                "delete it or run with --no-cache"
            )
        return cached
    _write_atomic(path, render_json(fresh))
    return fresh


def cmd_spectrum(args) -> int:
    spec = CosetSpec(args.m, args.n, args.k)
    doc = _spectrum_document(
        spec, args.budget, Path(args.cache_dir), args.no_cache, args.verify_cache
    )
    sys.stdout.write(render(doc, args.format))
    return 0


def _verify_vp_group(group) -> dict:
    """Self-audit: group laws and exact weight integrality of every image."""
    elements = group.elements
    closure = all(
        group.compose(w, v) in elements for w in elements for v in elements
    )
    inverses = all(group.compose(w, group.inverse(w)) == group.identity for w in elements)
    commutes = all(
        group.compose(w, v) == group.compose(v, w) for w in elements for v in elements
    )
    integral = True
    for w in elements:
        f = w.image
        grade = (h_su(f.lambda1) + h_su(f.lambda2) + h_u1(f.charge)) - (
            h_su(f.lambda0) + h_spin(f.pi0)
        )
        if grade.denominator != 1 or grade < 0:
            integral = False
    return {
        "group_laws": "ok" if closure and inverses and commutes else "FAILED",
        "h_integrality": "ok" if integral else "FAILED",
    }


def cmd_vps(args) -> int:
    spec = CosetSpec(args.m, args.n, args.k)
    group = vp_group(spec)
    verification = _verify_vp_group(group) if args.verify else None
    doc = document("vp_group", vp_group_payload(group, verification), spec)
    sys.stdout.write(render(doc, args.format))
    if verification is not None and any(v != "ok" for v in verification.values()):
        return 2
    return 0


def cmd_duality(args) -> int:
    spec = CosetSpec(args.m, args.n, args.k)
    other = dual_spec(spec)
    cache_dir = Path(args.cache_dir)
    left_doc = _spectrum_document(
        spec, args.budget, cache_dir, args.no_cache, args.verify_cache
    )
    right_doc = _spectrum_document(
        other, args.budget, cache_dir, args.no_cache, args.verify_cache
    )
    report = compare_fingerprints(
        spec,
        other,
        payload_fingerprint(left_doc["payload"]),
        payload_fingerprint(right_doc["payload"]),
    )
    doc = document("duality_report", duality_payload(report), spec)
    sys.stdout.write(render(doc, args.format))
    return 0 if report.passed else 2


def cmd_modular(args) -> int:
    if args.factor == "su":
        doc = modular_document_su(args.rank, args.level)
    elif args.factor == "u1":
        doc = modular_document_u1(args.rank)
    else:
        doc = modular_document_spin(args.rank)
    sys.stdout.write(render(doc, args.format))
    return 0


def cmd_u1_coset(args) -> int:
    doc = document("modular_data", u1_coset_payload(args.a, args.b))
    sys.stdout.write(render(doc, args.format))
    payload = doc["payload"]
    if float(payload["difference"]) > 1e-9:
        print(
            f"vacuum weight mismatch: {payload['vacuum_weight_direct']} vs "
            f"{payload['vacuum_weight_closed_form']}",
            file=sys.stderr,
        )
        return 2
    return 0


def _add_format(parser) -> None:
    parser.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default="table",
        help="output format (default: table)",
    )


def _add_cache_flags(parser) -> None:
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="candidate enumeration ceiling")
    parser.add_argument("--no-cache", action="store_true",
                        help="neither read nor write the spectrum cache")
    parser.add_argument("--verify-cache", action="store_true",
                        help="recompute on a cache hit and require identical bytes")
    parser.add_argument("--cache-dir", default=str(default_cache_dir()),
                        help="cache directory (default: $KSCOSET_CACHE_DIR or ~/.cache/kscoset)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kscoset",
        description="Primary-field spectra of Grassmannian cosets and their level-rank duals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="resolved primary spectrum of G(m,n,k)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    _add_format(p)
    _add_cache_flags(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("vps", help="identification current group of G(m,n,k)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    _add_format(p)
    p.add_argument("--verify", action="store_true",
                   help="re-run group-law and weight-integrality audits")
    p.set_defaults(func=cmd_vps)

    p = sub.add_parser("duality", help="compare G(m,n,k) against G(k,n,m)")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    _add_format(p)
    _add_cache_flags(p)
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("modular", help="modular data of a single chiral factor")
    p.add_argument("factor", choices=("su", "u1", "spin"))
    p.add_argument("rank", type=int,
                   help="rank for su, modulus for u1, half-dimension for spin")
    p.add_argument("level", type=int, nargs="?", default=None,
                   help="level (su only)")
    _add_format(p)
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("u1-coset", help="torus coset u1(2a) x u1(2b) / u1(2(a+b))")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    _add_format(p)
    p.set_defaults(func=cmd_u1_coset)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "modular":
        if args.factor == "su" and args.level is None:
            parser.error("modular su requires a level")
        if args.factor != "su" and args.level is not None:
            parser.error(f"modular {args.factor} takes no level")
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())
