"""Command line entry point: ``stsrank <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census, checks
from .errors import StsRankError
from .onefact import classify_orbits, enumerate_factorizations, write_factorizations
from .stsbuild import TripleSystem, assemble, dumps, enumerate_sts7, rank_class, recipe

CLI_M_RANGE = (5, 6, 7)


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _render(results) -> str:
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}  [{r.anchor}]")
        lines += [f"    {d}" for d in r.details]
    return "\n".join(lines) + "\n"


def _report(args, command: str, results) -> int:
    ok = all(r.passed for r in results)
    doc = {"command": command, "passed": ok, "checks": [r.to_json() for r in results]}
    summary = f"{sum(r.passed for r in results)}/{len(results)} checks passed\n"
    _emit(args, doc, _render(results) + summary)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    return _report(args, f"verify {args.lemma}", [checks.VERIFY_TARGETS[args.lemma]()])


def cmd_enumerate(args) -> int:
    if args.what == "sts7":
        systems = enumerate_sts7()
        doc = {"command": "enumerate sts7", "count": len(systems), "systems": [[list(b) for b in s.blocks] for s in systems]}
        text = "".join(" ".join("".join(map(str, b)) for b in s.blocks) + "\n" for s in systems)
        _emit(args, doc, text + f"{len(systems)} systems\n")
        return 0
    allf = enumerate_factorizations()
    doc = {"command": "enumerate factorizations", "count": len(allf)}
    text = f"{len(allf)} one-factorizations\n"
    if args.classify:
        table = classify_orbits(allf)
        doc["orbits"] = [{"label": o.label, "size": o.size, "representative": o.representative.to_hex()} for o in table.orbits]
        text += "".join(f"{o.label} {o.size:5d}  {o.representative.to_hex()}\n" for o in table.orbits)
    if args.list:
        doc["factorizations"] = [f.to_hex() for f in allf]
        text += write_factorizations(allf)
    _emit(args, doc, text)
    return 0


def cmd_construct(args) -> int:
    spec = recipe(args.m, args.deficit, args.seed)
    system = assemble(spec)
    rc = rank_class(system, args.m)
    want = system.v - args.m + 3 - args.deficit
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(dumps(system.to_json()))
    spec_path = out.with_name(out.stem + ".spec.json")
    spec_path.write_text(dumps(spec.to_json()))
    doc = {
        "command": "construct",
        "m": args.m,
        "deficit": args.deficit,
        "seed": args.seed,
        "v": system.v,
        "blocks": len(system.blocks),
        "rank": rc.rank,
        "expected_rank": want,
        "extra_classes": len(rc.extra_classes),
        "system": str(out),
        "spec": str(spec_path),
    }
    text = (
        f"v={system.v} blocks={len(system.blocks)} rank={rc.rank} extra_classes={len(rc.extra_classes)}\n"
        f"wrote {out} and {spec_path}\n"
    )
    if rc.rank != want:
        text += f"rank mismatch: expected {want}\n"
    _emit(args, doc, text)
    return 0 if rc.rank == want else 1


def cmd_rank(args) -> int:
    system = TripleSystem.from_json(json.loads(Path(args.path).read_text()))
    m = system.v.bit_length()
    if system.v != (1 << m) - 1:
        raise StsRankError(f"v={system.v} is not of the form 2^m - 1")
    steiner = system.is_steiner()
    rc = rank_class(system, m)
    classes = sorted(str(c) for c in rc.extra_classes)
    doc = {"command": "rank", "v": system.v, "steiner": steiner, "rank": rc.rank,
           "deficit": rc.deficit, "extra_classes": classes}
    text = f"v={system.v} steiner={steiner} rank={rc.rank} deficit={rc.deficit}\n" + "".join(f"  {c}\n" for c in classes)
    _emit(args, doc, text)
    return 0 if steiner else 1


def cmd_count(args) -> int:
    ms = range(5, args.m + 1) if args.all else [args.m]
    rows = [census.census_row(m) for m in ms]
    doc = {"command": "count", "rows": [{k: str(v) if k.startswith("M") else v for k, v in r.items()} for r in rows]}
    text = ""
    for r in rows:
        text += f"m={r['m']} v={r['v']} u={r['u']} k={r['k']}\n"
        for key in ("M_0", "M_1", "M_2", "M_3", "M_total"):
            text += f"  {key:8s} {r[key]}\n"
    _emit(args, doc, text)
    return 0


def cmd_check_all(args) -> int:
    return _report(args, "check-all", checks.run_all(args.representatives))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stsrank", description="Steiner triple systems of order 2^m - 1 with prescribed 2-rank")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run one exhaustive lemma check")
    p.add_argument("lemma", choices=sorted(checks.VERIFY_TARGETS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="enumerate one-factorizations of K8 or STS(7)")
    p.add_argument("what", choices=("factorizations", "sts7"))
    p.add_argument("--classify", action="store_true", help="split factorizations into S8-orbits")
    p.add_argument("--list", action="store_true", help="print every factorization")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", help="build a system of prescribed rank deficit")
    p.add_argument("--m", type=int, required=True, choices=CLI_M_RANGE)
    p.add_argument("--deficit", type=int, required=True, choices=(0, 1, 2, 3))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("rank", help="measure the 2-rank of a system file")
    p.add_argument("path")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("count", help="exact census by rank")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--all", action="store_true", help="every m from 5 up to --m")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("check-all", help="run every check")
    p.add_argument("--representatives", help="alternative representative table")
    p.set_defaults(func=cmd_check_all)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StsRankError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
