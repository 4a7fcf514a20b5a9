"""Command-line front end: construction, verification, certification and
search, with deterministic JSON or text reports.

Exit codes: 0 all checks pass, 2 hypotheses fail, 3 some check fails,
4 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fields import is_prime
from .groups import PermGroup
from .projline import ProjLine
from .psl2 import certify_simplicity, psl2_expected_order, psl2_perm_group
from .search import constrained_search, expected_group_count, full_search
from .verify import (
    build_exceptional,
    classify,
    corollary_check,
    exceptional_report,
    p3_case_check,
)

EXIT_OK = 0
EXIT_HYPOTHESES = 2
EXIT_CHECK_FAILED = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("json", "text"), default="text", help="report format"
    )
    parser.add_argument("--out", default=None, help="write the report to this path")
    parser.add_argument(
        "--max-order",
        type=int,
        default=None,
        metavar="N",
        help="override the enumeration cap for group queries",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="psl2kit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_classify = sub.add_parser("classify")
    p_classify.add_argument("--p", type=int, required=True)
    p_classify.add_argument(
        "--group",
        required=True,
        help="psl2, exceptional:3, exceptional:5, or a generators file path",
    )
    _common_flags(p_classify)

    p_search = sub.add_parser("search")
    p_search.add_argument("--p", type=int, required=True)
    p_search.add_argument(
        "--mode", choices=("constrained", "full"), default="constrained"
    )
    _common_flags(p_search)

    p_psl2 = sub.add_parser("psl2")
    p_psl2.add_argument("--q", type=int, required=True)
    p_psl2.add_argument(
        "--check", choices=("order", "simplicity", "generation"), required=True
    )
    _common_flags(p_psl2)

    p_corollary = sub.add_parser("corollary")
    p_corollary.add_argument("--p", type=int, required=True)
    _common_flags(p_corollary)

    p_exceptional = sub.add_parser("exceptional")
    p_exceptional.add_argument("--variant", type=int, required=True)
    _common_flags(p_exceptional)

    p_p3 = sub.add_parser("p3")
    _common_flags(p_p3)

    return parser


# --- report emission --------------------------------------------------------


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_text(payload)
    if args.out:
        with open(args.out, "w", encoding="ascii") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _render_text(payload: dict) -> str:
    lines = []
    for key in sorted(payload):
        if key in ("checks", "groups"):
            continue
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    for check in payload.get("checks", ()):
        tag = "PASS" if check["pass"] else "FAIL"
        detail = json.dumps(check["witness"], sort_keys=True)
        lines.append(f"{tag} {check['id']} {detail}")
        if check.get("counterexample"):
            lines.append(
                f"     counterexample: {json.dumps(check['counterexample'], sort_keys=True)}"
            )
    for group in payload.get("groups", ()):
        lines.append("group: " + json.dumps(group, sort_keys=True))
    return "\n".join(lines) + "\n"


# --- group sources ----------------------------------------------------------


def load_generators_file(path: str, p: int, max_order: int | None) -> PermGroup:
    with open(path, encoding="ascii") as handle:
        raw_lines = [line.strip() for line in handle]
    lines = [line for line in raw_lines if line]
    if not lines or not lines[0].replace(" ", "").startswith("p="):
        raise ValueError("generators file must start with 'p=<prime>'")
    declared = int(lines[0].split("=", 1)[1])
    if declared != p:
        raise ValueError(f"file declares p={declared} but --p {p} was given")
    line_obj = ProjLine.over_prime(p)
    perms = [line_obj.from_cycles(text) for text in lines[1:]]
    if not perms:
        raise ValueError("generators file lists no permutations")
    kwargs = {"enumeration_cap": max_order} if max_order else {}
    return PermGroup(perms, **kwargs)


def _resolve_group(args) -> PermGroup:
    source = args.group
    if source == "psl2":
        group = psl2_perm_group(args.p)
    elif source.startswith("exceptional:"):
        variant = int(source.split(":", 1)[1])
        if args.p != 7:
            raise ValueError("the exceptional groups exist only at p=7")
        group = build_exceptional(variant)
    else:
        return load_generators_file(source, args.p, args.max_order)
    if args.max_order:
        group.enumeration_cap = args.max_order
    return group


# --- subcommands ------------------------------------------------------------


def cmd_classify(args) -> int:
    if not is_prime(args.p) or args.p == 2:
        raise ValueError(f"--p must be an odd prime, got {args.p}")
    group = _resolve_group(args)
    report = classify(group, args.p)
    _emit(report.to_json_dict(), args)
    if report.verdict == "hypotheses-failed":
        return EXIT_HYPOTHESES
    if not report.all_passed():
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_search(args) -> int:
    outcome = full_search(args.p) if args.mode == "full" else constrained_search(args.p)
    expected = expected_group_count(args.p)
    payload = outcome.to_json_dict()
    payload["expected_groups"] = expected
    payload["matches_prediction"] = len(outcome.groups) == expected
    _emit(payload, args)
    return EXIT_OK if payload["matches_prediction"] else EXIT_CHECK_FAILED


def cmd_psl2(args) -> int:
    q = args.q
    if args.check == "order":
        group = psl2_perm_group(q)
        payload = {
            "q": q,
            "check": "order",
            "order": group.order(),
            "expected_order": psl2_expected_order(q),
        }
        payload["pass"] = payload["order"] == payload["expected_order"]
    elif args.check == "generation":
        if not is_prime(q):
            raise ValueError("the two-generator claim is checked for prime q")
        group = psl2_perm_group(q)
        payload = {
            "q": q,
            "check": "generation",
            "generators": ["z -> z+1", "z -> -1/z"],
            "order": group.order(),
            "expected_order": (q**3 - q) // 2,
        }
        payload["pass"] = payload["order"] == payload["expected_order"]
    else:
        group = psl2_perm_group(q)
        if args.max_order:
            group.enumeration_cap = args.max_order
        brute = group.is_simple()
        expected_simple = q > 3
        payload = {
            "q": q,
            "check": "simplicity",
            "simple": brute,
            "expected_simple": expected_simple,
        }
        if 3 < q <= 13:
            certificate = certify_simplicity(q)
            payload["certificate"] = certificate.to_json_dict()
            payload["certificate_reverified"] = certificate.reverify()
            payload["methods_agree"] = certificate.verdict == brute
        else:
            payload["methods_agree"] = True
        payload["pass"] = (
            brute == expected_simple
            and payload["methods_agree"]
            and payload.get("certificate_reverified", True)
        )
    _emit(payload, args)
    return EXIT_OK if payload["pass"] else EXIT_CHECK_FAILED


def cmd_corollary(args) -> int:
    result = corollary_check(args.p)
    payload = {"p": args.p, "checks": [result.to_json_dict()]}
    _emit(payload, args)
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def cmd_exceptional(args) -> int:
    result = exceptional_report(args.variant)
    payload = {"variant": args.variant, "checks": [result.to_json_dict()]}
    _emit(payload, args)
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def cmd_p3(args) -> int:
    result = p3_case_check()
    payload = {"p": 3, "checks": [result.to_json_dict()]}
    _emit(payload, args)
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


_COMMANDS = {
    "classify": cmd_classify,
    "search": cmd_search,
    "psl2": cmd_psl2,
    "corollary": cmd_corollary,
    "exceptional": cmd_exceptional,
    "p3": cmd_p3,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"psl2kit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
