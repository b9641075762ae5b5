"""Command-line front end.

Subcommands: ``fusion`` (classification report for one group), ``chi``
(labeling setup and the saturation/normality matrix over every subgroup
of the label group), ``normalizer`` (normalizer-subsystem theorem
report), ``corpus`` (run or regenerate the verification corpus), and
``oracle`` (print the freshly computed expected block for one entry).

Exit codes: 0 success, 1 theorem or expectation failure, 2 budget
exceeded, 3 malformed input, 4 inapplicable (e.g. constrained system).
All JSON reports are deterministic: keys sorted, no timestamps; timing
goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import corpus as corpus_mod
from .classify import (
    center_of,
    centric_radical_indices,
    classify_subgroup,
    focal_subgroup,
    is_saturated,
    is_saturated_sylow_extension,
)
from .errors import ClosureBudgetExceeded, Constrained, FusionError
from .fusion import FusionSystem, fusion_of_group
from .groups import FiniteGroup
from .labeling import (
    labeling_from_dict,
    saturation_normality_matrix,
    trivial_labeling,
)
from .normal import is_constrained, normal_p_core
from .normalizers import (
    build_family,
    induced_labeling,
    verify_component_normalizer_pipeline,
    verify_normalizer_theorem,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3
EXIT_INAPPLICABLE = 4


def _load_group_spec(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
        name = spec["name"]
        degree = int(spec["degree"])
        gens = spec["generators"]
        prime = int(spec.get("prime", 2))
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise SystemExit(_fail(EXIT_INPUT, f"bad group spec {path}: {exc}"))
    return name, degree, gens, prime


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _emit(report: dict, json_out):
    text = json.dumps(_strip_private(report), indent=1, sort_keys=True)
    if json_out:
        with open(json_out, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
    else:
        print(text)


def _strip_private(obj):
    if isinstance(obj, dict):
        return {k: _strip_private(v) for k, v in obj.items() if not str(k).startswith("_")}
    if isinstance(obj, (list, tuple)):
        return [_strip_private(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return obj


def _system_for(args):
    if getattr(args, "entry", None):
        if args.entry not in corpus_mod.ENTRIES:
            raise SystemExit(_fail(EXIT_INPUT, f"unknown corpus entry {args.entry}"))
        built = corpus_mod.build(args.entry)
        return built["system"], built
    name, degree, gens, prime = _load_group_spec(args.group)
    prime = args.prime or prime
    G = FiniteGroup.from_cycles(name, degree, gens, cap=args.cap_order)
    return fusion_of_group(G, prime), {"group": G}


def cmd_fusion(args) -> int:
    t0 = time.time()
    try:
        F, built = _system_for(args)
    except ClosureBudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc))
    lat = F.lattice
    rows = []
    for i, H in enumerate(lat.subs):
        flags = classify_subgroup(F, H)
        rows.append(
            {
                "id": i,
                "order": H.order,
                "members": list(H.members),
                "class_root": min(F.subgroup_class(i)),
                **flags.as_dict(),
            }
        )
    report = {
        "prime": F.p,
        "sylow_order": F.S.order,
        "subgroup_count": len(lat.subs),
        "isomorphism_count": F.iso_count,
        "saturated_by_definition": is_saturated(F),
        "saturated_by_axioms": is_saturated_sylow_extension(F),
        "focal_order": focal_subgroup(F).order,
        "center_order": center_of(F).order,
        "p_core_order": normal_p_core(F).order,
        "constrained": is_constrained(F),
        "centric_radical": centric_radical_indices(F),
        "subgroups": rows,
    }
    if "group" in built:
        report["group_order"] = built["group"].order
    _emit(report, args.json_out)
    if args.dot_out:
        with open(args.dot_out, "w", encoding="utf-8") as fh:
            fh.write(lattice_dot(F))
    print(f"fusion report done in {time.time() - t0:.2f}s", file=sys.stderr)
    if report["saturated_by_definition"] != report["saturated_by_axioms"]:
        return _fail(EXIT_FAIL, "saturation deciders disagree")
    return EXIT_OK


def lattice_dot(F: FusionSystem) -> str:
    """Subgroup lattice as DOT: node label = order, color = class."""
    lat = F.lattice
    palette = [
        "#a6cee3", "#1f78b4", "#b2df8a", "#33a02c", "#fb9a99", "#e31a1c",
        "#fdbf6f", "#ff7f00", "#cab2d6", "#6a3d9a", "#ffff99", "#b15928",
    ]
    roots = {}
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i in range(len(lat.subs)):
        root = min(F.subgroup_class(i))
        color = roots.setdefault(root, palette[len(roots) % len(palette)])
        lines.append(
            f'  n{i} [label="{lat.subs[i].order}", style=filled, fillcolor="{color}"];'
        )
    for i in range(len(lat.subs)):
        for j in lat.maximals(i):
            lines.append(f"  n{j} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_chi(args) -> int:
    t0 = time.time()
    try:
        F, built = _system_for(args)
    except ClosureBudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc))
    config = args.config
    try:
        if config == "trivial":
            lab = trivial_labeling(F)
        elif config == "family":
            factors = built.get("factors")
            if not factors:
                return _fail(EXIT_INPUT, "entry declares no family factors")
            fam = build_family(F, factors)
            lab = induced_labeling(fam)
        elif config.startswith("file:"):
            with open(config[5:], "r", encoding="utf-8") as fh:
                lab = labeling_from_dict(F, json.load(fh))
        else:
            return _fail(EXIT_INPUT, f"unknown chi config {config!r}")
        matrix = saturation_normality_matrix(lab)
    except ClosureBudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc))
    except FusionError as exc:
        return _fail(EXIT_INPUT, f"labeling rejected: {exc}")
    report = {
        "config": config,
        "label_group_order": lab.label_group.order,
        "core_order": lab.core.order,
        "object_count": len(lab.objects),
        "matrix": matrix["rows"],
        "all_ok": matrix["all_ok"],
    }
    _emit(report, args.json_out)
    print(f"chi matrix done in {time.time() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK if matrix["all_ok"] else EXIT_FAIL


def cmd_normalizer(args) -> int:
    t0 = time.time()
    try:
        F, built = _system_for(args)
    except ClosureBudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc))
    try:
        J = [int(x) - 1 for x in args.J.split(",") if x != ""]
    except ValueError:
        return _fail(EXIT_INPUT, f"bad subfamily spec {args.J!r}")
    try:
        if args.components == "auto":
            group = built.get("group")
            candidates = built.get("factors")
            report = verify_component_normalizer_pipeline(
                F, J, group=group, candidates=candidates
            )
        else:
            factors = built.get("factors")
            if not factors:
                return _fail(EXIT_INPUT, "entry declares no family factors")
            fam = build_family(F, factors)
            report = verify_normalizer_theorem(fam, J)
    except Constrained as exc:
        return _fail(EXIT_INAPPLICABLE, f"inapplicable: {exc}")
    except ClosureBudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc))
    except FusionError as exc:
        return _fail(EXIT_INPUT, f"rejected: {exc}")
    pair = report.get("_pair")
    if pair is not None:
        report["setwise_group_order"] = pair.setwise_group.order
        report["factorwise_group_order"] = pair.factorwise_group.order
        report["setwise_isos"] = pair.setwise.iso_count
        report["factorwise_isos"] = pair.factorwise.iso_count
    _emit(report, args.json_out)
    print(f"normalizer report done in {time.time() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK if report.get("all_ok") else EXIT_FAIL


def _run_one_entry(name):
    stored = corpus_mod.load_expected()
    return corpus_mod.run_entry(name, stored)


def cmd_corpus(args) -> int:
    t0 = time.time()
    if args.action == "regen":
        data = corpus_mod.regenerate_expected(args.path or _default_expected_path())
        print(
            f"regenerated {len(data)} expected blocks in {time.time() - t0:.2f}s",
            file=sys.stderr,
        )
        return EXIT_OK
    try:
        stored = corpus_mod.load_expected()
    except FileNotFoundError:
        return _fail(EXIT_INPUT, "no stored expected results; run `corpus regen`")
    names = corpus_mod.corpus_names()
    if args.jobs and args.jobs > 1:
        import multiprocessing

        with multiprocessing.Pool(args.jobs) as pool:
            results = pool.map(_run_one_entry, names)
    else:
        results = [corpus_mod.run_entry(name, stored) for name in names]
    ok = all(r["ok"] for r in results)
    report = {
        "entries": [
            {"name": r["name"], "ok": r["ok"], "mismatches": r["mismatches"]}
            for r in results
        ],
        "all_ok": ok,
    }
    _emit(report, args.json_out)
    print(f"corpus run done in {time.time() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def _default_expected_path():
    import fusionsys

    return str(
        __import__("pathlib").Path(fusionsys.__file__).parent
        / "data"
        / "corpus_expected.json"
    )


def cmd_oracle(args) -> int:
    if args.entry not in corpus_mod.ENTRIES:
        return _fail(EXIT_INPUT, f"unknown corpus entry {args.entry}")
    block = corpus_mod.expected_results(args.entry)
    _emit(block, args.json_out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionsys",
        description="compute with saturated fusion systems over small p-groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--group", help="group spec JSON file")
        p.add_argument("--entry", help="named corpus entry")
        p.add_argument("--prime", type=int, default=0)
        p.add_argument("--cap-order", type=int, default=512)
        p.add_argument("--morphism-budget", type=int, default=None)
        p.add_argument("--json-out", default=None)

    p_fusion = sub.add_parser("fusion", help="classification report for one group")
    common(p_fusion)
    p_fusion.add_argument("--dot-out", default=None)
    p_fusion.set_defaults(fn=cmd_fusion)

    p_chi = sub.add_parser("chi", help="labeling matrix over the label group")
    common(p_chi)
    p_chi.add_argument(
        "--config",
        default="trivial",
        help="trivial | family | file:PATH",
    )
    p_chi.set_defaults(fn=cmd_chi)

    p_norm = sub.add_parser("normalizer", help="normalizer subsystem theorem report")
    common(p_norm)
    p_norm.add_argument("--J", default="1", help="comma separated factor numbers (1-based)")
    p_norm.add_argument("--components", default="auto", help="auto | family")
    p_norm.set_defaults(fn=cmd_normalizer)

    p_corpus = sub.add_parser("corpus", help="run or regenerate the corpus")
    p_corpus.add_argument("action", choices=["run", "regen"])
    p_corpus.add_argument("--json-out", default=None)
    p_corpus.add_argument("--path", default=None)
    p_corpus.add_argument("--jobs", type=int, default=1)
    p_corpus.set_defaults(fn=cmd_corpus)

    p_oracle = sub.add_parser("oracle", help="print computed expected block")
    p_oracle.add_argument("--entry", required=True)
    p_oracle.add_argument("--json-out", default=None)
    p_oracle.set_defaults(fn=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command in ("fusion", "chi", "normalizer"):
        if not args.entry and not args.group:
            return _fail(EXIT_INPUT, "one of --group or --entry is required")
    try:
        return args.fn(args)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_INPUT
    except FusionError as exc:
        return _fail(EXIT_INPUT, f"error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
