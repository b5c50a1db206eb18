"""Batch command-line front end: corpus scans, per-graph checks, witness
dumps, family listings, and DOT emission.

Report layout (diff-able): one tab-separated record per graph
(`<graph6>\tC1=0|1\t...` or `<graph6>\tSKIP\t<reason>`) followed by a trailing
summary block of `# key=value` lines. Records are in enumeration order and
contain no timing, so reports are byte-identical across worker counts.
"""

from __future__ import annotations

import argparse
import multiprocessing
import sys
from dataclasses import dataclass, field

from . import characterize as chz
from .graphs import (
    Graph6Error,
    UnsupportedSizeError,
    decode_graph6,
    encode_graph6,
    enumerate_connected,
)
from .decomposition import decompose
from .elimination import find_blended, supergraph_from_blended
from .forbidden import (
    FAMILY_NAMES,
    generate_family,
    what4_closure,
    wheel_seed_closure,
)

EXIT_OK = 0
EXIT_DISAGREE = 2
EXIT_INPUT = 3

BASE_ORDER = ("C1", "C2", "Calpha", "CA", "CB", "C3")


def _condition_names(conditions, ks):
    names = [c for c in BASE_ORDER if c in conditions]
    for k in ks:
        names += ["CA%d" % k, "CB%d" % k, "C3%d" % k]
    return names


def evaluate_conditions(g, conditions, ks, verify=True):
    """name -> Verdict for the requested base conditions and per-k trios."""
    out = {}
    for name in conditions:
        if name == "C1":
            out[name] = chz.check_1(g)
        elif name == "C2":
            out[name] = chz.check_2(g)
        elif name == "Calpha":
            out[name] = chz.check_alpha(g)
        elif name == "CA":
            out[name] = chz.check_A(g)
        elif name == "CB":
            out[name] = chz.check_B(g)
        elif name == "C3":
            out[name] = chz.check_3(g)
        else:
            raise ValueError("unknown condition %r" % name)
    for k in ks:
        out["CA%d" % k] = chz.check_Ak(g, k)
        out["CB%d" % k] = chz.check_Bk(g, k)
        out["C3%d" % k] = chz.check_3k(g, k)
    if verify:
        for name, verdict in out.items():
            if not chz.verify_certificate(g, verdict):
                raise AssertionError(
                    "certificate for %s failed verification on %s"
                    % (name, encode_graph6(g)))
    return out


def _agreement_groups(names):
    base = [n for n in names if n in BASE_ORDER]
    groups = [base] if len(base) > 1 else []
    ks = sorted({n[2:] for n in names if n not in BASE_ORDER})
    for k in ks:
        trio = [n for n in names if n not in BASE_ORDER and n[2:] == k]
        if len(trio) > 1:
            groups.append(trio)
    return groups


@dataclass
class ScanRecord:
    index: int
    g6: str
    answers: dict | None  # name -> bool; None when skipped
    skip_reason: str | None = None
    disagreement: bool = False


@dataclass
class ScanReport:
    corpus_id: str
    condition_names: list
    ks: list
    jobs: int
    records: list = field(default_factory=list)

    @property
    def disagreements(self):
        return [r for r in self.records if r.disagreement]

    @property
    def skipped(self):
        return [r for r in self.records if r.answers is None]

    def render(self):
        lines = []
        counts = {name: 0 for name in self.condition_names}
        for rec in self.records:
            if rec.answers is None:
                lines.append("%s\tSKIP\t%s" % (rec.g6, rec.skip_reason))
                continue
            cells = ["%s=%d" % (n, rec.answers[n]) for n in self.condition_names]
            lines.append("\t".join([rec.g6] + cells))
            for n in self.condition_names:
                counts[n] += rec.answers[n]
        lines.append("# corpus=%s" % self.corpus_id)
        lines.append("# conditions=%s" % ",".join(self.condition_names))
        lines.append("# ks=%s" % ",".join(str(k) for k in self.ks))
        lines.append("# graphs=%d skipped=%d" % (len(self.records), len(self.skipped)))
        for n in self.condition_names:
            lines.append("# yes[%s]=%d" % (n, counts[n]))
        bad = self.disagreements
        lines.append("# disagreements=%d" % len(bad))
        if bad:
            lines.append("# first_disagreement=%s" % bad[0].g6)
        lines.append("# status=%s" % ("FAILED" if bad else "AGREE"))
        return "\n".join(lines) + "\n"


_worker_setup = (None, None, None)


def _init_worker(conditions, ks, warm_n):
    global _worker_setup
    if warm_n and ("C1" in conditions or "Calpha" in conditions):
        what4_closure(min(warm_n, 12))
        if "C1" in conditions:
            wheel_seed_closure(min(warm_n, 12))
    _worker_setup = (tuple(conditions), tuple(ks), warm_n)


def _eval_one(payload):
    index, g6 = payload
    conditions, ks, _ = _worker_setup
    try:
        g = decode_graph6(g6)
    except Graph6Error as exc:
        return ScanRecord(index=index, g6=g6, answers=None, skip_reason=str(exc))
    try:
        verdicts = evaluate_conditions(g, conditions, ks)
    except (UnsupportedSizeError, ValueError) as exc:
        return ScanRecord(index=index, g6=g6, answers=None, skip_reason=str(exc))
    answers = {name: v.answer for name, v in verdicts.items()}
    disagreement = any(
        len({answers[n] for n in group}) > 1
        for group in _agreement_groups(list(answers))
    )
    return ScanRecord(index=index, g6=g6, answers=answers,
                      disagreement=disagreement)


def run_scan(source, corpus_id, conditions=BASE_ORDER, ks=(), jobs=1):
    """Evaluate conditions over a graph6 stream, verifying every certificate
    and flagging any disagreement. Record order follows the source order."""
    conditions = [c for c in BASE_ORDER if c in conditions]
    ks = sorted(ks)
    payloads = list(enumerate(source))
    warm_n = 0
    for _, g6 in payloads:
        try:
            warm_n = max(warm_n, decode_graph6(g6).n)
        except Graph6Error:
            pass
    names = _condition_names(conditions, ks)
    if jobs <= 1:
        _init_worker(conditions, ks, warm_n)
        records = [_eval_one(p) for p in payloads]
    else:
        with multiprocessing.Pool(
            jobs, initializer=_init_worker, initargs=(conditions, ks, warm_n)
        ) as pool:
            records = pool.map(_eval_one, payloads, chunksize=16)
    records.sort(key=lambda r: r.index)
    return ScanReport(
        corpus_id=corpus_id,
        condition_names=names,
        ks=list(ks),
        jobs=jobs,
        records=records,
    )


def builtin_corpus(max_n):
    out = []
    for n in range(1, max_n + 1):
        for g in enumerate_connected(n):
            out.append(encode_graph6(g))
    return out


def corpus_from_file(path):
    with open(path) as fh:
        return [line.strip() for line in fh if line.strip()]


# ---------------------------------------------------------------------------
# DOT rendering
# ---------------------------------------------------------------------------

def graph_to_dot(g, highlight=(), extra_edges=()):
    hl = set(highlight)
    extra = {tuple(sorted(e)) for e in extra_edges}
    lines = ["graph G {"]
    for v in range(g.n):
        style = ' [style=filled, fillcolor=lightblue]' if v in hl else ""
        lines.append("  %d%s;" % (v, style))
    for u, v in g.edges():
        style = ' [style=dashed, color=red]' if (u, v) in extra else ""
        lines.append("  %d -- %d%s;" % (u, v, style))
    lines.append("}")
    return "\n".join(lines) + "\n"


def explain(g6, condition, k=2, dot_path=None):
    """Human-readable verdict text (plus optional DOT) for one graph."""
    g = decode_graph6(g6)
    if condition in BASE_ORDER:
        verdicts = evaluate_conditions(g, [condition], [])
    else:
        k = int(condition[2:])  # CA3 / CB3 / C33 style names carry their k
        verdicts = evaluate_conditions(g, [], [k])
    verdict = verdicts[condition]
    lines = ["%s on %s: %s" % (condition, g6, "YES" if verdict.answer else "NO")]
    cert = verdict.certificate
    dot = None
    if cert["kind"] == "family_member":
        prov = cert["provenance"]
        lines.append("induced forbidden member (%s) at host vertices %s"
                     % (prov.kind, list(cert["embedding"])))
        if prov.trace:
            lines.append("partition trace from seed %s:" % prov.seed)
            for v, a, b in prov.trace:
                lines.append("  split vertex %d with sides %s | %s"
                             % (v, list(a), list(b)))
        dot = graph_to_dot(g, highlight=cert["embedding"])
    elif cert["kind"] == "bad_subset":
        lines.append("induced subgraph on %s is neither series-parallel nor "
                     "contains a K4" % sorted(cert["vertices"]))
        dot = graph_to_dot(g, highlight=cert["vertices"])
    elif cert["kind"] == "blended_ordering":
        lines.append("%d-blended ordering: %s" % (cert["k"], list(cert["order"])))
    elif cert["kind"] == "restricted_supergraph":
        h = cert["supergraph"]
        added = sorted(set(h.edges()) - set(g.edges()))
        lines.append("chordal supergraph %s adds edges %s"
                     % (encode_graph6(h), added))
        dot = graph_to_dot(h, extra_edges=added)
    elif cert["kind"] == "decomposition":
        tree = cert["tree"]
        lines.append("clique-sum decomposition with atom labels %s"
                     % list(cert["labels"]))
        lines.append(tree.serialize())
    elif cert["kind"] == "stuck_atom":
        tree = cert["tree"]
        atom = tree.atoms[cert["atom_index"]]
        lines.append("cutset-free atom %s on vertices %s fails both labels"
                     % (encode_graph6(atom.graph), list(atom.injection)))
        dot = graph_to_dot(g, highlight=atom.injection)
    else:
        lines.append("answer established by exhaustion (no compact certificate)")
    if dot_path and dot:
        with open(dot_path, "w") as fh:
            fh.write(dot)
        lines.append("DOT written to %s" % dot_path)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argparse front end
# ---------------------------------------------------------------------------

def _parse_ks(text):
    return [int(p) for p in text.split(",") if p != ""]


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quasichord",
        description="certificate-producing checks for cycle-completable and "
                    "k-quasichordal graphs, plus exhaustive scans")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate conditions on one graph")
    p.add_argument("g6")
    p.add_argument("--k", type=_parse_ks, default=[])
    p.add_argument("--conditions", default=",".join(BASE_ORDER))

    p = sub.add_parser("scan", help="scan a corpus and assert agreement")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--corpus", default=None)
    p.add_argument("--k", type=_parse_ks, default=[])
    p.add_argument("--conditions", default=",".join(BASE_ORDER))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("decompose", help="print the clique-sum decomposition")
    p.add_argument("g6")

    p = sub.add_parser("complete", help="emit a restricted chordal supergraph")
    p.add_argument("g6")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("order", help="emit a k-blended elimination ordering")
    p.add_argument("g6")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("families", help="list family members as graph6")
    p.add_argument("--family", required=True,
                   choices=list(FAMILY_NAMES) + ["built_what4"])
    p.add_argument("--max-n", type=int, required=True)

    p = sub.add_parser("explain", help="verdict plus human-readable certificate")
    p.add_argument("g6")
    p.add_argument("--condition", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--dot", default=None)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except Graph6Error as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


def _dispatch(args):
    if args.command == "check":
        g = decode_graph6(args.g6)
        conditions = [c for c in args.conditions.split(",") if c in BASE_ORDER]
        verdicts = evaluate_conditions(g, conditions, args.k)
        for name in _condition_names(conditions, args.k):
            print("%s=%d" % (name, verdicts[name].answer))
        return EXIT_OK

    if args.command == "scan":
        if (args.max_n is None) == (args.corpus is None):
            print("scan needs exactly one of --max-n / --corpus", file=sys.stderr)
            return EXIT_INPUT
        if args.max_n is not None:
            source = builtin_corpus(args.max_n)
            corpus_id = "builtin:max_n=%d" % args.max_n
        else:
            source = corpus_from_file(args.corpus)
            corpus_id = "file:%s" % args.corpus
        conditions = [c for c in args.conditions.split(",") if c in BASE_ORDER]
        report = run_scan(source, corpus_id, conditions, args.k, args.jobs)
        text = report.render()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_DISAGREE if report.disagreements else EXIT_OK

    if args.command == "decompose":
        tree = decompose(decode_graph6(args.g6))
        print(tree.serialize())
        return EXIT_OK

    if args.command == "complete":
        g = decode_graph6(args.g6)
        order = find_blended(g, args.k)
        if order is None:
            print("NONE")
            return EXIT_OK
        print(encode_graph6(supergraph_from_blended(g, order, args.k)))
        return EXIT_OK

    if args.command == "order":
        g = decode_graph6(args.g6)
        order = find_blended(g, args.k)
        print("NONE" if order is None else " ".join(str(v) for v in order))
        return EXIT_OK

    if args.command == "families":
        if args.family == "built_what4":
            catalog = what4_closure(args.max_n)
        else:
            catalog = generate_family(args.family, args.max_n)
        for member in catalog.members:
            comment = member.kind
            if member.trace:
                comment += " seed=%s steps=%d" % (member.seed, len(member.trace))
            print("%s  # %s" % (encode_graph6(member.graph), comment))
        return EXIT_OK

    if args.command == "explain":
        print(explain(args.g6, args.condition, args.k, args.dot))
        return EXIT_OK

    raise AssertionError("unhandled command %r" % args.command)


if __name__ == "__main__":
    sys.exit(main())
