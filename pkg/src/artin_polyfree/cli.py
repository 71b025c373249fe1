"""Command-line interface. Exit codes: 0 ok, 1 false or violations, 2 usage or parse error, 3 budget exceeded."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .errors import (
    AlphabetError,
    DegeneratePairError,
    SearchBudgetExceeded,
    SoundnessAlarm,
    UnsupportedPresentation,
    WordSyntaxError,
)
from .geodesics import LEMMA_IDS, initial_letters, verify_lemma
from .kernel import delta, eliminate, omega_membership, poly_free_tower
from .oracle import Ball
from .rewriting import ReductionTrace, ShortlexNormalizer, replay_text
from .words import LexOrder, load_graph, parse_word

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Usage(Exception):
    pass


def _load(args):
    graph, order = load_graph(args.graph)
    if args.order:
        letters = parse_word(args.order, graph)
        order = LexOrder(letters)
        if set(order.ranking) != {s * g for g in graph.generators for s in (1, -1)}:
            raise _Usage("--order must list every letter and its inverse exactly once")
    return graph, order


def _word(graph, text: str):
    return parse_word(text, graph)


def _show(graph, w) -> str:
    return graph.render_word(w) or "e"


def _engine(graph, order, args) -> ShortlexNormalizer:
    return ShortlexNormalizer(graph, order, max_moves=args.budget)


def cmd_normalize(args, out) -> int:
    graph, order = _load(args)
    eng = _engine(graph, order, args)
    for text in args.words:
        out.write(_show(graph, eng.normalize(_word(graph, text))) + "\n")
    return EXIT_OK


def cmd_equal(args, out) -> int:
    graph, order = _load(args)
    eq = _engine(graph, order, args).equal(_word(graph, args.u), _word(graph, args.v))
    out.write("equal\n" if eq else "not equal\n")
    return EXIT_OK if eq else EXIT_FALSE


def cmd_geodesic(args, out) -> int:
    graph, order = _load(args)
    eng = _engine(graph, order, args)
    w = _word(graph, args.word)
    geo = eng.is_geodesic(w)
    rep = initial_letters(w, graph, order)
    initials = " ".join(sorted(_show(graph, (x,)) for x in rep.initials))
    out.write(f"{'geodesic' if geo else 'not geodesic'} length {len(rep.element)} "
              f"shortlex {_show(graph, rep.element)} initials {initials or '-'}\n")
    return EXIT_OK if geo else EXIT_FALSE


def cmd_trace(args, out) -> int:
    graph, order = _load(args)
    if args.replay:
        with open(args.replay, encoding="utf-8") as fh:
            text = fh.read()
        ok = True
        for block in [b for b in text.strip().split("\n\n") if b.strip()]:
            got, want = replay_text(block, graph)
            match = got == want
            ok &= match
            out.write(f"replay {_show(graph, got)} {'matches' if match else 'differs from'} {_show(graph, want)}\n")
        return EXIT_OK if ok else EXIT_FALSE
    if not args.word:
        raise _Usage("trace needs a word or --replay FILE")
    eng = _engine(graph, order, args)
    result, traces = eng.normalize_with_traces(_word(graph, args.word))
    blocks = [t.to_text(graph) for t in traces]
    body = "\n\n".join(blocks) + ("\n" if blocks else "")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        out.write(body)
    out.write(f"normal form: {_show(graph, result)}\n")
    return EXIT_OK


def cmd_omega(args, out) -> int:
    graph, _ = _load(args)
    w = _word(graph, args.word)
    mem = omega_membership(w, graph, args.r)
    sets = sorted(f"{graph.vertex_name(b)}{'+' if s > 0 else '-'}" for b, s in mem)
    out.write(f"omega: {' '.join(sets) or '-'}\n")
    found, alpha = delta(w, graph, args.r)
    out.write(f"delta: {', '.join(sorted(_show(graph, x) for x in found))} alpha {alpha}\n")
    return EXIT_OK


def cmd_kernel_basis(args, out) -> int:
    graph, order = _load(args)
    st = eliminate(graph, args.r, args.radius, order if args.order else None)
    text = st.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if not st.escaped else EXIT_FALSE


def cmd_tower(args, out) -> int:
    graph, order = _load(args)
    if args.order and not order.polyfree_compatible:
        raise _Usage("tower needs an order with every generator before its inverse")
    steps = poly_free_tower(graph, args.radius)
    for i, s in enumerate(steps, 1):
        st = s.state
        out.write(f"step {i}: remove {s.removed} retained {len(st.retained)} eliminated {len(st.eliminated)} "
                  f"escaped {len(st.escaped)}\n")
    return EXIT_OK if all(not s.state.escaped for s in steps) else EXIT_FALSE


def cmd_verify(args, out) -> int:
    graph, order = _load(args)
    rep = verify_lemma(args.lemma, graph, args.radius, order if args.order else None,
                       graph_name=args.graph, r=args.r)
    out.write(rep.to_text() + "\n")
    return EXIT_OK if rep.passed else EXIT_FALSE


def cmd_ball(args, out) -> int:
    graph, order = _load(args)
    ball = Ball(graph, args.radius, order=order)
    out.write(ball.dump() + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artin-polyfree", description="Shortlex rewriting and kernel bases for Artin groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, words: bool = False):
        sp.add_argument("--order", help="letter order, e.g. 'a a^-1 b b^-1'")
        sp.add_argument("--budget", type=int, default=None, help="cap on rewrite moves per search")
        return sp

    sp = common(sub.add_parser("normalize", help="shortlex normal form of each word"))
    sp.add_argument("graph")
    sp.add_argument("words", nargs="+")
    sp.set_defaults(func=cmd_normalize)

    sp = common(sub.add_parser("equal", help="decide equality of two words"))
    sp.add_argument("graph")
    sp.add_argument("u")
    sp.add_argument("v")
    sp.set_defaults(func=cmd_equal)

    sp = common(sub.add_parser("geodesic", help="geodesic test, length and initial letters"))
    sp.add_argument("graph")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_geodesic)

    sp = common(sub.add_parser("trace", help="dump reduction traces, or replay a dump"))
    sp.add_argument("graph")
    sp.add_argument("word", nargs="?")
    sp.add_argument("--replay", metavar="FILE")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_trace)

    sp = common(sub.add_parser("omega", help="Omega memberships and delta of an element of G1"))
    sp.add_argument("graph")
    sp.add_argument("word")
    sp.add_argument("--r", required=True, help="removed vertex")
    sp.set_defaults(func=cmd_omega)

    sp = common(sub.add_parser("kernel-basis", help="bounded-radius free basis of the kernel"))
    sp.add_argument("graph")
    sp.add_argument("--r", required=True)
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_kernel_basis)

    sp = common(sub.add_parser("tower", help="poly-free tower with per-step kernel data"))
    sp.add_argument("graph")
    sp.add_argument("--radius", type=int, default=3)
    sp.set_defaults(func=cmd_tower)

    sp = common(sub.add_parser("verify", help="exhaustive bounded check of one statement"))
    sp.add_argument("lemma", choices=sorted(set(LEMMA_IDS) | {"Initials", "L5.12", "C5.13"}))
    sp.add_argument("graph")
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--r", default=None, help="removed vertex for kernel statements")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("ball", help="dump the Cayley ball with all geodesics"))
    sp.add_argument("graph")
    sp.add_argument("--radius", type=int, default=3)
    sp.set_defaults(func=cmd_ball)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except SearchBudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except SoundnessAlarm as exc:
        sys.stderr.write(f"soundness alarm: {exc}\n")
        return EXIT_FALSE
    except (_Usage, WordSyntaxError, AlphabetError, DegeneratePairError, UnsupportedPresentation,
            OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
