"""Command-line entry point: ``thetaconj <subcommand> ...``.

Every subcommand produces a list of one-field records. Plain output prints
one value per line (the empty word as ``@``); ``--format json-lines`` prints
the same records as JSON objects.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import automata, conjugacy, grammars, iterated
from .errors import ThetaConjError
from .words import Alphabet, Involution, parse_involution_spec, spec_letters

EMPTY = "@"


class UsageError(Exception):
    pass


def _word(text: str) -> str:
    return "" if text == EMPTY else text


def _show(word: str) -> str:
    return word if word else EMPTY


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _theta_for_words(args, words) -> Involution:
    spec = args.theta if args.theta is not None else ""
    if args.alphabet:
        alphabet = Alphabet(args.alphabet)
    else:
        letters = sorted(set(spec_letters(spec)) | {c for w in words for c in w})
        if not letters:
            raise UsageError("cannot infer an alphabet; pass --alphabet")
        alphabet = Alphabet("".join(letters))
    return parse_involution_spec(spec, alphabet)


def _theta_for(args, alphabet: Alphabet, fallback: Optional[str] = None) -> Involution:
    spec = args.theta if args.theta is not None else fallback
    if spec is None:
        raise UsageError(f"{args.command} needs --theta")
    if args.alphabet:
        alphabet = Alphabet(args.alphabet)
    return parse_involution_spec(spec, alphabet)


def _words(ws, field="word"):
    return [(field, w) for w in ws]


def _text(text: str, field: str):
    return [(field, line) for line in text.rstrip("\n").split("\n")]


def _verdict(flag: bool) -> str:
    return "true" if flag else "false"


# -- subcommands ------------------------------------------------------------------

def cmd_conj(args):
    w = _word(args.word)
    return _words(conjugacy.theta_conjugates(_theta_for_words(args, [w]), w))


def cmd_classical(args):
    return _words(conjugacy.classical_conjugates(_word(args.word)))


def cmd_member(args):
    u, v = _word(args.u), _word(args.v)
    theta = _theta_for_words(args, [u, v])
    return [("verdict", _verdict(conjugacy.is_theta_conjugate(theta, u, v)))]


def cmd_seteq(args):
    u, v = _word(args.u), _word(args.v)
    res = conjugacy.conjugate_sets_equal(_theta_for_words(args, [u, v]), u, v)
    out = [("verdict", _verdict(res.equal)), ("case", str(res.case))]
    if res.witness is not None:
        out.append(("witness", res.witness))
    return out


def cmd_iter(args):
    w = _word(args.word)
    theta = _theta_for_words(args, [w])
    return _words(iterated.iterate_conjugates(theta, w, args.n, args.size_guard))


def cmd_closure(args):
    w = _word(args.word)
    return _words(iterated.closure_set(_theta_for_words(args, [w]), w, args.size_guard))


def cmd_closure_size(args):
    w = _word(args.word)
    return [("size", iterated.closure_size(_theta_for_words(args, [w]), w))]


def cmd_stab_index(args):
    w = _word(args.word)
    theta = _theta_for_words(args, [w])
    return [("index", iterated.stabilization_index(theta, w, args.size_guard))]


def _load_dfa(path):
    return automata.parse_dfa(_read(path))


def cmd_dfa_conj(args):
    m = _load_dfa(args.dfa)
    theta = _theta_for(args, m.alphabet)
    closure = automata.theta_conjugate_closure_dfa(theta, m, args.state_budget)
    return _text(automata.format_dfa(closure), "dfa")


def cmd_dfa_free(args):
    m = _load_dfa(args.dfa)
    theta = _theta_for(args, m.alphabet)
    res = automata.decide_theta_conjugate_freeness(theta, m, args.state_budget)
    out = [("verdict", str(res.status))]
    if res.witness_pair is not None:
        out += [("word", res.witness_pair[0]), ("conjugate", res.witness_pair[1])]
    if res.palindrome_witness is not None:
        out.append(("palindrome", res.palindrome_witness))
    return out


def cmd_dfa_member(args):
    m = _load_dfa(args.dfa)
    return [("verdict", _verdict(m.accepts(_word(args.word))))]


def cmd_dfa_enum(args):
    return _words(_load_dfa(args.dfa).words(args.maxlen))


def _load_grammar(path):
    return grammars.parse_grammar_document(_read(path))


def cmd_gram_enum(args):
    g, _ = _load_grammar(args.grammar)
    res = grammars.enumerate_bounded(g, args.maxlen, args.max_steps, args.form_slack)
    if not res.exact:
        kind = "step limit reached" if not res.saturated else "sentential-form cap applied"
        print(f"note: enumeration may be incomplete ({kind})", file=sys.stderr)
    return _words(res)


def cmd_gram_rev(args):
    g, _ = _load_grammar(args.grammar)
    return _text(grammars.format_grammar(grammars.reverse_grammar(g)), "grammar")


def cmd_gram_wc(args):
    g, spec = _load_grammar(args.grammar)
    theta = _theta_for(args, g.terminals, spec)
    gn = grammars.wc_conjugate_grammar(theta, g, auto_rename=args.auto_rename)
    return _text(grammars.format_grammar(gn), "grammar")


def cmd_pcp_gen(args):
    instance = grammars.parse_pcp(_read(args.instance))
    letters = {c for w in instance.u_tuple + instance.v_tuple for c in w}
    theta = _theta_for_words(args, letters)
    g, ext = grammars.pcp_to_grammar(instance, theta, auto_rename=args.auto_rename)
    return _text(grammars.format_grammar(g, ext), "grammar")


def cmd_gram_findpair(args):
    g, spec = _load_grammar(args.grammar)
    theta = _theta_for(args, g.terminals, spec)
    pair = grammars.find_conjugate_pair(theta, g, args.maxlen, args.max_steps)
    if pair is None:
        return [("pair", "none")]
    return [("word", pair[0]), ("conjugate", pair[1])]


# -- parser -----------------------------------------------------------------------

def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theta", help="involution as 'a:b,c:d'; unlisted letters are fixed")
    common.add_argument("--alphabet", help="alphabet letters in canonical order")
    common.add_argument("--maxlen", type=_nonneg, default=8, help="length bound (default 8)")
    common.add_argument("--max-steps", type=_positive, default=grammars.DEFAULT_MAX_STEPS,
                        help="rewriting steps for grammar enumeration")
    common.add_argument("--size-guard", type=_positive, default=iterated.DEFAULT_SIZE_GUARD,
                        help="largest word set to materialise")
    common.add_argument("--format", choices=("plain", "json-lines"), default="plain")

    parser = argparse.ArgumentParser(
        prog="thetaconj", description="Watson-Crick conjugacy of words and languages.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def add(name, func, help_text, *positionals, needs_theta=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        for arg, arg_help in positionals:
            p.add_argument(arg, help=arg_help)
        p.set_defaults(func=func, needs_theta=needs_theta)
        return p

    word = ("word", "a word, '@' for the empty word")
    add("conj", cmd_conj, "conjugate set of a word", word)
    add("classical", cmd_classical, "ordinary rotations of a word", word, needs_theta=False)
    add("member", cmd_member, "is V a conjugate of U?", ("u", "word U"), ("v", "word V"))
    add("seteq", cmd_seteq, "do U and V have equal conjugate sets?",
        ("u", "word U"), ("v", "word V"))
    p = add("iter", cmd_iter, "N-fold iterated conjugates", word)
    p.add_argument("n", type=_nonneg, help="number of iterations")
    add("closure", cmd_closure, "iterated conjugate closure", word)
    add("closure-size", cmd_closure_size, "size of the closure", word)
    add("stab-index", cmd_stab_index, "first iteration reaching the closure", word)

    dfa = ("dfa", "DFA file ('-' for stdin)")
    for name, func, text in (("dfa-conj", cmd_dfa_conj, "DFA for the conjugates of L"),
                             ("dfa-free", cmd_dfa_free, "decide conjugate-freeness of L")):
        p = add(name, func, text, dfa)
        p.add_argument("--state-budget", type=_positive, default=automata.DEFAULT_STATE_BUDGET)
    add("dfa-member", cmd_dfa_member, "does the DFA accept WORD?", dfa, word, needs_theta=False)
    add("dfa-enum", cmd_dfa_enum, "accepted words up to --maxlen", dfa, needs_theta=False)

    gram = ("grammar", "grammar file ('-' for stdin)")
    p = add("gram-enum", cmd_gram_enum, "bounded enumeration of a grammar", gram,
            needs_theta=False)
    p.add_argument("--form-slack", type=_nonneg, default=grammars.DEFAULT_FORM_SLACK,
                   help="extra sentential-form length allowed beyond --maxlen")
    add("gram-rev", cmd_gram_rev, "grammar for the reversed language", gram, needs_theta=False)
    p = add("gram-wc", cmd_gram_wc, "unrestricted grammar for the conjugates of L", gram)
    p.add_argument("--auto-rename", action="store_true",
                   help="suffix reserved symbol names instead of failing on a clash")
    p = add("pcp-gen", cmd_pcp_gen, "grammar reducing a PCP instance",
            ("instance", "PCP file with 'U:' and 'V:' lines"))
    p.add_argument("--auto-rename", action="store_true")
    add("gram-findpair", cmd_gram_findpair, "bounded search for a conjugate pair", gram)
    return parser


def _render(records, fmt: str) -> str:
    lines = []
    for key, value in records:
        if fmt == "json-lines":
            lines.append(json.dumps({key: value}, ensure_ascii=False))
        elif isinstance(value, str) and key in ("word", "conjugate", "witness", "palindrome"):
            lines.append(_show(value))
        else:
            lines.append(str(value))
    return "".join(line + "\n" for line in lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # grammar files may carry their own involution; checked when loaded
    if args.needs_theta and args.theta is None and args.command not in ("gram-wc", "gram-findpair"):
        parser.error(f"{args.command} requires --theta")
    try:
        records = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except ThetaConjError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(_render(records, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
