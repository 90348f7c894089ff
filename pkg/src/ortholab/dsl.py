"""The ``.ol`` instance language: tokenizer, parser, AST and pretty-printer.

A script declares named values and then runs commands on them::

    let A: sym(d=2,n=2) = {(0,0): 1, (1,1): 2};
    let P: poly(sym(d=2,n=2)) = A;
    check orthosymmetric(A);
    check oa(P) trials=100 seed=7;
    represent(P);
    verify thm26 trials=50;

All numeric literals become exact Fractions. Names must be bound before use
and command arguments must have a compatible kind; violations raise
:class:`ParseError` carrying the line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from ortholab.errors import OrthoLabError, ValidationError
from ortholab.lattice import Vec
from ortholab.multilinear import FullTensor, Polynomial, SampledForm, SymTensor
from ortholab.pl import PLFunc
from ortholab.theorems import THEOREMS

GRAMMAR = r"""script      := { binding | command } ;
binding     := "let" NAME ":" kind "=" literal ";" ;
kind        := "vec" | "pl"
             | "tensor" "(" "d" "=" INT "," "n" "=" INT ")"
             | "sym" "(" "d" "=" INT "," "n" "=" INT ")"
             | "sampled" "(" "n" "=" INT ")"
             | "poly" "(" kind ")" ;                  (* inner kind: tensor, sym or sampled *)
literal     := vec_lit | pl_lit | tensor_lit | sampled_lit | NAME ;
vec_lit     := "[" rat { "," rat } "]" ;
pl_lit      := "{" point { "," point } "}" ;
point       := "(" rat "," rat ")" ;
tensor_lit  := "{" [ entry { "," entry } ] "}" ;      (* for tensor and sym kinds *)
entry       := "(" INT { "," INT } ")" ":" rat ;
sampled_lit := "{" [ term { "," term } ] "}" ;
term        := rat "*" "@" "(" rat { "," rat } ")" ;
command     := "check" CHECK "(" args ")" opts ";"
             | "represent" "(" NAME ")" opts ";"
             | "verify" THM [ "(" args ")" ] opts ";" ;
CHECK       := "disjoint" | "support_disjoint" | "p_disjoint" | "positive" | "symmetric"
             | "orthosymmetric" | "p_orthosymmetric" | "oa" ;
THM         := "lemma21" | "thm22" | "lemma25" | "thm26" | "thm28"
             | "lemma32" | "thm33" | "thm34" | "npower" ;
args        := NAME { "," NAME } ;
opts        := { "trials" "=" INT | "seed" "=" INT | "d" "=" INT | "n" "=" INT
               | "expect" "=" ( "true" | "false" ) } ;   (* each at most once *)
rat         := [ "-" ] NUMBER [ "/" INT ] ;
NUMBER      := DIGITS [ "." DIGITS ] ;
NAME        := letter { letter | digit | "_" } ;
(* "#" starts a comment running to the end of the line *)
"""

OPT_ORDER = ("trials", "seed", "d", "n", "expect")

ELEMENT_KINDS = ("vec", "pl")
FORM_KINDS = ("tensor", "sym", "sampled", "poly")

CHECKS: Dict[str, Tuple[str, ...]] = {
    "disjoint": ELEMENT_KINDS,
    "support_disjoint": ("pl",),
    "p_disjoint": ELEMENT_KINDS,
    "positive": FORM_KINDS,
    "symmetric": FORM_KINDS,
    "orthosymmetric": FORM_KINDS,
    "p_orthosymmetric": FORM_KINDS,
    "oa": FORM_KINDS,
}
CHECK_ARITY = {"disjoint": (2, 2), "support_disjoint": (2, 2), "p_disjoint": (2, 8)}

THEOREM_KINDS: Dict[str, Tuple[str, ...]] = {
    "lemma21": ("sampled",),
    "thm22": ("tensor", "sym", "sampled"),
    "lemma25": ("tensor", "sym", "sampled"),
    "thm26": ("tensor", "sym", "sampled"),
    "thm28": ("tensor", "sym", "sampled"),
    "lemma32": ("tensor", "sym", "sampled"),
    "thm33": ("tensor", "sym"),
    "thm34": ("sampled",),
    "npower": (),
}


class ParseError(ValidationError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.bare = message


@dataclass(frozen=True)
class Kind:
    name: str
    d: Optional[int] = None
    n: Optional[int] = None
    inner: Optional["Kind"] = None

    @property
    def base(self) -> str:
        """The form kind a polynomial wraps, or the kind itself."""
        return self.inner.name if self.name == "poly" else self.name

    def __str__(self) -> str:
        if self.name in ("tensor", "sym"):
            return f"{self.name}(d={self.d},n={self.n})"
        if self.name == "sampled":
            return f"sampled(n={self.n})"
        if self.name == "poly":
            return f"poly({self.inner})"
        return self.name


Value = Union[Vec, PLFunc, FullTensor, SymTensor, SampledForm, Polynomial]


@dataclass(frozen=True)
class Binding:
    name: str
    kind: Kind
    value: Value
    ref: Optional[str] = None
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Command:
    verb: str
    target: Optional[str]
    args: Tuple[str, ...]
    opts: Tuple[Tuple[str, Union[int, bool]], ...]
    line: int = field(default=0, compare=False)

    def opt(self, key: str, default=None):
        return dict(self.opts).get(key, default)


@dataclass(frozen=True)
class Script:
    statements: Tuple[Union[Binding, Command], ...]

    @property
    def bindings(self) -> Dict[str, Binding]:
        return {s.name: s for s in self.statements if isinstance(s, Binding)}

    @property
    def commands(self) -> List[Command]:
        return [s for s in self.statements if isinstance(s, Command)]


# --- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<number>\d+(?:\.\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<punct>[;:=\[\]{}(),*@/\-])"
)


@dataclass(frozen=True)
class Token:
    type: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind in ("number", "name", "punct"):
                out.append(Token(kind, tok, line, col))
            col += len(tok)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


# --- parser --------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.env: Dict[str, Binding] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.type != "eof"

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.take()

    def name(self) -> Token:
        if self.tok.type != "name":
            self.error(f"expected a name, found {self.tok.text or 'end of input'!r}")
        return self.take()

    def integer(self) -> int:
        t = self.tok
        if t.type != "number" or "." in t.text:
            self.error(f"expected an integer, found {t.text or 'end of input'!r}")
        self.take()
        return int(t.text)

    def rat(self) -> Fraction:
        neg = False
        if self.at("-"):
            self.take()
            neg = True
        t = self.tok
        if t.type != "number":
            self.error(f"expected a number, found {t.text or 'end of input'!r}")
        self.take()
        value = Fraction(t.text)
        if self.at("/"):
            self.take()
            den_tok = self.tok
            den = self.integer()
            if den == 0:
                self.error("zero denominator", den_tok)
            value /= den
        return -value if neg else value

    def comma_list(self, item, close: str) -> list:
        out = []
        if self.at(close):
            return out
        out.append(item())
        while self.at(","):
            self.take()
            out.append(item())
        return out

    # statements

    def script(self) -> Script:
        stmts = []
        while self.tok.type != "eof":
            if self.at("let"):
                b = self.binding()
                self.env[b.name] = b
                stmts.append(b)
            elif self.tok.text in ("check", "represent", "verify") and self.tok.type == "name":
                stmts.append(self.command())
            else:
                self.error(f"expected 'let', 'check', 'represent' or 'verify', found {self.tok.text!r}")
        return Script(tuple(stmts))

    def kind(self) -> Kind:
        t = self.name()
        k = t.text
        if k in ("vec", "pl"):
            return Kind(k)
        if k in ("tensor", "sym"):
            self.expect("(")
            self.expect("d")
            self.expect("=")
            d = self.integer()
            self.expect(",")
            self.expect("n")
            self.expect("=")
            n = self.integer()
            self.expect(")")
            if d < 1 or n < 1:
                self.error("d and n must be positive", t)
            return Kind(k, d=d, n=n)
        if k == "sampled":
            self.expect("(")
            self.expect("n")
            self.expect("=")
            n = self.integer()
            self.expect(")")
            if n < 1:
                self.error("n must be positive", t)
            return Kind(k, n=n)
        if k == "poly":
            self.expect("(")
            inner = self.kind()
            self.expect(")")
            if inner.name not in ("tensor", "sym", "sampled"):
                self.error(f"poly wraps a tensor, sym or sampled kind, not {inner.name}", t)
            return Kind(k, inner=inner)
        self.error(f"unknown kind {k!r}", t)

    def binding(self) -> Binding:
        start = self.expect("let")
        name_tok = self.name()
        if name_tok.text in self.env:
            self.error(f"name {name_tok.text!r} is already bound", name_tok)
        self.expect(":")
        kind = self.kind()
        self.expect("=")
        lit_tok = self.tok
        ref = None
        if self.tok.type == "name":
            ref_tok = self.name()
            ref = ref_tok.text
            value = self.reference(ref_tok, kind)
        else:
            value = self.literal(kind, lit_tok)
        self.expect(";")
        return Binding(name_tok.text, kind, value, ref=ref, line=start.line)

    def reference(self, tok: Token, kind: Kind) -> Value:
        b = self.env.get(tok.text)
        if b is None:
            self.error(f"unbound name {tok.text!r}", tok)
        if kind.name == "poly":
            if b.kind != kind.inner and b.kind != kind:
                self.error(f"{tok.text!r} has kind {b.kind}, expected {kind.inner}", tok)
            return b.value if isinstance(b.value, Polynomial) else Polynomial(b.value)
        if b.kind != kind:
            self.error(f"{tok.text!r} has kind {b.kind}, expected {kind}", tok)
        return b.value

    def literal(self, kind: Kind, tok: Token) -> Value:
        try:
            if kind.name == "vec":
                self.expect("[")
                vals = self.comma_list(self.rat, "]")
                self.expect("]")
                return Vec(vals)
            if kind.name == "pl":
                self.expect("{")
                pts = self.comma_list(self.point, "}")
                self.expect("}")
                return PLFunc.from_points(pts)
            if kind.name in ("tensor", "sym"):
                self.expect("{")
                entries = self.comma_list(self.entry, "}")
                self.expect("}")
                seen = set()
                for key, _ in entries:
                    if key in seen:
                        self.error(f"index tuple {key} given twice", tok)
                    seen.add(key)
                cls = FullTensor if kind.name == "tensor" else SymTensor
                return cls(kind.d, kind.n, dict(entries))
            if kind.name == "sampled":
                self.expect("{")
                terms = self.comma_list(self.term, "}")
                self.expect("}")
                return SampledForm(kind.n, terms)
            if kind.name == "poly":
                return Polynomial(self.literal(kind.inner, tok))
        except ParseError:
            raise
        except OrthoLabError as exc:
            self.error(str(exc), tok)
        self.error(f"no literal syntax for kind {kind}", tok)

    def point(self):
        self.expect("(")
        t = self.rat()
        self.expect(",")
        v = self.rat()
        self.expect(")")
        return (t, v)

    def entry(self):
        self.expect("(")
        idx = tuple(self.comma_list(self.integer, ")"))
        self.expect(")")
        self.expect(":")
        return idx, self.rat()

    def term(self):
        w = self.rat()
        self.expect("*")
        self.expect("@")
        self.expect("(")
        pts = tuple(self.comma_list(self.rat, ")"))
        self.expect(")")
        return (w, pts)

    def args(self) -> List[Token]:
        self.expect("(")
        toks = self.comma_list(self.name, ")")
        self.expect(")")
        for t in toks:
            if t.text not in self.env:
                self.error(f"unbound name {t.text!r}", t)
        return toks

    def opts(self) -> Tuple[Tuple[str, Union[int, bool]], ...]:
        out: Dict[str, Union[int, bool]] = {}
        while self.tok.type == "name" and self.tok.text in OPT_ORDER:
            key_tok = self.take()
            if key_tok.text in out:
                self.error(f"option {key_tok.text!r} given twice", key_tok)
            self.expect("=")
            if key_tok.text == "expect":
                v = self.name()
                if v.text not in ("true", "false"):
                    self.error("expect takes true or false", v)
                out["expect"] = v.text == "true"
            else:
                out[key_tok.text] = self.integer()
        return tuple((k, out[k]) for k in OPT_ORDER if k in out)

    def _kind_of(self, tok: Token) -> Kind:
        return self.env[tok.text].kind

    def command(self) -> Command:
        verb_tok = self.take()
        verb = verb_tok.text
        if verb == "check":
            t = self.name()
            if t.text not in CHECKS:
                self.error(f"unknown check {t.text!r}", t)
            arg_toks = self.args()
            self.check_args(t.text, arg_toks, CHECKS[t.text], CHECK_ARITY.get(t.text, (1, 1)), t)
            if t.text in ("disjoint", "p_disjoint"):
                kinds = {self._kind_of(a).name for a in arg_toks}
                if len(kinds) > 1:
                    self.error("arguments must all be vec or all be pl", arg_toks[0])
            target = t.text
        elif verb == "represent":
            arg_toks = self.args()
            self.check_args("represent", arg_toks, FORM_KINDS, (1, 1), verb_tok)
            target = None
        else:
            t = self.name()
            if t.text not in THEOREMS:
                self.error(f"unknown theorem {t.text!r}", t)
            arg_toks = self.args() if self.at("(") else []
            if arg_toks or THEOREM_KINDS[t.text] == ():
                lo = 0 if THEOREM_KINDS[t.text] == () else 1
                self.check_args(t.text, arg_toks, THEOREM_KINDS[t.text], (lo, lo), t)
            target = t.text
        opts = self.opts()
        self.expect(";")
        return Command(verb, target, tuple(a.text for a in arg_toks), opts, line=verb_tok.line)

    def check_args(self, what: str, toks: List[Token], kinds, arity, at_tok: Token) -> None:
        lo, hi = arity
        if not lo <= len(toks) <= hi:
            want = str(lo) if lo == hi else f"{lo}..{hi}"
            self.error(f"{what} takes {want} argument(s), got {len(toks)}", at_tok)
        for t in toks:
            k = self._kind_of(t)
            if k.name not in kinds and k.base not in kinds:
                self.error(f"{what} cannot take {t.text!r} of kind {k}", t)


def parse(text: str) -> Script:
    return _Parser(text).script()


# --- pretty printer ------------------------------------------------------------


def fmt_rat(x: Fraction) -> str:
    return str(x)


def format_value(kind: Kind, value: Value) -> str:
    if isinstance(value, Polynomial):
        return format_value(kind.inner, value.form)
    if isinstance(value, Vec):
        return "[" + ", ".join(fmt_rat(a) for a in value.entries) + "]"
    if isinstance(value, PLFunc):
        return "{" + ", ".join(f"({fmt_rat(t)},{fmt_rat(v)})" for t, v in value.points()) + "}"
    if isinstance(value, (FullTensor, SymTensor)):
        body = ", ".join("(" + ",".join(map(str, k)) + "): " + fmt_rat(v) for k, v in value.entries.items())
        return "{" + body + "}"
    if isinstance(value, SampledForm):
        body = ", ".join(f"{fmt_rat(w)} * @(" + ",".join(fmt_rat(p) for p in pts) + ")" for w, pts in value.terms)
        return "{" + body + "}"
    raise ValidationError(f"cannot format {type(value).__name__}")


def format_opts(opts) -> str:
    parts = []
    for k, v in opts:
        parts.append(f"{k}={'true' if v is True else 'false' if v is False else v}")
    return "".join(" " + p for p in parts)


def format_command(cmd: Command) -> str:
    args = "(" + ", ".join(cmd.args) + ")"
    if cmd.verb == "check":
        head = f"check {cmd.target}{args}"
    elif cmd.verb == "represent":
        head = f"represent{args}"
    else:
        head = f"verify {cmd.target}" + (args if cmd.args else "")
    return head + format_opts(cmd.opts) + ";"


def format_statement(stmt) -> str:
    if isinstance(stmt, Binding):
        rhs = stmt.ref if stmt.ref is not None else format_value(stmt.kind, stmt.value)
        return f"let {stmt.name}: {stmt.kind} = {rhs};"
    return format_command(stmt)


def format_script(script: Script) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)
