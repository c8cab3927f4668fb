"""DIMACS CNF writer and parser. Output is byte-deterministic for a given
formula; channel maps ride along as `c map <name> <value> <lit>` comments."""

from __future__ import annotations

from .model import ChannelMap, UsageError
from .propagation import CnfFormula


def write_dimacs(formula: CnfFormula, channel: ChannelMap | None = None) -> str:
    lines = []
    if channel is not None:
        if channel.kind != ChannelMap.CNF:
            raise UsageError("only CNF channels serialize into DIMACS comments")
        for var in channel.source_vars:
            for value in var.domain:
                lit = channel.forward[(var.id, value)]
                lines.append(f"c map {var.name} {var.label(value)} {lit}")
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = None
    clauses = []
    pending: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise UsageError(f"line {lineno}: malformed problem line {line!r}")
            num_vars = int(parts[2])
            continue
        if num_vars is None:
            raise UsageError(f"line {lineno}: clause before the problem line")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise UsageError("unterminated clause at end of input")
    if num_vars is None:
        raise UsageError("missing problem line")
    formula = CnfFormula(num_vars)
    for cl in clauses:
        formula.add_clause(cl)
    return formula
