"""A four-register counter machine standing in for the partial computable functions.

Instructions:
    INC r        R[r] += 1
    DECJZ r a    if R[r] == 0 jump to a, else R[r] -= 1
    QJ r a       jump to a if R[r] is in the oracle set (never jumps without one)
    HALT         stop; the output is R[0]

Input goes in R[0].  Every executed instruction, HALT included, is one step.
Programs are numbered by packing instruction codes into a list with the
Cantor pairing, so every natural number names a program.  Codes whose jumps
leave the program, and the empty list, name the program that halts at once
with output 0.
"""
from dataclasses import dataclass

from .codings import pair_cantor, unpair_cantor

NREG = 4


@dataclass(frozen=True)
class Halted:
    value: int
    steps: int


@dataclass(frozen=True)
class StillRunning:
    after_steps: int


def decode_instr(j):
    kind, t = j % 4, j // 4
    if kind == 0:
        return ("HALT",)
    if kind == 1:
        return ("INC", t % NREG)
    return ("DECJZ" if kind == 2 else "QJ", t % NREG, t // NREG)


def encode_instr(ins):
    op = ins[0]
    if op == "HALT":
        return 0
    if op == "INC":
        return 4 * ins[1] + 1
    t = ins[1] + NREG * ins[2]
    return 4 * t + (2 if op == "DECJZ" else 3)


def decode_list(e):
    out = []
    while e > 0:
        h, e = unpair_cantor(e - 1)
        out.append(h)
    return out


def encode_list(xs):
    e = 0
    for h in reversed(xs):
        e = pair_cantor(h, e) + 1
    return e


def is_valid(prog):
    if not prog:
        return False
    n = len(prog)
    for ins in prog:
        if ins[0] in ("INC", "DECJZ", "QJ") and not 0 <= ins[1] < NREG:
            return False
        if ins[0] in ("DECJZ", "QJ") and not 0 <= ins[2] < n:
            return False
    return True


def decode_program(e):
    prog = tuple(decode_instr(j) for j in decode_list(e))
    return prog if is_valid(prog) else ()


def encode_program(prog):
    if not is_valid(tuple(prog)):
        raise ValueError("invalid program")
    return encode_list([encode_instr(i) for i in prog])


def parse_program(text):
    prog = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        op = parts[0].upper()
        try:
            if op == "HALT" and len(parts) == 1:
                prog.append(("HALT",))
            elif op == "INC" and len(parts) == 2:
                prog.append(("INC", int(parts[1])))
            elif op in ("DECJZ", "QJ") and len(parts) == 3:
                prog.append((op, int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError:
            raise ValueError("line %d: cannot parse %r" % (lineno, line)) from None
    prog = tuple(prog)
    if not is_valid(prog):
        raise ValueError("program has an out-of-range register or jump")
    return prog


def format_program(prog):
    return "\n".join(" ".join(str(x) for x in ins) for ins in prog) + "\n"


class Run:
    """A paused or finished computation that can be resumed."""
    __slots__ = ("prog", "pc", "regs", "steps", "result")

    def __init__(self, prog, inp):
        self.prog = prog
        self.pc = 0
        self.regs = [inp, 0, 0, 0]
        self.steps = 0
        self.result = None
        if not prog:
            self.result = "empty"

    def advance(self, limit, oracle=None):
        """Run until halted or `limit` total steps; returns Halted/StillRunning."""
        if self.result == "empty":
            return Halted(0, 1) if limit >= 1 else StillRunning(0)
        if self.result is not None:
            v, s = self.result
            return Halted(v, s) if s <= limit else StillRunning(limit)
        prog, regs = self.prog, self.regs
        pc, steps = self.pc, self.steps
        while steps < limit:
            ins = prog[pc]
            steps += 1
            op = ins[0]
            if op == "INC":
                regs[ins[1]] += 1
                pc += 1
            elif op == "DECJZ":
                r = ins[1]
                if regs[r] == 0:
                    pc = ins[2]
                else:
                    regs[r] -= 1
                    pc += 1
            elif op == "HALT":
                self.result = (regs[0], steps)
                self.pc, self.steps = pc, steps
                return Halted(regs[0], steps)
            else:
                if oracle is not None and oracle(regs[ins[1]]):
                    pc = ins[2]
                else:
                    pc += 1
            if pc >= len(prog):
                # falling off the end halts at once, without an extra step
                pc = len(prog)
                self.result = (regs[0], steps)
                self.pc, self.steps = pc, steps
                return Halted(regs[0], steps)
        self.pc, self.steps = pc, steps
        return StillRunning(limit)


def run_program(prog, inp, steps, oracle=None):
    return Run(tuple(prog), inp).advance(steps, oracle)


def settle(prog, inp, max_steps, oracle=None):
    """Decide halting by simulation plus cycle detection on full machine states.

    Returns ("halts", value, steps), ("loops", steps) or ("unknown", max_steps)."""
    prog = tuple(prog)
    if not prog:
        return ("halts", 0, 1)
    r = Run(prog, inp)
    seen = set()
    for s in range(max_steps):
        state = (r.pc, tuple(r.regs))
        if state in seen:
            return ("loops", s)
        seen.add(state)
        res = r.advance(s + 1, oracle)
        if isinstance(res, Halted):
            return ("halts", res.value, res.steps)
    return ("unknown", max_steps)


class Enumeration:
    """phi_e for every e; optionally with finitely many programs seeded at chosen indices."""

    def __init__(self, seeds=None):
        self.seeds = dict(seeds or {})
        self._runs = {}

    def program(self, e):
        if e in self.seeds:
            return tuple(self.seeds[e])
        return decode_program(e)

    def run(self, e, inp, steps):
        """Step-bounded phi_e(inp), resumable and cached (oracle-free runs only)."""
        key = (e, inp)
        r = self._runs.get(key)
        if r is None:
            r = self._runs[key] = Run(self.program(e), inp)
        return r.advance(steps)

    def run_with_oracle(self, e, inp, steps, oracle):
        return Run(self.program(e), inp).advance(steps, oracle)


STANDARD = Enumeration()


def run_machine(e, inp, steps, enum=None):
    return (enum or STANDARD).run(e, inp, steps)


def constant_program(value):
    """A program ignoring its input and halting with output `value`."""
    # clear R0: DECJZ 0 2 ; DECJZ 1 0 (R1 is 0, so this jumps back)
    prog = [("DECJZ", 0, 2), ("DECJZ", 1, 0)]
    prog += [("INC", 0)] * value
    prog.append(("HALT",))
    return tuple(prog)
