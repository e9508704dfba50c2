"""
Exhaustive joint distributions over S_n or C_n and named identity checks.

Elements are enumerated by rank in the factorial number system: the mixed
radix digits of a rank form a code, and for the permutation domain that code
is decoded with :func:`permstat.codes.inv_decode`.  A rank range is the unit
of parallel work; partial polynomials are merged by addition and always
serialized in lexicographic order, so results do not depend on worker count.
"""

from __future__ import annotations

import json
import math
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from . import codes, perm, stats
from .codes import Code
from .perm import Permutation
from .stats import StatDescriptor

DEFAULT_CAP = 11
DOMAINS = ("perms", "codes")


class SizeCapExceeded(ValueError):
    pass


class DomainError(ValueError):
    pass


class UnknownIdentity(KeyError):
    pass


def size_cap() -> int:
    """The n cap, overridable through PERMSTAT_CAP."""
    env = os.environ.get("PERMSTAT_CAP")
    return int(env) if env else DEFAULT_CAP


def _check_n(n: int, cap: int | None) -> None:
    cap = size_cap() if cap is None else cap
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise SizeCapExceeded(f"n = {n} exceeds the size cap {cap}")


@dataclass
class DistPolynomial:
    """Sparse polynomial with positive integer coefficients."""

    variables: tuple[str, ...]
    terms: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        self.variables = tuple(self.variables)
        self.terms = {tuple(e): c for e, c in self.terms.items() if c}

    def total(self) -> int:
        return sum(self.terms.values())

    def add(self, other: DistPolynomial) -> DistPolynomial:
        merged = Counter(self.terms)
        merged.update(other.terms)
        return DistPolynomial(self.variables, dict(merged))

    def coefficient(self, exp: Sequence[int]) -> int:
        return self.terms.get(tuple(exp), 0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items())

    def to_document(self) -> dict:
        return {
            "vars": list(self.variables),
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_document(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> DistPolynomial:
        doc = json.loads(text)
        return cls(tuple(doc["vars"]),
                   {tuple(t["exp"]): int(t["coef"]) for t in doc["terms"]})

    def to_text(self) -> str:
        lines = ["vars: " + " ".join(self.variables)]
        lines += [" ".join(map(str, e)) + ": " + str(c) for e, c in self.sorted_terms()]
        return "\n".join(lines)

    def renamed(self, variables: Sequence[str]) -> DistPolynomial:
        if len(variables) != len(self.variables):
            raise ValueError("variable count mismatch")
        return DistPolynomial(tuple(variables), dict(self.terms))


def equal_distribution(p: DistPolynomial, q: DistPolynomial
                       ) -> tuple[bool, tuple[tuple[int, ...], int, int] | None]:
    """
    Compare term maps.  On mismatch also return the lexicographically first
    exponent vector whose coefficients differ, with both coefficients.
    """
    if len(p.variables) != len(q.variables):
        raise ValueError("polynomials have different variable counts")
    if p.terms == q.terms:
        return True, None
    for e in sorted(set(p.terms) | set(q.terms)):
        a, b = p.coefficient(e), q.coefficient(e)
        if a != b:
            return False, (e, a, b)
    raise AssertionError("unreachable")


def rank_to_code(rank: int, n: int) -> Code:
    """c(i) is the digit of weight (i-1)!, radix i."""
    digits = [0] * n
    for i in range(2, n + 1):
        rank, digits[i - 1] = divmod(rank, i)
    return Code.trusted(digits)


def code_to_rank(c: Sequence[int]) -> int:
    rank = 0
    for i in range(len(c), 1, -1):
        rank = rank * i + c[i - 1]
    return rank


def enumerate_domain(n: int, domain: str = "perms", start: int = 0,
                     stop: int | None = None) -> Iterator[Sequence[int]]:
    """Yield the elements with rank in ``[start, stop)``, in rank order."""
    if domain not in DOMAINS:
        raise DomainError(f"unknown domain {domain!r}")
    total = math.factorial(n)
    stop = total if stop is None else stop
    if not 0 <= start <= stop <= total:
        raise ValueError(f"rank range [{start}, {stop}) outside [0, {total}]")
    digits = list(rank_to_code(start, n)) if start < total else []
    for _ in range(start, stop):
        c = Code.trusted(digits)
        yield codes.inv_decode(c) if domain == "perms" else c
        # odometer step, least significant digit c(2) first
        i = 1
        while i < n:
            digits[i] += 1
            if digits[i] <= i:
                break
            digits[i] = 0
            i += 1


def chunk_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, lo = [], 0
    for j in range(parts):
        hi = lo + step + (1 if j < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _accumulate(n: int, domain: str, fns: Sequence[Callable[[Sequence[int]], int]],
                start: int, stop: int) -> Counter:
    counts: Counter = Counter()
    for obj in enumerate_domain(n, domain, start, stop):
        counts[tuple(f(obj) for f in fns)] += 1
    return counts


def _accumulate_stats(n, domain, labels, start, stop):
    fns = [StatDescriptor.parse(lab).evaluator() for lab in labels]
    return _accumulate(n, domain, fns, start, stop)


def _accumulate_side(n, identity, k, side, start, stop):
    spec = IDENTITIES[identity]
    domain, fns = spec.sides(k)[side]
    return _accumulate(n, domain, fns, start, stop)


def _run_chunks(worker, head: tuple, total: int, threads: int) -> list:
    ranges = chunk_ranges(total, threads if threads > 1 else 1)
    if threads <= 1 or len(ranges) == 1:
        return [worker(*head, lo, hi) for lo, hi in ranges]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, *head, lo, hi) for lo, hi in ranges]
        return [f.result() for f in futures]


def _merge(variables, partials: list[Counter]) -> DistPolynomial:
    total: Counter = Counter()
    for part in partials:
        total.update(part)
    return DistPolynomial(tuple(variables), dict(total))


def distribution(n: int, stat_list: Sequence[StatDescriptor | str], domain: str = "perms",
                 variables: Sequence[str] | None = None, threads: int = 1,
                 cap: int | None = None) -> DistPolynomial:
    """
    Joint distribution of a statistic tuple over S_n (or C_n).

    >>> distribution(4, ["des"]).sorted_terms()
    [((0,), 1), ((1,), 11), ((2,), 11), ((3,), 1)]
    """
    _check_n(n, cap)
    if domain not in DOMAINS:
        raise DomainError(f"unknown domain {domain!r}")
    descs = [s if isinstance(s, StatDescriptor) else StatDescriptor.parse(s) for s in stat_list]
    for d in descs:
        if d.domain != domain:
            raise DomainError(f"statistic {d.label} does not act on the {domain} domain")
    if variables is None:
        variables = [d.label for d in descs]
    elif len(variables) != len(descs):
        raise ValueError("one variable name per statistic is required")
    labels = [d.label for d in descs]
    partials = _run_chunks(_accumulate_stats, (n, domain, labels), math.factorial(n), threads)
    return _merge(variables, partials)


# -- identity registry -------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    name: str
    kind: str  # "distribution" or "per_element"
    needs_k: bool
    description: str
    variables: tuple[str, ...] = ()
    # k -> {"left"/"right": (domain, [fn, ...])}
    _sides: Callable | None = None
    # k -> predicate on a permutation
    _check: Callable | None = None

    def sides(self, k):
        return self._sides(k)

    def check(self, k):
        return self._check(k)


def _k(fn, k):
    return lambda s: fn(s, k)


def _sides_prop_ed(k):
    return {"left": ("perms", [stats.des, stats.cover]),
            "right": ("perms", [stats.exc, stats.des])}


def _sides_multivar(k):
    return {"left": ("perms", [stats.unexc] + [_k(stats.exc_k, j) for j in range(1, 5)]),
            "right": ("perms", [stats.asc] + [_k(stats.destilde_k, j) for j in range(2, 6)])}


def _sides_asc_des(k):
    return {"left": ("perms", [stats.asc, _k(stats.destilde_k, 2)]),
            "right": ("perms", [_k(stats.destilde_k, 2), stats.asc])}


def _sides_des_maj(k):
    return {"left": ("perms", [stats.des, stats.maj]),
            "right": ("perms", [_k(stats.destilde_k, 2), _k(stats.majhat_k, 2)])}


def _sides_pair_k(k):
    return {"left": ("perms", [_k(stats.des_k, k), _k(stats.majhat_k, k)]),
            "right": ("perms", [_k(stats.destilde_k, k + 1), _k(stats.majhat_k, k + 1)])}


def _sides_code_st(k):
    return {"left": ("codes", [_k(codes.st_k, k)]),
            "right": ("perms", [_k(stats.des_k, k)])}


def _sides_alg_thm(k):
    return {"left": ("perms", [stats.amaj2, stats.asctilde2, stats.des_of_inverse]),
            "right": ("perms", [stats.maj_minus_exc, stats.des, stats.exc])}


def _check_exc_bdes(k):
    return lambda s: stats.exc_k(s, k) == stats.bdestilde_k(perm.cycle_neg1(s), k + 1)


def _check_unexc_asc(k):
    return lambda s: stats.unexc(s) == stats.asc(perm.cycle_neg1(s))


def _check_bij_i(k):
    return lambda s: codes.code_sum(codes.maj_encode(s, k)) == stats.majhat_k(s, k)


def _check_bij_ii(k):
    return lambda s: codes.st_k(codes.maj_encode(s, k), k) == stats.des_k(s, k)


def _check_bij_iii(k):
    return lambda s: codes.st_k(codes.maj_encode(s, k + 1), k) == stats.destilde_k(s, k + 1)


IDENTITIES: dict[str, Identity] = {i.name: i for i in [
    Identity("prop_ed", "distribution", False,
             "(des, cover) equidistributed with (exc, des)", ("t", "x"), _sides=_sides_prop_ed),
    Identity("exc_bdes", "per_element", True,
             "exc_k(s) = bdestilde_{k+1}(cycle_neg1(s))", _check=_check_exc_bdes),
    Identity("unexc_asc", "per_element", False,
             "unexc(s) = asc(cycle_neg1(s))", _check=_check_unexc_asc),
    Identity("multivar", "distribution", False,
             "(unexc, exc_1..exc_4) equidistributed with (asc, destilde_2..destilde_5)",
             ("u", "x1", "x2", "x3", "x4"), _sides=_sides_multivar),
    Identity("asc_des_symmetry", "distribution", False,
             "(asc, destilde_2) equidistributed with (destilde_2, asc)", ("x", "y"),
             _sides=_sides_asc_des),
    Identity("des_maj_pair", "distribution", False,
             "(des, maj) equidistributed with (destilde_2, majhat_2)", ("x", "y"),
             _sides=_sides_des_maj),
    Identity("pair_k", "distribution", True,
             "(des_k, majhat_k) equidistributed with (destilde_{k+1}, majhat_{k+1})", ("x", "y"),
             _sides=_sides_pair_k),
    Identity("bij_thm_i", "per_element", True,
             "sum(maj_encode(s, k)) = majhat_k(s), and maj_encode is a bijection onto C_n",
             _check=_check_bij_i),
    Identity("bij_thm_ii", "per_element", True,
             "st_k(maj_encode(s, k)) = des_k(s)", _check=_check_bij_ii),
    Identity("bij_thm_iii", "per_element", True,
             "st_k(maj_encode(s, k+1)) = destilde_{k+1}(s)", _check=_check_bij_iii),
    Identity("code_st", "distribution", True,
             "st_k over C_n equidistributed with des_k over S_n", ("x",), _sides=_sides_code_st),
    Identity("alg_thm", "distribution", False,
             "(amaj2, asctilde2, des of inverse) equidistributed with (maj - exc, des, exc)",
             ("q", "p", "t"), _sides=_sides_alg_thm),
]}


@dataclass
class VerificationReport:
    identity: str
    n: int
    k: int | None
    passed: bool
    counterexample: object = None
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.passed and self.counterexample is None:
            raise ValueError("a failing report must carry a counterexample")

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_line(self, timing: bool = False) -> str:
        k = "-" if self.k is None else str(self.k)
        line = f"{self.identity} n={self.n} k={k} {self.status.upper()}"
        if timing:
            line += f" {self.elapsed:.3f}s"
        if not self.passed:
            line += f" counterexample: {self._counterexample_text()}"
        return line

    def _counterexample_text(self) -> str:
        ce = self.counterexample
        if isinstance(ce, tuple) and len(ce) == 3 and isinstance(ce[0], tuple):
            exp, a, b = ce
            return f"exp={list(exp)} left={a} right={b}"
        return str(ce)

    def to_document(self, timing: bool = False) -> dict:
        ce = self.counterexample
        if isinstance(ce, tuple) and len(ce) == 3 and isinstance(ce[0], tuple):
            ce = {"exp": list(ce[0]), "left": str(ce[1]), "right": str(ce[2])}
        elif ce is not None:
            ce = str(ce)
        doc = {"identity": self.identity, "n": self.n, "k": self.k, "status": self.status,
               "counterexample": ce, "details": self.details}
        if timing:
            doc["elapsed"] = round(self.elapsed, 6)
        return doc


def _first_failure(n, identity, k, start, stop):
    pred = IDENTITIES[identity].check(k)
    for rank, s in enumerate(enumerate_domain(n, "perms", start, stop), start):
        try:
            ok = pred(s)
        except codes.InvalidCode:
            ok = False
        if not ok:
            return rank
    return None


def _maj_image_collision(n: int, k: int) -> tuple[Permutation | None, int]:
    """First permutation (in rank order) whose maj code was already seen."""
    seen: set = set()
    for s in enumerate_domain(n, "perms"):
        c = codes.maj_encode(s, k)
        if c in seen:
            return Permutation.trusted(s), len(seen)
        seen.add(c)
    return None, len(seen)


def identity_sides(identity: str, n: int, k: int | None = None, threads: int = 1,
                   cap: int | None = None) -> tuple[DistPolynomial, DistPolynomial]:
    """Both sides of a distribution identity, with the identity's variable names."""
    spec = _get_identity(identity, k)
    if spec.kind != "distribution":
        raise ValueError(f"{identity} is a per-element identity")
    _check_n(n, cap)
    total = math.factorial(n)
    left = _merge(spec.variables,
                  _run_chunks(_accumulate_side, (n, identity, k, "left"), total, threads))
    right = _merge(spec.variables,
                   _run_chunks(_accumulate_side, (n, identity, k, "right"), total, threads))
    return left, right


def _get_identity(identity: str, k: int | None) -> Identity:
    if identity not in IDENTITIES:
        raise UnknownIdentity(identity)
    spec = IDENTITIES[identity]
    if spec.needs_k and k is None:
        raise ValueError(f"identity {identity} needs k")
    if spec.needs_k and k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return spec


def verify(identity: str, n: int, k: int | None = None, threads: int = 1,
           cap: int | None = None) -> VerificationReport:
    """
    Check a registered identity exhaustively at size n.

    Per-element identities stop at the first failing permutation in rank
    order; distribution identities report the first differing term.
    """
    spec = _get_identity(identity, k)
    _check_n(n, cap)
    if not spec.needs_k:
        k = None
    t0 = time.perf_counter()
    details: dict = {}
    counterexample = None
    if spec.kind == "distribution":
        left, right = identity_sides(identity, n, k, threads, cap)
        ok, diff = equal_distribution(left, right)
        details["terms"] = len(left.terms)
        counterexample = diff
    else:
        hits = _run_chunks(_first_failure, (n, identity, k), math.factorial(n), threads)
        failures = [r for r in hits if r is not None]
        ok = not failures
        if failures:
            counterexample = codes.inv_decode(rank_to_code(min(failures), n))
        elif identity == "bij_thm_i":
            collision, image = _maj_image_collision(n, k)
            details["image_size"] = image
            if collision is not None:
                ok, counterexample = False, collision
    return VerificationReport(identity, n, k, ok, counterexample,
                              time.perf_counter() - t0, details)
