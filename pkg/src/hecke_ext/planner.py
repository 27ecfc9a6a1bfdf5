"""Reduction of Ext^i between simple modules I(P, sigma, Q) to the supersingular case.

Simple roots are 0-based internally; JSON triples use 1-based indices.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .coxeter import is_finite_parabolic
from .errors import ParameterError


@dataclass(frozen=True)
class RootSystemData:
    name: str
    cartan: tuple  # cartan[i][j] = <alpha_i, alpha_j^vee>

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def delta(self) -> frozenset:
        return frozenset(range(self.rank))


@dataclass(frozen=True)
class SimpleModuleTriple:
    p_set: frozenset
    sigma_tag: str
    delta_sigma: frozenset
    q_set: frozenset
    supersingular: bool = True

    @classmethod
    def from_json(cls, obj) -> "SimpleModuleTriple":
        try:
            idx = lambda k: frozenset(int(a) - 1 for a in obj.get(k, []))
            return cls(idx("p_set"), str(obj.get("sigma_tag", "sigma")), idx("delta_sigma"), idx("q_set"),
                       bool(obj.get("supersingular", True)))
        except (TypeError, ValueError, AttributeError) as exc:
            raise ParameterError(f"malformed triple: {exc}") from None

    def to_json(self) -> dict:
        one = lambda S: sorted(a + 1 for a in S)
        return {
            "p_set": one(self.p_set),
            "sigma_tag": self.sigma_tag,
            "delta_sigma": one(self.delta_sigma),
            "q_set": one(self.q_set),
            "supersingular": self.supersingular,
        }


@dataclass
class ReductionPlan:
    outcome: str  # Zero | HomCase | SupersingularTarget
    reason: str = ""
    ambient: frozenset = frozenset()
    degree: int | None = None
    trace: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"outcome": self.outcome}
        if self.outcome == "Zero":
            out["reason"] = self.reason
        if self.outcome == "SupersingularTarget":
            out["ambient"] = sorted(a + 1 for a in self.ambient)
            out["degree"] = self.degree
        return out


# -- root systems -------------------------------------------------------------------


def _chain(n):
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
        if i + 1 < n:
            A[i][i + 1] = A[i + 1][i] = -1
    return A


def cartan_matrix(kind: str, n: int) -> list[list[int]]:
    if kind == "A" and n >= 1:
        return _chain(n)
    if kind in "BC" and n >= 2:
        A = _chain(n)
        # alpha_n is short in B_n and long in C_n
        if kind == "B":
            A[n - 2][n - 1] = -2
        else:
            A[n - 1][n - 2] = -2
        return A
    if kind == "D" and n >= 4:
        A = _chain(n)
        A[n - 2][n - 1] = A[n - 1][n - 2] = 0
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
        return A
    if kind == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    if kind == "F" and n == 4:
        A = _chain(4)
        A[1][2] = -2
        return A
    if kind == "E" and n in (6, 7, 8):
        A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            A[i][j] = A[j][i] = -1
        return A
    raise ParameterError(f"unknown root system type {kind}{n}")


def _coxeter_from_cartan(A) -> list[list[int]]:
    table = {0: 2, 1: 3, 2: 4, 3: 6}
    n = len(A)
    out = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                prod = A[i][j] * A[j][i]
                if prod not in table:
                    raise ParameterError(f"Cartan entries ({i},{j}) do not define a finite bond")
                out[i][j] = table[prod]
    return out


def root_system_violations(A) -> list[str]:
    n = len(A)
    out = []
    if any(len(r) != n for r in A):
        return ["Cartan matrix is not square"]
    for i in range(n):
        if A[i][i] != 2:
            out.append(f"diagonal entry {i + 1} is not 2")
        for j in range(n):
            if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                out.append(f"entries ({i + 1},{j + 1}) are not a valid off-diagonal pair")
    if out:
        return out
    try:
        M = _coxeter_from_cartan(A)
    except ParameterError as exc:
        return [str(exc)]
    if not is_finite_parabolic(M, range(n)):
        out.append("Cartan matrix is not of finite type")
    return out


def root_system(spec) -> RootSystemData:
    """A root system from a type string ("A2", "B_3", "E8") or an explicit Cartan matrix."""
    if isinstance(spec, str):
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", spec)
        if not m:
            raise ParameterError(f"cannot parse root system type {spec!r}")
        A = cartan_matrix(m.group(1).upper(), int(m.group(2)))
        name = m.group(1).upper() + m.group(2)
    else:
        A = [list(map(int, r)) for r in spec]
        name = "custom"
    bad = root_system_violations(A)
    if bad:
        raise ParameterError("invalid root system: " + "; ".join(bad))
    return RootSystemData(name, tuple(map(tuple, A)))


# -- triples and the reduction --------------------------------------------------------


def triple_violations(root: RootSystemData, t: SimpleModuleTriple) -> list[str]:
    out = []
    for name, S in (("p_set", t.p_set), ("delta_sigma", t.delta_sigma), ("q_set", t.q_set)):
        if not S <= root.delta:
            out.append(f"{name} has indices outside 1..{root.rank}")
    if out:
        return out
    if not t.p_set <= t.q_set:
        out.append("Delta_P is not contained in Delta_Q")
    if not t.q_set <= t.delta_sigma:
        out.append("Delta_Q is not contained in Delta(sigma)")
    for a in sorted(t.delta_sigma - t.p_set):
        if any(root.cartan[b][a] for b in t.p_set):
            out.append(f"root {a + 1} of Delta(sigma) is not orthogonal to Delta_P")
    return out


def check_triple(root, t) -> SimpleModuleTriple:
    bad = triple_violations(root, t)
    if bad:
        raise ParameterError("invalid triple: " + "; ".join(bad))
    return t


def sym_diff_degree(q1_set, q2_set) -> int:
    return len(set(q1_set) ^ set(q2_set))


def reduce_simple_ext(root: RootSystemData, t1: SimpleModuleTriple, t2: SimpleModuleTriple, i: int) -> ReductionPlan:
    check_triple(root, t1)
    check_triple(root, t2)
    if i < 0:
        raise ParameterError("degree must be nonnegative")
    trace = []

    def note(cond, ok, anchor):
        trace.append({"condition": cond, "verdict": "pass" if ok else "fail", "anchor": anchor})
        return ok

    if not note("P_1 = P_2", t1.p_set == t2.p_set, "central character"):
        return ReductionPlan("Zero", "central character", trace=trace)
    c1 = t2.q_set <= t1.delta_sigma
    c2 = t1.delta_sigma <= t1.q_set | t2.delta_sigma
    note("Delta_Q2 in Delta(sigma_1)", c1, "removing parabolic induction")
    if not note("Delta(sigma_1) in Delta_Q1 u Delta(sigma_2)", c2, "removing parabolic induction") or not c1:
        return ReductionPlan("Zero", "parabolic induction conditions", trace=trace)
    ambient = t1.delta_sigma & t2.delta_sigma
    q1 = t1.q_set & t2.delta_sigma
    q2 = t2.q_set
    r = sym_diff_degree(q1 & ambient, q2 & ambient)
    trace.append({
        "condition": f"reduce to Delta' = {sorted(a + 1 for a in ambient)}, P(sigma_i) = Delta' assumed; r = {r}",
        "verdict": "pass",
        "anchor": "steinberg degree shift",
    })
    d = i - r
    if d < 0:
        note(f"i - r = {d} >= 0", False, "steinberg degree shift")
        return ReductionPlan("Zero", f"negative degree after shift (r = {r} > i = {i})", trace=trace)
    note(f"i - r = {d} >= 0", True, "steinberg degree shift")
    if d == 0:
        return ReductionPlan("HomCase", trace=trace)
    return ReductionPlan("SupersingularTarget", ambient=ambient, degree=d, trace=trace)


def all_triples(root: RootSystemData, delta_sigma=None):
    """Every valid triple with the given Delta(sigma) (default: all of Delta)."""
    ds = root.delta if delta_sigma is None else frozenset(delta_sigma)
    items = sorted(ds)
    subsets = [frozenset(a for k, a in enumerate(items) if mask >> k & 1) for mask in range(1 << len(items))]
    out = []
    for P in subsets:
        for Q in subsets:
            t = SimpleModuleTriple(P, "sigma", ds, Q)
            if not triple_violations(root, t):
                out.append(t)
    return out
