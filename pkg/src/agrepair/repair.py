"""The sub-symbol repair protocol.

To repair coordinate i of a codeword from helper set S, the scheme fixes a
linearized map L with kernel V (dimension l over the base subfield GF(p))
and a function h_i vanishing at point i, and tabulates

    h_(i,u) = L(zeta_u * h_i) / (c * h_i)          u = 1..t

evaluated over the helpers, where c normalises h_(i,u)(P_i) = zeta_u exactly
(the raw quotient evaluates to c * zeta_u at zeros of h_i, c being the
product of -v over nonzero v in V; dividing by c is what makes the
reconstruction identity below hold verbatim).  Away from zeros of h_i the
values lie in a common scalar multiple of the image of L, so each helper's
value column spans only t - l dimensions over GF(p): helper j sends the traces

    Tr(w_j * h_(i,v)(P_j) * f(P_j))        v in J_j

for an independent index set J_j of size b_j = dim span{h_(i,u)(P_j)}_u,
where w is a dual-code vector supported on S + {i} scaled to w_i = 1.  The
remaining traces are GF(p)-combinations of the downloaded ones, and

    Tr(zeta_u * f(P_i)) = - sum_j Tr(w_j * h_(i,u)(P_j) * f(P_j))

rebuilds f(P_i) through its trace representation.  Helpers where w_j = 0
contribute nothing and are pruned when the scheme is built.

Variants:
  "rs"              h_i = x - a_i; every b_j = t - l (strong).
  "hermitian-line"  h_i = the vanishing line at P_i; strong.  With the full
                    helper set on all r**3 points the all-ones dual vector
                    is used, which relaxes the pole-degree precondition.
  "hermitian-weak"  h_i = a generic vanishing function with pole budget
                    genus+1; helpers at its extra zeros send full symbols,
                    so only the total bandwidth is bounded (weak).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .codes import (
    DualVectorError,
    EvalCode,
    augmented_generator,
    dual_support_vector,
    vanishing_function,
    vanishing_line,
)
from .gf import FieldElement, LinearizedMap

VARIANT_RS = "rs"
VARIANT_LINE = "hermitian-line"
VARIANT_WEAK = "hermitian-weak"


class RepairPreconditionError(Exception):
    """A degree inequality required by the chosen variant is violated."""


@dataclass(frozen=True, eq=False)
class RepairScheme:
    code: EvalCode
    target: int
    helpers: tuple           # requested helper set S
    variant: str
    lin: LinearizedMap
    w: np.ndarray            # dual vector over all n positions, w[target] = 1
    active: tuple            # helpers with nonzero dual weight, ascending
    pruned: tuple            # helpers with zero dual weight (download nothing)
    table: np.ndarray        # (t, n) values of h_(i,u) at every position
    mu: dict                 # j -> (b_j,) coefficient codes w_j * h_(i,v)(P_j)
    expand: dict             # j -> (t, b_j) GF(p) codes writing row u over J_j
    counts: dict             # j -> b_j
    extra_zeros: tuple       # weak variant: helpers where h_i vanishes

    @property
    def t(self) -> int:
        return self.code.tower.t

    @property
    def l(self) -> int:
        return self.lin.l

    def bits_per_symbol(self) -> float:
        return math.log2(self.code.tower.p)


@dataclass(frozen=True)
class RepairTranscript:
    """What actually crossed the wire for one repair."""

    target: int
    responses: dict          # j -> tuple of downloaded GF(p) codes
    symbol_counts: dict      # j -> number of downloaded subfield symbols
    total_symbols: int
    total_bits: float


def _pole_step(code: EvalCode, variant: str) -> int:
    """Pole degree consumed by one factor of the linearized product."""
    if variant == VARIANT_RS:
        return 1
    if variant == VARIANT_LINE:
        return code.curve.r + 1
    return code.genus + 1


def _check_precondition(code: EvalCode, d: int, l: int, variant: str, full_support: bool):
    p = code.tower.p
    rho = (p ** l - 1) * _pole_step(code, variant)
    s = code.s
    if variant == VARIANT_RS:
        if s > d - (p ** l - 1):
            raise RepairPreconditionError(
                f"requires s <= d - (p**l - 1): s={s}, d={d}, p**l-1={p ** l - 1}"
            )
    elif variant == VARIANT_LINE and full_support:
        # full helper set over all r**3 points: the all-ones dual vector
        # (residues of dx/(x**q - x)) relaxes the degree budget
        bound = code.n + 2 * code.genus - 2 - rho
        if s > bound:
            raise RepairPreconditionError(
                f"requires s <= n + 2*genus - 2 - (p**l - 1)*(r + 1): s={s}, bound={bound}"
            )
    elif variant == VARIANT_LINE:
        if s > d - rho:
            raise RepairPreconditionError(
                f"requires s <= d - (p**l - 1)*(r + 1): s={s}, d={d}, rho={rho}"
            )
    else:
        if s > d - rho:
            raise RepairPreconditionError(
                f"requires s <= d - (p**l - 1)*(genus + 1): s={s}, d={d}, rho={rho}"
            )
    return rho


def _full_support(code: EvalCode, helpers) -> bool:
    """True when every other node helps and the point set is complete
    (all r**3 affine points, or the whole field for RS)."""
    if len(helpers) != code.n - 1:
        return False
    if code.kind == "hermitian":
        return code.n == code.curve.r ** 3
    return code.n == code.tower.q and np.array_equal(
        np.sort(code.points), np.arange(code.tower.q)
    )


def build_scheme(
    code: EvalCode,
    target: int,
    helpers=None,
    l: int = 1,
    variant: str | None = None,
    v_basis=None,
    dual_vector=None,
) -> RepairScheme:
    """Plan the repair of `target` from `helpers` (default: all other nodes)."""
    tw = code.tower
    n = code.n
    if not 0 <= target < n:
        raise ValueError(f"target {target} out of range")
    if helpers is None:
        helpers = [j for j in range(n) if j != target]
    helpers = sorted(int(j) for j in helpers)
    if not helpers:
        raise ValueError("helper set is empty")
    if target in helpers or len(set(helpers)) != len(helpers):
        raise ValueError("helpers must be distinct and exclude the target")
    if max(helpers) >= n or min(helpers) < 0:
        raise ValueError("helper index out of range")

    if variant is None:
        variant = VARIANT_RS if code.kind == "rs" else VARIANT_LINE
    if variant not in (VARIANT_RS, VARIANT_LINE, VARIANT_WEAK):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == VARIANT_RS and code.kind != "rs":
        raise ValueError("rs variant needs an RS code")
    if variant != VARIANT_RS and code.kind != "hermitian":
        raise ValueError(f"{variant} needs a Hermitian code")

    if v_basis is None:
        v_basis = tw.theta[:l]
    lin = LinearizedMap(tw, v_basis)
    if lin.l != l:
        raise ValueError("v_basis dimension disagrees with l")

    d = len(helpers)
    full_support = _full_support(code, helpers)
    all_ones = (variant == VARIANT_LINE and full_support) or (
        variant == VARIANT_RS
        and full_support
        and code.s + (tw.p ** l - 1) <= code.n - 2
    )
    rho = _check_precondition(code, d, l, variant, full_support)

    # h_i values at every position
    extra_zeros: tuple = ()
    if variant == VARIANT_RS:
        h_vals = tw.sub_arr(code.points, int(code.points[target]))
    elif variant == VARIANT_LINE:
        a, b = code.points[target]
        h_vals = vanishing_line(code.curve, (int(a), int(b))).values(code.points)
    else:
        h_vals, zero_set = vanishing_function(code, target)
        extra_zeros = tuple(j for j in zero_set if j in set(helpers))

    # value table of h_(i,u) = zeta_u * Q(zeta_u * h_i) / c over all positions
    inv_c = tw.inv(lin.c)
    rows = []
    for zu in tw.zeta:
        scaled = tw.mul_arr(np.int64(zu), h_vals)
        rows.append(tw.mul_arr(np.int64(tw.mul(zu, inv_c)), lin.quotient_arr(scaled)))
    table = np.stack(rows)
    if not np.array_equal(table[:, target], np.asarray(tw.zeta)):
        raise AssertionError("normalisation failed: h_(i,u)(P_i) != zeta_u")

    # dual vector, scaled to w[target] = 1
    if dual_vector is not None:
        w = np.asarray(dual_vector, dtype=np.int64).copy()
        if w[target] == 0:
            raise DualVectorError("supplied dual vector vanishes at the target")
        outside = [j for j in range(n) if j != target and j not in set(helpers) and w[j] != 0]
        if outside:
            raise DualVectorError(f"supplied dual vector has support outside S+{{i}}: {outside}")
    elif all_ones:
        w = np.ones(n, dtype=np.int64)
    else:
        w = dual_support_vector(augmented_generator(code, rho), tw, target, helpers)
    w_i = int(w[target])
    if w_i != 1:
        w = tw.mul_arr(w, tw.inv(w_i))

    active = tuple(j for j in helpers if w[j] != 0)
    pruned = tuple(j for j in helpers if w[j] == 0)

    # per-helper independent index sets, expansion coefficients, multipliers
    t = tw.t
    mu: dict[int, np.ndarray] = {}
    expand: dict[int, np.ndarray] = {}
    counts: dict[int, int] = {}
    for j in active:
        digits = tw.digits_arr(table[:, j])  # (t, t) GF(p) codes, row u
        chosen: list[int] = []
        for u in range(t):
            if linalg.rank(tw, digits[chosen + [u]]) > len(chosen):
                chosen.append(u)
        basis = digits[chosen]
        lam = np.zeros((t, len(chosen)), dtype=np.int64)
        for u in range(t):
            if u in chosen:
                lam[u, chosen.index(u)] = 1
                continue
            sol = linalg.solve(tw, basis.T, digits[u])
            if sol is None:
                raise AssertionError("expansion over the chosen basis failed")
            lam[u] = sol
        mu[j] = np.asarray(
            [tw.mul(int(w[j]), int(table[v, j])) for v in chosen], dtype=np.int64
        )
        expand[j] = lam
        counts[j] = len(chosen)

    return RepairScheme(
        code=code,
        target=target,
        helpers=tuple(helpers),
        variant=variant,
        lin=lin,
        w=w,
        active=active,
        pruned=pruned,
        table=table,
        mu=mu,
        expand=expand,
        counts=counts,
        extra_zeros=extra_zeros,
    )


def helper_response(scheme: RepairScheme, j: int, symbol) -> tuple:
    """The GF(p) sub-symbols node j sends for its stored symbol.

    Deterministic order (ascending chosen index).  Pruned helpers are asked
    for nothing and return an empty tuple.
    """
    if j not in scheme.helpers:
        raise ValueError(f"node {j} is not in the helper set")
    if j not in scheme.mu:
        return ()
    tw = scheme.code.tower
    sym = symbol.code if isinstance(symbol, FieldElement) else int(symbol)
    return tuple(tw.trace(tw.mul(int(m), sym)) for m in scheme.mu[j])


def reconstruct(scheme: RepairScheme, responses) -> FieldElement:
    """Rebuild the lost symbol from the helpers' sub-symbol lists."""
    tw = scheme.code.tower
    t = tw.t
    traces = []
    for u in range(t):
        acc = 0
        for j in scheme.active:
            if j not in responses:
                raise ValueError(f"missing response from helper {j}")
            resp = responses[j]
            if len(resp) != scheme.counts[j]:
                raise ValueError(f"helper {j} sent {len(resp)} symbols, expected {scheme.counts[j]}")
            lam = scheme.expand[j][u]
            for v_idx, val in enumerate(resp):
                if lam[v_idx]:
                    acc = tw.add(acc, tw.mul(int(lam[v_idx]), int(val)))
        traces.append(tw.neg(acc))
    out = 0
    for a_u, th in zip(traces, tw.theta):
        out = tw.add(out, tw.mul(a_u, th))
    return FieldElement(tw, out)


def run_repair(scheme: RepairScheme, symbols) -> tuple[FieldElement, RepairTranscript]:
    """Execute the protocol against a stored codeword (symbol codes, length n).

    Each helper sees only its own coordinate; the target coordinate is never
    read.  Returns the rebuilt symbol and the download transcript.
    """
    symbols = np.asarray(symbols, dtype=np.int64)
    responses = {j: helper_response(scheme, j, int(symbols[j])) for j in scheme.active}
    value = reconstruct(scheme, responses)
    counts = {j: len(r) for j, r in responses.items()}
    total = sum(counts.values())
    transcript = RepairTranscript(
        target=scheme.target,
        responses=responses,
        symbol_counts=counts,
        total_symbols=total,
        total_bits=total * scheme.bits_per_symbol(),
    )
    return value, transcript


def bandwidth(scheme: RepairScheme) -> tuple[int, float]:
    """(total subfield symbols downloaded, total bits) for one repair."""
    symbols = sum(scheme.counts.values())
    return symbols, symbols * scheme.bits_per_symbol()


def bound_symbols(scheme: RepairScheme) -> int:
    """The variant's bandwidth formula, in subfield symbols.

    Strong variants: d * (t - l) with d = |S|.  Weak variant:
    genus * t + (d - genus) * (t - l).
    """
    d = len(scheme.helpers)
    t, l = scheme.t, scheme.l
    if scheme.variant == VARIANT_WEAK:
        g = scheme.code.genus
        return g * t + (d - g) * (t - l)
    return d * (t - l)


def trivial_symbols(scheme: RepairScheme) -> int:
    """Subfield symbols a naive repair downloads: threshold whole symbols."""
    return scheme.code.threshold * scheme.t


def scheme_to_json(scheme: RepairScheme) -> dict:
    """JSON-ready view of a scheme: field elements as digit vectors
    (least-significant first), chosen index sets as plain lists."""
    tw = scheme.code.tower

    def dig(v):
        return list(tw.digits(int(v)))

    chosen = {j: _chosen_u_indices(scheme, j) for j in scheme.active}
    return {
        "variant": scheme.variant,
        "target": scheme.target,
        "helpers": list(scheme.helpers),
        "pruned": list(scheme.pruned),
        "l": scheme.l,
        "v_basis": [dig(v) for v in scheme.lin.v_basis],
        "normaliser": dig(scheme.lin.c),
        "dual_vector": {int(j): dig(scheme.w[j]) for j in scheme.active},
        "value_table": {int(j): [dig(scheme.table[u, j]) for u in range(scheme.t)]
                        for j in scheme.active},
        "chosen_indices": {int(j): chosen[j] for j in scheme.active},
        "expansion": {int(j): scheme.expand[j].tolist() for j in scheme.active},
        "per_helper_symbols": {int(j): scheme.counts[j] for j in scheme.active},
    }


def _chosen_u_indices(scheme: RepairScheme, j: int) -> list:
    tw = scheme.code.tower
    out = []
    for v in range(scheme.counts[j]):
        val = tw.div(int(scheme.mu[j][v]), int(scheme.w[j]))
        out.append(next(u for u in range(scheme.t) if int(scheme.table[u, j]) == val))
    return out


def transcript_to_json(transcript: RepairTranscript) -> dict:
    return {
        "target": transcript.target,
        "responses": {int(j): [int(v) for v in resp]
                      for j, resp in sorted(transcript.responses.items())},
        "symbol_counts": {int(j): c for j, c in sorted(transcript.symbol_counts.items())},
        "total_symbols": transcript.total_symbols,
        "total_bits": transcript.total_bits,
    }


def bandwidth_survey(code: EvalCode, l: int, variant: str, d: int | None = None,
                     trials: int = 50, seed: int = 0):
    """Max measured bandwidth over repair instances.

    Exhaustive over all targets with the full helper set when d is None;
    otherwise samples `trials` random (target, S) pairs of helper size d.
    Returns (max_symbols, instances_checked).
    """
    rng = np.random.default_rng(seed)
    best = 0
    checked = 0
    if d is None or d == code.n - 1:
        targets = range(code.n)
        for i in targets:
            scheme = build_scheme(code, i, l=l, variant=variant)
            best = max(best, bandwidth(scheme)[0])
            checked += 1
    else:
        for _ in range(trials):
            i = int(rng.integers(code.n))
            others = np.asarray([j for j in range(code.n) if j != i])
            sel = rng.choice(others, size=d, replace=False)
            scheme = build_scheme(code, i, helpers=sel.tolist(), l=l, variant=variant)
            best = max(best, bandwidth(scheme)[0])
            checked += 1
    return best, checked
