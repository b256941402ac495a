"""Closed-form repair-bandwidth and storage bounds.

Every function evaluates one closed-form bound; `bound_report` evaluates all
of them for a parameter tuple, checking each formula's stated precondition
and marking it inapplicable (with the reason) instead of guessing outside
its range.  Rational sub-expressions are evaluated with Fraction before any
float enters, and logs are base-2 64-bit reals; callers comparing values
should allow 1e-9.

Symbols: n nodes, m the determination threshold (any m coordinates rebuild
a codeword), d the helper count, q the symbol alphabet, p the subfield the
downloads live in, l the dimension of the linearized map's kernel, bits
= log2(q) the stored bits per node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction


def cutset_bound(d: int, m: int, bits: float) -> float:
    """Flow bound for MSR-style repair: B >= d * bits / (d - m + 1)."""
    if m < 1 or d < m:
        raise ValueError(f"requires d >= m >= 1, got d={d}, m={m}")
    return float(Fraction(d, d - m + 1)) * bits


def naive_bounds(n: int, delta: int, delta_perp: int, bits: float) -> tuple[float, float]:
    """(privacy bound, reconstruction bound).

    Privacy: B >= delta_perp - 2 + bits; any fewer sub-symbol downloads leave
    the secret coordinate uniformly distributed.  Reconstruction:
    B >= n - delta + 1 (at least one bit per node that can matter), clamped
    at zero for degenerate codes.
    """
    if not (1 <= delta <= n + 1) or not (1 <= delta_perp <= n + 1):
        raise ValueError("distances must lie in [1, n+1]")
    return float(delta_perp - 2 + bits), float(max(0, n - delta + 1))


def linear_repair_lb(n: int, delta_perp: int) -> float:
    """Lower bound for any subfield-linear repair: (n-1) * log2((n-1)/(delta_perp-1))."""
    if delta_perp < 2:
        raise ValueError(f"requires dual distance >= 2, got {delta_perp}")
    return (n - 1) * math.log2(Fraction(n - 1, delta_perp - 1))


def linear_repair_lb_ag(n: int, k: int, genus: int) -> float:
    """The same bound with the designed dual distance n - k + genus - 2 plugged in."""
    dp = n - k + genus - 2
    if dp < 1:
        raise ValueError("designed dual distance term must be >= 1")
    return (n - 1) * math.log2(Fraction(n - 1, dp))


def linear_repair_lb_asymptotic(n: int, q: int, tau: float) -> float:
    """Asymptote of the linear-repair bound in the rate regime
    eps = 2**((tau - 1/2) * log2 q): B >~ (n-1) * (1/2 - tau) * log2 q."""
    return (n - 1) * (0.5 - tau) * math.log2(q)


def weak_ag_bandwidth(d: int, q: int, genus: int, l: int, p: int) -> float:
    """Weak repair over any curve: B = d*log2 q - (d - genus)*l*log2 p."""
    return d * math.log2(q) - (d - genus) * l * math.log2(p)


def tower_bandwidth(d: int, q: int, e: int, l: int, p: int) -> float:
    """Weak repair on the recursive-tower codes: genus term is q**(e/2)."""
    g = _tower_genus(q, e)
    return d * math.log2(q) - (d - g) * l * math.log2(p)


def _tower_genus(q: int, e: int) -> int:
    root = math.isqrt(q)
    if root * root != q:
        raise ValueError(f"tower codes need a square field size, got q={q}")
    return root ** e


def msr_storage(rate: Fraction | float, q: int) -> float:
    """Per-node storage an MSR code of the same length and rate needs:
    rate / (rate + 1/sqrt(q)) * log2 q.  Exact when sqrt(q) is an integer."""
    root = math.isqrt(q)
    if root * root != q:
        raise ValueError(f"needs a square field size, got q={q}")
    r = Fraction(rate).limit_denominator(10 ** 9) if not isinstance(rate, Fraction) else rate
    return float(r / (r + Fraction(1, root))) * math.log2(q)


def tower_full_bandwidth(n: int, q: int, eps: float) -> float:
    """Full-helper bandwidth of the rate-(1-eps) tower construction:
    (n-1) * (log2(q)/2 + log2(1/eps))."""
    return (n - 1) * (math.log2(q) / 2 + math.log2(1 / eps))


def tower_full_interval(q: int, p: int) -> tuple[float, float]:
    """Validity interval (p/(sqrt(q)-1), 1 - 1/(sqrt(q)-1)) for the rate gap eps.

    May be empty for small q; `bound_report` reports the formula as
    inapplicable in that case rather than extrapolating.
    """
    root = math.isqrt(q)
    if root * root != q:
        raise ValueError(f"needs a square field size, got q={q}")
    return p / (root - 1), 1 - 1 / (root - 1)


def strong_bandwidth(d: int, q: int, l: int, p: int) -> float:
    """Strong repair (RS, or Hermitian from d helpers): B = d*(log2 q - l*log2 p)."""
    return d * (math.log2(q) - l * math.log2(p))


def hermitian_full_bandwidth(n: int, q: int, l: int, p: int) -> float:
    """Hermitian code on all r**3 points, full helper set:
    B = (n-1)*(log2 q - l*log2 p)."""
    return (n - 1) * (math.log2(q) - l * math.log2(p))


def rs_subfield_bandwidth(n: int, p: int) -> float:
    """Full-length RS with the largest proper kernel: B = (n-1)*log2 p."""
    return (n - 1) * math.log2(p)


def rs_ag_comparison(q: int, eps: float) -> dict:
    """The fixed-rate comparison table: RS over a growing alphabet versus a
    tower code over the constant alphabet GF(q), both at rate 1 - eps.

    Per-helper bits: RS side log2(1/eps); AG side (log2 q + log2(1/eps))/2.
    Note the AG figure halves the whole sum, where `tower_full_bandwidth`
    halves only the alphabet term; this is the benchmark variant.
    """
    rs = math.log2(1 / eps)
    ag = (math.log2(q) + math.log2(1 / eps)) / 2
    return {
        "rs_bits_per_helper": rs,
        "ag_bits_per_helper": ag,
        "ratio": ag / rs,
    }


@dataclass
class BoundReport:
    """Named bound evaluations for one parameter tuple.

    values maps output name -> float; inapplicable maps output name ->
    human-readable reason (missing inputs or a violated precondition).
    """

    inputs: dict
    values: dict = dc_field(default_factory=dict)
    inapplicable: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "values": self.values,
            "inapplicable": self.inapplicable,
        }

    def rows(self):
        """(name, value, status, reason) rows with stable ordering."""
        out = []
        for name in sorted(self.values):
            out.append((name, self.values[name], "ok", ""))
        for name in sorted(self.inapplicable):
            out.append((name, "", "inapplicable", self.inapplicable[name]))
        return out


_REPORT_INPUTS = (
    "n", "m", "d", "q", "p", "l", "genus", "e",
    "delta", "delta_perp", "eps", "tau", "rate", "k",
)


def bound_report(**config) -> BoundReport:
    """Evaluate every applicable bound for the given parameters.

    Accepted keys: n, m, d, q, p, l, genus, e, delta, delta_perp, eps, tau,
    rate, k.  Unknown keys are rejected; each output is computed when its
    inputs are present and its precondition holds.
    """
    unknown = set(config) - set(_REPORT_INPUTS)
    if unknown:
        raise ValueError(f"unknown parameters: {sorted(unknown)}")
    c = dict(config)
    report = BoundReport(inputs=c)

    def have(*keys):
        return all(c.get(k) is not None for k in keys)

    def emit(name, fn, *keys, pre=None):
        if not have(*keys):
            report.inapplicable[name] = f"missing inputs: {[k for k in keys if c.get(k) is None]}"
            return
        if pre is not None:
            reason = pre()
            if reason:
                report.inapplicable[name] = reason
                return
        try:
            report.values[name] = fn()
        except ValueError as exc:
            report.inapplicable[name] = str(exc)

    bits = math.log2(c["q"]) if c.get("q") else None
    root = math.isqrt(c["q"]) if c.get("q") else 0
    square = bool(c.get("q")) and root * root == c["q"]

    emit("cutset", lambda: cutset_bound(c["d"], c["m"], bits), "d", "m", "q")
    emit(
        "privacy_naive",
        lambda: naive_bounds(c["n"], c["delta"], c["delta_perp"], bits)[0],
        "n", "delta", "delta_perp", "q",
    )
    emit(
        "reconstruction_naive",
        lambda: naive_bounds(c["n"], c["delta"], c["delta_perp"], bits)[1],
        "n", "delta", "delta_perp", "q",
    )
    emit("linear_repair", lambda: linear_repair_lb(c["n"], c["delta_perp"]), "n", "delta_perp")
    emit("linear_repair_ag", lambda: linear_repair_lb_ag(c["n"], c["k"], c["genus"]), "n", "k", "genus")
    emit(
        "linear_repair_asymptotic",
        lambda: linear_repair_lb_asymptotic(c["n"], c["q"], c["tau"]),
        "n", "q", "tau",
    )

    def weak_pre():
        rho = (c["p"] ** c["l"] - 1) * (c["genus"] + 1)
        if not 2 * c["genus"] <= c["m"] <= c["d"] - rho:
            return (
                f"requires 2*genus <= m <= d - (p**l - 1)*(genus + 1): "
                f"m={c['m']}, d={c['d']}, genus={c['genus']}, rho={rho}"
            )
        return None

    emit(
        "weak_ag",
        lambda: weak_ag_bandwidth(c["d"], c["q"], c["genus"], c["l"], c["p"]),
        "d", "q", "genus", "l", "p", "m",
        pre=weak_pre,
    )

    def tower_pre():
        if not square:
            return f"q={c['q']} is not a perfect square"
        g = root ** c["e"]
        rho = (c["p"] ** c["l"] - 1) * (g + 1)
        if c["p"] ** c["l"] > c["q"]:
            return f"requires l <= log_p q: p**l={c['p'] ** c['l']}, q={c['q']}"
        if not 2 * g <= c["m"] <= c["d"] - rho:
            return (
                f"requires 2*q**(e/2) <= m <= d - (p**l - 1)*(q**(e/2) + 1): "
                f"m={c['m']}, d={c['d']}, q**(e/2)={g}"
            )
        return None

    emit(
        "tower",
        lambda: tower_bandwidth(c["d"], c["q"], c["e"], c["l"], c["p"]),
        "d", "q", "e", "l", "p", "m",
        pre=tower_pre,
    )
    emit("msr_storage_equiv", lambda: msr_storage(c["rate"], c["q"]), "rate", "q")

    def tower_full_pre():
        if not square:
            return f"q={c['q']} is not a perfect square"
        lo, hi = tower_full_interval(c["q"], c["p"])
        if not lo < c["eps"] < hi:
            return f"eps={c['eps']} outside the validity interval ({lo:.4g}, {hi:.4g})"
        return None

    emit(
        "tower_full",
        lambda: tower_full_bandwidth(c["n"], c["q"], c["eps"]),
        "n", "q", "eps", "p",
        pre=tower_full_pre,
    )

    def rs_strong_pre():
        if c.get("n") is not None and c["n"] > c["q"]:
            return f"RS length cannot exceed the alphabet: n={c['n']}, q={c['q']}"
        if c["m"] > c["d"] - c["p"] ** c["l"] + 1:
            return f"requires m <= d - p**l + 1: m={c['m']}, d={c['d']}, p**l={c['p'] ** c['l']}"
        return None

    emit(
        "rs_strong",
        lambda: strong_bandwidth(c["d"], c["q"], c["l"], c["p"]),
        "d", "q", "l", "p", "m",
        pre=rs_strong_pre,
    )

    def hermitian_strong_pre():
        if not square:
            return f"q={c['q']} is not a perfect square"
        rho = (c["p"] ** c["l"] - 1) * (root + 1)
        if c["m"] > c["d"] - rho:
            return f"requires m <= d - (p**l - 1)*(r + 1): m={c['m']}, d={c['d']}, rho={rho}"
        return None

    emit(
        "hermitian_strong",
        lambda: strong_bandwidth(c["d"], c["q"], c["l"], c["p"]),
        "d", "q", "l", "p", "m",
        pre=hermitian_strong_pre,
    )

    def hermitian_full_pre():
        if not square:
            return f"q={c['q']} is not a perfect square"
        rho = (c["p"] ** c["l"] - 1) * (root + 1)
        bound = c["n"] + root * (root - 1) - 2 - rho
        if c["m"] > bound:
            return f"requires m <= n + r*(r-1) - 2 - (p**l - 1)*(r + 1): m={c['m']}, bound={bound}"
        return None

    emit(
        "hermitian_full",
        lambda: hermitian_full_bandwidth(c["n"], c["q"], c["l"], c["p"]),
        "n", "q", "l", "p", "m",
        pre=hermitian_full_pre,
    )

    def rs_subfield_pre():
        if c["n"] != c["q"]:
            return f"requires n = q: n={c['n']}, q={c['q']}"
        if c["m"] * c["p"] > c["n"] * (c["p"] - 1):
            return f"requires m <= n*(1 - 1/p): m={c['m']}, n={c['n']}, p={c['p']}"
        return None

    emit(
        "rs_subfield",
        lambda: rs_subfield_bandwidth(c["n"], c["p"]),
        "n", "p", "q", "m",
        pre=rs_subfield_pre,
    )

    return report
