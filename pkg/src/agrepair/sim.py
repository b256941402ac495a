"""In-memory storage cluster: one GF(q) symbol per node per stripe.

A Cluster holds the code, the encoded stripes, and at most one failed node
whose symbols are withheld from the repair path but kept privately so the
outcome can be verified.  State round-trips through a versioned JSON file
in which every field element appears as its base-p digit list
(least-significant digit first), so files are portable across runs.

Helpers never see anything beyond (scheme, their index, their own symbol);
the download accounting in the transcripts is therefore the real traffic.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from . import codes, repair
from .gf import FieldTower, tower

SCHEMA_VERSION = 1


class StateFormatError(ValueError):
    pass


@dataclass
class Cluster:
    code: codes.EvalCode
    stripes: np.ndarray        # (num_stripes, k) message codes
    nodes: np.ndarray          # (num_stripes, n) stored symbol codes
    seed: int
    failed: int | None = None
    withheld: np.ndarray | None = None  # (num_stripes,) codes of the failed node

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def num_stripes(self) -> int:
        return self.stripes.shape[0]


@dataclass
class ExperimentRecord:
    """Outcome of repairing one stripe's failed symbol."""

    stripe: int
    target: int
    helper_count: int
    symbols: int
    bits: float
    bound_bits: float
    equal: bool
    wall_time: float
    transcript: repair.RepairTranscript | None = None

    def summary(self) -> dict:
        return {
            "stripe": self.stripe,
            "target": self.target,
            "helper_count": self.helper_count,
            "symbols": self.symbols,
            "bits": self.bits,
            "bound_bits": self.bound_bits,
            "equal": self.equal,
            "wall_time": self.wall_time,
        }


def make_cluster(code: codes.EvalCode, num_stripes: int, seed: int) -> Cluster:
    rng = np.random.default_rng(np.random.PCG64(seed))
    msgs = rng.integers(0, code.tower.q, size=(num_stripes, code.k), dtype=np.int64)
    return Cluster(
        code=code,
        stripes=msgs,
        nodes=codes.encode_many(code, msgs),
        seed=seed,
    )


def fail_node(cluster: Cluster, node: int) -> None:
    if cluster.failed is not None:
        raise ValueError(f"node {cluster.failed} is already failed")
    if not 0 <= node < cluster.n:
        raise ValueError(f"node {node} out of range")
    cluster.withheld = cluster.nodes[:, node].copy()
    cluster.nodes[:, node] = 0
    cluster.failed = node


def repair_failed(
    cluster: Cluster,
    l: int = 1,
    variant: str | None = None,
    helpers=None,
) -> list[ExperimentRecord]:
    """Run the repair protocol for every stripe, restore the node, report.

    The scheme only ever reads helper coordinates; the withheld symbols are
    used solely for the pass/fail comparison.
    """
    if cluster.failed is None:
        raise ValueError("nothing to repair: no node has failed")
    target = cluster.failed
    scheme = repair.build_scheme(cluster.code, target, helpers=helpers, l=l, variant=variant)
    bound_bits = repair.bound_symbols(scheme) * scheme.bits_per_symbol()
    records = []
    for sidx in range(cluster.num_stripes):
        t0 = time.perf_counter()
        value, transcript = repair.run_repair(scheme, cluster.nodes[sidx])
        wall = time.perf_counter() - t0
        truth = int(cluster.withheld[sidx])
        records.append(
            ExperimentRecord(
                stripe=sidx,
                target=target,
                helper_count=len(scheme.helpers),
                symbols=transcript.total_symbols,
                bits=transcript.total_bits,
                bound_bits=bound_bits,
                equal=value.code == truth,
                wall_time=wall,
                transcript=transcript,
            )
        )
        cluster.nodes[sidx, target] = value.code
    cluster.failed = None
    cluster.withheld = None
    return records


def verify_cluster(cluster: Cluster) -> bool:
    """Cross-check every stored stripe against erasure decoding.

    Decodes each stripe from a threshold-sized coordinate subset avoiding
    the failed node (if any) and compares with what the nodes hold.
    """
    avoid = cluster.failed
    positions = [j for j in range(cluster.n) if j != avoid][: max(cluster.code.threshold, 1)]
    if len(positions) < cluster.code.threshold:
        return False
    decoded = codes.erasure_decode_many(cluster.code, positions, cluster.nodes[:, positions])
    live = [j for j in range(cluster.n) if j != avoid]
    return bool(np.array_equal(decoded[:, live], cluster.nodes[:, live]))


# ----------------------------------------------------------------------
# JSON state files
# ----------------------------------------------------------------------


def _digit_list(tw: FieldTower, code_val: int) -> list[int]:
    return list(tw.digits(int(code_val)))


def _digit_matrix(tw: FieldTower, arr: np.ndarray) -> list:
    return [[_digit_list(tw, v) for v in row] for row in arr]


def _code_payload(code: codes.EvalCode) -> dict:
    tw = code.tower
    payload = {
        "kind": code.kind,
        "p": tw.p,
        "t": tw.t,
        "s": code.s,
        "monomials": [list(m) if isinstance(m, tuple) else m for m in code.monomials],
    }
    if code.kind == "rs":
        payload["points"] = [_digit_list(tw, v) for v in code.points]
    else:
        payload["r"] = code.curve.r
        payload["points"] = [
            [_digit_list(tw, a), _digit_list(tw, b)] for a, b in code.points
        ]
    return payload


def _undigit(tw: FieldTower, digits) -> int:
    digits = list(digits)
    if len(digits) != tw.t or any(not 0 <= int(d) < tw.p for d in digits):
        raise StateFormatError(f"invalid digit vector {digits} for GF({tw.q})")
    return tw.from_digits(digits)


def _code_from_payload(payload: dict) -> codes.EvalCode:
    tw = tower(int(payload["p"]), int(payload["t"]))
    if payload["kind"] == "rs":
        pts = np.asarray([_undigit(tw, d) for d in payload["points"]], dtype=np.int64)
        return codes.rs_code(tw, k=int(payload["s"]) + 1, points=pts)
    curve = codes.hermitian_curve(tw)
    pts = [(_undigit(tw, a), _undigit(tw, b)) for a, b in payload["points"]]
    n = len(pts)
    code = codes.hermitian_code(curve, s=int(payload["s"]), n=n)
    if [tuple(pt) for pt in code.points.tolist()] != pts:
        raise StateFormatError("stored point list does not match the canonical enumeration")
    return code


def save_cluster(path, cluster: Cluster) -> None:
    tw = cluster.code.tower
    state = {
        "schema_version": SCHEMA_VERSION,
        "code": _code_payload(cluster.code),
        "seed": cluster.seed,
        "stripes": _digit_matrix(tw, cluster.stripes),
        "nodes": _digit_matrix(tw, cluster.nodes.T),  # node-major: node -> per-stripe symbols
        "failed": cluster.failed,
        "withheld": None
        if cluster.withheld is None
        else [_digit_list(tw, v) for v in cluster.withheld],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_cluster(path) -> Cluster:
    with open(path, encoding="utf-8") as fh:
        state = json.load(fh)
    version = state.get("schema_version")
    if version != SCHEMA_VERSION:
        raise StateFormatError(
            f"unsupported state schema: expected {SCHEMA_VERSION}, got {version}"
        )
    code = _code_from_payload(state["code"])
    tw = code.tower
    stripes = np.asarray(
        [[_undigit(tw, d) for d in row] for row in state["stripes"]], dtype=np.int64
    )
    nodes = np.asarray(
        [[_undigit(tw, d) for d in row] for row in state["nodes"]], dtype=np.int64
    ).T
    if nodes.shape != (stripes.shape[0], code.n):
        raise StateFormatError("node array shape does not match the code")
    failed = state.get("failed")
    withheld = state.get("withheld")
    cluster = Cluster(
        code=code,
        stripes=stripes,
        nodes=nodes,
        seed=int(state.get("seed", 0)),
        failed=None if failed is None else int(failed),
        withheld=None
        if withheld is None
        else np.asarray([_undigit(tw, d) for d in withheld], dtype=np.int64),
    )
    _check_consistency(cluster)
    return cluster


def _check_consistency(cluster: Cluster) -> None:
    expected = codes.encode_many(cluster.code, cluster.stripes)
    if cluster.failed is not None:
        expected = expected.copy()
        if cluster.withheld is None or not np.array_equal(
            cluster.withheld, expected[:, cluster.failed]
        ):
            raise StateFormatError("withheld symbols disagree with the encoded stripes")
        expected[:, cluster.failed] = 0
    if not np.array_equal(expected, cluster.nodes):
        raise StateFormatError("stored node symbols are not codewords of the stripes")
