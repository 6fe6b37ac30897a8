"""Classification of index pairs (i, j) and the NoLB / LB / LI partition.

Decision tree per pair: both logs torsion -> a; only q_j torsion -> b;
only p_i torsion -> c; otherwise the points are tested for k-linear
dependence, splitting d (dependent; d1 when the coefficient has trace
zero, d2 otherwise) from e (independent).  Cases a, b, c, d1 form NoLB;
d2 and e form LB.  LI is the rectangle spanned by the greedy k-basis.

Local dimension triples (dim B_ij, dim Z'_ij, dim Z_ij/Z'_ij):
a -> (0,0,tt); b, c, d1 -> (1,0,tt); d2 -> (1,1,0); e -> (2,1,0),
where tt = 1 iff t_ij is not in 2*pi*i*Q.
"""

from dataclasses import dataclass, field

from .config import Bounds
from .endo import EndoField, k_trace
from .errors import InternalInconsistency
from .motive import MotiveSpec
from .oracle import MotiveOracle

LOCAL_DIMS = {
    "a": (0, 0, None),
    "b": (1, 0, None),
    "c": (1, 0, None),
    "d1": (1, 0, None),
    "d2": (1, 1, 0),
    "e": (2, 1, 0),
}

NOLB_CASES = frozenset({"a", "b", "c", "d1"})


@dataclass
class PairClassification:
    i: int
    j: int
    case_label: str
    set_label: str          # "NoLB" | "LB"
    in_LI: bool
    local_dims: tuple       # (dim_B_ij, dim_Zprime_ij, dim_Zquot_ij)
    evidence: dict = field(default_factory=dict)


@dataclass
class Partition:
    pairs: list             # PairClassification, row-major
    NoLB: set
    LB: set
    LI: set
    basis_p: list
    basis_q: list
    n_prime: int
    r_prime: int
    r: int

    def pair(self, i, j) -> PairClassification:
        return self.pairs[i * self.r + j]


def classify_pair(i: int, j: int, spec: MotiveSpec,
                  endo: EndoField | None = None,
                  bounds: Bounds | None = None,
                  oracle: MotiveOracle | None = None) -> PairClassification:
    """Classify one index pair; builds a fresh oracle unless given one."""
    if oracle is None:
        oracle = MotiveOracle(spec, endo=endo)
    endo = oracle.endo
    tp = oracle.torsion_p(i)
    tq = oracle.torsion_q(j)
    t_torsion = oracle.t_is_torsion_unit(i, j)
    tt = 0 if t_torsion else 1
    evidence = {"torsion_order_p": tp, "torsion_order_q": tq,
                "t_in_2piiQ": t_torsion}
    if tp is not None and tq is not None:
        label = "a"
    elif tq is not None:
        label = "b"
    elif tp is not None:
        label = "c"
    else:
        alpha, direction = oracle.k_coefficient_pair(i, j)
        if alpha is None:
            label = "e"
        else:
            trace = k_trace(alpha, endo)
            label = "d1" if trace == 0 else "d2"
            evidence.update({
                "alpha": (str(alpha.x), str(alpha.y)),
                "alpha_direction": direction,
                "alpha_trace": str(trace),
            })
    dims = LOCAL_DIMS[label]
    local = (dims[0], dims[1], tt if dims[2] is None else dims[2])
    set_label = "NoLB" if label in NOLB_CASES else "LB"
    return PairClassification(i=i, j=j, case_label=label,
                              set_label=set_label, in_LI=False,
                              local_dims=local, evidence=evidence)


def build_partition(spec: MotiveSpec,
                    endo: EndoField | None = None,
                    bounds: Bounds | None = None,
                    oracle: MotiveOracle | None = None) -> Partition:
    """Classify every pair and extract the LI rectangle.

    Raises InternalInconsistency when an LI pair classifies NoLB, which
    would mean the relation engine contradicted the basis extraction.
    """
    if oracle is None:
        oracle = MotiveOracle(spec, endo=endo)
    n, r = spec.n, spec.r
    pairs = [classify_pair(i, j, spec, oracle=oracle)
             for i in range(n) for j in range(r)]
    basis_p, basis_q = oracle.basis_indices()
    li = {(i, j) for i in basis_p for j in basis_q}
    nolb, lb = set(), set()
    for pc in pairs:
        pc.in_LI = (pc.i, pc.j) in li
        (nolb if pc.set_label == "NoLB" else lb).add((pc.i, pc.j))
        if pc.in_LI and pc.set_label != "LB":
            raise InternalInconsistency(
                f"pair {(pc.i, pc.j)} is in the basis rectangle but "
                f"classified {pc.case_label} (NoLB)")
    return Partition(pairs=pairs, NoLB=nolb, LB=lb, LI=li,
                     basis_p=basis_p, basis_q=basis_q,
                     n_prime=len(basis_p), r_prime=len(basis_q), r=r)
