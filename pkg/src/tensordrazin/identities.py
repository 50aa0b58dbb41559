"""Named residual reports used by ``tensordrazin verify``.

Each suite returns a list of ``(name, relative residual)`` pairs; a suite
passes when every residual is at most the caller's tolerance.
"""

from __future__ import annotations

import numpy as np

from .errors import Inconsistent
from .gen_inverse import (
    core_nilpotent,
    drazin,
    drazin_residuals,
    drazin_via_dual,
    group_inverse,
    index,
    moore_penrose,
    penrose_residuals,
)
from .solvers import is_drazin_consistent, normal_solve
from .tensor_core import (
    DenseTensor,
    conj_transpose,
    einstein_product as ep,
    norm,
    power,
    relative_residual,
    rsh,
)
from .weighted import WeightedPair, verify_w_drazin, w_drazin

Report = list[tuple[str, float]]


def drazin_axioms(a: DenseTensor) -> Report:
    k = index(a).k
    x = drazin(a, k)
    names = ("A^(k+1) X = A^k", "X A X = X", "A X = X A")
    out = list(zip(names, drazin_residuals(a, x, k)))
    mp = moore_penrose(a)
    pnames = ("A X A = A", "X A X = X (MP)", "(A X)* = A X", "(X A)* = X A")
    out += list(zip(pnames, penrose_residuals(a, mp)))
    return out


def _rel(lhs, rhs, scale=0.0) -> float:
    return relative_residual(lhs, rhs, scale)


def _index_at_most_one(t: DenseTensor, scale: float, rel: float = 1e-8) -> bool:
    """Index of ``t`` is at most one.

    ``T = U S V*`` truncated at ``rel * scale`` (``scale`` bounds the factors
    ``t`` was computed from) gives ``T^2 = U S (V* U) S V*``, so
    ``rank(T^2) = rank(T)`` exactly when ``V* U`` is nonsingular.  Its
    singular values are cosines of principal angles, so the test is scale
    free.
    """
    u, s, vh = np.linalg.svd(rsh(t))
    r = int(np.sum(s > rel * scale))
    if r == 0:
        return True
    cos = np.linalg.svd(vh[:r] @ u[:, :r], compute_uv=False)
    return bool(cos[-1] > rel)


def _small(t: DenseTensor, scale: float) -> float:
    """Size of a tensor that should vanish, relative to ``scale``."""
    n = norm(t)
    return n / scale if n and scale else n


def drazin_identities(a: DenseTensor) -> Report:
    info = index(a)
    k = info.k
    ad = drazin(a, k)
    na, nd = norm(a), norm(ad)
    out: Report = []
    out.append(("(A*)^D = (A^D)*", _rel(drazin(conj_transpose(a)), conj_transpose(ad), nd)))
    for l in (2, 3):
        out.append((f"(A^{l})^D = (A^D)^{l}", _rel(drazin(power(a, l)), power(ad, l), nd**l)))
    a2ad = ep(power(a, 2), ad)
    out.append(("(A^D)^# = A^2 A^D", _rel(group_inverse(ad), a2ad, na * na * nd)))
    add = drazin(ad)
    out.append(("((A^D)^D)^D = A^D", _rel(drazin(add), ad, nd)))
    if k <= 1:
        out.append(("(A^D)^D = A", _rel(add, a, na)))
    out.append(("dual MP route", _rel(drazin_via_dual(a, k), ad, nd)))
    aad = ep(a, ad)
    for p in (1, 2, 3):
        out.append((f"A^{p} (A^D)^{p} = A A^D", _rel(ep(power(a, p), power(ad, p)), aad, (na * nd) ** p)))
        out.append((f"(A^D)^{p} A^{p} = A A^D", _rel(ep(power(ad, p), power(a, p)), aad, (na * nd) ** p)))
    cn = core_nilpotent(a)
    nb = norm(cn.B)
    nn = norm(cn.N)
    # N is often pure rounding noise, so scale by A rather than by N alone
    s = max(na * na, nb * nn)
    m = max(k, 1)
    out.append(("B + N = A", _rel(cn.B + cn.N, a, na)))
    out.append(("B N = O", _small(ep(cn.B, cn.N), s)))
    out.append(("N B = O", _small(ep(cn.N, cn.B), s)))
    out.append(("N^k = O", _small(power(cn.N, m), max(na, nn) ** m)))
    return out


def wdrazin_identities(b: DenseTensor, w: DenseTensor | None = None) -> Report:
    if w is None:
        w = conj_transpose(b)
    p = WeightedPair(b, w)
    x = w_drazin(p)
    chk = verify_w_drazin(p, x)
    out: Report = list(zip(("(BW)^(k+1) X W = (BW)^k", "X W B W X = X", "B W X = X W B"), chk.residuals))
    bw, wb = p.BW, p.WB
    nb, nw = norm(b), norm(w)
    wb2d = drazin(ep(wb, wb))
    out.append(("(BW)^D = B [(WB)^2]^D W",
                _rel(drazin(bw), ep(ep(b, wb2d), w), nb * nw * norm(wb2d))))
    for q in (1, 2, 3):
        left = ep(w, drazin(power(bw, q)))
        right = ep(drazin(power(wb, q)), w)
        out.append((f"W [(BW)^{q}]^D = [(WB)^{q}]^D W", _rel(left, right, nw * max(norm(left), norm(right)))))
        left = ep(b, drazin(power(wb, q)))
        right = ep(drazin(power(bw, q)), b)
        out.append((f"B [(WB)^{q}]^D = [(BW)^{q}]^D B", _rel(left, right, nb * max(norm(left), norm(right)))))
    y = ep(wb2d, w)
    by, yb = ep(b, y), ep(y, b)
    scale = nb * norm(y)
    out.append(("ind(B Y) <= 1", 0.0 if _index_at_most_one(by, scale) else 1.0))
    out.append(("ind(Y B) <= 1", 0.0 if _index_at_most_one(yb, scale) else 1.0))
    out.append(("X = B Y B Y B", _rel(ep(ep(by, by), b), x, norm(x))))
    return out


def solver_identities(a: DenseTensor, b: DenseTensor) -> Report:
    k = index(a).k
    if not is_drazin_consistent(a, b, k):
        raise Inconsistent("B is not in the range of A^k")
    nb = norm(b)
    x = ep(drazin(a, k), b)
    out: Report = [("A X = B", _small(ep(a, x) - b, nb))]
    ak = power(a, k)
    xn = normal_solve(a, b, "drazin_normal")
    out.append(("A^(k+1) X = A^k B", _rel(ep(ep(ak, a), xn), ep(ak, b), norm(ak) * norm(a) * norm(xn))))
    xm = normal_solve(a, b, "modified")
    a2k = ep(ak, ak)
    out.append(("A^(2k) X = A^k B", _rel(ep(a2k, xm), ep(ak, b), norm(a2k) * norm(xm))))
    return out


SUITES = {
    "drazin-axioms": drazin_axioms,
    "identities": drazin_identities,
    "wdrazin": wdrazin_identities,
    "solver": solver_identities,
}
