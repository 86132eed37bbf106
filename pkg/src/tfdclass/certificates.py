"""Farkas certificates showing that no level-zero structure exists over X_k, 2 <= k <= 8.

Variables are ordered (a, x, b1..bk, y1..yk) where e = a u + sum b_i E_i is
the Euler class above the minimum and PD(Z0) = x u + sum y_i E_i.  Every
constraint reads row . v >= bound.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations, permutations


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class InfeasibilityCertificate:
    k: int
    constraints: tuple   # (id, row, bound)
    multipliers: tuple   # Fractions

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "constraints": [{"id": cid, "row": list(row), "bound": b} for cid, row, b in self.constraints],
            "multipliers": [str(m) for m in self.multipliers],
        }

    @classmethod
    def from_json(cls, d: dict) -> "InfeasibilityCertificate":
        cons = tuple((c["id"], tuple(int(v) for v in c["row"]), int(c["bound"])) for c in d["constraints"])
        return cls(int(d["k"]), cons, tuple(Fraction(m) for m in d["multipliers"]))


def _idx(k):
    a, x = 0, 1
    b = {i: 1 + i for i in range(1, k + 1)}
    y = {i: 1 + k + i for i in range(1, k + 1)}
    return a, x, b, y


_ID_RE = re.compile(r"^(vol|nb|na|pb|pa|cb|ca)\[([0-9,]*)\]$")


def constraint_row(k: int, cid: str):
    """Row and bound of a named constraint.

    vol[]      3x + sum y >= 1                      Z0 has positive volume
    nb[i]      -b_i >= 0                            E_i positive at t = -1
    na[i]      b_i + y_i >= 0                       E_i positive at t = +1
    pb[i,j]    a + b_i + b_j >= 0                   u - E_i - E_j at t = -1
    pa[i,j]    -a - x - b_i - b_j - y_i - y_j >= 0  u - E_i - E_j at t = +1
    cb[i,l]    3a + 2b_i + sum_S b_j >= 0           3u - 2E_i - E_S at t = -1
    ca[i,l]    -3a - 3x - 2(b_i+y_i) - sum_S (b_j+y_j) >= 0   same class at t = +1
    For the cubic rows S is every index except i and l (l = 0 when k = 7).
    """
    mt = _ID_RE.match(cid)
    if not mt:
        raise CertificateError(f"malformed constraint id {cid!r}")
    kind = mt.group(1)
    args = [int(v) for v in mt.group(2).split(",")] if mt.group(2) else []
    a, x, b, y = _idx(k)
    row = [0] * (2 + 2 * k)

    def need(n):
        if len(args) != n:
            raise CertificateError(f"{cid!r} expects {n} indices")

    def valid(*ii):
        if any(not 1 <= i <= k for i in ii) or len(set(ii)) != len(ii):
            raise CertificateError(f"bad indices in {cid!r} for k={k}")

    if kind == "vol":
        need(0)
        row[x] = 3
        for i in range(1, k + 1):
            row[y[i]] = 1
        return tuple(row), 1
    if kind in ("nb", "na"):
        need(1)
        valid(*args)
        i = args[0]
        if kind == "nb":
            row[b[i]] = -1
        else:
            row[b[i]] = row[y[i]] = 1
        return tuple(row), 0
    if kind in ("pb", "pa"):
        need(2)
        valid(*args)
        i, j = args
        s = 1 if kind == "pb" else -1
        row[a] = s
        for t in (i, j):
            row[b[t]] = s
            if kind == "pa":
                row[y[t]] = -1
        if kind == "pa":
            row[x] = -1
        return tuple(row), 0
    need(2)
    i, l = args
    if k == 7 and l == 0:
        valid(i)
        S = [j for j in range(1, 8) if j != i]
    elif k == 8:
        valid(i, l)
        S = [j for j in range(1, 9) if j not in (i, l)]
    else:
        raise CertificateError(f"cubic constraint {cid!r} needs k in (7, 8)")
    if kind == "cb":
        row[a] = 3
        row[b[i]] = 2
        for j in S:
            row[b[j]] = 1
    else:
        row[a] = row[x] = -3
        row[b[i]] = row[y[i]] = -2
        for j in S:
            row[b[j]] = row[y[j]] = -1
    return tuple(row), 0


def check_certificate(cert: InfeasibilityCertificate) -> bool:
    if not 2 <= cert.k <= 8 or len(cert.constraints) != len(cert.multipliers):
        return False
    total = [Fraction(0)] * (2 + 2 * cert.k)
    bound = Fraction(0)
    for (cid, row, b), mu in zip(cert.constraints, cert.multipliers):
        mu = Fraction(mu)
        if mu < 0:
            return False
        if constraint_row(cert.k, cid) != (tuple(row), b):
            return False
        for i, v in enumerate(row):
            total[i] += mu * v
        bound += mu * b
    return all(v == 0 for v in total) and bound >= 1


def derive_certificate(k: int) -> InfeasibilityCertificate:
    """Build the multipliers by summing the pair and cubic constraints over all indices."""
    if not 2 <= k <= 8:
        raise CertificateError(f"k={k} out of range")
    mult = {}

    def add(cid, mu):
        mult[cid] = mult.get(cid, Fraction(0)) + Fraction(mu)

    # pb[1,2] + pa[1,2] + nb[1] + nb[2] + na[1] + na[2] gives -x >= 0
    def minus_x(mu):
        if mu:
            for cid in ("pb[1,2]", "pa[1,2]", "nb[1]", "nb[2]", "na[1]", "na[2]"):
                add(cid, mu)

    if k <= 6:
        # summed pair rows: -C(k,2) x - (k-1) sum y >= 0
        for i, j in combinations(range(1, k + 1), 2):
            add(f"pb[{i},{j}]", 1)
            add(f"pa[{i},{j}]", 1)
        add("vol[]", k - 1)
        minus_x(Fraction((k - 1) * (6 - k), 2))
    elif k == 7:
        # summed cubic rows: -21x - 8 sum y >= 0
        for i in range(1, 8):
            add(f"cb[{i},0]", 1)
            add(f"ca[{i},0]", 1)
        add("vol[]", 8)
        minus_x(3)
    else:
        # 56 ordered pairs: -168x - 56 sum y >= 0
        for i, l in permutations(range(1, 9), 2):
            add(f"cb[{i},{l}]", 1)
            add(f"ca[{i},{l}]", 1)
        add("vol[]", 56)
    ids = sorted(mult)
    cons = tuple((cid,) + constraint_row(k, cid) for cid in ids)
    return InfeasibilityCertificate(k, cons, tuple(mult[c] for c in ids))


def embedded_certificates() -> dict:
    text = resources.files("tfdclass").joinpath("data/certificates.json").read_text()
    return {int(d["k"]): InfeasibilityCertificate.from_json(d) for d in json.loads(text)}


def prove_empty_case_II_Xk(k: int) -> InfeasibilityCertificate:
    if not 2 <= k <= 8:
        raise CertificateError(f"k={k} out of range")
    cert = embedded_certificates()[k]
    assert check_certificate(cert)
    return cert


def export_certificates() -> str:
    return json.dumps([derive_certificate(k).to_json() for k in range(2, 9)], indent=1) + "\n"
