#!/usr/bin/env python3
"""Writes the bundled fixtures under data/ from level-one forms.

E4 = 1 + 240 sum sigma_3(n) q^n and Delta = q prod (1 - q^n)^24, p = 5.
"""

import pathlib
import sys

P, Q = 5, 200


def sigma(k, n):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def e4(q):
    return [1] + [240 * sigma(3, n) for n in range(1, q + 1)]


def delta(q):
    c = [0] * (q + 1)
    c[1] = 1
    for n in range(1, q + 1):
        for _ in range(24):
            for i in range(q, n - 1, -1):
                c[i] -= c[i - n]
    return c


def qexp(coeffs, weight, M, depleted=False):
    lines = [f"p={P} M={M} Q={Q} weight={weight}"]
    for n, a in enumerate(coeffs):
        lines.append(str(0 if depleted and n % P == 0 else a % P**M))
    return "\n".join(lines) + "\n"


def vp(n):
    v = 0
    while n % P == 0:
        n //= P
        v += 1
    return v


def hecke_roots(ap, k, M):
    """Roots of x^2 - ap x + p^(k-1) with v(alpha) = v(ap) < (k-1)/2, modulo p^M."""
    v = vp(ap)
    assert 2 * v < k - 1
    mod = P ** (M + k)
    b, c = ap // P**v, P ** (k - 1 - 2 * v)
    # alpha = p^v u with u^2 - b u + c = 0 and u = b mod p a simple root
    u = b % mod
    for _ in range(M + k):
        u = (u - (u * u - b * u + c) * pow(2 * u - b, -1, mod)) % mod
    alpha = P**v * u
    beta = P ** (k - 1 - v) * pow(u, -1, mod)
    return alpha % P**M, beta % P**M


def eigendata(label, k, ap, M, coeffs=None):
    alpha, beta = hecke_roots(ap, k, M)
    lines = [f"label={label}", f"p={P}", f"M={M}", "N=1", f"k={k}", f"a_p={ap % P**M}", "chi_p=1",
             f"alpha={alpha}", f"beta={beta}"]
    if coeffs:
        lines.append(f"coeffs={coeffs}")
    return "\n".join(lines) + "\n"


def matrix(rows, M):
    lines = [f"p={P} M={M} n={len(rows)}"]
    lines += [" ".join(str(a % P**M) for a in row) for row in rows]
    return "\n".join(lines) + "\n"


def main(root):
    data = pathlib.Path(root) / "data"
    (data / "lemma").mkdir(parents=True, exist_ok=True)
    (data / "forms").mkdir(parents=True, exist_ok=True)
    (data / "slope").mkdir(parents=True, exist_ok=True)
    e, d = e4(Q), delta(Q)
    assert d[2] == -24 and d[5] == 4830
    (data / "lemma" / "g.qexp").write_text(qexp(e, 4, 10, depleted=True))
    (data / "lemma" / "h.qexp").write_text(qexp(e, 4, 10))
    (data / "forms" / "e4.qexp").write_text(qexp(e, 4, 10))
    (data / "forms" / "e4.eig").write_text(eigendata("E4", 4, e[P] // 240, 10, "e4.qexp"))
    # v(tau(5)) = 1, so the Euler factors of Delta have valuation -5 and need more digits
    (data / "forms" / "delta.qexp").write_text(qexp(d, 12, 20))
    (data / "forms" / "delta.eig").write_text(eigendata("Delta", 12, d[P], 20, "delta.qexp"))
    # P diag(2, 5, 75) P^-1 with P unipotent upper triangular: slopes 0, 1, 2
    (data / "slope" / "U.txt").write_text(matrix([[2, 3, -3], [0, 5, 70], [0, 0, 75]], 20))
    # U = diag(1, 5), pairing x^T Phi y, phi = (Phi U Phi^-1)^T; eta = (0, 1) has eigenvalue 1
    (data / "slope" / "pairing_U.txt").write_text(matrix([[1, 0], [0, 5]], 20))
    (data / "slope" / "pairing_Phi.txt").write_text(matrix([[0, 1], [-1, 0]], 20))
    (data / "slope" / "pairing_phi.txt").write_text(matrix([[5, 0], [0, 1]], 20))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent)
