"""Pure-Python table kernels.

Loop-for-loop mirror of ``_kernels.pyx``; the two must stay in the same
operation order so that both backends produce identical bits.  Inputs are
1-D float64 arrays; outputs are float64 arrays indexed ``[order, i]``.

``ft[i - 1]`` is the tilde ratio belonging to row ``i`` (``i >= 1``).
"""

from __future__ import annotations

import math

import numpy as np

INF = math.inf


def first_order(q, e):
    q = q.tolist()
    e = e.tolist()
    n = len(q)
    v = [0.0] * n
    w = [0.0] * n
    v[n - 1] = 1.0 / q[n - 1]
    for i in range(n - 2, -1, -1):
        v[i] = (e[i] * v[i + 1] + 1.0) / q[i]
    w[0] = 1.0 / q[0]
    for i in range(1, n):
        w[i] = (e[i - 1] * w[i - 1] + 1.0) / q[i]
    return np.array(v), np.array(w)


def kyn11(q, e, m, backward):
    q = q.tolist()
    e = e.tolist()
    n = len(q)
    v = [[1.0] * n] + [[0.0] * n for _ in range(m)]
    w = [[1.0] * n] + [[0.0] * n for _ in range(m)]
    z = [[0.0] * n for _ in range(m)]
    for p in range(1, m + 1):
        vp, wp = v[p - 1], w[p - 1]
        zr = z[p - 1]
        if backward:
            zr[n - 1] = 2.0 * wp[n - 1]
            for i in range(n - 2, -1, -1):
                zr[i] = zr[i + 1] + 2.0 * (wp[i] - vp[i + 1])
        else:
            zr[0] = 2.0 * vp[0]
            for i in range(1, n):
                zr[i] = zr[i - 1] + 2.0 * (vp[i] - wp[i - 1])
        vc, wc = v[p], w[p]
        vc[n - 1] = wp[n - 1] / q[n - 1]
        for i in range(n - 2, -1, -1):
            vc[i] = (e[i] * vc[i + 1] + (zr[i] - wp[i])) / q[i]
        wc[0] = vp[0] / q[0]
        for i in range(1, n):
            wc[i] = (e[i - 1] * wc[i - 1] + (zr[i] - vp[i])) / q[i]
    return np.array(v), np.array(w), np.array(z)


def ykn12(bc, f, ft, m):
    bc = bc.tolist()
    f = f.tolist()
    ft = ft.tolist()
    n = len(bc)
    v = [[1.0] * n] + [[0.0] * n for _ in range(m)]
    w = [[1.0] * n] + [[0.0] * n for _ in range(m)]
    g = [[0.0] * n for _ in range(m)]
    gt = [[0.0] * n for _ in range(m)]

    # order one, seeded through g and gt
    v1, w1, g1, gt1 = v[1], w[1], g[0], gt[0]
    v1[n - 1] = bc[n - 1]
    for i in range(n - 2, -1, -1):
        g1[i] = f[i] * v1[i + 1]
        v1[i] = g1[i] + bc[i]
    w1[0] = bc[0]
    for i in range(1, n):
        gt1[i] = ft[i - 1] * w1[i - 1]
        w1[i] = gt1[i] + bc[i]

    for r in range(2, m + 1):
        gr, gprev = g[r - 1], g[r - 2]
        for i in range(n - 2, -1, -1):
            acc = f[i] * gr[i + 1] + bc[i + 1] * gprev[i]
            for k in range(1, r):
                acc += g[k - 1][i + 1] * g[r - k - 1][i]
            gr[i] = acc
        tr, tprev = gt[r - 1], gt[r - 2]
        for i in range(1, n):
            acc = ft[i - 1] * tr[i - 1] + bc[i - 1] * tprev[i]
            for k in range(1, r):
                acc += gt[k - 1][i - 1] * gt[r - k - 1][i]
            tr[i] = acc

    for s in range(2, m + 1):
        vs, ws = v[s], w[s]
        vs[n - 1] = bc[n - 1] * w[s - 1][n - 1]
        for i in range(n - 2, -1, -1):
            conv = 0.0
            for k in range(1, s):
                conv += g[k - 1][i] * w[s - k][i]
            vs[i] = f[i] * vs[i + 1] + bc[i] * w[s - 1][i] + 2.0 * conv
        ws[0] = bc[0] * v[s - 1][0]
        for i in range(1, n):
            conv = 0.0
            for k in range(1, s):
                conv += gt[k - 1][i] * v[s - k][i]
            ws[i] = ft[i - 1] * ws[i - 1] + bc[i] * v[s - 1][i] + 2.0 * conv
    return np.array(v), np.array(w), np.array(g), np.array(gt)


def _all_finite(row):
    for x in row:
        if not math.isfinite(x):
            return False
    return True


def ykyy14(bc, f, ft, m, tilde, binom, stop):
    """h and H tables; ``binom[a][b]`` is the float binomial coefficient."""
    bc = bc.tolist()
    f = f.tolist()
    ft = ft.tolist()
    binom = binom.tolist()
    n = len(bc)
    h = [[0.0] * n for _ in range(m)]
    big = [[0.0] * n for _ in range(m)]
    h1 = h[0]
    if tilde:
        h1[n - 1] = bc[n - 1]
        for i in range(n - 2, -1, -1):
            h1[i] = f[i] * h1[i + 1] + bc[i]
    else:
        h1[0] = bc[0]
        for i in range(1, n):
            h1[i] = ft[i - 1] * h1[i - 1] + bc[i]
    big[0] = list(h1)
    done = 1
    if stop and not _all_finite(big[0]):
        done = m
        for r in range(1, m):
            big[r] = [INF] * n
            h[r] = [INF] * n
    for p in range(done + 1, m + 1):
        hp = h[p - 1]
        fp = float(p)
        cp = binom[p]
        if tilde:
            for i in range(n - 2, -1, -1):
                acc = f[i] * (h[p - 1][i + 1] + fp * h1[i + 1] * h[p - 2][i + 1])
                for k in range(1, p - 1):
                    acc += cp[k] * h[k - 1][i + 1] * h[p - k - 1][i]
                hp[i] = acc
        else:
            for i in range(1, n):
                acc = ft[i - 1] * (h[p - 1][i - 1] + fp * h1[i - 1] * h[p - 2][i - 1])
                for k in range(1, p - 1):
                    acc += cp[k] * h[k - 1][i - 1] * h[p - k - 1][i]
                hp[i] = acc
        cq = binom[p - 1]
        bp = big[p - 1]
        for i in range(n):
            acc = hp[i]
            for k in range(1, p):
                acc += cq[k] * h[k - 1][i] * big[p - k - 1][i]
            bp[i] = acc
        if stop and not _all_finite(bp):
            for r in range(p, m):
                big[r] = [INF] * n
                h[r] = [INF] * n
            break
    return np.array(h), np.array(big)


def unified(bc, f, ft, m, plain, stop):
    """Small (g or g-tilde) and big (G or G-tilde) tables of the factorial-free formula."""
    bc = bc.tolist()
    f = f.tolist()
    ft = ft.tolist()
    n = len(bc)
    sm = [[0.0] * n for _ in range(m)]
    big = [[0.0] * n for _ in range(m)]
    s1, b1 = sm[0], big[0]
    if plain:
        b1[n - 1] = bc[n - 1]
        for i in range(n - 2, -1, -1):
            s1[i] = f[i] * b1[i + 1]
            b1[i] = s1[i] + bc[i]
    else:
        b1[0] = bc[0]
        for i in range(1, n):
            s1[i] = ft[i - 1] * b1[i - 1]
            b1[i] = s1[i] + bc[i]
    done = 1
    if stop and not _all_finite(b1):
        done = m
        for r in range(1, m):
            big[r] = [INF] * n
            sm[r] = [INF] * n
    for mm in range(done + 1, m + 1):
        sr = sm[mm - 1]
        if plain:
            for i in range(n - 2, -1, -1):
                acc = f[i] * sr[i + 1] + b1[i + 1] * sm[mm - 2][i]
                for k in range(2, mm):
                    acc += sm[k - 1][i + 1] * sm[mm - k - 1][i]
                sr[i] = acc
        else:
            for i in range(1, n):
                acc = ft[i - 1] * sr[i - 1] + b1[i - 1] * sm[mm - 2][i]
                for k in range(2, mm):
                    acc += sm[k - 1][i - 1] * sm[mm - k - 1][i]
                sr[i] = acc
        fm = float(mm)
        br = big[mm - 1]
        for i in range(n):
            acc = fm * sr[i] + b1[i] * big[mm - 2][i]
            for k in range(2, mm):
                acc += sm[k - 1][i] * big[mm - k - 1][i]
            br[i] = acc
        if stop and not _all_finite(br):
            for r in range(mm, m):
                big[r] = [INF] * n
                sm[r] = [INF] * n
            break
    return np.array(sm), np.array(big)
