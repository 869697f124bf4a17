"""Cross-validation of the chain-ring kernel engine against a plain F_p
linear-algebra view for the F_p-linear (truncated polynomial) backings: a
module is a vector space with a nilpotent operator, a kernel is a nullspace,
and the serial type is recovered from the rank sequence of the operator."""

import random

from monocat.base import chain_base
from monocat.exact import kernel
from monocat.serialmod import hom_space, serial_module


def _basis(module):
    base = module.base
    out = []
    for i, part in enumerate(module.parts):
        for k in range(base.length(part)):
            out.append((i, k))
    return out


def _matrix_of(f, p):
    src, tgt = _basis(f.source), _basis(f.target)
    src_idx = {b: i for i, b in enumerate(src)}
    tgt_idx = {b: i for i, b in enumerate(tgt)}
    base = f.base
    mat = [[0] * len(src) for _ in range(len(tgt))]
    for (j, k) in src:
        a = base.length(f.source.parts[j])
        for i in range(f.target.rank):
            b = base.length(f.target.parts[i])
            c = f.entries[i][j]
            shift = max(0, b - a)
            for t, digit in enumerate(c.digits):
                pos = k + shift + t
                if digit and pos < b:
                    mat[tgt_idx[(i, pos)]][src_idx[(j, k)]] = digit % p
    return mat, src, tgt


def _x_matrix(module, p):
    bs = _basis(module)
    idx = {b: i for i, b in enumerate(bs)}
    base = module.base
    mat = [[0] * len(bs) for _ in range(len(bs))]
    for (j, k) in bs:
        if k + 1 < base.length(module.parts[j]):
            mat[idx[(j, k + 1)]][idx[(j, k)]] = 1
    return mat


def _rank(mat, p):
    if not mat or not mat[0]:
        return 0
    m = [row[:] for row in mat]
    rank = 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return r


def _nullspace(mat, ncols, p):
    if not mat:
        return [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
    m = [row[:] for row in mat]
    rows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, rows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    pivset = set(pivots)
    for c in range(ncols):
        if c in pivset:
            continue
        vec = [0] * ncols
        vec[c] = 1
        for rr, pc in enumerate(pivots):
            vec[pc] = (-m[rr][c]) % p
        basis.append(vec)
    return basis


def _kernel_partition_linear(f, p, n):
    mat, src, _ = _matrix_of(f, p)
    null = _nullspace(mat, len(src), p)
    if not null:
        return ()
    x = _x_matrix(f.source, p)

    def apply_power(vecs, k):
        out = [v[:] for v in vecs]
        for _ in range(k):
            out = [[sum(row[i] * v[i] for i in range(len(v))) % p for row in x] for v in out]
        return out

    ranks = []
    for k in range(n + 2):
        imgs = apply_power(null, k)
        ranks.append(_rank(imgs, p))
    parts = []
    for a in range(1, n + 1):
        mult = ranks[a - 1] - 2 * ranks[a] + ranks[a + 1]
        parts.extend([a] * mult)
    return tuple(sorted(parts, reverse=True))


def test_kernel_types_agree_with_linear_view():
    rng = random.Random(9)
    for p, n in ((2, 2), (2, 3), (3, 3), (2, 4)):
        base = chain_base("poly", p, n)
        labels = list(base.labels)
        for _ in range(40):
            a = serial_module(base, [rng.choice(labels) for _ in range(rng.randrange(4))])
            b = serial_module(base, [rng.choice(labels) for _ in range(rng.randrange(4))])
            f = hom_space(a, b).random(rng)
            K, _ = kernel(f)
            assert K.partition() == _kernel_partition_linear(f, p, n)
