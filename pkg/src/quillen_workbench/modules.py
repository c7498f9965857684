"""Truncated unstable modules over the mod-2 Steenrod algebra.

A module is stored degreewise up to a truncation degree ``N``: dimensions,
the matrices of ``Sq^i`` (degree ``n`` to ``n + i``, for ``n + i <= N``) and,
for modules over ``P = H*(Z/2)``, the matrices of multiplication by the
degree-one class ``u``.  Matrices act on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator

from .f2 import ColumnSpace, F2Matrix, block_diag, kernel_matrix, rank


def _binom2(n: int, k: int) -> int:
    """Binomial coefficient mod 2 (Lucas); zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (k & ~n) == 0 else 0


class _Builder:
    """Accumulates blocks into a matrix by XOR."""

    def __init__(self, nrows: int, ncols: int):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [0] * nrows

    def place(self, block: F2Matrix, r0: int, c0: int) -> None:
        for i, r in enumerate(block.rows):
            if r:
                self.rows[r0 + i] ^= r << c0

    def set(self, i: int, j: int) -> None:
        self.rows[i] ^= 1 << j

    def build(self) -> F2Matrix:
        return F2Matrix(self.nrows, self.ncols, tuple(self.rows))


@dataclass
class TruncatedUnstableModule:
    max_degree: int
    dims: tuple[int, ...]
    sq: dict[tuple[int, int], F2Matrix]
    u_mult: dict[int, F2Matrix] | None = None
    labels: dict[int, list[str]] | None = None
    name: str = ""

    def __post_init__(self) -> None:
        self.dims = tuple(self.dims)
        if len(self.dims) != self.max_degree + 1:
            raise ValueError("dims must list degrees 0..max_degree")
        for n in range(self.max_degree + 1):
            for i in range(1, self.max_degree - n + 1):
                m = self.sq.get((i, n))
                if m is None:
                    raise ValueError(f"missing Sq^{i} on degree {n}")
                if m.shape != (self.dims[n + i], self.dims[n]):
                    raise ValueError(f"Sq^{i} on degree {n} has shape {m.shape}")
        if self.u_mult is not None:
            for n in range(self.max_degree):
                m = self.u_mult.get(n)
                if m is None or m.shape != (self.dims[n + 1], self.dims[n]):
                    raise ValueError(f"bad u-multiplication on degree {n}")

    @property
    def has_u(self) -> bool:
        return self.u_mult is not None

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.max_degree else 0

    def sq_matrix(self, i: int, n: int) -> F2Matrix:
        if i == 0:
            return F2Matrix.identity(self.dims[n])
        return self.sq[(i, n)]

    def u_matrix(self, n: int) -> F2Matrix:
        if self.u_mult is None:
            raise ValueError(f"module {self.name or '?'} carries no u-multiplication")
        return self.u_mult[n]

    def truncate(self, n_max: int) -> TruncatedUnstableModule:
        if n_max > self.max_degree:
            raise ValueError("cannot extend a truncated module")
        sq = {k: v for k, v in self.sq.items() if k[0] + k[1] <= n_max}
        u = None if self.u_mult is None else {k: v for k, v in self.u_mult.items() if k < n_max}
        labels = None if self.labels is None else {k: v for k, v in self.labels.items() if k <= n_max}
        return TruncatedUnstableModule(n_max, self.dims[: n_max + 1], sq, u, labels, self.name)

    def without_u(self) -> TruncatedUnstableModule:
        return TruncatedUnstableModule(self.max_degree, self.dims, self.sq, None, self.labels, self.name)

    def to_json(self) -> dict:
        def entries(ms: dict) -> Iterator[tuple]:
            return iter(sorted(ms.items()))

        out = {
            "name": self.name,
            "max_degree": self.max_degree,
            "dims": list(self.dims),
            "sq": [
                {"i": i, "n": n, "matrix": m.to_bitstrings()} for (i, n), m in entries(self.sq)
            ],
            "u_mult": None
            if self.u_mult is None
            else [{"n": n, "matrix": m.to_bitstrings()} for n, m in entries(self.u_mult)],
        }
        return out

    @classmethod
    def from_json(cls, data: dict) -> TruncatedUnstableModule:
        dims = data["dims"]
        sq = {
            (e["i"], e["n"]): F2Matrix.from_bitstrings(e["matrix"], dims[e["n"]]) for e in data["sq"]
        }
        u = None
        if data.get("u_mult") is not None:
            u = {e["n"]: F2Matrix.from_bitstrings(e["matrix"], dims[e["n"]]) for e in data["u_mult"]}
        return cls(data["max_degree"], dims, sq, u, None, data.get("name", ""))


@dataclass
class ModuleMap:
    source: TruncatedUnstableModule
    target: TruncatedUnstableModule
    matrices: dict[int, F2Matrix]

    def __getitem__(self, n: int) -> F2Matrix:
        return self.matrices[n]

    def check(self) -> list[str]:
        """Degreewise commutation with every ``Sq^i`` (and ``u`` when both sides carry it)."""
        bad = []
        top = min(self.source.max_degree, self.target.max_degree)
        for n in range(top + 1):
            for i in range(1, top - n + 1):
                lhs = self.matrices[n + i] @ self.source.sq_matrix(i, n)
                rhs = self.target.sq_matrix(i, n) @ self.matrices[n]
                if lhs != rhs:
                    bad.append(f"Sq^{i} on degree {n}")
            if self.source.has_u and self.target.has_u and n < top:
                if self.matrices[n + 1] @ self.source.u_matrix(n) != self.target.u_matrix(n) @ self.matrices[n]:
                    bad.append(f"u on degree {n}")
        return bad


# -- polynomial algebras ---------------------------------------------


class _PolyRing:
    """Monomial bookkeeping for ``F2[u_1..u_d]`` through degree ``N``."""

    def __init__(self, d: int, n_max: int):
        self.d = d
        self.N = n_max
        self.monos: list[list[tuple[int, ...]]] = []
        self.index: list[dict[tuple[int, ...], int]] = []
        for n in range(n_max + 1):
            ms = sorted(_compositions(n, d), reverse=True)
            self.monos.append(ms)
            self.index.append({m: k for k, m in enumerate(ms)})

    def times_var(self, n: int, i: int) -> list[int]:
        """Index in degree ``n + 1`` of ``u_i`` times each degree-``n`` monomial."""
        nxt = self.index[n + 1]
        out = []
        for m in self.monos[n]:
            e = list(m)
            e[i] += 1
            out.append(nxt[tuple(e)])
        return out

    def total_square(self, mono: tuple[int, ...]) -> dict[int, list[tuple[int, ...]]]:
        """``Sq`` of a monomial grouped by the operation degree ``i``."""
        terms = [((), 0)]
        for a in mono:
            nxt = []
            for prefix, i in terms:
                for k in range(a + 1):
                    if _binom2(a, k):
                        nxt.append((prefix + (a + k,), i + k))
            terms = nxt
        out: dict[int, list[tuple[int, ...]]] = {}
        for e, i in terms:
            out.setdefault(i, []).append(e)
        return out

    def label(self, mono: tuple[int, ...]) -> str:
        parts = []
        for j, a in enumerate(mono):
            if a == 1:
                parts.append(f"u{j + 1}")
            elif a > 1:
                parts.append(f"u{j + 1}^{a}")
        return "*".join(parts) or "1"


def _compositions(n: int, d: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        if n == 0:
            yield ()
        return
    if d == 1:
        yield (n,)
        return
    for a in range(n + 1):
        for rest in _compositions(n - a, d - 1):
            yield (a,) + rest


@lru_cache(maxsize=64)
def _poly_ring(d: int, n_max: int) -> _PolyRing:
    return _PolyRing(d, n_max)


@lru_cache(maxsize=32)
def cohomology_elementary_abelian(d: int, max_degree: int) -> TruncatedUnstableModule:
    """``H*((Z/2)^d) = F2[u_1..u_d]`` with monomials in graded-lex order.

    Squares follow ``Sq^i u^a = C(a, i) u^(a+i)`` and the Cartan formula.  For
    ``d = 1`` the module carries ``u``-multiplication by the generator.
    """
    if d < 0:
        raise ValueError("rank must be nonnegative")
    ring = _poly_ring(d, max_degree)
    dims = [len(ring.monos[n]) for n in range(max_degree + 1)]
    builders = {
        (i, n): _Builder(dims[n + i], dims[n]) for n in range(max_degree + 1) for i in range(1, max_degree - n + 1)
    }
    for n in range(max_degree + 1):
        for col, mono in enumerate(ring.monos[n]):
            for i, terms in ring.total_square(mono).items():
                if i == 0 or n + i > max_degree:
                    continue
                b = builders[(i, n)]
                for e in terms:
                    b.set(ring.index[n + i][e], col)
    sq = {k: b.build() for k, b in builders.items()}
    u = None
    if d == 1:
        u = {n: F2Matrix.identity(1) for n in range(max_degree)}
    labels = {n: [ring.label(m) for m in ring.monos[n]] for n in range(max_degree + 1)}
    return TruncatedUnstableModule(max_degree, dims, sq, u, labels, f"H*(Z/2)^{d}")


def polynomial_p(max_degree: int) -> TruncatedUnstableModule:
    """``P = F2[u]`` with ``u`` acting by multiplication."""
    return cohomology_elementary_abelian(1, max_degree)


def trivial_module(max_degree: int, *, with_u: bool = False) -> TruncatedUnstableModule:
    """``F2`` concentrated in degree 0; optionally with the zero ``u``-action."""
    dims = [1] + [0] * max_degree
    sq = {(i, n): F2Matrix.zero(dims[n + i], dims[n]) for n in range(max_degree + 1) for i in range(1, max_degree - n + 1)}
    u = {n: F2Matrix.zero(dims[n + 1], dims[n]) for n in range(max_degree)} if with_u else None
    return TruncatedUnstableModule(max_degree, dims, sq, u, None, "F2")


@lru_cache(maxsize=4096)
def restriction_matrices(f: F2Matrix, max_degree: int) -> tuple[F2Matrix, ...]:
    """Degreewise matrices of ``f*: H*(E') -> H*(E)`` for ``f: E -> E'``.

    ``f`` has shape ``rank(E') x rank(E)``; ``u'_j`` maps to ``sum_i f[j, i] u_i``.
    """
    d_dst, d_src = f.nrows, f.ncols
    src = _poly_ring(d_src, max_degree)
    dst = _poly_ring(d_dst, max_degree)
    shifts = [[src.times_var(n, i) for i in range(d_src)] for n in range(max_degree)]
    forms = [[i for i in range(d_src) if f[j, i]] for j in range(d_dst)]

    def times_form(bits: int, n: int, j: int) -> int:
        out = 0
        while bits:
            low = bits & -bits
            k = low.bit_length() - 1
            for i in forms[j]:
                out ^= 1 << shifts[n][i][k]
            bits ^= low
        return out

    images: dict[tuple[int, ...], int] = {(0,) * d_dst: 1}
    mats = [F2Matrix.from_columns([1] * len(dst.monos[0]), len(src.monos[0]))]
    for n in range(1, max_degree + 1):
        cols = []
        for mono in dst.monos[n]:
            j = next(k for k, a in enumerate(mono) if a)
            prev = list(mono)
            prev[j] -= 1
            img = times_form(images[tuple(prev)], n - 1, j)
            images[mono] = img
            cols.append(img)
        mats.append(F2Matrix.from_columns(cols, len(src.monos[n])))
    return tuple(mats)


def restriction_map(f: F2Matrix, max_degree: int) -> ModuleMap:
    mats = restriction_matrices(f, max_degree)
    # an algebra map; the u-decoration of the rank-one case plays no role here
    return ModuleMap(
        cohomology_elementary_abelian(f.nrows, max_degree).without_u(),
        cohomology_elementary_abelian(f.ncols, max_degree).without_u(),
        dict(enumerate(mats)),
    )


# -- functors ---------------------------------------------------------


def phi(m: TruncatedUnstableModule, max_degree: int | None = None) -> TruncatedUnstableModule:
    """Frobenius doubling: ``(Phi M)^{2n} = M^n``, ``Sq^{2i} Phi x = Phi Sq^i x``, odd squares vanish.

    Truncated at ``2 * m.max_degree`` unless ``max_degree`` is given.
    """
    top = 2 * m.max_degree if max_degree is None else max_degree
    if top > 2 * m.max_degree:
        raise ValueError("Phi of a module truncated at N is known only through 2N")
    dims = [m.dims[n // 2] if n % 2 == 0 else 0 for n in range(top + 1)]
    sq = {}
    for n in range(top + 1):
        for i in range(1, top - n + 1):
            if n % 2 == 0 and i % 2 == 0:
                sq[(i, n)] = m.sq_matrix(i // 2, n // 2)
            else:
                sq[(i, n)] = F2Matrix.zero(dims[n + i], dims[n])
    return TruncatedUnstableModule(top, dims, sq, None, None, f"Phi({m.name})")


def _offsets(d1: tuple[int, ...], d2: tuple[int, ...], n: int) -> list[int]:
    offs = []
    acc = 0
    for a in range(n + 1):
        offs.append(acc)
        acc += d1[a] * d2[n - a]
    offs.append(acc)
    return offs


def tensor(m1: TruncatedUnstableModule, m2: TruncatedUnstableModule) -> TruncatedUnstableModule:
    """Tensor product with the Cartan formula.

    Degree-``n`` basis: blocks ``M1^a (x) M2^(n-a)`` for ``a`` ascending, each
    ordered by the first factor's index, then the second's.  ``u`` acts by
    ``u (x) 1 + 1 (x) u`` when a factor carries it; an undecorated factor counts
    as ``P``-trivial.
    """
    top = min(m1.max_degree, m2.max_degree)
    d1, d2 = m1.dims, m2.dims
    offs = [_offsets(d1, d2, n) for n in range(top + 1)]
    dims = [offs[n][-1] for n in range(top + 1)]
    sq = {}
    for n in range(top + 1):
        for i in range(1, top - n + 1):
            b = _Builder(dims[n + i], dims[n])
            for a in range(n + 1):
                if d1[a] * d2[n - a] == 0:
                    continue
                for j in range(i + 1):
                    blk = m1.sq_matrix(j, a).kron(m2.sq_matrix(i - j, n - a))
                    b.place(blk, offs[n + i][a + j], offs[n][a])
            sq[(i, n)] = b.build()
    u = None
    if m1.has_u or m2.has_u:
        u = {}
        for n in range(top):
            b = _Builder(dims[n + 1], dims[n])
            for a in range(n + 1):
                if d1[a] * d2[n - a] == 0:
                    continue
                if m1.has_u:
                    blk = m1.u_matrix(a).kron(F2Matrix.identity(d2[n - a]))
                    b.place(blk, offs[n + 1][a + 1], offs[n][a])
                if m2.has_u:
                    blk = F2Matrix.identity(d1[a]).kron(m2.u_matrix(n - a))
                    b.place(blk, offs[n + 1][a], offs[n][a])
            u[n] = b.build()
    return TruncatedUnstableModule(top, dims, sq, u, None, f"{m1.name}(x){m2.name}")


def _tensor_index(m: TruncatedUnstableModule, offs: list[int], a: int, x: int, b: int, y: int) -> int:
    return offs[a] + x * m.dims[b] + y


@dataclass
class Embedded:
    """A submodule given by inclusion matrices into an ambient module."""

    module: TruncatedUnstableModule
    ambient: TruncatedUnstableModule
    inclusion: dict[int, F2Matrix]


def _induce_sq(
    ambient: TruncatedUnstableModule, inclusion: dict[int, F2Matrix], top: int
) -> dict[tuple[int, int], F2Matrix]:
    spaces = {n: ColumnSpace(inclusion[n]) for n in range(top + 1)}
    sq = {}
    for n in range(top + 1):
        for i in range(1, top - n + 1):
            sq[(i, n)] = spaces[n + i].induce(ambient.sq_matrix(i, n), inclusion[n])
    return sq


def sym2_invariants(m: TruncatedUnstableModule) -> TruncatedUnstableModule:
    """``(M (x) M)`` invariants under the swap.

    Basis in each degree: ``x(x)y + y(x)x`` for ``x < y``, then ``x(x)x``;
    elements are ordered by degree, then index.
    """
    return sym2_embedding(m).module


def _sym2_basis(m: TruncatedUnstableModule, n: int) -> tuple[list[tuple], list[tuple]]:
    pairs = []
    diags = []
    for a in range(n + 1):
        b = n - a
        if a > b:
            break
        for x in range(m.dims[a]):
            for y in range(m.dims[b]):
                if (a, x) < (b, y):
                    pairs.append((a, x, b, y))
                elif (a, x) == (b, y):
                    diags.append((a, x))
    return pairs, diags


def sym2_embedding(m: TruncatedUnstableModule) -> Embedded:
    top = m.max_degree
    amb = tensor(m, m)
    offs = [_offsets(m.dims, m.dims, n) for n in range(top + 1)]
    dims = []
    inclusion = {}
    readoff = {}
    for n in range(top + 1):
        pairs, diags = _sym2_basis(m, n)
        dim = len(pairs) + len(diags)
        dims.append(dim)
        inc = _Builder(amb.dims[n], dim)
        proj = _Builder(dim, amb.dims[n])
        for k, (a, x, b, y) in enumerate(pairs):
            p = _tensor_index(m, offs[n], a, x, b, y)
            inc.set(p, k)
            inc.set(_tensor_index(m, offs[n], b, y, a, x), k)
            proj.set(k, p)
        for k, (a, x) in enumerate(diags, start=len(pairs)):
            p = _tensor_index(m, offs[n], a, x, a, x)
            inc.set(p, k)
            proj.set(k, p)
        inclusion[n] = inc.build()
        readoff[n] = proj.build()

    def restrict(op: F2Matrix, n_src: int, n_dst: int) -> F2Matrix:
        res = readoff[n_dst] @ op @ inclusion[n_src]
        if inclusion[n_dst] @ res != op @ inclusion[n_src]:
            raise ArithmeticError("operation does not preserve the swap invariants")
        return res

    sq = {(i, n): restrict(amb.sq_matrix(i, n), n, n + i) for n in range(top + 1) for i in range(1, top - n + 1)}
    u = None
    if m.has_u:
        u = {n: restrict(amb.u_matrix(n), n, n + 1) for n in range(top)}
    module = TruncatedUnstableModule(top, dims, sq, u, None, f"Sym2inv({m.name})")
    return Embedded(module, amb, inclusion)


def _r1_basis(m: TruncatedUnstableModule, d: int) -> list[tuple[int, int, int]]:
    """``(j, |x|, x)`` for the basis ``u^j St_1 x`` in degree ``d``."""
    out = []
    for k in range(d // 2 + 1):
        for x in range(m.dims[k]):
            out.append((d - 2 * k, k, x))
    return out


def r1(m: TruncatedUnstableModule) -> TruncatedUnstableModule:
    """The free ``F2[u]``-module on ``St_1 x = sum_i u^(|x|-i) (x) Sq^i x`` inside ``P (x) M``.

    Basis ``u^j St_1 x`` ordered by ``|x|``, then the index of ``x``; ``u`` acts
    by raising ``j``.
    """
    return r1_embedding(m).module


def r1_embedding(m: TruncatedUnstableModule) -> Embedded:
    top = m.max_degree
    p = polynomial_p(top)
    amb = tensor(p, m.without_u())
    offs = [_offsets(p.dims, m.dims, n) for n in range(top + 1)]
    inclusion = {}
    dims = []
    for d in range(top + 1):
        basis = _r1_basis(m, d)
        dims.append(len(basis))
        b = _Builder(amb.dims[d], len(basis))
        for col, (j, k, x) in enumerate(basis):
            for i in range(k + 1):
                image = m.sq_matrix(i, k).column_bits(x)
                a = j + k - i
                base = offs[d][a]
                while image:
                    low = image & -image
                    b.set(base + low.bit_length() - 1, col)
                    image ^= low
        inclusion[d] = b.build()
    sq = _induce_sq(amb, inclusion, top)
    u = {}
    for d in range(top):
        src = _r1_basis(m, d)
        dst = {key: k for k, key in enumerate(_r1_basis(m, d + 1))}
        u[d] = F2Matrix.from_columns([1 << dst[(j + 1, k, x)] for j, k, x in src], dims[d + 1])
    module = TruncatedUnstableModule(top, dims, sq, u, None, f"R1({m.name})")
    return Embedded(module, amb, inclusion)


@dataclass
class QuadraticParts:
    """The pieces of the fiber product, with the kernel inclusions into ``Inv + R1``."""

    module: TruncatedUnstableModule
    invariants: TruncatedUnstableModule
    r1: TruncatedUnstableModule
    phi: TruncatedUnstableModule
    nu: dict[int, F2Matrix]
    rho: dict[int, F2Matrix]
    inclusion: dict[int, F2Matrix] = field(repr=False)


def _nu(m: TruncatedUnstableModule, n: int, inv_dim: int) -> F2Matrix:
    pairs, diags = _sym2_basis(m, n)
    target = m.dims[n // 2] if n % 2 == 0 else 0
    b = _Builder(target, inv_dim)
    for k, (a, x) in enumerate(diags, start=len(pairs)):
        b.set(x, k)
    return b.build()


def _rho(m: TruncatedUnstableModule, d: int) -> F2Matrix:
    basis = _r1_basis(m, d)
    target = m.dims[d // 2] if d % 2 == 0 else 0
    b = _Builder(target, len(basis))
    for col, (j, k, x) in enumerate(basis):
        if j == 0:
            b.set(x, col)
    return b.build()


def quadratic_parts(m: TruncatedUnstableModule, *, decorated: bool = False) -> QuadraticParts:
    top = m.max_degree
    inv = sym2_embedding(m).module
    rr = r1_embedding(m).module
    ph = phi(m, top)
    nu = {n: _nu(m, n, inv.dims[n]) for n in range(top + 1)}
    rho = {n: _rho(m, n) for n in range(top + 1)}
    inclusion = {n: kernel_matrix(nu[n].hstack(rho[n])) for n in range(top + 1)}
    dims = [inclusion[n].ncols for n in range(top + 1)]
    spaces = {n: ColumnSpace(inclusion[n]) for n in range(top + 1)}
    sq = {}
    for n in range(top + 1):
        for i in range(1, top - n + 1):
            op = block_diag(inv.sq_matrix(i, n), rr.sq_matrix(i, n))
            sq[(i, n)] = spaces[n + i].induce(op, inclusion[n])
    u = None
    if decorated:
        if not m.has_u:
            raise ValueError("the decorated construction needs a module with u-multiplication")
        u = {}
        for n in range(top):
            op = block_diag(inv.u_matrix(n), F2Matrix.zero(rr.dims[n + 1], rr.dims[n]))
            try:
                u[n] = spaces[n + 1].induce(op, inclusion[n])
            except ValueError as exc:
                raise ArithmeticError(f"u does not preserve the fiber product in degree {n}") from exc
    module = TruncatedUnstableModule(top, dims, sq, u, None, f"Q({m.name})")
    return QuadraticParts(module, inv, rr, ph, nu, rho, inclusion)


def quadratic(m: TruncatedUnstableModule) -> TruncatedUnstableModule:
    """Fiber product of ``(M (x) M)^swap -> Phi M <- R1 M``, computed degreewise as a kernel."""
    return quadratic_parts(m.without_u()).module


def quadratic_p_decorated(m: TruncatedUnstableModule) -> TruncatedUnstableModule:
    """As :func:`quadratic`, with ``u`` acting by ``(u(x)1 + 1(x)u, 0)`` on the two components."""
    return quadratic_parts(m, decorated=True).module


def tau(m: TruncatedUnstableModule) -> TruncatedUnstableModule:
    """The ``P``-trivial part ``{x : u x = 0}``.

    Only degrees ``< N`` are known, so the result is truncated at ``N - 1``.
    """
    if not m.has_u:
        raise ValueError("tau needs a module with u-multiplication")
    if m.max_degree < 1:
        raise ValueError("tau needs at least one degree of u-multiplication")
    top = m.max_degree - 1
    inclusion = {n: kernel_matrix(m.u_matrix(n)) for n in range(top + 1)}
    try:
        sq = _induce_sq(m, inclusion, top)
    except ValueError as exc:
        raise ArithmeticError("Steenrod squares leave the kernel of u") from exc
    dims = [inclusion[n].ncols for n in range(top + 1)]
    u = {n: F2Matrix.zero(dims[n + 1], dims[n]) for n in range(top)}
    return TruncatedUnstableModule(top, dims, sq, u, None, f"tau({m.name})")


def gysin_dims(m: TruncatedUnstableModule) -> list[int]:
    """``dim coker(u)_n + dim ker(u)_n`` for ``n < N``: the cohomology of the double cover."""
    if not m.has_u:
        raise ValueError("gysin_dims needs a module with u-multiplication")
    out = []
    for n in range(m.max_degree):
        incoming = rank(m.u_matrix(n - 1)) if n > 0 else 0
        outgoing = rank(m.u_matrix(n))
        out.append((m.dims[n] - incoming) + (m.dims[n] - outgoing))
    return out


# -- Sylow models -----------------------------------------------------


@lru_cache(maxsize=32)
def sylow_power_module(k: int, max_degree: int) -> TruncatedUnstableModule:
    """Model of ``H*`` of the Sylow of ``Sym(2^k)`` with its signature class as ``u``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return trivial_module(max_degree, with_u=True)
    mod = polynomial_p(max_degree)
    for _ in range(k - 1):
        mod = quadratic_p_decorated(mod)
    mod.name = f"H*S_{2 ** k}"
    return mod


def sylow_symmetric_module(n: int, max_degree: int) -> TruncatedUnstableModule:
    """Model for the Sylow of ``Sym(n)``: tensor product over the binary digits of ``n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    digits = [k for k in range(n.bit_length() - 1, -1, -1) if (n >> k) & 1]
    if not digits:
        return trivial_module(max_degree, with_u=True)
    mod = sylow_power_module(digits[0], max_degree)
    for k in digits[1:]:
        mod = tensor(mod, sylow_power_module(k, max_degree))
    mod.name = f"H*S_{n}"
    return mod


# -- checks -----------------------------------------------------------


def adem_terms(a: int, b: int) -> list[tuple[int, int]]:
    """``Sq^a Sq^b = sum Sq^(a+b-j) Sq^j`` over the returned pairs, for ``a < 2b``."""
    if not 0 < a < 2 * b:
        raise ValueError("Adem relation needs 0 < a < 2b")
    return [(a + b - j, j) for j in range(a // 2 + 1) if _binom2(b - 1 - j, a - 2 * j)]


def check_adem(m: TruncatedUnstableModule) -> list[str]:
    bad = []
    top = m.max_degree
    for n in range(top + 1):
        for b in range(1, top - n + 1):
            for a in range(1, min(2 * b, top - n - b + 1)):
                lhs = m.sq_matrix(a, n + b) @ m.sq_matrix(b, n)
                rhs = F2Matrix.zero(*lhs.shape)
                for c, j in adem_terms(a, b):
                    rhs = rhs + m.sq_matrix(c, n + j) @ m.sq_matrix(j, n)
                if lhs != rhs:
                    bad.append(f"Sq^{a}Sq^{b} on degree {n}")
    return bad


def check_instability(m: TruncatedUnstableModule) -> list[str]:
    return [f"Sq^{i} on degree {n} is nonzero" for (i, n), mat in sorted(m.sq.items()) if i > n and not mat.is_zero()]


def check_u_compatibility(m: TruncatedUnstableModule) -> list[str]:
    """``Sq^i(u x) = u Sq^i x + u^2 Sq^(i-1) x`` wherever all terms are in range."""
    if not m.has_u:
        return []
    bad = []
    top = m.max_degree
    for n in range(top):
        for i in range(1, top - n):
            lhs = m.sq_matrix(i, n + 1) @ m.u_matrix(n)
            rhs = m.u_matrix(n + i) @ m.sq_matrix(i, n) + m.u_matrix(n + i) @ m.u_matrix(n + i - 1) @ m.sq_matrix(
                i - 1, n
            )
            if lhs != rhs:
                bad.append(f"Sq^{i}(u x) on degree {n}")
    return bad


def check_reduced(m: TruncatedUnstableModule, through: int) -> list[str]:
    """``Sq_0 = Sq^n`` on degree ``n`` injective for ``1 <= n <= through``."""
    if 2 * through > m.max_degree:
        raise ValueError(f"reducedness through degree {through} needs truncation >= {2 * through}")
    return [
        f"Sq_0 not injective on degree {n}"
        for n in range(1, through + 1)
        if rank(m.sq_matrix(n, n)) != m.dims[n]
    ]


def module_checks(m: TruncatedUnstableModule) -> dict[str, list[str]]:
    return {
        "adem": check_adem(m),
        "instability": check_instability(m),
        "u_compatibility": check_u_compatibility(m),
        "reduced": check_reduced(m, m.max_degree // 2),
    }


def monomial_count(d: int, n: int) -> int:
    return comb(n + d - 1, d - 1) if d else int(n == 0)

