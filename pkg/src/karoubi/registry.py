"""A fixed catalogue of ex-functors and ex-natural transformations on ``Mat(R)``.

Additive endofunctors of a matrix category are, up to isomorphism, the
"repeat each block ``k`` times" functors, so the catalogue holds those,
a conjugation functor that moves matrices by a fixed unipotent, zero-Gamma
variants for negative tests, and a sign-flipped completion as a mutant.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .category import FunctorValue, NatTransValue, identity_functor
from .exfunctors import ExFunctor, ExNatTrans, complete_exfunctor
from .extensions import HomBifunctor, TildeBifunctor, TildeExtension
from .linalg import inverse
from .matrix import MatCategory, Matrix


def repeat_functor(cat: MatCategory, k: int) -> FunctorValue:
    """``D_k``: ``n -> kn`` and ``M -> M + ... + M`` (``k`` diagonal blocks)."""
    if k == 1:
        return FunctorValue(cat, cat, lambda n: n, lambda M: M, name="D1")
    return FunctorValue(cat, cat, lambda n: k * n, lambda M: M.repeat_diag(k), name=f"D{k}")


@lru_cache(maxsize=None)
def unipotent(ring, n: int):
    """``U_n = I + N`` with ``N`` the superdiagonal, and its inverse."""
    rows = [[ring.one if j in (i, i + 1) else ring.zero for j in range(n)] for i in range(n)]
    U = Matrix(ring, n, n, rows) if n else Matrix(ring, 0, 0)
    return U, inverse(U)


def conj_functor(cat: MatCategory) -> FunctorValue:
    R = cat.ring

    def on_mor(M):
        return unipotent(R, M.rows)[0] @ M @ unipotent(R, M.cols)[1]

    return FunctorValue(cat, cat, lambda n: n, on_mor, name="conj")


def block_injection(ring, n, k, j):
    """``n -> kn`` onto block ``j``."""
    return Matrix(ring, j * n, n).vstack(Matrix.identity(ring, n)).vstack(Matrix(ring, (k - j - 1) * n, n))


def block_shift(ring, n, k):
    """Cyclic block permutation ``kn -> kn`` sending block ``i`` to block ``i + 1``."""
    out = Matrix(ring, k * n, k * n)
    for i in range(k):
        E = block_injection(ring, n, k, (i + 1) % k) @ block_injection(ring, n, k, i).T
        out = out + E
    return out


@dataclass(frozen=True, eq=False)
class NatEntry:
    """A registered ex-natural transformation and whether the defining equation holds."""

    exnat: ExNatTrans
    valid: bool


class Registry:
    """Ex-functors ``Mat(R) -> Mat(R)`` for the Hom bifunctor, with natural transformations."""

    def __init__(self, ring):
        self.ring = ring
        self.cat = MatCategory(ring)
        self.E = HomBifunctor(self.cat)
        self.T = TildeBifunctor(self.E)
        cat, E = self.cat, self.E
        idf = identity_functor(cat)
        idf = FunctorValue(cat, cat, idf.on_objects, idf.on_morphisms, name="identity")
        funcs = {
            "identity": idf,
            "double": repeat_functor(cat, 2),
            "triple": repeat_functor(cat, 3),
            "zero": repeat_functor(cat, 0),
            "conj": conj_functor(cat),
        }
        self.functors = funcs
        self.exfunctors = {}
        for name, F in funcs.items():
            self.exfunctors[name] = ExFunctor(F, F.mor, E, E, name=name)
        for name in ("identity", "double", "conj"):
            F = funcs[name]
            zero_gamma = (lambda F: lambda x: Matrix(ring, F.obj(x.rows), F.obj(x.cols)))(F)
            self.exfunctors[f"{name}/zero-gamma"] = ExFunctor(F, zero_gamma, E, E, name=f"{name}/zero-gamma")
        self.nattrans = self._build_nattrans()

    def ex(self, name) -> ExFunctor:
        return self.exfunctors[name]

    def _nt(self, name, src, tgt, comp, valid=True):
        S, T = self.exfunctors[src], self.exfunctors[tgt]
        return NatEntry(ExNatTrans(NatTransValue(S.F, T.F, comp, name=name), S, T, name=name), valid)

    def _build_nattrans(self):
        R = self.ring
        I = lambda n: Matrix.identity(R, n)  # noqa: E731
        lam = R.coerce(3)
        out = {}

        def add(entry):
            out[entry.exnat.name] = entry

        for name, F in self.exfunctors.items():
            add(self._nt(f"id[{name}]", name, name, (lambda F: lambda n: I(F.F.obj(n)))(F)))
        add(self._nt("zero:identity=>double", "identity", "double", lambda n: Matrix(R, 2 * n, n)))
        add(self._nt("zero:double=>identity/zero-gamma", "double", "identity/zero-gamma", lambda n: Matrix(R, n, 2 * n)))
        add(self._nt("scalar:identity", "identity", "identity", lambda n: I(n).scale(lam)))
        add(self._nt("scalar:double", "double", "double", lambda n: I(2 * n).scale(lam)))
        for k, fname in ((2, "double"), (3, "triple")):
            for j in range(k):
                add(self._nt(f"iota{j}:identity=>{fname}", "identity", fname,
                             (lambda j, k: lambda n: block_injection(R, n, k, j))(j, k)))
                add(self._nt(f"p{j}:{fname}=>identity", fname, "identity",
                             (lambda j, k: lambda n: block_injection(R, n, k, j).T)(j, k)))

        def diagonal(n, k=2):
            out = Matrix(R, k * n, n)
            for j in range(k):
                out = out + block_injection(R, n, k, j)
            return out

        add(self._nt("diagonal:identity=>double", "identity", "double", diagonal))
        add(self._nt("codiagonal:double=>identity", "double", "identity", lambda n: diagonal(n).T))
        add(self._nt("shift:triple=>triple", "triple", "triple", lambda n: block_shift(R, n, 3)))
        add(self._nt("U:identity=>conj", "identity", "conj", lambda n: unipotent(R, n)[0]))
        add(self._nt("Uinv:conj=>identity", "conj", "identity", lambda n: unipotent(R, n)[1]))
        # natural for the functors, but incompatible with the Gamma parts
        add(self._nt("iota0:identity=>double/zero-gamma", "identity", "double/zero-gamma",
                     lambda n: block_injection(R, n, 2, 0), valid=False))
        add(self._nt("U:identity=>conj/zero-gamma", "identity", "conj/zero-gamma",
                     lambda n: unipotent(R, n)[0], valid=False))
        return out

    def valid_nattrans(self):
        return [e.exnat for e in self.nattrans.values() if e.valid]

    def composable_pairs(self):
        """Pairs ``(b1, b2)`` of valid entries with ``b1: F => G`` and ``b2: G => H``."""
        vs = self.valid_nattrans()
        return [(b1, b2) for b1 in vs for b2 in vs if b1.target.name == b2.source.name]

    def sign_flip_completion(self, name):
        """A wrong ``Gamma~``: ``(F e_A, -Gamma(x), F e_C)``."""
        F = self.exfunctors[name]
        Fm = F.F.mor

        def gamma(t):
            return TildeExtension(Fm(t.e_A), -F.gamma(t.alpha), Fm(t.e_C))

        return complete_exfunctor(F, self.T, self.T, gamma_override=gamma)
