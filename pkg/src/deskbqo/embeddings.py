"""Order-reflecting maps between the structures of this package.

Each map comes with a ``*_target`` helper giving the codomain as an order
expression, so images can be compared with the generic ``leq``.
"""
from __future__ import annotations

from .errors import ContractViolation
from .hset import HSet, HTerm, Ur
from .notations import Eps, EpsTerm, inv_d, inv_e, validate_eps, validate_omega
from .qo import Antichain, Chain, Explicit, Omega, Omega2Dot, OrderSpec, Pf, Sum

STAR = (1, 0)


def _pair(n: int, gamma: int) -> tuple:
    # the set {(0, n), (1, gamma)} in Pf(omega + alpha)
    return ((0, n), (1, gamma))


def h_target(alpha: int) -> Pf:
    return Pf(Pf(Sum(Omega(), Chain(alpha))))


def embed_h(alpha: int, s) -> tuple:
    """omega^alpha -> Pf(Pf(omega + alpha)), position i with exponent a_i
    going to the pair set {(0, i), (1, a_i)}."""
    s = validate_omega(s, alpha)
    return h_target(alpha).canon(_pair(i, a) for i, a in enumerate(s))


def finq_target() -> Pf:
    return Pf(Sum(Omega(), Omega()))


def embed_finq(Q: OrderSpec | int, k: int) -> tuple:
    """k-th element of an n-element quasi order to {(0, k), (1, n - k)}.

    The images form an antichain, so the map reflects any order on Q.
    """
    n = Q if isinstance(Q, int) else _finite_size(Q)
    if not 0 <= k < n:
        raise ContractViolation(f"index {k} out of range for {n} elements")
    return ((0, k), (1, n - k))


def _finite_size(Q: OrderSpec) -> int:
    if isinstance(Q, Explicit):
        return Q.n
    if isinstance(Q, (Chain, Antichain)):
        return Q.k
    return Q.size()


def prod_target(omega: int) -> Pf:
    return Pf(Sum(Chain(omega), Chain(omega)))


def embed_prod(omega: int, p: tuple[int, int]) -> tuple:
    a, b = p
    if not (0 <= a < omega and 0 <= b < omega):
        raise ContractViolation(f"{p} is not a pair over chain:{omega}")
    return ((0, a), (1, b))


def j_base(omega: int, shifted: bool = False) -> OrderSpec:
    """(omega^2 . Omega) + 1, the urelement order of the epsilon embedding.

    The shifted variant uses a chain one longer (see ``embed_j``).
    """
    return Sum(Omega2Dot(Chain(omega + int(shifted))), Antichain(1))


def embed_j(omega: int, t: EpsTerm, shifted: bool = False) -> HTerm:
    """epsilon_Omega -> H_f((omega^2 . Omega) + 1).

    With ``shifted`` every epsilon index is raised by one, so index 0 of
    the urelement chain is used only by terms whose leading branch ends in
    the empty sum. Without the shift such terms share index 0 with eps0 and
    the map fails to reflect the order (eps0 versus ``(())``).
    """
    validate_eps(t, omega)
    return _j(t, int(shifted))


def _j(t: EpsTerm, k: int) -> HTerm:
    star = Ur(STAR)
    if isinstance(t, Eps):
        return HSet([Ur((0, (t.alpha + k, 0, 0))), star])
    e, d = inv_e(t, k), inv_d(t)
    return HSet([star] + [HSet([Ur((0, (e, d, i))), _j(c, k)]) for i, c in enumerate(t.children)])

