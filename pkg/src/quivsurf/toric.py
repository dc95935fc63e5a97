"""Smooth complete toric surfaces with exact intersection theory.

A surface is an ordered cycle of primitive lattice rays in Z^2, sorted
counterclockwise; every adjacent pair must span a basis of the lattice
(determinant +1), which is exactly smoothness plus completeness. The wall
relation v_{i-1} + v_{i+1} = -(D_i^2) v_i pins down the self-intersection
numbers, and everything else (Riemann-Roch, line-bundle cohomology via
lattice points, blow-ups, the numerical Grothendieck group and its Euler
pairing) is derived from the fan by exact integer/rational arithmetic.

Divisors are integer coefficient tuples indexed by rays. Picard-basis
coordinates refer to the first rho = #rays - 2 rays; the remaining two
rays always form a lattice basis, so that choice never degenerates.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, NamedTuple, Sequence

from .linalg import ExactMatrix


class FanError(ValueError):
    """The ray data does not describe a smooth complete fan."""


class ConsistencyError(RuntimeError):
    """An exact identity failed; this signals a bug, not bad input."""


class UnsupportedExtError(ValueError):
    """Ext computation requested outside the supported cases."""


class CohDims(NamedTuple):
    """Sheaf cohomology dimensions (h0, h1, h2) of a line bundle."""

    h0: int
    h1: int
    h2: int


@dataclass(frozen=True)
class KClass:
    """Class in the numerical Grothendieck group: rank, first Chern class,
    and half of the degree-2 Chern character (an integer or half-integer)."""

    rank: int
    c1: tuple
    ch2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(c) for c in self.c1))
        ch2 = Fraction(self.ch2)
        if ch2.denominator not in (1, 2):
            raise ValueError("ch2 must be an integer or half-integer")
        object.__setattr__(self, "ch2", ch2)

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(
            self.rank + other.rank,
            tuple(a + b for a, b in zip(self.c1, other.c1)),
            self.ch2 + other.ch2,
        )

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(
            self.rank - other.rank,
            tuple(a - b for a, b in zip(self.c1, other.c1)),
            self.ch2 - other.ch2,
        )

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and self.ch2 == 0 and all(c == 0 for c in self.c1)


def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _angle_half(v) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi)
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _angle_half(a), _angle_half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = _cross(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def add_divisors(d: Sequence[int], e: Sequence[int]) -> tuple:
    return tuple(a + b for a, b in zip(d, e))


def sub_divisors(d: Sequence[int], e: Sequence[int]) -> tuple:
    return tuple(a - b for a, b in zip(d, e))


def neg_divisor(d: Sequence[int]) -> tuple:
    return tuple(-a for a in d)


class ToricSurface:
    """Smooth complete toric surface built from a list of primitive rays."""

    def __init__(self, rays: Iterable[Sequence[int]]):
        rays = [tuple(int(c) for c in r) for r in rays]
        if len(rays) < 3:
            raise FanError("a complete fan needs at least 3 rays")
        for r in rays:
            if len(r) != 2:
                raise FanError(f"ray {r} is not a lattice vector in Z^2")
            if r == (0, 0) or math.gcd(abs(r[0]), abs(r[1])) != 1:
                raise FanError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise FanError("duplicate rays")
        rays.sort(key=cmp_to_key(_angle_cmp))
        n = len(rays)
        for i in range(n):
            v, w = rays[i], rays[(i + 1) % n]
            det = _cross(v, w)
            if det != 1:
                raise FanError(
                    f"adjacent rays {v} and {w} have determinant {det}; "
                    "a smooth complete fan requires +1 for every consecutive pair"
                )
        self.rays: tuple = tuple(rays)
        selfints = []
        for i in range(n):
            prev_plus_next = add_divisors(rays[i - 1], rays[(i + 1) % n])
            p = _cross(rays[i - 1], rays[(i + 1) % n])
            if prev_plus_next != (p * rays[i][0], p * rays[i][1]):
                raise ConsistencyError(f"wall relation failed at ray {rays[i]}")
            selfints.append(-p)
        self.self_intersections: tuple = tuple(selfints)
        self._h0_cache: dict = {}
        if self.intersect(self.canonical, self.canonical) + n != 12:
            raise ConsistencyError("Noether identity K^2 + #rays = 12 failed")

    # --- basic invariants ---------------------------------------------------

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def picard_rank(self) -> int:
        return len(self.rays) - 2

    @property
    def canonical(self) -> tuple:
        """Canonical divisor -sum(D_i)."""
        return tuple(-1 for _ in self.rays)

    def zero_divisor(self) -> tuple:
        return tuple(0 for _ in self.rays)

    def ray_divisor(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(len(self.rays)))

    def ray_index(self, v: Sequence[int]) -> int:
        return self.rays.index(tuple(v))

    def _check_divisor(self, d: Sequence[int]) -> tuple:
        d = tuple(int(c) for c in d)
        if len(d) != len(self.rays):
            raise ValueError(
                f"divisor has {len(d)} coefficients but the fan has {len(self.rays)} rays"
            )
        return d

    # --- Picard coordinates ---------------------------------------------------

    def pic_basis_indices(self) -> tuple:
        """Ray indices of the chosen Picard basis: the first rho rays.

        The complementary two rays are adjacent in the fan, hence a lattice
        basis, which makes the first rho ray classes independent.
        """
        rho = self.picard_rank
        if _cross(self.rays[-2], self.rays[-1]) == 0:
            raise ConsistencyError("Picard basis re-selection failed")
        return tuple(range(rho))

    def lift_pic(self, coeffs: Sequence[int]) -> tuple:
        """Divisor with the given coefficients on the Picard basis rays,
        zero on the remaining rays."""
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.picard_rank:
            raise ValueError(
                f"expected {self.picard_rank} Picard coordinates, got {len(coeffs)}"
            )
        return coeffs + (0,) * (len(self.rays) - len(coeffs))

    # --- intersection theory --------------------------------------------------

    def intersect(self, d: Sequence[int], e: Sequence[int]) -> int:
        """Intersection number, bilinear in the table D_i.D_j."""
        d = self._check_divisor(d)
        e = self._check_divisor(e)
        n = len(self.rays)
        total = 0
        for i, di in enumerate(d):
            if di == 0:
                continue
            total += di * (
                e[i] * self.self_intersections[i] + e[i - 1] + e[(i + 1) % n]
            )
        return total

    def k_squared(self) -> int:
        return self.intersect(self.canonical, self.canonical)

    def rr_chi(self, d: Sequence[int]) -> int:
        """Euler characteristic by Riemann-Roch: 1 + (D^2 - K.D)/2."""
        d = self._check_divisor(d)
        num = self.intersect(d, d) - self.intersect(self.canonical, d)
        if num % 2 != 0:
            raise ConsistencyError(f"Riemann-Roch parity failed for divisor {d}")
        return 1 + num // 2

    # --- cohomology -------------------------------------------------------------

    def h0_lattice_points(self, d: Sequence[int]) -> int:
        """Global sections = lattice points of {m : <m, v_i> >= -d_i for all i}.

        The polytope is compact because the rays positively span the plane;
        its vertices lie among the pairwise intersections of the boundary
        lines, so enumerating the integer bounding box of those intersection
        points is exhaustive.
        """
        d = self._check_divisor(d)
        cached = self._h0_cache.get(d)
        if cached is not None:
            return cached
        rays = self.rays
        n = len(rays)
        xs, ys = [], []
        for i in range(n):
            for j in range(i + 1, n):
                det = _cross(rays[i], rays[j])
                if det == 0:
                    continue
                # solve <m, v_i> = -d_i, <m, v_j> = -d_j
                xs.append(Fraction(d[j] * rays[i][1] - d[i] * rays[j][1], det))
                ys.append(Fraction(d[i] * rays[j][0] - d[j] * rays[i][0], det))
        count = 0
        if xs:
            for x in range(math.ceil(min(xs)), math.floor(max(xs)) + 1):
                for y in range(math.ceil(min(ys)), math.floor(max(ys)) + 1):
                    if all(x * v[0] + y * v[1] >= -di for v, di in zip(rays, d)):
                        count += 1
        self._h0_cache[d] = count
        return count

    def cohomology(self, d: Sequence[int]) -> CohDims:
        """Cohomology of O(D): h0 and h2 by lattice counts (h2 via duality
        against K - D), h1 forced by Riemann-Roch."""
        d = self._check_divisor(d)
        h0 = self.h0_lattice_points(d)
        h2 = self.h0_lattice_points(sub_divisors(self.canonical, d))
        h1 = h0 + h2 - self.rr_chi(d)
        if h1 < 0:
            raise ConsistencyError(f"negative h1 for divisor {d}")
        return CohDims(h0, h1, h2)

    # --- blow-ups ------------------------------------------------------------

    def blow_up(self, wall: int) -> "ToricSurface":
        """Blow up the torus-fixed point of the cone spanned by rays
        wall and wall+1 (cyclically): insert their sum as a new ray."""
        n = len(self.rays)
        i = wall % n
        v = add_divisors(self.rays[i], self.rays[(i + 1) % n])
        return ToricSurface(self.rays + (v,))

    # --- K-theory classes -------------------------------------------------------

    def kclass_line(self, d: Sequence[int]) -> KClass:
        d = self._check_divisor(d)
        return KClass(1, d, Fraction(self.intersect(d, d), 2))

    def kclass_curve(self, c: Sequence[int]) -> KClass:
        """Class of the structure sheaf of an effective invariant curve,
        from the ideal-sheaf presentation of O_C."""
        c = self._check_divisor(c)
        if all(x == 0 for x in c) or any(x < 0 for x in c):
            raise ValueError("curve class must be a nonzero effective divisor")
        return KClass(0, c, -Fraction(self.intersect(c, c), 2))

    def kclass_point(self) -> KClass:
        return KClass(0, self.zero_divisor(), Fraction(1))

    def euler_pairing(self, x: KClass, y: KClass) -> int:
        """Euler pairing via Riemann-Roch on classes.

        chi(x, y) = r_x ch2_y + r_y ch2_x - c1_x.c1_y
                    - (K/2).(r_x c1_y - r_y c1_x) + r_x r_y.
        """
        k = self.canonical
        mixed = tuple(x.rank * b - y.rank * a for a, b in zip(x.c1, y.c1))
        val = (
            x.rank * y.ch2
            + y.rank * x.ch2
            - self.intersect(x.c1, y.c1)
            - Fraction(self.intersect(k, mixed), 2)
            + x.rank * y.rank
        )
        if val.denominator != 1:
            raise ConsistencyError(f"non-integral Euler pairing {val}")
        return int(val)

    def serre_twist(self, x: KClass) -> KClass:
        """Twist by the canonical bundle; the shift acts trivially on classes."""
        k = self.canonical
        return KClass(
            x.rank,
            tuple(c + x.rank * kc for c, kc in zip(x.c1, k)),
            x.ch2 + self.intersect(x.c1, k) + Fraction(x.rank * self.k_squared(), 2),
        )

    def knum_basis(self) -> tuple:
        """Ordered basis of the numerical Grothendieck group:
        point class, the rho Picard-basis curve sheaves, structure sheaf."""
        classes = [self.kclass_point()]
        classes += [self.kclass_curve(self.ray_divisor(i)) for i in self.pic_basis_indices()]
        classes.append(self.kclass_line(self.zero_divisor()))
        return tuple(classes)

    def knum_gram(self) -> ExactMatrix:
        """(rho+2)-square Euler-pairing Gram matrix in the knum basis."""
        basis = self.knum_basis()
        return ExactMatrix.from_rows(
            [[self.euler_pairing(x, y) for y in basis] for x in basis]
        )

    # --- Ext dimensions for mixed pairs ----------------------------------------

    def ext_line_to_curve(self, a: Sequence[int], ray: int) -> tuple:
        """Ext^*(O(A), O_C) for the invariant curve C of one ray: the
        cohomology of O(-A.C) on that rational curve."""
        a = self._check_divisor(a)
        t = self.intersect(a, self.ray_divisor(ray))
        return (max(0, 1 - t), max(0, t - 1), 0)

    def ext_curve_to_line(self, ray: int, a: Sequence[int]) -> tuple:
        """Ext^*(O_C, O(A)) by Serre duality on the surface: the dual of
        H^(2-*) of O((K-A).C) on the curve."""
        a = self._check_divisor(a)
        d = self.intersect(sub_divisors(self.canonical, a), self.ray_divisor(ray))
        return (0, max(0, -d - 1), max(0, d + 1))

    def ext_curve_pair(self, ray_i: int, ray_j: int) -> tuple:
        """Ext^*(O_C, O_C') for invariant ray curves, supported when the
        curves are equal or disjoint.

        For C = C' the ideal-sheaf resolution gives a long exact sequence
        whose connecting maps vanish (they are multiplication by the
        defining section, which is zero on C), leaving
        (1, h0(O_C(C)), h1(O_C(C))).
        """
        n = len(self.rays)
        if ray_i == ray_j:
            c2 = self.self_intersections[ray_i]
            return (1, max(0, c2 + 1), max(0, -c2 - 1))
        if (ray_j - ray_i) % n in (1, n - 1):
            raise UnsupportedExtError(
                f"invariant curves of rays {ray_i} and {ray_j} intersect; "
                "only equal or disjoint curve pairs are supported"
            )
        return (0, 0, 0)

    # --- misc -----------------------------------------------------------------

    def self_intersection_cycle(self) -> tuple:
        return self.self_intersections

    def __eq__(self, other) -> bool:
        return isinstance(other, ToricSurface) and self.rays == other.rays

    def __hash__(self) -> int:
        return hash(self.rays)

    def __repr__(self) -> str:
        return f"ToricSurface(rays={list(self.rays)})"


# --- presets -----------------------------------------------------------------


def projective_plane() -> ToricSurface:
    return ToricSurface([(1, 0), (0, 1), (-1, -1)])


def p1xp1() -> ToricSurface:
    return ToricSurface([(1, 0), (0, 1), (-1, 0), (0, -1)])


def hirzebruch(n: int) -> ToricSurface:
    """The ruled surface F_n; F_0 is the quadric P1 x P1."""
    if n < 0:
        raise ValueError("Hirzebruch index must be nonnegative")
    return ToricSurface([(1, 0), (0, 1), (-1, n), (0, -1)])


def blowup_p2(k: int) -> ToricSurface:
    """P^2 blown up in k torus-fixed points, k <= 3, with the standard fans."""
    fans = {
        1: [(1, 0), (1, 1), (0, 1), (-1, -1)],
        2: [(1, 0), (0, 1), (-1, 0), (-1, -1), (0, -1)],
        3: [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)],
    }
    if k not in fans:
        raise ValueError("blowup_p2 supports k in {1,2,3}; use blow_up for more")
    return ToricSurface(fans[k])


PRESETS = {
    "P2": projective_plane,
    "P1xP1": p1xp1,
    "F0": p1xp1,
    "F1": lambda: hirzebruch(1),
    "F2": lambda: hirzebruch(2),
    "F3": lambda: hirzebruch(3),
    "Bl1P2": lambda: blowup_p2(1),
    "Bl2P2": lambda: blowup_p2(2),
    "Bl3P2": lambda: blowup_p2(3),
    "dP6": lambda: blowup_p2(3),
}


def preset(name: str) -> ToricSurface:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown surface preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        ) from None


def random_blowup_surface(rng: random.Random, max_blowups: int = 6) -> ToricSurface:
    """Random iterated toric blow-up of P2, P1 x P1 or F2."""
    s = preset(rng.choice(("P2", "P1xP1", "F2")))
    for _ in range(rng.randint(0, max_blowups)):
        s = s.blow_up(rng.randrange(s.n_rays))
    return s


# --- JSON interchange -----------------------------------------------------------


def fan_to_json(s: ToricSurface) -> dict:
    return {"rays": [list(r) for r in s.rays]}


def fan_from_json(data: dict) -> ToricSurface:
    try:
        rays = [tuple(int(c) for c in r) for r in data["rays"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed fan JSON: {exc}") from exc
    return ToricSurface(rays)


def divisor_from_json(s: ToricSurface, data) -> tuple:
    """Divisor from a JSON value: a plain list of ray coefficients, or
    {"pic": [...]} in Picard-basis coordinates."""
    if isinstance(data, dict):
        if set(data) != {"pic"}:
            raise ValueError("divisor object must have exactly the key 'pic'")
        return s.lift_pic([int(c) for c in data["pic"]])
    if isinstance(data, (list, tuple)):
        return s._check_divisor([int(c) for c in data])
    raise ValueError("divisor must be a coefficient list or a {'pic': [...]} object")
