"""Additive secret sharing over the 64-bit ring Z_2^64.

Scalar values are plain Python ints in [0, 2**64); bulk values are numpy
uint64 arrays. All arithmetic wraps modulo 2**64, matching two-server
additive sharing where a secret x is held as shares (r, x - r).

Correlated randomness (share masks and multiplication groups) comes from a
seeded trusted dealer, standing in for an oblivious-transfer offline phase.
A multiplication group carries shares of (x, y, z, xyz, xy, xz, yz) and is
consumed by one three-way product of shared values.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

RING_BITS = 64
RING_MOD = 1 << RING_BITS
MASK = RING_MOD - 1
_SIGN = 1 << (RING_BITS - 1)

RingElement = int


class MGReuseError(RuntimeError):
    """A multiplication group was offered to a second multiplication."""


def encode_signed(value: int) -> RingElement:
    """Two's-complement encoding of a possibly negative integer."""
    return value & MASK


def decode_signed(element: RingElement) -> int:
    """Inverse of encode_signed."""
    element &= MASK
    return element - RING_MOD if element >= _SIGN else element


class SharePair(NamedTuple):
    """Additive shares of one ring element: server 1 holds s1, server 2 s2."""

    s1: RingElement
    s2: RingElement


class DealerRng:
    """Seeded stream of uniform ring elements.

    Same (seed, path) always yields the same stream, so share masks and
    multiplication groups are reproducible run to run. ``derive`` gives an
    independent substream, used to hand each worker or trial its own stream.
    """

    def __init__(self, seed: int, *path: int):
        self.seed = int(seed)
        self.path = tuple(int(p) for p in path)
        seq = np.random.SeedSequence([self.seed, *self.path])
        self._gen = np.random.Generator(np.random.PCG64(seq))

    def derive(self, *path: int) -> "DealerRng":
        return DealerRng(self.seed, *self.path, *path)

    def element(self) -> RingElement:
        return int(self._gen.integers(0, RING_MOD, dtype=np.uint64))

    def elements(self, shape) -> np.ndarray:
        """Uniform uint64 array; consumes one raw draw per element."""
        return self._gen.integers(0, RING_MOD, size=shape, dtype=np.uint64)


def share_with_mask(secret: int, mask: int) -> SharePair:
    """Split a secret using an explicit mask: (mask, secret - mask)."""
    return SharePair(mask & MASK, (secret - mask) & MASK)


def share(secret: int, rng: DealerRng) -> SharePair:
    """Split a secret into two uniform additive shares."""
    return share_with_mask(secret, rng.element())


def reconstruct(pair: SharePair) -> RingElement:
    return (pair.s1 + pair.s2) & MASK


def add_local(a: SharePair, b: SharePair) -> SharePair:
    """Each server adds its shares locally; reconstructs to the wrapped sum."""
    return SharePair((a.s1 + b.s1) & MASK, (a.s2 + b.s2) & MASK)


@dataclass
class MultiplicationGroup:
    """Dealer-issued shares of (x, y, z, w=xyz, o=xy, p=xz, q=yz).

    Single use: reusing a group would open two values masked by the same
    x/y/z, leaking their difference.
    """

    x: SharePair
    y: SharePair
    z: SharePair
    w: SharePair
    o: SharePair
    p: SharePair
    q: SharePair
    consumed: bool = False


def _build_mg(x: int, y: int, z: int, masks) -> MultiplicationGroup:
    w = (x * y * z) & MASK
    o = (x * y) & MASK
    p = (x * z) & MASK
    q = (y * z) & MASK
    mx, my, mz, mw, mo, mp, mq = (int(m) for m in masks)
    return MultiplicationGroup(
        x=share_with_mask(x, mx),
        y=share_with_mask(y, my),
        z=share_with_mask(z, mz),
        w=share_with_mask(w, mw),
        o=share_with_mask(o, mo),
        p=share_with_mask(p, mp),
        q=share_with_mask(q, mq),
    )


def deal_mg(rng: DealerRng) -> MultiplicationGroup:
    """Draw one multiplication group: x, y, z uniform, then 7 share masks.

    Consumes exactly 10 stream elements, in the same order as one row of
    the batched dealer draw used by the counting loop.
    """
    d = rng.elements(10)
    return _build_mg(int(d[0]), int(d[1]), int(d[2]), d[3:])


def mg_from_values(x: int, y: int, z: int, rng: DealerRng) -> MultiplicationGroup:
    """Multiplication group for forced x, y, z (test hook; 7 mask draws)."""
    return _build_mg(x & MASK, y & MASK, z & MASK, rng.elements(7))


class OpeningChannel:
    """Exchange point for values the two servers jointly open.

    Every cross-server opening during a multiplication goes through here, so
    a transcript of what each server learns (its own shares plus the opened
    e, f, g) can be audited. Recording is off by default; the opened arrays
    for a full count would dwarf the inputs.
    """

    def __init__(self, record: bool = False):
        self.openings = 0
        self.record = record
        self.values: list[int] = []

    def open(self, s1: int, s2: int) -> int:
        value = (s1 + s2) & MASK
        self.openings += 1
        if self.record:
            self.values.append(value)
        return value

    def open_array(self, s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
        value = s1 + s2
        self.openings += int(value.size)
        if self.record:
            self.values.extend(int(v) for v in value)
        return value


def mul3(
    a: SharePair,
    b: SharePair,
    c: SharePair,
    mg: MultiplicationGroup,
    channel: OpeningChannel | None = None,
) -> SharePair:
    """Two-round product of three shared values: reconstructs to a*b*c.

    Round 1: each server blinds its shares with the group's x, y, z shares
    and the servers open e = a - x, f = b - y, g = c - z. Round 2: each
    server evaluates its share of

        d = w + o*g + p*f + q*e + x*f*g + y*e*g + z*e*f + e*f*g

    with the public e*f*g term assigned to server 2 alone. Expanding with
    e = a - x, f = b - y, g = c - z gives d = a*b*c exactly, in the ring.
    """
    if mg.consumed:
        raise MGReuseError("multiplication group already used")
    mg.consumed = True

    e1 = (a.s1 - mg.x.s1) & MASK
    e2 = (a.s2 - mg.x.s2) & MASK
    f1 = (b.s1 - mg.y.s1) & MASK
    f2 = (b.s2 - mg.y.s2) & MASK
    g1 = (c.s1 - mg.z.s1) & MASK
    g2 = (c.s2 - mg.z.s2) & MASK
    if channel is None:
        channel = OpeningChannel()
    e = channel.open(e1, e2)
    f = channel.open(f1, f2)
    g = channel.open(g1, g2)

    fg = f * g
    eg = e * g
    ef = e * f
    u1 = (
        mg.w.s1
        + mg.o.s1 * g
        + mg.p.s1 * f
        + mg.q.s1 * e
        + mg.x.s1 * fg
        + mg.y.s1 * eg
        + mg.z.s1 * ef
    ) & MASK
    u2 = (
        mg.w.s2
        + mg.o.s2 * g
        + mg.p.s2 * f
        + mg.q.s2 * e
        + mg.x.s2 * fg
        + mg.y.s2 * eg
        + mg.z.s2 * ef
        + e * fg
    ) & MASK
    return SharePair(u1, u2)


def mul3_batch(
    a1: np.ndarray,
    a2: np.ndarray,
    b1: np.ndarray,
    b2: np.ndarray,
    c1: np.ndarray,
    c2: np.ndarray,
    draws: np.ndarray,
    channel: OpeningChannel | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized mul3 over m independent triples.

    ``draws`` is the (m, 10) dealer matrix: columns 0..2 are x, y, z,
    columns 3..9 the seven share masks, exactly the layout deal_mg consumes
    one row at a time. Returns per-server output share arrays (u1, u2);
    uint64 arithmetic wraps, which is the ring reduction.
    """
    x = draws[:, 0]
    y = draws[:, 1]
    z = draws[:, 2]
    w = x * y * z
    o = x * y
    p = x * z
    q = y * z
    x1 = draws[:, 3]
    y1 = draws[:, 4]
    z1 = draws[:, 5]
    w1 = draws[:, 6]
    o1 = draws[:, 7]
    p1 = draws[:, 8]
    q1 = draws[:, 9]
    x2 = x - x1
    y2 = y - y1
    z2 = z - z1
    w2 = w - w1
    o2 = o - o1
    p2 = p - p1
    q2 = q - q1

    e1 = a1 - x1
    e2 = a2 - x2
    f1 = b1 - y1
    f2 = b2 - y2
    g1 = c1 - z1
    g2 = c2 - z2
    if channel is None:
        channel = OpeningChannel()
    e = channel.open_array(e1, e2)
    f = channel.open_array(f1, f2)
    g = channel.open_array(g1, g2)

    fg = f * g
    eg = e * g
    ef = e * f
    u1 = w1 + o1 * g + p1 * f + q1 * e + x1 * fg + y1 * eg + z1 * ef
    u2 = w2 + o2 * g + p2 * f + q2 * e + x2 * fg + y2 * eg + z2 * ef + e * fg
    return u1, u2
