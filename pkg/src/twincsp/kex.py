"""Non-interactive and interactive key exchange over the twin construction.

Both protocols give each party a pair of secret conjugators and derive

    k = H(ccs(X1,Y1), ccs(X1,Y2), ccs(X2,Y1), ccs(X2,Y2))

where the X side always denotes the left-subgroup party and the Y side
the right-subgroup party; each of the four values is computable by either
party because opposite subgroups commute.  The non-interactive variant
assumes the publics arrived out of band; the interactive variant ships
them over a framed byte stream and finishes with a key-confirmation round
so that tampering has a testable failure mode (confirmation can be
disabled for derivation-only runs).

Wire format: 4-byte big-endian frame length, 1-byte message type
(0x01 INIT, 0x02 RESP, 0x03 CONFIRM), payload.  INIT/RESP payloads are
two canonical-form serializations, each behind its own 4-byte length
prefix; CONFIRM carries SHA256(key || "confirm" || role byte).  Any
reliable ordered byte stream works as a transport.
"""

from __future__ import annotations

import hashlib
import hmac
import socket
import struct
from dataclasses import dataclass
from enum import Enum

from .braid import BraidWord, CanonicalForm, GroupParams, nf_conjugate, normal_form
from .codec import CodecError, SymKey, hash_elements, read_canonical, serialize_canonical
from .sampling import SeededRng, SubgroupSide, sample_subgroup

MSG_INIT = 0x01
MSG_RESP = 0x02
MSG_CONFIRM = 0x03

ROLE_BYTE = {"initiator": b"\x01", "responder": b"\x02"}

MAX_FRAME = 1 << 20


class ProtocolError(Exception):
    """Malformed frame, unexpected message type, or truncated stream."""


class KeyConfirmError(Exception):
    """The peer's confirmation tag did not verify."""


class Role(Enum):
    INITIATOR = "initiator"
    RESPONDER = "responder"


@dataclass(frozen=True)
class NikePublic:
    side: SubgroupSide
    elements: tuple[CanonicalForm, CanonicalForm]


@dataclass(frozen=True)
class NikeIdentity:
    """A party's long-term material: two secrets and their public conjugates."""

    params: GroupParams
    side: SubgroupSide
    secrets: tuple[BraidWord, BraidWord]
    publics: tuple[CanonicalForm, CanonicalForm]

    @property
    def public(self) -> NikePublic:
        return NikePublic(self.side, self.publics)


def nike_keygen(params: GroupParams, side: SubgroupSide, rng: SeededRng) -> NikeIdentity:
    g_nf = normal_form(params.g)
    w1 = sample_subgroup(params, side, rng)
    w2 = sample_subgroup(params, side, rng)
    return NikeIdentity(params, side, (w1, w2), (nf_conjugate(g_nf, w1), nf_conjugate(g_nf, w2)))


def _four_shared(me: NikeIdentity, peer: NikePublic) -> list[CanonicalForm]:
    """The four shared conjugates in the fixed order ccs(X_i, Y_j), i outer."""
    if peer.side is me.side:
        raise ValueError("parties must use opposite subgroups")
    out = []
    for i in (0, 1):
        for j in (0, 1):
            if me.side is SubgroupSide.LEFT:
                # I hold x_i; ccs(X_i, Y_j) = x_i Y_j x_i^{-1}
                out.append(nf_conjugate(peer.elements[j], me.secrets[i]))
            else:
                # I hold y_j; ccs(X_i, Y_j) = y_j X_i y_j^{-1}
                out.append(nf_conjugate(peer.elements[i], me.secrets[j]))
    return out


def nike_shared_key(me: NikeIdentity, peer: NikePublic, label: str = "nike") -> SymKey:
    """Shared key of the non-interactive protocol; both sides agree."""
    return hash_elements(label, _four_shared(me, peer))


# ---------------------------------------------------------------------------
# Framing and transport
# ---------------------------------------------------------------------------

class StreamChannel:
    """Reliable ordered byte stream over a connected socket."""

    def __init__(self, sock: socket.socket, timeout: float | None = None):
        self._sock = sock
        if timeout is not None:
            sock.settimeout(timeout)

    def send_bytes(self, data: bytes) -> None:
        self._sock.sendall(data)

    def recv_exact(self, k: int) -> bytes:
        chunks = []
        got = 0
        while got < k:
            try:
                chunk = self._sock.recv(k - got)
            except (TimeoutError, socket.timeout) as exc:
                raise ProtocolError("timed out waiting for peer bytes") from exc
            if not chunk:
                raise ProtocolError(f"stream truncated: wanted {k} bytes, got {got}")
            chunks.append(chunk)
            got += len(chunk)
        return b"".join(chunks)

    def close(self) -> None:
        self._sock.close()


def loopback_channels(timeout: float | None = 5.0) -> tuple[StreamChannel, StreamChannel]:
    a, b = socket.socketpair()
    return StreamChannel(a, timeout), StreamChannel(b, timeout)


@dataclass(frozen=True)
class KexMessage:
    """One protocol frame: INIT/RESP carry two serialized elements,
    CONFIRM a 32-byte tag."""

    msg_type: int
    payload: bytes

    def __post_init__(self):
        if self.msg_type not in (MSG_INIT, MSG_RESP, MSG_CONFIRM):
            raise ProtocolError(f"unknown message type {self.msg_type:#04x}")
        if self.msg_type == MSG_CONFIRM:
            if len(self.payload) != 32:
                raise ProtocolError("confirmation payload must be 32 bytes")
        elif len(self.payload) < 8:
            raise ProtocolError("element payload too short for two length prefixes")

    def encode(self) -> bytes:
        return encode_frame(self.msg_type, self.payload)


def encode_frame(msg_type: int, payload: bytes) -> bytes:
    if len(payload) + 1 > MAX_FRAME:
        raise ProtocolError(f"frame too large: {len(payload) + 1} bytes")
    return struct.pack(">I", len(payload) + 1) + bytes([msg_type]) + payload


def _encode_elements(elements: tuple[CanonicalForm, CanonicalForm]) -> bytes:
    parts = []
    for e in elements:
        blob = serialize_canonical(e)
        parts.append(struct.pack(">I", len(blob)) + blob)
    return b"".join(parts)


def _decode_elements(payload: bytes) -> tuple[CanonicalForm, CanonicalForm]:
    elements = []
    offset = 0
    for _ in range(2):
        if offset + 4 > len(payload):
            raise ProtocolError("truncated element length prefix")
        (ln,) = struct.unpack_from(">I", payload, offset)
        offset += 4
        if offset + ln > len(payload):
            raise ProtocolError("truncated element blob")
        try:
            e, used = read_canonical(payload, offset)
        except CodecError as exc:
            raise ProtocolError(f"bad element encoding: {exc}") from exc
        if used != offset + ln:
            raise ProtocolError("element blob length mismatch")
        elements.append(e)
        offset += ln
    if offset != len(payload):
        raise ProtocolError("trailing bytes in element payload")
    return elements[0], elements[1]


def confirm_tag(key: SymKey, role: Role) -> bytes:
    return hashlib.sha256(key.bytes + b"confirm" + ROLE_BYTE[role.value]).digest()


@dataclass
class KexResult:
    role: Role
    key: SymKey
    sent: bytes
    received: bytes


class _Session:
    """One side of a protocol run; records the raw bytes it sends/receives."""

    def __init__(self, channel):
        self.channel = channel
        self.sent = b""
        self.received = b""

    def send_frame(self, msg_type: int, payload: bytes) -> None:
        frame = KexMessage(msg_type, payload).encode()
        self.sent += frame
        self.channel.send_bytes(frame)

    def recv_frame(self, expect_type: int) -> bytes:
        head = self.channel.recv_exact(4)
        self.received += head
        (length,) = struct.unpack(">I", head)
        if not 1 <= length <= MAX_FRAME:
            raise ProtocolError(f"bad frame length {length}")
        body = self.channel.recv_exact(length)
        self.received += body
        msg = KexMessage(body[0], body[1:])
        if msg.msg_type != expect_type:
            raise ProtocolError(
                f"expected message type {expect_type:#04x}, got {msg.msg_type:#04x}"
            )
        return msg.payload


def kex_run(
    role: Role,
    channel,
    params: GroupParams,
    rng: SeededRng,
    confirm: bool = True,
) -> KexResult:
    """Run one side of the interactive exchange over a byte stream.

    The initiator plays the left subgroup and sends INIT(X1, X2); the
    responder plays the right subgroup and replies RESP(Y1, Y2).  Both
    derive the four-conjugate key under label "kex" and, unless confirm
    is disabled, exchange and verify confirmation tags.
    """
    session = _Session(channel)
    if role is Role.INITIATOR:
        me = nike_keygen(params, SubgroupSide.LEFT, rng)
        session.send_frame(MSG_INIT, _encode_elements(me.publics))
        peer_elements = _decode_elements(session.recv_frame(MSG_RESP))
        peer = NikePublic(SubgroupSide.RIGHT, peer_elements)
    else:
        me = nike_keygen(params, SubgroupSide.RIGHT, rng)
        peer_elements = _decode_elements(session.recv_frame(MSG_INIT))
        peer = NikePublic(SubgroupSide.LEFT, peer_elements)
        session.send_frame(MSG_RESP, _encode_elements(me.publics))
    for e in peer_elements:
        if e.n != params.n:
            raise ProtocolError(f"peer element lives in B_{e.n}, expected B_{params.n}")

    key = nike_shared_key(me, peer, label="kex")

    if confirm:
        mine = confirm_tag(key, role)
        other_role = Role.RESPONDER if role is Role.INITIATOR else Role.INITIATOR
        expected = confirm_tag(key, other_role)
        if role is Role.INITIATOR:
            session.send_frame(MSG_CONFIRM, mine)
            theirs = session.recv_frame(MSG_CONFIRM)
        else:
            theirs = session.recv_frame(MSG_CONFIRM)
            session.send_frame(MSG_CONFIRM, mine)
        if not hmac.compare_digest(theirs, expected):
            raise KeyConfirmError("peer confirmation tag mismatch")

    return KexResult(role, key, session.sent, session.received)


# ---------------------------------------------------------------------------
# Loopback driver (tests, demos, tamper fuzzing)
# ---------------------------------------------------------------------------

class FlippingChannel:
    """Wraps a channel and XORs one byte of the outgoing stream."""

    def __init__(self, inner, flip_offset: int, xor: int = 0x01):
        self.inner = inner
        self.flip_offset = flip_offset
        self.xor = xor
        self._sent = 0

    def send_bytes(self, data: bytes) -> None:
        lo = self.flip_offset - self._sent
        if 0 <= lo < len(data):
            data = data[:lo] + bytes([data[lo] ^ self.xor]) + data[lo + 1 :]
        self._sent += len(data)
        self.inner.send_bytes(data)

    def recv_exact(self, k: int) -> bytes:
        return self.inner.recv_exact(k)

    def close(self) -> None:
        self.inner.close()


def loopback_run(
    params: GroupParams,
    init_rng: SeededRng,
    resp_rng: SeededRng,
    confirm: bool = True,
    tamper: tuple[Role, int] | None = None,
    timeout: float = 5.0,
):
    """Run both sides over an in-process socket pair.

    Returns (initiator outcome, responder outcome); each is a KexResult or
    the exception that aborted that side.  tamper=(role, offset) flips one
    byte of that role's outgoing stream in flight.
    """
    import threading

    chan_i, chan_r = loopback_channels(timeout)
    if tamper is not None:
        role, offset = tamper
        if role is Role.INITIATOR:
            chan_i = FlippingChannel(chan_i, offset)
        else:
            chan_r = FlippingChannel(chan_r, offset)

    outcomes: dict[Role, object] = {}

    def side(role: Role, channel, rng: SeededRng) -> None:
        try:
            outcomes[role] = kex_run(role, channel, params, rng, confirm=confirm)
        except Exception as exc:
            outcomes[role] = exc
        finally:
            channel.close()

    t = threading.Thread(
        target=side, args=(Role.RESPONDER, chan_r, resp_rng), daemon=True
    )
    t.start()
    side(Role.INITIATOR, chan_i, init_rng)
    t.join(timeout + 5.0)
    if Role.RESPONDER not in outcomes:
        outcomes[Role.RESPONDER] = ProtocolError("responder did not finish")
    return outcomes[Role.INITIATOR], outcomes[Role.RESPONDER]
