"""Hashed encryption from the conjugacy search problem, single and twin.

Both schemes are hybrids: a conjugate header plus a symmetric box.  The
secret key holder and the encryptor compute the same shared conjugate

    ccs(X, Y) = (xy) g (xy)^{-1} = x Y x^{-1} = y X y^{-1}

because x is drawn from the left subgroup and the ephemeral y from the
right one, and those commute elementwise.  The single scheme hashes
(Y, Z) under label "cs"; the twin scheme carries two public conjugates
X_1, X_2, reuses one ephemeral y for Z_1 and Z_2, and hashes (Y, Z1, Z2)
under label "twin" so that both secrets enter the key.

Messages are arbitrary byte strings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import (
    BraidWord,
    CanonicalForm,
    GroupParams,
    nf_conjugate,
    normal_form,
)
from .codec import SealedBox, hash_elements, sym_decrypt, sym_encrypt
from .sampling import SeededRng, SubgroupSide, sample_subgroup

SCHEME_CS = 0x01
SCHEME_TWIN = 0x02


@dataclass(frozen=True)
class CsPublicKey:
    params: GroupParams
    X: CanonicalForm


@dataclass(frozen=True)
class CsKeyPair:
    params: GroupParams
    sk_x: BraidWord
    pk_X: CanonicalForm

    @property
    def public(self) -> CsPublicKey:
        return CsPublicKey(self.params, self.pk_X)


@dataclass(frozen=True)
class TwinPublicKey:
    params: GroupParams
    X1: CanonicalForm
    X2: CanonicalForm


@dataclass(frozen=True)
class TwinKeyPair:
    params: GroupParams
    sk_x1: BraidWord
    sk_x2: BraidWord
    pk_X1: CanonicalForm
    pk_X2: CanonicalForm

    @property
    def public(self) -> TwinPublicKey:
        return TwinPublicKey(self.params, self.pk_X1, self.pk_X2)


@dataclass(frozen=True)
class Ciphertext:
    """Conjugate header Y plus the sealed symmetric payload."""

    scheme: int
    Y: CanonicalForm
    box: SealedBox


def ccs_shared(secret: BraidWord, peer_public: CanonicalForm) -> CanonicalForm:
    """The shared conjugate: normal_form(secret * peer_public * secret^{-1}).

    Symmetric across sides: with X = xgx^{-1} (x left) and Y = ygy^{-1}
    (y right), ccs_shared(x, Y) == ccs_shared(y, X).
    """
    if secret.n != peer_public.n:
        raise ValueError(f"strand counts differ: {secret.n} != {peer_public.n}")
    return nf_conjugate(peer_public, secret)


def cs_keygen(params: GroupParams, rng: SeededRng) -> CsKeyPair:
    """Secret conjugator from LB_l; public key X = x g x^{-1}."""
    x = sample_subgroup(params, SubgroupSide.LEFT, rng)
    X = nf_conjugate(normal_form(params.g), x)
    return CsKeyPair(params, x, X)


def cs_encrypt(pk: CsPublicKey, message: bytes, rng: SeededRng) -> Ciphertext:
    """Ephemeral y from RB_r; Y = ygy^{-1}, Z = yXy^{-1}, k = H("cs", Y, Z)."""
    y = sample_subgroup(pk.params, SubgroupSide.RIGHT, rng)
    Y = nf_conjugate(normal_form(pk.params.g), y)
    Z = nf_conjugate(pk.X, y)
    key = hash_elements("cs", [Y, Z])
    return Ciphertext(SCHEME_CS, Y, sym_encrypt(key, message))


def cs_decrypt(kp: CsKeyPair, ct: Ciphertext) -> bytes:
    """Recompute Z = x Y x^{-1} and open the box; raises AuthenticationError
    on forged or mis-keyed ciphertexts."""
    Z = nf_conjugate(ct.Y, kp.sk_x)
    key = hash_elements("cs", [ct.Y, Z])
    return sym_decrypt(key, ct.box)


def twin_keygen(params: GroupParams, rng: SeededRng) -> TwinKeyPair:
    """Two independent secret conjugators from LB_l."""
    g_nf = normal_form(params.g)
    x1 = sample_subgroup(params, SubgroupSide.LEFT, rng)
    x2 = sample_subgroup(params, SubgroupSide.LEFT, rng)
    return TwinKeyPair(params, x1, x2, nf_conjugate(g_nf, x1), nf_conjugate(g_nf, x2))


def twin_encrypt(pk: TwinPublicKey, message: bytes, rng: SeededRng) -> Ciphertext:
    """One ephemeral y serves both halves: k = H("twin", Y, Z1, Z2)."""
    y = sample_subgroup(pk.params, SubgroupSide.RIGHT, rng)
    Y = nf_conjugate(normal_form(pk.params.g), y)
    Z1 = nf_conjugate(pk.X1, y)
    Z2 = nf_conjugate(pk.X2, y)
    key = hash_elements("twin", [Y, Z1, Z2])
    return Ciphertext(SCHEME_TWIN, Y, sym_encrypt(key, message))


def twin_decrypt(kp: TwinKeyPair, ct: Ciphertext) -> bytes:
    Z1 = nf_conjugate(ct.Y, kp.sk_x1)
    Z2 = nf_conjugate(ct.Y, kp.sk_x2)
    key = hash_elements("twin", [ct.Y, Z1, Z2])
    return sym_decrypt(key, ct.box)
