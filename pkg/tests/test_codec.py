"""Serialization, the element hash, and the symmetric cipher pair."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_word, rewrite_equivalent, rng_from
from twincsp import (
    AuthenticationError,
    BraidWord,
    SealedBox,
    SymKey,
    hash_elements,
    normal_form,
    serialize_canonical,
    sym_decrypt,
    sym_encrypt,
)
from twincsp.codec import (
    CodecError,
    deserialize_canonical,
    read_word,
    serialize_word,
)


class TestSerialization:
    def test_identity_is_sixteen_bytes(self):
        data = serialize_canonical(normal_form(BraidWord(16, ())))
        assert len(data) == 16
        assert data == b"TCSP" + bytes([1, 2]) + (16).to_bytes(2, "big") + b"\x00" * 8

    def test_group_equal_words_serialize_identically(self):
        a = serialize_canonical(normal_form(BraidWord(3, (1, 2, 1))))
        b = serialize_canonical(normal_form(BraidWord(3, (2, 1, 2))))
        assert a == b

    def test_negative_delta_round_trip(self):
        cf = normal_form(BraidWord(5, (-1, -3, 2, -4)))
        assert cf.delta_exp < 0
        assert deserialize_canonical(serialize_canonical(cf)) == cf

    def test_injectivity_smoke(self):
        rng = rng_from(30)
        seen = {}
        for _ in range(10_000):
            cf = normal_form(random_word(6, 14, rng))
            data = serialize_canonical(cf)
            if data in seen:
                assert seen[data] == cf
            seen[data] = cf
        distinct_forms = len(set(seen.values()))
        assert distinct_forms == len(seen)

    def test_word_round_trip(self):
        word = BraidWord(7, (1, -6, 3, 3, -2))
        data = serialize_word(word)
        out, used = read_word(data, 0)
        assert out == word and used == len(data)

    def test_bad_magic_offset(self):
        data = bytearray(serialize_canonical(normal_form(BraidWord(4, (1,)))))
        data[0] ^= 0xFF
        with pytest.raises(CodecError) as exc:
            deserialize_canonical(bytes(data))
        assert exc.value.offset == 0

    def test_unsupported_version(self):
        data = bytearray(serialize_canonical(normal_form(BraidWord(4, (1,)))))
        data[4] = 0x02
        with pytest.raises(CodecError, match="version"):
            deserialize_canonical(bytes(data))

    def test_truncated_factor_table(self):
        data = serialize_canonical(normal_form(BraidWord(4, (1, 2))))
        with pytest.raises(CodecError, match="truncated"):
            deserialize_canonical(data[:-3])

    def test_non_permutation_rejected(self):
        data = bytearray(serialize_canonical(normal_form(BraidWord(4, (1,)))))
        # factor images start after the 16-byte header; duplicate an image
        data[17] = data[19]
        with pytest.raises(CodecError):
            deserialize_canonical(bytes(data))


class TestHashElements:
    def test_well_defined_on_group_elements(self):
        rng = rng_from(31)
        for _ in range(100):
            word = random_word(8, 20, rng)
            variant = rewrite_equivalent(word, rng, steps=50)
            a = hash_elements("cs", [normal_form(word)])
            b = hash_elements("cs", [normal_form(variant)])
            assert a == b

    def test_order_sensitive(self):
        x = normal_form(BraidWord(4, (1,)))
        y = normal_form(BraidWord(4, (2,)))
        assert hash_elements("cs", [x, y]) != hash_elements("cs", [y, x])

    def test_label_separates_domains(self):
        x = normal_form(BraidWord(4, (1, 2)))
        assert hash_elements("cs", [x]) != hash_elements("twin", [x])

    def test_deterministic(self):
        x = normal_form(BraidWord(4, (1, 2)))
        assert hash_elements("kex", [x, x]) == hash_elements("kex", [x, x])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            hash_elements("cs", [])

    def test_key_is_32_bytes(self):
        x = normal_form(BraidWord(4, (1,)))
        assert len(hash_elements("cs", [x]).bytes) == 32


def key_from(tag: int) -> SymKey:
    return SymKey(rng_from(tag).rand_bytes(32))


class TestSymmetricPair:
    def test_round_trip(self):
        key = key_from(1)
        for size in (0, 1, 31, 32, 33, 1000):
            msg = rng_from(size + 2).rand_bytes(size)
            assert sym_decrypt(key, sym_encrypt(key, msg)) == msg

    def test_empty_message_valid_tag(self):
        key = key_from(2)
        box = sym_encrypt(key, b"")
        assert box.ct == b""
        assert sym_decrypt(key, box) == b""

    def test_deterministic(self):
        key = key_from(3)
        assert sym_encrypt(key, b"abc") == sym_encrypt(key, b"abc")

    def test_every_ciphertext_bit_is_authenticated(self):
        key = key_from(4)
        box = sym_encrypt(key, bytes(range(16)))
        for byte_idx in range(16):
            for bit in range(8):
                flipped = bytearray(box.ct)
                flipped[byte_idx] ^= 1 << bit
                with pytest.raises(AuthenticationError):
                    sym_decrypt(key, SealedBox(bytes(flipped), box.tag))

    def test_tag_bits_checked(self):
        key = key_from(5)
        box = sym_encrypt(key, b"payload")
        for byte_idx in range(32):
            flipped = bytearray(box.tag)
            flipped[byte_idx] ^= 0x01
            with pytest.raises(AuthenticationError):
                sym_decrypt(key, SealedBox(box.ct, bytes(flipped)))

    def test_wrong_keys_rejected(self):
        key = key_from(6)
        box = sym_encrypt(key, b"the secret")
        rng = rng_from(7)
        for _ in range(1000):
            other = SymKey(rng.rand_bytes(32))
            if other == key:
                continue
            with pytest.raises(AuthenticationError):
                sym_decrypt(other, box)

    def test_truncated_ciphertext_rejected(self):
        key = key_from(8)
        box = sym_encrypt(key, b"0123456789")
        with pytest.raises(AuthenticationError):
            sym_decrypt(key, SealedBox(box.ct[:-1], box.tag))


@settings(max_examples=50, deadline=None)
@given(st.binary(max_size=4096), st.integers(0, 2**31))
def test_round_trip_property(message, tag):
    key = SymKey(rng_from(tag).rand_bytes(32))
    assert sym_decrypt(key, sym_encrypt(key, message)) == message
