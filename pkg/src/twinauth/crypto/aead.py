"""Authenticated encryption for the MD<->DT private channel.

The scheme's symmetric cipher is realized as AES-128-GCM.  Ciphertexts are
nonce || body; any bit flip or wrong key fails authentication.  Symmetric
operations are not metered (the cost model treats them as negligible).
"""

from __future__ import annotations

import random

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

NONCE_LEN = 12


class AeadError(Exception):
    """Decryption failed authentication (tamper or wrong key)."""


def encrypt(key: bytes, plaintext: bytes, aad: bytes, rng: random.Random) -> bytes:
    if len(key) != 16:
        raise ValueError("AEAD key must be 128 bits")
    nonce = rng.getrandbits(NONCE_LEN * 8).to_bytes(NONCE_LEN, "big")
    return nonce + AESGCM(key).encrypt(nonce, plaintext, aad)


def decrypt(key: bytes, ciphertext: bytes, aad: bytes) -> bytes:
    if len(key) != 16:
        raise ValueError("AEAD key must be 128 bits")
    if len(ciphertext) < NONCE_LEN + 16:
        raise AeadError("ciphertext too short")
    nonce, body = ciphertext[:NONCE_LEN], ciphertext[NONCE_LEN:]
    try:
        return AESGCM(key).decrypt(nonce, body, aad)
    except InvalidTag as exc:
        raise AeadError("authentication failure") from exc
