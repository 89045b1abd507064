"""Parameterized HC-128, Rabbit, and Salsa20 keystream generators."""

from drtbench.ciphers.api import (
    DEFAULT_CHUNK,
    KeyIv,
    key_iv_lengths,
    keystream,
    keystream_chunks,
    new_stream,
)
from drtbench.ciphers.variants import (
    CIPHER_IDS,
    CipherVariant,
    MixStrategy,
    drt_variant,
    standard_variant,
    variant_by_tag,
)

__all__ = [
    "CIPHER_IDS",
    "CipherVariant",
    "DEFAULT_CHUNK",
    "KeyIv",
    "MixStrategy",
    "drt_variant",
    "key_iv_lengths",
    "keystream",
    "keystream_chunks",
    "new_stream",
    "standard_variant",
    "variant_by_tag",
]
