"""Bi-serial DNA Encryption Algorithm (BDEA).

A staged, educational cipher: hex/bit conversion, split-and-XOR, DNA digital
coding, simulated PCR primer amplification and Huffman compression, with a
Diffie-Hellman key transport and a small attack bench.

None of this is cryptographically strong. Use it to study the construction.
"""

from .errors import BdeaError, BiologicalPollution, CrcMismatch, BadMagic
from .dna import CodingPattern, default_pattern
from .pcr import PrimerPair
from .pipeline import CipherContainer, KeyMaterial, encrypt, decrypt, encrypt_paper_mode
from .keyex import KeyBundle, DhParams

__version__ = "0.1.0"

__all__ = [
    "BdeaError",
    "BiologicalPollution",
    "CrcMismatch",
    "BadMagic",
    "CodingPattern",
    "default_pattern",
    "PrimerPair",
    "CipherContainer",
    "KeyMaterial",
    "KeyBundle",
    "DhParams",
    "encrypt",
    "decrypt",
    "encrypt_paper_mode",
]
