"""The two text representations consumed by the metrics.

Token-level metrics (similarity-matrix F1, BLEU) work on the whitespace
tokenization; character-level local alignment works on the combined form
where all whitespace runs collapse to single spaces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .types import TokenSequence


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = False
    collapse_whitespace: bool = True


DEFAULT_TOKENIZER = TokenizerConfig()


def tokenize(text: str, cfg: TokenizerConfig = DEFAULT_TOKENIZER) -> TokenSequence:
    """Split on Unicode whitespace runs, dropping empty tokens."""
    tokens = text.split()
    if cfg.lowercase:
        tokens = [t.lower() for t in tokens]
    return tuple(tokens)


def combine(text: str) -> str:
    """Collapse every whitespace run (newlines included) to a single space."""
    return " ".join(text.split())
