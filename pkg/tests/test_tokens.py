import random
import string

from docxeval.tokens import TokenizerConfig, combine, tokenize


def test_tokenize_examples():
    assert tokenize("hello  world\n") == ("hello", "world")
    assert tokenize("") == ()
    assert tokenize("A à A") == ("A", "à", "A")


def test_tokenize_lowercase_option():
    assert tokenize("Hello WORLD", TokenizerConfig(lowercase=True)) == ("hello", "world")


def test_combine_examples():
    assert combine("a\nb") == "a b"
    assert combine("a   b") == "a b"
    assert combine("") == ""


def _random_text(rng):
    chars = string.ascii_letters + " \t\n\r "
    return "".join(rng.choice(chars) for _ in range(rng.randrange(0, 60)))


def test_combine_idempotent_and_token_preserving():
    rng = random.Random(11)
    for _ in range(300):
        text = _random_text(rng)
        combined = combine(text)
        assert combine(combined) == combined
        assert tokenize(combined) == tokenize(text)


def test_tokens_contain_no_whitespace():
    rng = random.Random(13)
    for _ in range(300):
        for token in tokenize(_random_text(rng)):
            assert token
            assert not any(ch.isspace() for ch in token)
