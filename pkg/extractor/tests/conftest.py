import numpy as np
import pytest
import torch
from transformers import BertConfig, BertModel, BertTokenizer

import transformers

transformers.logging.set_verbosity_error()

LETTERS = "abcdefghijklmnopqrstuvwxyz"


@pytest.fixture(scope="session")
def checkpoint(tmp_path_factory):
    """A tiny 12-layer encoder checkpoint saved to a local directory.

    Random init is fine for smoke testing: the extractor only needs a
    loadable checkpoint with the standard layer structure.
    """
    path = tmp_path_factory.mktemp("checkpoint")
    config = BertConfig(
        vocab_size=40,
        hidden_size=32,
        num_hidden_layers=12,
        num_attention_heads=4,
        intermediate_size=64,
        max_position_embeddings=64,
    )
    torch.manual_seed(1234)
    BertModel(config).save_pretrained(path)
    vocab = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"] + list(LETTERS)
    (path / "vocab.txt").write_text("\n".join(vocab))
    tokenizer = BertTokenizer(str(path / "vocab.txt"))
    assert tokenizer.vocab_size == len(vocab)  # guard against silent kwargs
    tokenizer.save_pretrained(path)
    return str(path)


def toy_lines(n=32, pairs=False, seed=5):
    """Deterministic single-letter 'sentences' of varying length that the
    toy vocab can encode."""
    rng = np.random.default_rng(seed)
    lines = []
    for i in range(n):
        text = " ".join(rng.choice(list(LETTERS), size=rng.integers(3, 9)))
        fields = [str(i % 2), text]
        if pairs:
            fields.append(" ".join(rng.choice(list(LETTERS), size=3)))
        lines.append("\t".join(fields))
    return lines


@pytest.fixture
def toy_tsv(tmp_path):
    path = tmp_path / "toy.tsv"
    path.write_text("\n".join(toy_lines()) + "\n")
    return str(path)
