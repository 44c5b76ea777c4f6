"""One gradient-free forward pass over a labeled text file, dumping the
pooled hidden state of every transformer layer into an LSD1 file.

Input is TSV, one example per line: ``label<TAB>text`` for single
sentences or ``label<TAB>text1<TAB>text2`` for pairs. The tokenizer adds
its own start/separator markers; pairs are joined with the separator
token. Layer j of the dump holds the output of transformer layer j (the
raw embedding output is not dumped), pooled to one vector per example.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass

import numpy as np
import torch
from transformers import AutoModel, AutoTokenizer

from .dump_writer import write_lsd1

POOLINGS = ("cls", "mean")


class ExampleParseError(Exception):
    """A TSV line that cannot become a labeled example; names the line."""


@dataclass
class ExtractionConfig:
    model: str  # hub identifier or local checkpoint directory
    input_path: str
    output_path: str
    max_length: int = 128
    pooling: str = "cls"
    batch_size: int = 16
    dataset_name: str | None = None  # default: input file stem

    def __post_init__(self):
        if self.pooling not in POOLINGS:
            raise ValueError(f"pooling must be one of {POOLINGS}, got {self.pooling!r}")
        if self.max_length < 2:
            raise ValueError("max_length must be at least 2")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


def read_examples(path: str) -> tuple[list[int], list[tuple[str, str | None]]]:
    """Parse the TSV into labels and (text, optional pair) tuples."""
    labels: list[int] = []
    texts: list[tuple[str, str | None]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) not in (2, 3):
                raise ExampleParseError(
                    f"line {lineno}: expected 2 or 3 tab-separated fields, "
                    f"got {len(fields)}"
                )
            if fields[0] not in ("0", "1"):
                raise ExampleParseError(
                    f"line {lineno}: label {fields[0]!r} is not 0 or 1"
                )
            labels.append(int(fields[0]))
            texts.append((fields[1], fields[2] if len(fields) == 3 else None))
    if len(labels) < 2:
        raise ExampleParseError(f"{path}: need at least 2 examples, got {len(labels)}")
    return labels, texts


def _pool(hidden: torch.Tensor, attention_mask: torch.Tensor, pooling: str):
    if pooling == "cls":
        return hidden[:, 0, :]
    mask = attention_mask.unsqueeze(-1).to(hidden.dtype)  # non-padding only
    return (hidden * mask).sum(dim=1) / mask.sum(dim=1)


def extract(config: ExtractionConfig) -> int:
    """Run the forward pass and write the dump; returns bytes written."""
    labels, texts = read_examples(config.input_path)
    tokenizer = AutoTokenizer.from_pretrained(config.model)
    model = AutoModel.from_pretrained(config.model)
    model.eval()

    per_layer: list[list[np.ndarray]] = []
    with torch.no_grad():
        for start in range(0, len(texts), config.batch_size):
            batch = texts[start : start + config.batch_size]
            firsts = [t for t, _ in batch]
            seconds = [p for _, p in batch]
            pair_mode = any(p is not None for p in seconds)
            if pair_mode and not all(p is not None for p in seconds):
                raise ExampleParseError(
                    "mixing single-sentence and sentence-pair lines in one "
                    "file is not supported"
                )
            kwargs = dict(
                padding=True,
                truncation=True,
                max_length=config.max_length,
                return_tensors="pt",
            )
            unclipped = tokenizer(
                firsts, seconds if pair_mode else None, padding=False,
                truncation=False,
            )
            for offset, ids in enumerate(unclipped["input_ids"]):
                if len(ids) > config.max_length:
                    warnings.warn(
                        f"example {start + offset + 1}: {len(ids)} tokens "
                        f"truncated to {config.max_length}",
                        stacklevel=2,
                    )
            enc = tokenizer(firsts, seconds if pair_mode else None, **kwargs)
            out = model(**enc, output_hidden_states=True)
            # hidden_states[0] is the embedding output; 1..L follow layers
            layer_states = out.hidden_states[1:]
            if not per_layer:
                per_layer = [[] for _ in layer_states]
            for j, hidden in enumerate(layer_states):
                pooled = _pool(hidden, enc["attention_mask"], config.pooling)
                per_layer[j].append(pooled.to(torch.float32).cpu().numpy())

    stacks = [np.concatenate(chunks, axis=0) for chunks in per_layer]
    stem = os.path.splitext(os.path.basename(config.input_path))[0]
    name = f"{config.dataset_name or stem}:pooling={config.pooling}"
    with open(config.output_path, "wb") as sink:
        return write_lsd1(np.asarray(labels), stacks, name, sink)
