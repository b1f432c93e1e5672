"""On-disk cache of divisor-chain counts, written atomically.

The file is plain text: a three-line header (magic + format version,
modulus, row count) followed by one `i,a_i,value,flag` row per divisor
prefix.  Files are written to a temporary name in the same directory and
renamed into place, so an interrupted run never leaves a partial cache.
Corrupt files are rejected with an error; they are never silently
overwritten.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .errors import CacheError

FORMAT_VERSION = 1
_MAGIC = "efrac-chain-cache"
_FLAGS = ("exact", "cap", "lifted")


@dataclass(frozen=True)
class ChainCacheFile:
    modulus: int
    divisors: tuple[int, ...]
    counts: tuple[int, ...]
    flags: tuple[str, ...]


def cache_path(cache_dir: Path, modulus: int) -> Path:
    return Path(cache_dir) / f"chain-{modulus}.txt"


def write_chain_cache(
    path: Path,
    modulus: int,
    divisors: list[int],
    counts: list[int],
    flags: list[str],
) -> None:
    if not len(divisors) == len(counts) == len(flags):
        raise CacheError("divisors, counts and flags must have equal length")
    lines = [
        f"{_MAGIC} v{FORMAT_VERSION}",
        f"modulus={modulus}",
        f"rows={len(divisors)}",
    ]
    for i, (a, value, flag) in enumerate(zip(divisors, counts, flags), start=1):
        if flag not in _FLAGS:
            raise CacheError(f"unknown count flag {flag!r}")
        lines.append(f"{i},{a},{value},{flag}")
    payload = "\n".join(lines) + "\n"
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{path.name}.{os.getpid()}.tmp")
    tmp.write_text(payload)
    os.replace(tmp, path)


def read_chain_cache(path: Path, expect_modulus: int | None = None) -> ChainCacheFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CacheError(f"cannot read cache file {path}: {exc}") from exc
    lines = text.splitlines()
    if len(lines) < 3:
        raise CacheError(f"{path}: truncated header")
    if lines[0] != f"{_MAGIC} v{FORMAT_VERSION}":
        raise CacheError(f"{path}: bad magic or format version: {lines[0]!r}")
    try:
        modulus = int(lines[1].removeprefix("modulus="))
        rows = int(lines[2].removeprefix("rows="))
    except ValueError as exc:
        raise CacheError(f"{path}: malformed header") from exc
    if not lines[1].startswith("modulus=") or not lines[2].startswith("rows="):
        raise CacheError(f"{path}: malformed header")
    if expect_modulus is not None and modulus != expect_modulus:
        raise CacheError(
            f"{path}: cache is for modulus {modulus}, expected {expect_modulus}"
        )
    body = lines[3:]
    if len(body) != rows:
        raise CacheError(f"{path}: expected {rows} rows, found {len(body)}")
    divisors: list[int] = []
    counts: list[int] = []
    flags: list[str] = []
    for lineno, line in enumerate(body, start=1):
        parts = line.split(",")
        if len(parts) != 4:
            raise CacheError(f"{path}: malformed row {lineno}: {line!r}")
        try:
            i, a, value = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise CacheError(f"{path}: malformed row {lineno}: {line!r}") from exc
        if i != lineno:
            raise CacheError(f"{path}: rows are not contiguous at {lineno}")
        if divisors and a <= divisors[-1]:
            raise CacheError(f"{path}: divisors not increasing at row {lineno}")
        if value < 1:
            raise CacheError(f"{path}: nonpositive count at row {lineno}")
        if parts[3] not in _FLAGS:
            raise CacheError(f"{path}: unknown flag {parts[3]!r} at row {lineno}")
        divisors.append(a)
        counts.append(value)
        flags.append(parts[3])
    if divisors and divisors[-1] != modulus:
        raise CacheError(f"{path}: last divisor {divisors[-1]} is not the modulus")
    return ChainCacheFile(modulus, tuple(divisors), tuple(counts), tuple(flags))
