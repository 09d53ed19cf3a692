"""Layered codebook model: level specs, distance metadata, verification, file I/O.

A layered codebook is an ordered list of codeword groups C_1..C_m over one
blocklength n. Importance grows with the level index: level m is the most
protected. Two distance quantities drive everything downstream:

* intra-group minimum distance, which fixes the per-level correction radius,
* inter-level distance, the minimum distance between codewords of two
  different groups, which is what makes tag-free level classification work.

``verify_codebook`` recomputes all of it from scratch and reports every
violated constraint rather than raising.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .bitvec import as_bit_matrix, bits_to_string
from .errors import CodebookFormatError

__all__ = [
    "LevelSpec",
    "LayeredCodebook",
    "VerificationReport",
    "ConstraintViolation",
    "intra_group_dmin",
    "inter_level_distance",
    "verify_codebook",
    "level_label",
    "level_index_from_label",
    "golden_codebook_path",
]


def level_label(level_index: int) -> str:
    """Letter name for a 1-based level index: 1 -> 'A', 2 -> 'B', ..."""
    if 1 <= level_index <= 26:
        return chr(ord("A") + level_index - 1)
    return f"L{level_index}"


def level_index_from_label(label: str) -> int:
    """Inverse of :func:`level_label`; accepts 'A'..'Z' or 'L<k>' or digits."""
    s = label.strip().upper()
    if len(s) == 1 and "A" <= s <= "Z":
        return ord(s) - ord("A") + 1
    if s.startswith("L") and s[1:].isdigit():
        return int(s[1:])
    if s.isdigit():
        return int(s)
    raise ValueError(f"unrecognized level label {label!r}")


@dataclass(frozen=True)
class LevelSpec:
    """Design parameters of one importance level.

    target_t is the correction radius the level is designed for; the group's
    intra minimum distance must reach 2*target_t + 1. group_size is the number
    of distinct messages the level carries.
    """

    level_index: int
    target_t: int
    group_size: int

    def __post_init__(self):
        if self.level_index < 1:
            raise ValueError(f"level_index must be >= 1, got {self.level_index}")
        if self.target_t < 0:
            raise ValueError(f"target_t must be >= 0, got {self.target_t}")
        if self.group_size < 1:
            raise ValueError(f"group_size must be >= 1, got {self.group_size}")

    @property
    def required_dmin(self) -> int:
        return 2 * self.target_t + 1

    @property
    def label(self) -> str:
        return level_label(self.level_index)


def validate_level_specs(specs: Sequence[LevelSpec]) -> tuple[LevelSpec, ...]:
    specs = tuple(specs)
    if not specs:
        raise ValueError("at least one level is required")
    for i, spec in enumerate(specs, start=1):
        if spec.level_index != i:
            raise ValueError(f"level_specs must be numbered 1..m in order, got {spec.level_index} at position {i}")
    ts = [s.target_t for s in specs]
    if any(a > b for a, b in zip(ts, ts[1:])):
        raise ValueError(f"target_t must be non-decreasing in level, got {ts}")
    return specs


def intra_group_dmin(group) -> int | None:
    """Minimum pairwise Hamming distance inside one group.

    Returns None for a singleton group (no pair exists). Raises on an
    empty group.
    """
    mat = as_bit_matrix(group, name="group")
    k = mat.shape[0]
    if k == 1:
        return None
    best = mat.shape[1] + 1
    for i in range(k - 1):
        d = int((mat[i + 1 :] != mat[i]).sum(axis=1).min())
        if d < best:
            best = d
    return best


def inter_level_distance(group_p, group_q) -> int:
    """Minimum Hamming distance between any codeword of one group and any of another."""
    mp = as_bit_matrix(group_p, name="group_p")
    mq = as_bit_matrix(group_q, name="group_q")
    if mp.shape[1] != mq.shape[1]:
        raise ValueError(f"blocklength mismatch: {mp.shape[1]} vs {mq.shape[1]}")
    best = mp.shape[1] + 1
    for i in range(mp.shape[0]):
        d = int((mq != mp[i]).sum(axis=1).min())
        if d < best:
            best = d
    return best


class LayeredCodebook:
    """Immutable m-level codebook with cached distance metadata.

    groups[x-1] is a read-only (N_x, n) uint8 matrix; row order within a
    group defines the message index mapping and the decoder's tie-break
    order, so it is preserved exactly by file round-trips.
    """

    def __init__(self, groups: Sequence, level_specs: Sequence[LevelSpec]):
        self.level_specs = validate_level_specs(level_specs)
        mats = []
        for x, g in enumerate(groups, start=1):
            mat = as_bit_matrix(g, name=f"group {x}")
            mat.setflags(write=False)
            mats.append(mat)
        if len(mats) != len(self.level_specs):
            raise ValueError(f"{len(mats)} groups but {len(self.level_specs)} level specs")
        n = mats[0].shape[1]
        for x, mat in enumerate(mats, start=1):
            if mat.shape[1] != n:
                raise ValueError(f"group {x} blocklength {mat.shape[1]} != {n}")
            if mat.shape[0] != self.level_specs[x - 1].group_size:
                raise ValueError(
                    f"group {x} has {mat.shape[0]} codewords, spec says {self.level_specs[x - 1].group_size}"
                )
        self.groups: tuple[np.ndarray, ...] = tuple(mats)
        self.blocklength: int = n
        # cached flat view for batch decoding
        self._matrix = np.vstack(mats)
        self._matrix.setflags(write=False)
        sizes = [m.shape[0] for m in mats]
        self._group_starts = np.concatenate([[0], np.cumsum(sizes)[:-1]]).astype(np.int64)
        self._column_levels = np.repeat(np.arange(1, len(mats) + 1), sizes)
        self.intra_dmin: tuple[int | None, ...] = tuple(intra_group_dmin(m) for m in mats)
        m_levels = len(mats)
        inter = np.zeros((m_levels, m_levels), dtype=np.int64)
        for p in range(m_levels):
            for q in range(p + 1, m_levels):
                d = inter_level_distance(mats[p], mats[q])
                inter[p, q] = inter[q, p] = d
        inter.setflags(write=False)
        self.inter_d: np.ndarray = inter

    # -- structure accessors -------------------------------------------------

    @property
    def num_levels(self) -> int:
        return len(self.groups)

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(m.shape[0] for m in self.groups)

    @property
    def target_t(self) -> tuple[int, ...]:
        return tuple(s.target_t for s in self.level_specs)

    @property
    def codeword_matrix(self) -> np.ndarray:
        """All codewords stacked group by group, shape (sum N_x, n)."""
        return self._matrix

    @property
    def group_starts(self) -> np.ndarray:
        return self._group_starts

    @property
    def column_levels(self) -> np.ndarray:
        """1-based level index of each row of codeword_matrix."""
        return self._column_levels

    def codeword(self, level_index: int, message_index: int) -> np.ndarray:
        """Encoder: map (level, message index) to its codeword."""
        group = self.groups[level_index - 1]
        if not 0 <= message_index < group.shape[0]:
            raise IndexError(f"message index {message_index} out of range for level {level_index}")
        return group[message_index]

    def message_bits(self, level_index: int) -> int:
        """Message payload width of one level: ceil(log2(group size)), min 1."""
        size = self.group_sizes[level_index - 1]
        return max(1, (size - 1).bit_length())

    # -- file format ----------------------------------------------------------

    def dumps(self) -> str:
        lines = [f"n={self.blocklength} m={self.num_levels}"]
        for spec, mat in zip(self.level_specs, self.groups):
            lines.append(f"level {spec.level_index} t={spec.target_t}")
            for row in mat:
                lines.append(bits_to_string(row))
        return "\n".join(lines) + "\n"

    def save(self, path) -> None:
        """Write the codebook file atomically (temp file + rename)."""
        text = self.dumps()
        directory = os.path.dirname(os.path.abspath(path)) or "."
        fd, tmp = tempfile.mkstemp(prefix=".codebook-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @classmethod
    def loads(cls, text: str, path: str | None = None) -> "LayeredCodebook":
        lines = text.splitlines()
        idx = 0

        def next_content_line():
            nonlocal idx
            while idx < len(lines):
                lineno = idx + 1
                raw = lines[idx].strip()
                idx += 1
                if raw:
                    return raw, lineno
            return None, len(lines)

        header, lineno = next_content_line()
        if header is None:
            raise CodebookFormatError("empty codebook file", path, lineno)
        parts = header.split()
        if len(parts) != 2 or not parts[0].startswith("n=") or not parts[1].startswith("m="):
            raise CodebookFormatError(f"expected header 'n=<blocklength> m=<levels>', got {header!r}", path, lineno)
        try:
            n = int(parts[0][2:])
            m = int(parts[1][2:])
        except ValueError:
            raise CodebookFormatError(f"non-integer header values in {header!r}", path, lineno) from None
        if n < 1 or m < 1:
            raise CodebookFormatError(f"blocklength and level count must be positive, got n={n} m={m}", path, lineno)

        groups: list[list[str]] = []
        specs: list[LevelSpec] = []
        current: list[str] | None = None
        while True:
            line, lineno = next_content_line()
            if line is None:
                break
            if line.startswith("level"):
                parts = line.split()
                if len(parts) != 3 or not parts[2].startswith("t="):
                    raise CodebookFormatError(f"expected 'level <x> t=<t_x>', got {line!r}", path, lineno)
                try:
                    x = int(parts[1])
                    t = int(parts[2][2:])
                except ValueError:
                    raise CodebookFormatError(f"non-integer level fields in {line!r}", path, lineno) from None
                if x != len(specs) + 1:
                    raise CodebookFormatError(f"levels must appear in order; expected level {len(specs) + 1}, got {x}", path, lineno)
                current = []
                groups.append(current)
                specs.append((x, t, lineno))  # size filled in later
            else:
                if current is None:
                    raise CodebookFormatError(f"codeword line before any 'level' header: {line!r}", path, lineno)
                if len(line) != n or any(c not in "01" for c in line):
                    raise CodebookFormatError(f"expected a {n}-character bit string, got {line!r}", path, lineno)
                current.append(line)
        if len(groups) != m:
            raise CodebookFormatError(f"header declares m={m} levels but file contains {len(groups)}", path)
        level_specs = []
        for (x, t, lineno), g in zip(specs, groups):
            if not g:
                raise CodebookFormatError(f"level {x} has no codewords", path, lineno)
            level_specs.append(LevelSpec(level_index=x, target_t=t, group_size=len(g)))
        try:
            return cls(groups, level_specs)
        except ValueError as exc:
            raise CodebookFormatError(str(exc), path) from exc

    @classmethod
    def load(cls, path) -> "LayeredCodebook":
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        return cls.loads(text, path=str(path))


@dataclass(frozen=True)
class ConstraintViolation:
    """One failed check, carrying the offending pair for diagnostics."""

    kind: str  # duplicate | intra-dmin | inter-eq6 | inter-eq7 | metadata
    levels: tuple[int, ...]
    required: int | None
    actual: int | None
    words: tuple[str, ...] = ()

    def __str__(self) -> str:
        lv = "/".join(level_label(x) for x in self.levels)
        base = f"[{self.kind}] levels {lv}: required >= {self.required}, actual {self.actual}"
        if self.words:
            base += " (" + ", ".join(self.words) + ")"
        return base


@dataclass
class VerificationReport:
    violations: list[ConstraintViolation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def eq6_ok(self) -> bool:
        return not any(v.kind == "inter-eq6" for v in self.violations)

    @property
    def eq7_ok(self) -> bool:
        return not any(v.kind == "inter-eq7" for v in self.violations)

    def __str__(self) -> str:
        if self.passed:
            return "codebook verification: PASS"
        lines = [f"codebook verification: FAIL ({len(self.violations)} violation(s))"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def _closest_cross_pair(mp: np.ndarray, mq: np.ndarray) -> tuple[str, str]:
    best = None
    pair = ("", "")
    for i in range(mp.shape[0]):
        dists = (mq != mp[i]).sum(axis=1)
        j = int(dists.argmin())
        if best is None or dists[j] < best:
            best = int(dists[j])
            pair = (bits_to_string(mp[i]), bits_to_string(mq[j]))
    return pair


def verify_codebook(cb: LayeredCodebook) -> VerificationReport:
    """Recompute every distance from scratch and check all codebook constraints.

    Checks, in order: global codeword distinctness, stored-metadata agreement,
    the per-level intra-distance floor 2t+1, the inter-level rule
    d_pq >= 2*max(t_p, t_q) + 1, and the stronger construction rule
    d_pq >= max of the two groups' intra minimum distances. The last two are
    reported separately. Singleton groups satisfy intra constraints vacuously;
    their design floor 2t+1 stands in for the undefined intra distance in the
    stronger rule.
    """
    report = VerificationReport()
    m = cb.num_levels

    seen: dict[str, tuple[int, int]] = {}
    for x, mat in enumerate(cb.groups, start=1):
        for i, row in enumerate(mat):
            key = bits_to_string(row)
            if key in seen:
                px, _ = seen[key]
                report.violations.append(
                    ConstraintViolation("duplicate", (px, x), 1, 0, (key, key))
                )
            else:
                seen[key] = (x, i)

    intra = [intra_group_dmin(mat) for mat in cb.groups]
    for x, (fresh, stored) in enumerate(zip(intra, cb.intra_dmin), start=1):
        if fresh != stored:
            report.violations.append(
                ConstraintViolation("metadata", (x,), fresh if fresh is not None else 0,
                                    stored if stored is not None else 0)
            )

    for x, spec in enumerate(cb.level_specs, start=1):
        d = intra[x - 1]
        if d is None:
            continue  # singleton: vacuously fine
        if d < spec.required_dmin:
            mat = cb.groups[x - 1]
            words = ()
            for i in range(mat.shape[0] - 1):
                dists = (mat[i + 1 :] != mat[i]).sum(axis=1)
                j = int(dists.argmin())
                if int(dists[j]) == d:
                    words = (bits_to_string(mat[i]), bits_to_string(mat[i + 1 + j]))
                    break
            report.violations.append(
                ConstraintViolation("intra-dmin", (x,), spec.required_dmin, d, words)
            )

    fresh_inter = np.zeros((m, m), dtype=np.int64)
    for p in range(m):
        for q in range(p + 1, m):
            d = inter_level_distance(cb.groups[p], cb.groups[q])
            fresh_inter[p, q] = fresh_inter[q, p] = d
            if d != cb.inter_d[p, q]:
                report.violations.append(
                    ConstraintViolation("metadata", (p + 1, q + 1), d, int(cb.inter_d[p, q]))
                )
            tp = cb.level_specs[p].target_t
            tq = cb.level_specs[q].target_t
            eq6_req = 2 * max(tp, tq) + 1
            # stronger rule: undefined (singleton) intra distance falls back to the design floor
            dp = intra[p] if intra[p] is not None else cb.level_specs[p].required_dmin
            dq = intra[q] if intra[q] is not None else cb.level_specs[q].required_dmin
            eq7_req = max(dp, dq)
            if d < eq6_req:
                report.violations.append(
                    ConstraintViolation("inter-eq6", (p + 1, q + 1), eq6_req, d,
                                        _closest_cross_pair(cb.groups[p], cb.groups[q]))
                )
            if d < eq7_req:
                report.violations.append(
                    ConstraintViolation("inter-eq7", (p + 1, q + 1), eq7_req, d,
                                        _closest_cross_pair(cb.groups[p], cb.groups[q]))
                )
    return report


def golden_codebook_path() -> str:
    """Path of the 45-bit, 6-level codebook shipped with the package."""
    here = os.path.dirname(os.path.abspath(__file__))
    return os.path.join(here, "data", "golden_codebook.txt")
