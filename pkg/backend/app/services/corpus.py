"""
Operator Corpus - Data files with metadata headers and closed-form term oracles
Loading, listing, oracle terms and transcription checks
"""
import logging
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Callable, Dict, List, Optional

from sympy.polys.domains import QQ

from app.core.config import settings
from app.core.errors import CorpusError, OreSolveError
from app.services import polyalg
from app.services.ore import OrePoly, apply, det_op, parse_operator
from app.services.polyalg import Rat

logger = logging.getLogger(__name__)

HEADER_PREFIX = "#"
DEFAULT_VERIFY_TERMS = 30


# Oracles: exact terms by direct summation

def a227845(n: int) -> Rat:
    total = 0
    for k in range(n // 2 + 1):
        for j in range(k, n - k + 1):
            total += comb(n - k, j) ** 2 * comb(j, k) ** 2
    return QQ(total)


def central_trinomial(n: int) -> Rat:
    """Coefficient of x^n in (1 + x + x^2)^n"""
    return QQ(sum(comb(n, k) * comb(n - k, k) for k in range(n // 2 + 1)))


def fibonacci(n: int) -> Rat:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return QQ(a)


ORACLES: Dict[str, Callable[[int], Rat]] = {
    "a227845": a227845,
    "central_trinomial": central_trinomial,
    "fibonacci": fibonacci,
}


@dataclass(frozen=True)
class Expected:
    """Expected pipeline outcome, e.g. 'solve4 case=symmetric-cube'"""
    command: str
    params: Dict[str, str] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "Expected":
        words = text.split()
        if not words:
            raise CorpusError("empty expected outcome")
        params = {}
        for w in words[1:]:
            key, sep, value = w.partition("=")
            if not sep:
                raise CorpusError(f"expected key=value, got {w!r}")
            params[key] = value
        return cls(words[0], params)


@dataclass
class CorpusEntry:
    name: str
    text: str
    description: str = ""
    oracle: Optional[str] = None
    expected: Optional[Expected] = None
    det: Optional[str] = None
    slow: bool = False
    path: Optional[Path] = None

    @property
    def operator(self) -> OrePoly:
        return parse_operator(self.text)

    def oracle_terms(self, count: int) -> List[Rat]:
        if self.oracle is None:
            raise CorpusError(f"corpus entry {self.name!r} has no oracle")
        gen = ORACLES[self.oracle]
        return [gen(n) for n in range(count)]


def parse_entry(content: str, path: Optional[Path] = None) -> CorpusEntry:
    meta: Dict[str, str] = {}
    body = []
    for line in content.splitlines():
        stripped = line.strip()
        if stripped.startswith(HEADER_PREFIX):
            key, sep, value = stripped[1:].partition(":")
            if sep:
                meta[key.strip().lower()] = value.strip()
        elif stripped:
            body.append(stripped)
    name = meta.get("name") or (path.stem if path else "")
    if not name:
        raise CorpusError("corpus entry without a name")
    if not body:
        raise CorpusError(f"corpus entry {name!r} has no operator text")
    oracle = meta.get("oracle")
    if oracle is not None and oracle not in ORACLES:
        raise CorpusError(f"corpus entry {name!r} names unknown oracle {oracle!r}")
    expected = Expected.parse(meta["expected"]) if "expected" in meta else None
    return CorpusEntry(
        name=name,
        text=" ".join(body),
        description=meta.get("description", ""),
        oracle=oracle,
        expected=expected,
        det=meta.get("det"),
        slow=meta.get("slow", "false").lower() == "true",
        path=path,
    )


class Corpus:
    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory or settings.corpus_path)
        self._entries: Optional[Dict[str, CorpusEntry]] = None

    def load(self) -> Dict[str, CorpusEntry]:
        if self._entries is None:
            entries = {}
            if not self.directory.is_dir():
                logger.warning(f"corpus directory {self.directory} not found")
            else:
                for path in sorted(self.directory.glob("*.txt")):
                    entry = parse_entry(path.read_text(), path)
                    entries[entry.name] = entry
            logger.debug(f"loaded {len(entries)} corpus entries from {self.directory}")
            self._entries = entries
        return self._entries

    def names(self) -> List[str]:
        return list(self.load())

    def get(self, name: str) -> CorpusEntry:
        entries = self.load()
        if name not in entries:
            raise CorpusError(f"unknown corpus entry {name!r}; known: {', '.join(entries)}")
        return entries[name]

    def clear(self):
        self._entries = None


@dataclass
class Verification:
    name: str
    det_checked: bool = False
    det_matches: bool = True
    oracle_checked: bool = False
    valid_points: int = 0
    residuals: List[Rat] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.det_matches and not any(self.residuals)


def verify_entry(entry: CorpusEntry, terms: int = DEFAULT_VERIFY_TERMS) -> Verification:
    """det(L) against the header value, then L applied to the oracle on its first valid points"""
    L = entry.operator
    result = Verification(entry.name)
    if entry.det:
        result.det_checked = True
        result.det_matches = det_op(L) == polyalg.parse_ratfunc(entry.det)
        if not result.det_matches:
            logger.warning(f"{entry.name}: determinant does not match the header value")
    if entry.oracle:
        result.oracle_checked = True
        gen = ORACLES[entry.oracle]
        cache: Dict[int, Rat] = {}

        def u(m: int) -> Rat:
            if m not in cache:
                cache[m] = gen(m)
            return cache[m]

        n = 0
        while result.valid_points < terms and n < 4 * terms + L.order:
            try:
                res = apply(L, u, n)
            except OreSolveError:
                res = None
            if res is not None:
                result.valid_points += 1
                result.residuals.append(res)
            n += 1
        bad = sum(1 for r in result.residuals if r)
        logger.info(f"{entry.name}: {result.valid_points} valid points, {bad} nonzero residual(s)")
    return result


# Global instance
corpus = Corpus()
