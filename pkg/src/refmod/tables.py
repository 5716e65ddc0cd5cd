"""Golden reference tables (group data, cusp widths, eta quotient rows).

The TSV files under tables/ hold the level-by-level reference data used by
`refmod selftest` and the acceptance suite: group invariants, cusp widths,
and for each tabulated eta quotient its cusp, vanishing orders, weight,
character and any recorded character values at cusp generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .characters import CharacterSpec
from .etaq import parse_exponents

__all__ = ["gamma0_rows", "cusp_rows", "eta_rows", "EtaRow"]


def _read(name: str) -> list[list[str]]:
    text = resources.files("refmod").joinpath(f"tables/{name}").read_text()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line.split("\t"))
    return out


def gamma0_rows() -> list[tuple[int, int, int, int, int, int]]:
    """(N, index, nu2, nu3, nu_inf, genus) per tabulated level."""
    return [tuple(int(x) for x in row) for row in _read("gamma0.tsv")]


def cusp_rows() -> list[tuple[int, str, int]]:
    return [(int(r[0]), r[1], int(r[2])) for r in _read("cusps.tsv")]


@dataclass(frozen=True)
class EtaRow:
    N: int
    cusps: tuple[str, ...]
    exponents: dict
    zeros: tuple[Fraction, ...]
    weight: Fraction
    character: CharacterSpec | None
    cusp_chars: tuple[tuple[str, str], ...]  # (character name, printed value)


def _parse_char(N: int, text: str) -> CharacterSpec | None:
    if text == "-":
        return None
    e, m = 0, 1
    for part in text.split("*"):
        if part.startswith("theta"):
            e = int(part[6:]) if "^" in part else 1
        else:
            m *= int(part)
    return CharacterSpec(N, e, m)


def eta_rows() -> list[EtaRow]:
    out = []
    for r in _read("eta_rows.tsv"):
        N = int(r[0])
        cusps = tuple(r[1].split(";"))
        zeros = tuple(Fraction(z) for z in r[3].split(";"))
        cusp_chars = []
        if r[6] != "-":
            for item in r[6].split(";"):
                name, val = item.split("=")
                cusp_chars.append((name, val))
        out.append(
            EtaRow(
                N=N,
                cusps=cusps,
                exponents=parse_exponents(r[2]),
                zeros=zeros,
                weight=Fraction(r[4]),
                character=_parse_char(N, r[5]),
                cusp_chars=tuple(cusp_chars),
            )
        )
    return out
