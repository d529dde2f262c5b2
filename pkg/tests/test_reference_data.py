"""The bundled published values agree with the source document, when it is present."""

import re
from pathlib import Path

import pytest

from prshells import reference

SOURCE = Path(__file__).resolve().parents[1] / "paper.md"

pytestmark = pytest.mark.skipif(not SOURCE.exists(), reason="source document not available")


def _source():
    return SOURCE.read_text()


def _tables(text):
    """Every run of tab-separated ell/lambda rows, in document order."""
    tables, ells, lams = [], [], []
    for line in text.splitlines() + [""]:
        if line.startswith("ℓ\t"):
            ells += [int(x) for x in line.split("\t")[1:] if x.strip()]
        elif line.startswith("λ\t"):
            lams += [int(x) for x in line.split("\t")[1:] if x.strip()]
        elif line.strip() and ells:
            tables.append(dict(zip(ells, lams)))
            ells, lams = [], []
    return tables


def test_tables_transcribed():
    assert _tables(_source()) == [reference.table("table1"), reference.table("table2")]


def _latex_monomial(coeff, m0, m1, n0, n1):
    def exp(e):
        return str(e) if e < 10 else "{%d}" % e

    s = "" if coeff == 1 else str(coeff)
    for var, e in (("w", m0), ("x", n0), ("y", n1), ("z", m1)):
        if e:
            s += var + ("" if e == 1 else "^" + exp(e))
    return s


@pytest.mark.parametrize("name,start,stop", [
    ("example51", r"H\{13, 18\}", r"H\{6, 12\}"),
    ("example52", r"H\{6, 12\}", None),
])
def test_polynomial_terms_transcribed(name, start, stop):
    # each instance's text runs from the first mention of its orbit labels to the next instance's
    text = _source()
    section = text[text.index(start): text.index(stop) if stop else len(text)]
    section = re.sub(r"\s|&|\\\\", "", section)
    ex = reference.example(name)
    for poly in ex["polynomials"]:
        for coeff, e in poly.terms():
            mono = _latex_monomial(coeff, *e)
            assert re.search(r"(?<!\d)" + re.escape(mono) + r"(?![\d^])", section), mono


def test_polynomials_count_every_codeword():
    for name, size in (("example51", 2**21), ("example52", 5**9)):
        for poly in reference.example(name)["polynomials"]:
            assert poly.total() == size


def test_enumerator_leading_terms_transcribed():
    section = re.sub(r"\s", "", _source())
    for vec in reference.example("example51")["harmonic_enumerators"]:
        w = next(i for i, c in enumerate(vec) if c)
        mono = f"{vec[w]}x^{{{31 - w}}}y^{w}" if w < 10 else f"{vec[w]}x^{{{31 - w}}}y^{{{w}}}"
        assert mono in section, mono
