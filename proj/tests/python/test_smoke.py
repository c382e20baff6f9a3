import os
from pathlib import Path

import pytest

import asfplus

CORPUS = Path(os.environ.get("ASFPLUS_CORPUS_DIR", Path(__file__).resolve().parents[1] / "corpus"))
SPECS = [
    "booleans.asfp",
    "naturals.asfp",
    "ordnaturals.asfp",
    "sequences.asfp",
    "ordsequences.asfp",
    "integers.asfp",
    "ordnatsequences.asfp",
    "seqofseq.asfp",
    "nat3.asfp",
]


def files(names):
    return [(n, (CORPUS / n).read_text()) for n in names]


def test_check_lists_modules():
    names = asfplus.check(files(SPECS))
    assert "OrdNatSequences" in names
    assert "Booleans" in names


def test_normalize_with_recorded_proofs():
    db = (CORPUS / "corpus.provedb").read_text()
    text = asfplus.normalize(files(SPECS), top="OrdNatSequences", provedb=db)
    assert text.startswith("module OrdNatSequences.nf")
    for hidden in ("Bo-and", "Nat-+", "OSeq-seq1", "ONat-geq"):
        assert hidden in text


def test_semantic_error_without_proofs():
    with pytest.raises(asfplus.NormError, match="irref"):
        asfplus.normalize(files(SPECS), top="OrdNatSequences")


def test_copydemo_clash():
    with pytest.raises(asfplus.NormError, match="sort C"):
        asfplus.normalize(files(["copydemo.asfp"]), top="CopyDemo")


def test_expand_booleans():
    out = asfplus.expand((CORPUS / "booleans.asfp").read_text())
    assert "[me-and1] and(true, y) = y" in out
    assert "[me-not2] not(false) = true" in out


def test_disambiguated_and_diagram():
    text = asfplus.normalize(files(SPECS), top="Naturals", disambiguate=True)
    assert "+[NAT,NAT]" in text
    dot = asfplus.diagram(files(SPECS), top="Integers")
    assert "Naturals[Int1]" in dot
    assert asfplus.diagram(files(SPECS), top="Booleans", format="ascii").startswith("+")
