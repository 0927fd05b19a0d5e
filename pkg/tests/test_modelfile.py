import numpy as np
import pytest

from tenfold1d import (
    build_bulk,
    build_profile,
    build_tb,
    parse_model,
    parse_model_text,
)
from tenfold1d.errors import ParseError

DIRAC = """\
# scalar mass
kind dirac
W [[1.0]]
"""

SCHRODINGER = """\
kind schrodinger
V [[0.0]]
energy -1.0
"""

TIGHT_BINDING = """\
kind tight_binding
a0 [[1.0]]
a1 [[2.0]]
b0 [[0.0]]
b1 [[0.0]]
"""

PROFILE = """\
kind dirac_profile
W0 [[-1.0]]
W1 [[1.0]]
breakpoints [0.0]
"""


class TestParsing:
    def test_dirac(self):
        mf = parse_model_text(DIRAC)
        assert mf.kind == "dirac" and mf.energy is None
        assert mf.matrices["W"].shape == (1, 1)

    def test_complex_entries(self):
        mf = parse_model_text("kind dirac\nW [[[0.0, 1.0]]]\n")
        assert mf.matrices["W"][0, 0] == 1j

    def test_comments_and_blanks_skipped(self):
        mf = parse_model_text("\n# c\nkind dirac\n\nW [[2.0]]\n")
        assert mf.matrices["W"][0, 0] == 2.0

    def test_bare_word_value(self):
        # 'kind dirac' carries a bare identifier, not JSON
        assert parse_model_text("kind dirac\nW [[1]]").kind == "dirac"

    def test_missing_kind(self):
        with pytest.raises(ParseError, match="kind"):
            parse_model_text("W [[1.0]]")

    def test_unknown_kind(self):
        with pytest.raises(ParseError, match="kind must be one of"):
            parse_model_text("kind hubbard\nW [[1.0]]")

    def test_duplicate_key(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_model_text("kind dirac\nW [[1.0]]\nW [[2.0]]")

    def test_unknown_key_located(self):
        with pytest.raises(ParseError, match=r"model\.tf:3"):
            parse_model_text("kind dirac\nW [[1.0]]\nVV [[1.0]]", source="model.tf")

    def test_bad_json_located(self):
        with pytest.raises(ParseError, match=":2"):
            parse_model_text("kind dirac\nW [[1.0")

    def test_ragged_matrix(self):
        with pytest.raises(ParseError, match="equally long"):
            parse_model_text("kind dirac\nW [[1.0, 2.0], [3.0]]")

    def test_bad_entry(self):
        with pytest.raises(ParseError, match="entries"):
            parse_model_text('kind dirac\nW [["x"]]')

    def test_schrodinger_requires_energy(self):
        with pytest.raises(ParseError, match="energy"):
            parse_model_text("kind schrodinger\nV [[0.0]]")

    def test_tight_binding_runs_must_match(self):
        with pytest.raises(ParseError, match="matching"):
            parse_model_text("kind tight_binding\na0 [[1.0]]\nb0 [[0.0]]\nb1 [[0.0]]")

    def test_tight_binding_run_must_be_contiguous(self):
        with pytest.raises(ParseError, match="without gaps"):
            parse_model_text("kind tight_binding\na0 [[1.0]]\na2 [[1.0]]\n"
                             "b0 [[0.0]]\nb1 [[0.0]]")

    def test_profile_mass_count(self):
        with pytest.raises(ParseError, match="breakpoints"):
            parse_model_text("kind dirac_profile\nW0 [[1.0]]\nW1 [[1.0]]\n"
                             "breakpoints [0.0, 1.0]")

    def test_from_disk(self, tmp_path):
        path = tmp_path / "m.tf"
        path.write_text(DIRAC)
        mf = parse_model(str(path))
        assert mf.kind == "dirac"

    def test_parse_error_names_file(self, tmp_path):
        path = tmp_path / "broken.tf"
        path.write_text("kind dirac\nW oops(\n")
        with pytest.raises(ParseError, match="broken.tf:2"):
            parse_model(str(path))


class TestBuilders:
    def test_dirac_bulk(self):
        bulk = build_bulk(parse_model_text(DIRAC))
        assert bulk.gap == pytest.approx(1.0)
        assert bulk.energy == 0.0

    def test_energy_override(self):
        bulk = build_bulk(parse_model_text(DIRAC), energy=0.5)
        assert bulk.energy == 0.5

    def test_schrodinger_bulk(self):
        bulk = build_bulk(parse_model_text(SCHRODINGER))
        assert abs(bulk.u_plus.U[0, 0] + 1j) <= 1e-12

    def test_tight_binding_bulk(self):
        mf = parse_model_text(TIGHT_BINDING)
        model = build_tb(mf)
        assert model.period == 2
        bulk = build_bulk(mf)
        assert bulk.gap > 0

    def test_profile(self):
        p = build_profile(parse_model_text(PROFILE))
        assert p.steps == 1 and p.block_dim == 1

    def test_profile_is_not_a_bulk(self):
        with pytest.raises(ParseError, match="junction"):
            build_bulk(parse_model_text(PROFILE))

    def test_builder_kind_gates(self):
        with pytest.raises(ParseError):
            build_tb(parse_model_text(DIRAC))
        with pytest.raises(ParseError):
            build_profile(parse_model_text(DIRAC))
