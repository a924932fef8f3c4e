"""Parsing and serialization of the line-oriented transformer file format."""

from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest

from conftest import read_testdata
from itcat.itfile import ItFileError, UtilityDecl, parse_it_file, serialize_it_file

GOOD_FILES = ("set.it", "stochastic.it", "multivalued.it", "fuzzy.it", "linear.it")


class TestParseBundledFiles:
    def test_set_file(self):
        parsed = parse_it_file(read_testdata("set.it"))
        assert parsed.category == "identity"
        assert set(parsed.spaces) == {"Z", "D"}
        assert parsed.spaces["D"].card == 3
        assert parsed.arrow("keep").rows == (0, 1, 2)
        assert parsed.arrow("merge").rows == (0, 0, 2)
        assert parsed.arrow("collapse").rows == (0, 0, 0)

    def test_stochastic_file(self):
        parsed = parse_it_file(read_testdata("stochastic.it"))
        assert parsed.category == "probability"
        assert parsed.products == {"DR": ("D", "R")}
        assert parsed.spaces["DR"].card == 4
        prior = parsed.arrow("prior")
        assert prior.src.card == 1 and prior.rows == ((F(1, 2), F(1, 2)),)
        assert parsed.arrow("chan").rows == (
            (F(3, 4), F(1, 4)),
            (F(1, 4), F(3, 4)),
        )
        assert parsed.arrow("joint").dst == parsed.spaces["DR"]
        assert parsed.utility("hit") == UtilityDecl(
            "D", "R", ((F(1), F(0)), (F(0), F(1)))
        )

    def test_multivalued_file(self):
        parsed = parse_it_file(read_testdata("multivalued.it"))
        assert parsed.category == "powerset"
        assert parsed.arrow("exact").rows == (
            frozenset({0}),
            frozenset({1}),
            frozenset({2}),
        )
        assert parsed.arrow("coarse").rows == (
            frozenset({0, 1}),
            frozenset({0, 1}),
            frozenset({2}),
        )
        assert parsed.arrow("blind").rows[0] == frozenset({0, 1, 2})

    def test_fuzzy_file(self):
        parsed = parse_it_file(read_testdata("fuzzy.it"))
        assert parsed.category == "fuzzy-min"
        assert parsed.monad.tag == "fuzzy-min"
        assert parsed.arrow("soft").rows == (
            (F(1), F(1, 2)),
            (F(1, 2), F(1)),
        )

    def test_linear_file(self):
        parsed = parse_it_file(read_testdata("linear.it"))
        assert parsed.is_linear
        assert parsed.dims == {"Z": 0, "X": 1, "Y": 1}
        prior = parsed.arrow("prior")
        assert prior.src_dim == 0 and prior.dst_dim == 1
        assert np.array_equal(prior.Sigma, [[1.0]])
        obs = parsed.arrow("obs")
        assert np.array_equal(obs.A, [[1.0]])
        assert np.array_equal(obs.Sigma, [[1.0]])
        assert np.array_equal(parsed.arrow("twice").A, [[2.0]])
        with pytest.raises(ItFileError, match="no finite-monad representation"):
            parsed.monad

    def test_lookups_report_unknown_names(self):
        parsed = parse_it_file(read_testdata("set.it"))
        with pytest.raises(ItFileError, match="unknown space 'Q'"):
            parsed.space("Q")
        with pytest.raises(ItFileError, match="unknown arrow 'nope'"):
            parsed.arrow("nope")
        with pytest.raises(ItFileError, match="unknown utility 'nope'"):
            parsed.utility("nope")


class TestRoundTrip:
    @pytest.mark.parametrize("name", GOOD_FILES)
    def test_serialize_then_parse_is_identity(self, name):
        parsed = parse_it_file(read_testdata(name))
        assert parse_it_file(serialize_it_file(parsed)) == parsed

    def test_serialized_stochastic_keeps_structure(self):
        text = serialize_it_file(parse_it_file(read_testdata("stochastic.it")))
        assert "product DR D R" in text
        assert "utility hit D R" in text
        assert "3/4 1/4" in text

    def test_float_values_round_trip_exactly(self):
        text = "\n".join(
            [
                "category linear",
                "space X 2",
                "space Y 1",
                "arrow noisy X Y",
                "A",
                "0.1 1e-3",
                "Sigma",
                "2.5000000000000004",
            ]
        )
        parsed = parse_it_file(text)
        again = parse_it_file(serialize_it_file(parsed))
        assert again == parsed
        assert np.array_equal(again.arrow("noisy").A, np.array([[0.1, 1e-3]]))

    def test_nested_products_round_trip(self):
        text = "\n".join(
            [
                "category probability",
                "object D 2",
                "object R 2",
                "product DR D R",
                "product DRD DR D",
                "arrow h Z DRD",
                "1/8 1/8 1/8 1/8 1/8 1/8 1/8 1/8",
            ]
        )
        parsed = parse_it_file(text)
        assert parsed.spaces["DRD"].card == 8
        assert parse_it_file(serialize_it_file(parsed)) == parsed


class TestValidationFixtures:
    def test_bad_row_sum_reports_arrow_line(self):
        with pytest.raises(ItFileError) as err:
            parse_it_file(read_testdata("bad_row_sum.it"))
        assert err.value.line == 4
        assert "sums to 5/6, not 1" in str(err.value)
        assert str(err.value).startswith("line 4:")

    def test_empty_image_reports_row_line(self):
        with pytest.raises(ItFileError) as err:
            parse_it_file(read_testdata("empty_image.it"))
        assert err.value.line == 5
        assert "empty image set" in str(err.value)

    def test_not_normed_reports_arrow_line(self):
        with pytest.raises(ItFileError) as err:
            parse_it_file(read_testdata("not_normed.it"))
        assert err.value.line == 4
        assert "not normed" in str(err.value)


class TestGrammarErrors:
    def test_empty_file(self):
        with pytest.raises(ItFileError) as err:
            parse_it_file("# only a comment\n\n")
        assert err.value.line is None
        assert "expected a 'category'" in str(err.value)

    def test_category_must_come_first(self):
        with pytest.raises(ItFileError) as err:
            parse_it_file("# intro\nobject D 2\n")
        assert err.value.line == 2
        assert "first declaration must be" in str(err.value)

    def test_unknown_category_lists_choices(self):
        with pytest.raises(ItFileError) as err:
            parse_it_file("category frob\n")
        message = str(err.value)
        assert "unknown category 'frob'" in message
        assert "linear" in message and "stochastic" in message

    def test_duplicate_category(self):
        with pytest.raises(ItFileError, match="duplicate 'category'"):
            parse_it_file("category set\ncategory set\n")

    def test_unknown_declaration(self):
        with pytest.raises(ItFileError, match="unknown declaration 'frobnicate'"):
            parse_it_file("category set\nfrobnicate D\n")

    def test_keyword_category_mismatches(self):
        with pytest.raises(ItFileError, match="use 'space' here"):
            parse_it_file("category linear\nobject D 2\n")
        with pytest.raises(ItFileError, match="use 'object' here"):
            parse_it_file("category set\nspace X 1\n")
        with pytest.raises(ItFileError, match="'product' is for finite"):
            parse_it_file("category linear\nspace X 1\nproduct P X X\n")
        with pytest.raises(ItFileError, match="utility tables are for finite"):
            parse_it_file("category linear\nspace X 1\nutility u X X\n")

    def test_duplicate_and_reserved_names(self):
        with pytest.raises(ItFileError, match="duplicate name 'D'"):
            parse_it_file("category set\nobject D 2\nobject D 3\n")
        with pytest.raises(ItFileError, match="'Z' is predeclared"):
            parse_it_file("category set\nobject Z 2\n")

    def test_unknown_space_in_arrow(self):
        with pytest.raises(ItFileError, match="unknown space 'R'"):
            parse_it_file("category set\nobject D 2\narrow f D R\n0\n0\n")

    def test_bad_cardinality_and_dimension(self):
        with pytest.raises(ItFileError, match="cardinality must be >= 1"):
            parse_it_file("category set\nobject D 0\n")
        with pytest.raises(ItFileError, match="bad cardinality 'two'"):
            parse_it_file("category set\nobject D two\n")
        with pytest.raises(ItFileError, match="dimension must be >= 0"):
            parse_it_file("category linear\nspace X -1\n")

    def test_row_length_mismatch(self):
        with pytest.raises(ItFileError, match="row needs 2 entries, got 3"):
            parse_it_file("category probability\nobject D 2\narrow f D D\n1/2 1/4 1/4\n1 0\n")

    def test_set_row_shape_and_range(self):
        with pytest.raises(ItFileError, match="single destination index"):
            parse_it_file("category set\nobject D 2\narrow f D D\n0 1\n0\n")
        with pytest.raises(ItFileError, match="out of range"):
            parse_it_file("category set\nobject D 2\narrow f D D\n5\n0\n")

    def test_membership_flags_are_bits(self):
        with pytest.raises(ItFileError, match="membership flag must be 0 or 1"):
            parse_it_file("category multivalued\nobject D 2\narrow f D D\n2 0\n1 0\n")

    def test_bad_rational(self):
        with pytest.raises(ItFileError, match="bad rational 'x/y'"):
            parse_it_file("category probability\nobject D 2\narrow f D D\nx/y 1\n1 0\n")

    def test_truncated_arrow(self):
        with pytest.raises(ItFileError, match="unexpected end of file"):
            parse_it_file("category probability\nobject D 2\narrow f D D\n1/2 1/2\n")

    def test_comments_and_blanks_are_free(self):
        text = (
            "category probability  # tag comment\n"
            "\n"
            "object D 2   # two points\n"
            "arrow f D D\n"
            "1/2 1/2  # inline\n"
            "0 1\n"
        )
        parsed = parse_it_file(text)
        assert parsed.arrow("f").rows == ((F(1, 2), F(1, 2)), (F(0), F(1)))


class TestLinearGrammar:
    def test_missing_matrix_headers(self):
        with pytest.raises(ItFileError, match="expected 'A' header"):
            parse_it_file(
                "category linear\nspace X 1\narrow f X X\n1.0\nSigma\n1.0\n"
            )
        with pytest.raises(ItFileError, match="expected 'Sigma' header"):
            parse_it_file("category linear\nspace X 1\narrow f X X\nA\n1.0\n1.0\n")

    def test_matrix_row_length(self):
        with pytest.raises(ItFileError, match="A row 0 of arrow 'f' needs 2 entries"):
            parse_it_file(
                "category linear\nspace X 2\nspace Y 1\narrow f X Y\nA\n1.0\nSigma\n1.0\n"
            )

    def test_bad_number(self):
        with pytest.raises(ItFileError, match="bad number 'one'"):
            parse_it_file(
                "category linear\nspace X 1\narrow f X X\nA\none\nSigma\n1.0\n"
            )

    def test_invalid_covariance_is_wrapped(self):
        with pytest.raises(ItFileError, match="arrow 'f': Sigma must be positive semidefinite"):
            parse_it_file(
                "category linear\nspace X 1\narrow f X X\nA\n1.0\nSigma\n-1.0\n"
            )

    def test_source_z_omits_a_block(self):
        parsed = parse_it_file("category linear\nspace X 1\narrow p Z X\nSigma\n4.0\n")
        prior = parsed.arrow("p")
        assert prior.src_dim == 0
        assert np.array_equal(prior.Sigma, [[4.0]])
