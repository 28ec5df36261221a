import pytest
from hypothesis import given

from chainlab.exceptions import DomainError, FamilyFormatError
from chainlab.familyio import format_family, parse_family, read_family, set_from_text, write_family
from chainlab.lattice import SetFamily

from conftest import families


def test_parse_basic():
    fam = parse_family("n=4\n1,2\n{}\nhex:c\n\n")
    assert fam == SetFamily(4, [0b0011, 0, 0b1100])


@pytest.mark.parametrize(
    "text, line",
    [
        ("1,2\n", 1),
        ("n=3\n2,1\n", 2),
        ("n=3\n1,4\n", 2),
        ("n=3\n1,a\n", 2),
        ("n=3\n1\n\n1\n", 4),
        ("n=3\nhex:10\n", 2),
        ("n=3\nhex:F\n", 2),
        ("", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(FamilyFormatError) as err:
        parse_family(text)
    assert err.value.lineno == line
    assert str(err.value).startswith(f"line {line}:")


@given(families(max_n=6))
def test_roundtrip(fam):
    assert parse_family(format_family(fam)) == fam
    assert parse_family(format_family(fam, use_hex=True)) == fam


def test_file_roundtrip(tmp_path):
    fam = SetFamily(5, [0, 3, 31])
    path = tmp_path / "f.txt"
    write_family(fam, path)
    assert path.read_text() == "n=5\n{}\n1,2\n1,2,3,4,5\n"
    assert read_family(path) == fam


def test_set_from_text():
    assert set_from_text("2,3", 3) == 0b110
    with pytest.raises(DomainError):
        set_from_text("3,2", 3)
