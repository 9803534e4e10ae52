import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fsnorm.normalizer import canonically_equivalent, in_hfs_exclusion
from fsnorm.policy import (
    ALL_POLICIES,
    CONTROL_CHARACTER,
    DOT_ENTRY,
    EXT4,
    HFS_PLUS,
    ILLEGAL_CHARACTER,
    NAME_TOO_LONG,
    RESERVED_NAME,
    TRAILING_PERIOD_OR_SPACE,
    WINDOWS_NTFS,
    InvalidNameError,
    UnitKind,
    encode_stored,
    names_collide,
    parse_targets,
    policy_by_name,
    stored_form,
    validate,
)
from fsnorm.text import parse_escapes
from fsnorm.ucd import embedded_tables

TABLES = embedded_tables()


class TestValidate:
    def test_reserved_name(self):
        report = validate(WINDOWS_NTFS, "nul", TABLES)
        assert not report.valid
        assert report.rule_ids == [RESERVED_NAME]

    @pytest.mark.parametrize(
        "name", ["CON", "prn", "Aux", "nul.txt", "COM1", "com9.tar.gz", "LPT1", "lpt9.log"]
    )
    def test_reserved_names_with_and_without_extensions(self, name):
        assert RESERVED_NAME in validate(WINDOWS_NTFS, name).rule_ids

    @pytest.mark.parametrize("name", ["com10", "lpt0", "console", "nul_", "xnul", "com"])
    def test_near_reserved_names_are_fine(self, name):
        assert validate(WINDOWS_NTFS, name).valid

    def test_illegal_character_span(self):
        report = validate(WINDOWS_NTFS, "a?b")
        assert [(v.rule_id, v.offending_span) for v in report.violations] == [(ILLEGAL_CHARACTER, (1, 2))]

    @pytest.mark.parametrize("ch", list('\\/:?*<>|"'))
    def test_every_windows_illegal_character(self, ch):
        assert validate(WINDOWS_NTFS, f"a{ch}b").rule_ids == [ILLEGAL_CHARACTER]

    def test_control_characters(self):
        report = validate(WINDOWS_NTFS, "a\x01b\x1f")
        assert report.rule_ids == [CONTROL_CHARACTER, CONTROL_CHARACTER]
        assert validate(EXT4, "a\x01b").valid

    def test_trailing_period_or_space(self):
        assert validate(WINDOWS_NTFS, "name.").rule_ids == [TRAILING_PERIOD_OR_SPACE]
        assert validate(WINDOWS_NTFS, "name ").rule_ids == [TRAILING_PERIOD_OR_SPACE]
        assert validate(WINDOWS_NTFS, ".profile").valid
        assert validate(HFS_PLUS, "name.").valid

    def test_hfs_rules(self):
        assert validate(HFS_PLUS, "a:b").rule_ids == [ILLEGAL_CHARACTER]
        assert validate(HFS_PLUS, "file/").rule_ids == [ILLEGAL_CHARACTER]
        assert validate(HFS_PLUS, "nul").valid
        assert validate(HFS_PLUS, "a?b*c").valid

    def test_ext4_rules(self):
        assert validate(EXT4, "\u00e9.txt").valid
        assert validate(EXT4, "a/b").rule_ids == [ILLEGAL_CHARACTER]
        assert validate(EXT4, "a\0b").rule_ids == [ILLEGAL_CHARACTER]
        assert validate(EXT4, 'a:b?*<>|"').valid

    @pytest.mark.parametrize("policy", ALL_POLICIES)
    @pytest.mark.parametrize("name", [".", ".."])
    def test_dot_entries(self, policy, name):
        assert validate(policy, name).rule_ids == [DOT_ENTRY]

    def test_empty_name_is_a_contract_violation(self):
        with pytest.raises(ValueError):
            validate(EXT4, "")

    def test_every_violation_is_reported(self):
        report = validate(WINDOWS_NTFS, "com1.a:?.")
        assert sorted(report.rule_ids) == sorted(
            [ILLEGAL_CHARACTER, ILLEGAL_CHARACTER, RESERVED_NAME, TRAILING_PERIOD_OR_SPACE]
        )


class TestLengths:
    def test_units(self):
        assert WINDOWS_NTFS.unit_kind is HFS_PLUS.unit_kind is UnitKind.UTF16_UNITS
        assert EXT4.unit_kind is UnitKind.BYTES
        assert all(p.max_name_units == 255 for p in ALL_POLICIES)

    def test_windows_counts_utf16_units(self):
        assert validate(WINDOWS_NTFS, "a" * 255).valid
        assert validate(WINDOWS_NTFS, "a" * 256).rule_ids == [NAME_TOO_LONG]
        # astral code points take two UTF-16 units
        assert validate(WINDOWS_NTFS, "\U0001F600" * 127 + "a").valid
        assert validate(WINDOWS_NTFS, "\U0001F600" * 128).rule_ids == [NAME_TOO_LONG]

    def test_ext4_counts_bytes(self):
        assert validate(EXT4, "\u00e9" * 127).valid
        assert validate(EXT4, "\u00e9" * 128).rule_ids == [NAME_TOO_LONG]

    def test_hfs_measures_after_decomposition(self):
        name = "\u00e9" * 128  # 128 units composed, 256 decomposed
        assert validate(WINDOWS_NTFS, name).valid
        assert validate(HFS_PLUS, name, TABLES).rule_ids == [NAME_TOO_LONG]

    def test_spans_in_bounds(self):
        for name in ["a" * 300, "a?b", "nul.", "\u00e9" * 200]:
            for policy in ALL_POLICIES:
                for v in validate(policy, name).violations:
                    start, end = v.offending_span
                    assert 0 <= start < end <= len(name)


class TestStoredForm:
    def test_examples(self):
        assert stored_form(HFS_PLUS, "\u00e9", TABLES) == "e\u0301"
        assert stored_form(WINDOWS_NTFS, "\u00e9", TABLES) == "\u00e9"
        assert stored_form(EXT4, "e\u0301", TABLES) == "e\u0301"
        assert stored_form(HFS_PLUS, "\u212b", TABLES) == "\u212b"

    def test_invalid_name_carries_report(self):
        with pytest.raises(InvalidNameError) as info:
            stored_form(WINDOWS_NTFS, "nul")
        assert info.value.report.rule_ids == [RESERVED_NAME]

    def test_encodings(self):
        assert encode_stored(WINDOWS_NTFS, "\u00e9") == b"\xe9\x00"
        assert encode_stored(HFS_PLUS, "e\u0301") == b"\x00e\x03\x01"
        assert encode_stored(EXT4, "\u00e9") == b"\xc3\xa9"

    @given(st.text(st.characters(blacklist_categories=("Cs",), blacklist_characters="/:\\?*<>|\"\0."), min_size=1))
    def test_idempotent(self, name):
        for policy in ALL_POLICIES:
            if not validate(policy, name, TABLES).valid:
                continue
            once = stored_form(policy, name, TABLES)
            assert stored_form(policy, once, TABLES) == once


class TestCollisions:
    def test_examples(self):
        assert names_collide(HFS_PLUS, "\u00e9", "e\u0301", TABLES)
        assert not names_collide(WINDOWS_NTFS, "\u00e9", "e\u0301", TABLES)
        assert not names_collide(EXT4, "\u00e9", "e\u0301", TABLES)
        assert names_collide(EXT4, "A", "A", TABLES)

    def test_hfs_collision_implies_equivalence(self):
        names = [
            parse_escapes(s)
            for s in [
                "U+00C5", "U+0041 U+030A", "U+01FB", "U+00E5 U+0301", "U+0061 U+030A U+0301",
                "U+01ED", "U+01EB U+0304", "U+006F U+0304 U+0328", "U+014D U+0328", "U+0041",
            ]
        ]
        for a, b in itertools.product(names, repeat=2):
            equivalent = canonically_equivalent(TABLES, a, b)
            assert names_collide(HFS_PLUS, a, b, TABLES) == equivalent
        # the exclusion ranges make the converse fail
        assert canonically_equivalent(TABLES, "\u212b", "\u00c5")
        assert not names_collide(HFS_PLUS, "\u212b", "\u00c5", TABLES)
        assert in_hfs_exclusion(0x212B)


def test_policy_names():
    assert policy_by_name("Windows") is WINDOWS_NTFS
    assert policy_by_name("hfs+") is HFS_PLUS
    assert policy_by_name("ext4") is EXT4
    assert parse_targets("linux,windows") == (WINDOWS_NTFS, EXT4)
    assert parse_targets("all") == ALL_POLICIES
    with pytest.raises(ValueError):
        policy_by_name("fat32")
    with pytest.raises(ValueError):
        parse_targets(",")
