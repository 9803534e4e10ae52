import itertools
import random

import pytest

from fsnorm.normalizer import canonically_equivalent, in_hfs_exclusion
from fsnorm.policy import ALL_POLICIES, EXT4, HFS_PLUS, RESERVED_NAME, WINDOWS_NTFS, stored_form
from fsnorm.text import parse_escapes
from fsnorm.volume import (
    AlreadyExists,
    Collided,
    Created,
    InvalidName,
    Mode,
    Overwrote,
    RenamedByNormalization,
    SimVolume,
    Transferred,
    Unrepresentable,
    transfer,
)

E_PRE = "\u00e9"
E_DEC = "e\u0301"

# A small pool of spellings with many equivalent pairs plus a few invalid names.
POOL = [
    E_PRE, E_DEC, "e", "\u00c5", "A\u030a", "\u212b", "\u01ed", "\u01eb\u0304", "o\u0328\u0304",
    "o\u0304\u0328", "nul", "file/", "a:b", "report.txt", "x.",
]


def assert_hfs_invariant(volume: SimVolume):
    # Code points in the HFS exclusion ranges stay composed, so equivalence
    # there can diverge from stored-form equality; those keys are skipped.
    keys = [k for k in volume.names() if not any(in_hfs_exclusion(ord(ch)) for ch in k)]
    for a, b in itertools.combinations(keys, 2):
        assert not canonically_equivalent(volume.tables, a, b), (a, b)


def assert_keys_are_fixed_points(volume: SimVolume):
    for key in volume.names():
        assert stored_form(volume.policy, key, volume.tables) == key


class TestCreate:
    def test_hfs_exclusive_rejects_equivalent_spelling(self):
        vol = SimVolume(HFS_PLUS)
        assert vol.create(E_DEC, "c1") == Created(E_DEC)
        assert vol.create(E_PRE, "c2", Mode.EXCLUSIVE) == AlreadyExists(E_DEC)
        assert vol.entries == {E_DEC: "c1"}

    def test_hfs_truncate_overwrites(self):
        vol = SimVolume(HFS_PLUS)
        vol.create(E_DEC, "c1")
        assert vol.create(E_PRE, "c2", "truncate") == Overwrote(E_DEC, "c1")
        assert vol.entries == {E_DEC: "c2"}

    @pytest.mark.parametrize("policy", [WINDOWS_NTFS, EXT4])
    def test_both_spellings_coexist(self, policy):
        vol = SimVolume(policy)
        assert isinstance(vol.create(E_PRE, "c1"), Created)
        assert isinstance(vol.create(E_DEC, "c2"), Created)
        assert vol.names() == [E_PRE, E_DEC]
        assert len(vol) == 2

    def test_invalid_name(self):
        vol = SimVolume(WINDOWS_NTFS)
        outcome = vol.create("nul", "c1")
        assert isinstance(outcome, InvalidName)
        assert outcome.report.rule_ids == [RESERVED_NAME]
        assert len(vol) == 0
        assert vol.creation_log == [("nul", outcome)]

    def test_outcome_kinds(self):
        assert AlreadyExists.kind == "AlreadyExistsError"
        assert Mode.parse("EXCLUSIVE") is Mode.EXCLUSIVE
        with pytest.raises(ValueError):
            Mode.parse("append")

    @pytest.mark.parametrize("policy", ALL_POLICIES)
    def test_create_is_deterministic(self, policy):
        rng = random.Random(7)
        ops = [(rng.choice(POOL), f"c{i}", rng.choice(list(Mode))) for i in range(60)]
        runs = []
        for _ in range(2):
            vol = SimVolume(policy)
            runs.append(([vol.create(*op) for op in ops], dict(vol.entries)))
        assert runs[0] == runs[1]


class TestLookup:
    def test_hfs_precomposed_finds_decomposed(self):
        vol = SimVolume(HFS_PLUS)
        vol.create(E_DEC, "c1")
        assert vol.lookup(E_PRE) == "c1"

    def test_windows_exact_only(self):
        vol = SimVolume(WINDOWS_NTFS)
        vol.create(E_PRE, "c1")
        assert vol.lookup(E_DEC) is None
        assert vol.lookup(E_PRE) == "c1"

    def test_empty_volume(self):
        assert SimVolume(EXT4).lookup("A") is None

    def test_invalid_name_diagnostic(self):
        diagnostics: list[str] = []
        assert SimVolume(WINDOWS_NTFS).lookup("a?b", diagnostics) is None
        assert diagnostics and "illegal_character" in diagnostics[0]
        assert SimVolume(EXT4).lookup("", diagnostics) is None
        assert len(diagnostics) == 2


class TestTransfer:
    def test_reserved_name_unrepresentable(self):
        src = SimVolume(HFS_PLUS)
        src.create("nul", "c1")
        src.create("file/", "c2")  # invalid on HFS itself, never stored
        dst, report = transfer(src, WINDOWS_NTFS)
        assert len(report.entries) == 1
        entry = report.entries[0]
        assert isinstance(entry, Unrepresentable)
        assert entry.report.rule_ids == [RESERVED_NAME]
        assert len(dst) == 0

    def test_renamed_by_normalization(self):
        src = SimVolume(WINDOWS_NTFS)
        src.create(E_PRE, "c1")
        dst, report = transfer(src, HFS_PLUS)
        assert report.entries == [RenamedByNormalization(E_PRE, E_DEC)]
        assert dst.entries == {E_DEC: "c1"}

    @pytest.mark.parametrize("mode", list(Mode))
    def test_equivalent_pair_collides_once(self, mode):
        src = SimVolume(EXT4)
        src.create(E_PRE, "c1")
        src.create(E_DEC, "c2")
        dst, report = transfer(src, HFS_PLUS, mode)
        assert report.entries == [RenamedByNormalization(E_PRE, E_DEC), Collided(E_DEC, E_DEC)]
        assert report.count("Collided") == 1
        assert dst.entries == {E_DEC: "c1" if mode is Mode.EXCLUSIVE else "c2"}

    def test_unchanged_names_transferred(self):
        src = SimVolume(HFS_PLUS)
        src.create("report.txt", "c1")
        _, report = transfer(src, EXT4)
        assert report.entries == [Transferred("report.txt", "report.txt")]

    @pytest.mark.parametrize("src_policy, dst_policy", list(itertools.product(ALL_POLICIES, repeat=2)))
    def test_report_accounts_for_every_file(self, src_policy, dst_policy):
        src = SimVolume(src_policy)
        for i, name in enumerate(POOL):
            src.create(name, f"c{i}")
        dst, report = transfer(src, dst_policy)
        assert len(report.entries) == len(src)
        assert sum(report.summary.values()) == len(src)
        placed = report.count("Transferred") + report.count("RenamedByNormalization")
        assert placed == len(dst)
        if dst_policy is HFS_PLUS:
            assert_hfs_invariant(dst)
        assert_keys_are_fixed_points(dst)
        data = report.to_dict()
        assert data["summary"] == report.summary
        assert len(data["entries"]) == len(src)


class TestInvariants:
    def test_exclusion_range_spellings_coexist_on_hfs(self):
        vol = SimVolume(HFS_PLUS)
        assert vol.create("\u212b", "c1") == Created("\u212b")
        assert vol.create("\u00c5", "c2") == Created("A\u030a")
        assert canonically_equivalent(vol.tables, *vol.names())

    @pytest.mark.parametrize("mode", list(Mode))
    def test_hfs_never_holds_equivalent_pair(self, mode):
        rng = random.Random(2015)
        vol = SimVolume(HFS_PLUS)
        for i in range(200):
            vol.create(rng.choice(POOL), f"c{i}", mode)
            assert_hfs_invariant(vol)
        assert_keys_are_fixed_points(vol)

    @pytest.mark.parametrize("policy", [WINDOWS_NTFS, EXT4])
    def test_identity_policies_store_input(self, policy):
        vol = SimVolume(policy)
        created = []
        for i, name in enumerate(POOL):
            if isinstance(vol.create(name, f"c{i}"), Created):
                created.append(name)
        assert vol.names() == created

    @pytest.mark.parametrize("a, b", list(itertools.permutations(ALL_POLICIES, 2)))
    def test_round_trip_loses_nothing(self, a, b):
        names = ["report.txt", "e", "\u00c5x", parse_escapes("U+0041 U+0327 U+030A"), "\u212b", "ok name"]
        for subset_size in range(1, 4):
            for subset in itertools.combinations(names, subset_size):
                src = SimVolume(a)
                for i, name in enumerate(subset):
                    src.create(name, f"c{i}")
                there, out_report = transfer(src, b)
                back, back_report = transfer(there, a)
                if out_report.count("Unrepresentable") or out_report.count("Collided"):
                    continue
                if back_report.count("Unrepresentable") or back_report.count("Collided"):
                    continue
                assert sorted(back.entries.values()) == sorted(src.entries.values())
