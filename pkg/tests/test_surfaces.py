import random

import pytest

import mbs
from mbs.errors import (
    DanglingBranchReference,
    DuplicateId,
    EmptySectorBoundary,
    IsolatedBranch,
    NotRegular,
    UnknownBranch,
    UnknownSector,
    ZeroDegree,
)
from mbs.surfaces import MultibranchedSurface, Prebranch, Sector

from oracle import random_surface


def disk_on(branch="l1", od=1):
    return MultibranchedSurface(
        (branch,), (Sector("e1", 0, (Prebranch(branch, od),)),), "disk"
    )


def test_validate_accepts_disk():
    x = mbs.validate(disk_on())
    assert x.branches == ("l1",)
    assert mbs.branch_index(x, "l1") == 1


def test_validate_prunes_isolated_branch():
    x = MultibranchedSurface(
        ("l1", "l2"), (Sector("e1", 0, (Prebranch("l1", 1),)),), "d"
    )
    pruned = mbs.validate(x, prune=True)
    assert pruned.branches == ("l1",)
    with pytest.raises(IsolatedBranch):
        mbs.validate(x, prune=False)


def test_validate_rejects_empty_sector_boundary():
    x = MultibranchedSurface(("l1",), (Sector("e1", 0, ()),), "bad")
    with pytest.raises(EmptySectorBoundary):
        mbs.validate(x)


def test_validate_rejects_dangling_reference():
    x = MultibranchedSurface(("l1",), (Sector("e1", 0, (Prebranch("l9", 1),)),), "bad")
    with pytest.raises(DanglingBranchReference):
        mbs.validate(x)


def test_validate_rejects_zero_degree():
    with pytest.raises(ZeroDegree):
        mbs.validate(disk_on(od=0))


def test_validate_rejects_duplicate_ids():
    x = MultibranchedSurface(
        ("l1", "l1"), (Sector("e1", 0, (Prebranch("l1", 1),)),), "bad"
    )
    with pytest.raises(DuplicateId):
        mbs.validate(x)
    y = MultibranchedSurface(
        ("l1",),
        (
            Sector("e1", 0, (Prebranch("l1", 1),)),
            Sector("e1", 0, (Prebranch("l1", 1),)),
        ),
        "bad",
    )
    with pytest.raises(DuplicateId):
        mbs.validate(y)


def test_unknown_lookups():
    x = mbs.validate(disk_on())
    with pytest.raises(UnknownSector):
        x.sector("nope")
    with pytest.raises(UnknownBranch):
        mbs.branch_index(x, "nope")


def test_regularity():
    same = MultibranchedSurface(
        ("l1",),
        (Sector("e1", 0, (Prebranch("l1", 2), Prebranch("l1", -2))),),
        "ok",
    )
    assert mbs.is_regular(same)
    assert mbs.branch_degree(same, "l1") == 2
    mixed = MultibranchedSurface(
        ("l1",),
        (Sector("e1", 0, (Prebranch("l1", 2), Prebranch("l1", 3))),),
        "no",
    )
    assert not mbs.is_regular(mixed)
    with pytest.raises(NotRegular):
        mbs.branch_degree(mixed, "l1")
    assert mbs.is_regular(mbs.pants_example())


def test_branch_index_counts_prebranches():
    x = mbs.pants_example()
    assert [mbs.branch_index(x, b) for b in x.branches] == [3, 3, 3, 3]
    r = mbs.rose_times_circle(3)
    assert mbs.branch_index(r, "l") == 4 * 3 + 1


def test_euler_characteristic_values():
    assert mbs.euler_characteristic(mbs.validate(disk_on())) == 1
    assert mbs.euler_characteristic(mbs.pants_example()) == -4
    # nonorientable sector: chi = 2 - crosscaps - boundary circles
    k = MultibranchedSurface(
        ("l1",),
        (Sector("e1", 2, (Prebranch("l1", 1),), orientable=False),),
        "klein-ish",
    )
    assert mbs.euler_characteristic(k) == 2 - 2 - 1


def test_connected_components_split_and_reassemble():
    two = MultibranchedSurface(
        ("a", "b"),
        (
            Sector("e1", 0, (Prebranch("a", 1),)),
            Sector("e2", 0, (Prebranch("b", 1),)),
        ),
        "pair",
    )
    comps = mbs.connected_components(two)
    assert len(comps) == 2
    assert {c.name for c in comps} == {"pair.0", "pair.1"}
    assert not mbs.is_connected(two)
    assert mbs.is_connected(mbs.pants_example())
    # chi is additive over the split
    assert sum(mbs.euler_characteristic(c) for c in comps) == mbs.euler_characteristic(two)


def test_chi_additive_over_random_components():
    rng = random.Random(11)
    for _ in range(40):
        x = random_surface(rng)
        parts = mbs.connected_components(x)
        assert sum(mbs.euler_characteristic(c) for c in parts) == mbs.euler_characteristic(x)
        assert sum(len(c.sectors) for c in parts) == len(x.sectors)
        assert sum(len(c.branches) for c in parts) == len(x.branches)


def test_every_validated_branch_has_positive_index():
    rng = random.Random(5)
    for _ in range(60):
        x = random_surface(rng)
        for b in x.branches:
            assert mbs.branch_index(x, b) >= 1


def test_prebranches_at_positions():
    x = mbs.pants_example()
    refs = x.prebranches_at("l1")
    assert all(s.prebranches[pos].branch == "l1" for s, pos in refs)
    assert len(refs) == 3
