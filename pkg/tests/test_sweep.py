import json

from scatlin.quadrinomial import QuadParams, scattered_conditions
from scatlin.sweep import (
    classify_sweep,
    classify_record,
    condition_pairs,
    sufficiency_sweep,
    bad_power_set_sweep,
    conjecture_scan,
    h_class_reps,
)


def test_h_class_reps(f33):
    reps = h_class_reps(f33)
    assert reps.size == 728 // 2
    # one representative per scalar orbit, always the smallest index
    seen = set()
    for h in reps:
        orbit = {int(h), f33.mul(2, int(h))}
        assert not (orbit & seen)
        assert int(h) == min(orbit)
        seen |= orbit
    assert len(seen) == 728


def test_condition_pairs_match_predicate(f33, f53):
    for ctx in (f33, f53):
        pairs = set(condition_pairs(ctx, 1))
        mid = ctx.subfield(ctx.t)
        for m in mid[:6]:
            for h in range(1, 40):
                applies = scattered_conditions(QuadParams(ctx, 1, int(m), h)).applies
                assert ((int(m), h) in pairs) == applies


def test_record_schema_roundtrips(f33):
    rec = classify_record(QuadParams(f33, 1, 0, 5))
    again = json.loads(json.dumps(rec))
    assert again == rec
    assert set(rec) == {
        "m", "h", "norm_h", "case_tag", "prior_tag", "scattered",
        "linear_set_size", "witness",
    }


def test_classify_sweep_summary(f33):
    records, summary = classify_sweep(f33, 1, h_dedup=True)
    assert summary["pairs"] == 27 * 364
    assert summary["violations_applies_not_scattered"] == []
    # conditions cover the IIa block only at this size
    assert summary["case_counts"].get("IIa", 0) == 182
    # scattered pairs outside the conditions all sit at m = 0
    assert all(m == 0 for m, _ in summary["conjecture_data_scattered_not_applies"])
    assert records == sorted(records, key=lambda r: (r["m"], r["h"]))


def test_classify_sweep_parallel_merge_is_canonical(f33):
    seq, _ = classify_sweep(f33, 1, h_dedup=True, with_witness=False)
    par, _ = classify_sweep(f33, 1, h_dedup=True, with_witness=False, workers=2)
    assert seq == par


def test_sufficiency_sweep_all_steps(f33):
    for s in (1, 5, 7, 11):
        rep = sufficiency_sweep(f33, s)
        assert rep["pairs_checked"] == 364
        assert rep["violations"] == []


def test_bad_power_set_sweep(f33):
    rep = bad_power_set_sweep(f33, 1)
    assert rep["failures"] == []
    assert rep["pairs_checked"] == 28
    assert rep["witnesses_verified"] == 28


def test_conjecture_scan_nonzero_m_clean(f33):
    rep = conjecture_scan(f33, 1, h_dedup=True)
    assert rep["nonzero_m_mismatches_main"] == 0
    # the swapped exponent ordering does not match the conditions
    assert rep["nonzero_m_mismatches_swapped"] > 0
