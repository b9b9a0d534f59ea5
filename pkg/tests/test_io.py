import json

import pytest
from hypothesis import given, strategies as st

from bifree import io
from bifree.bimodule import AlgebraB, make_bifree_B_family
from bifree.cumulants import CumulantTable, MomentFunctional, all_words, make_word
from bifree.colorings import enumerate_bnc
from bifree.fock import DEFAULT_TL, DEFAULT_TR, PointedSpace, default_family
from bifree.partitions import Partition
from bifree.quantum import default_block_rep


def test_partition_literal():
    assert io.partition_from_json("[[1,2],[3]]") == Partition([[1, 2], [3]])
    for bad in ["[1,2]", "[[1,2],[2]]", "{}"]:
        with pytest.raises(io.FormatError):
            io.partition_from_json(bad)


def test_coloring_and_twist():
    assert io.coloring_from_json("lrr").key() == "lrr"
    with pytest.raises(io.FormatError):
        io.coloring_from_json("lxr")
    tw = io.twist_from_json({"lr": [2, 1]})
    assert tw.perm("lr") == (2, 1)
    with pytest.raises(io.FormatError):
        io.twist_from_json([1, 2])


@given(st.integers(0, 1000))
def test_moment_json_round_trip(seed):
    phi = MomentFunctional.random([1, 2], 2, seed=seed)
    data = json.loads(io.dump(io.moments_to_json(phi)))
    back = io.moments_from_json(data)
    assert back.values == phi.values


def test_moment_json_errors():
    with pytest.raises(io.FormatError):
        io.moments_from_json({"moments": [{"word": [[1, "x"]], "value": "1"}]})
    with pytest.raises(io.FormatError):
        io.moments_from_json({"moments": [{"word": [[1, "l"]], "value": "1/0"}]})
    with pytest.raises(io.FormatError):
        io.moments_from_json({})


def test_float_mode_values():
    phi = io.moments_from_json({"moments": [{"word": [[1, "l"]], "value": "1/4"}]}, "float")
    assert phi(make_word((1,), "l")) == 0.25


def test_cumulant_json_round_trip():
    phi = MomentFunctional.random([1], 3, seed=1)
    table = CumulantTable(phi)
    rows = [(w, p, table[(w, p)]) for w in all_words([1], 3) for p in enumerate_bnc("".join(f for _, f in w))]
    data = json.loads(io.dump(io.cumulants_to_json(rows)))
    back = io.cumulants_from_json(data)
    assert back == {(w, p): v for w, p, v in rows}
    with pytest.raises(io.FormatError):
        io.cumulants_from_json({"cumulants": [{"word": [[1, "l"]], "partition": [[1], [2]], "value": "0"}]})


def test_fock_spec_round_trip():
    comps = [PointedSpace(2, {"Tl": DEFAULT_TL, "Tr": DEFAULT_TR})] * 2
    fam = io.fock_from_json(json.loads(io.dump(io.fock_to_json(comps, 3))))
    assert fam.moments().values == default_family(2, 3).moments().values
    with pytest.raises(io.FormatError):
        io.fock_from_json({"components": [{"dim": 2, "operators": {"Tl": [[1]]}}]})


def test_bimodule_spec_round_trip():
    fam = make_bifree_B_family(AlgebraB.diagonal(2), 2, 2)
    data = json.loads(io.dump(io.bimodule_to_json(fam)))
    assert io.is_bimodule_spec(data)
    back = io.bimodule_from_json(data)
    for w in all_words([1, 2], 2):
        assert (back.context()(w) == fam.context()(w)).all()
    data["components"][0]["dim"] = 99
    with pytest.raises(io.FormatError):
        io.bimodule_from_json(data)


def test_rep_json_round_trip(tmp_path):
    rep = default_block_rep()
    path = tmp_path / "rep.json"
    path.write_text(io.dump(io.rep_to_json(rep)))
    assert io.load_rep(str(path)) == rep
    assert io.load_rep("block") == rep
    with pytest.raises(io.FormatError):
        io.rep_from_json({"N": 2, "d": 1, "entries": [[[[1]], [[1]]], [[[1]], [[1]]]]})


def test_invalid_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(io.FormatError):
        io.load_json(p)
