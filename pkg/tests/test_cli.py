import json

import pytest
from hypothesis import given, strategies as st

from ballspaces import BallSpace, GroundSet, InputError
from ballspaces import formats
from ballspaces.cli import dispatch
from ballspaces.constructions import Topology
from ballspaces.instances import MetricInstance

I1_DOC = "ballspace v1\nground 1 2 3\nball 1 2\nball 2 3\n"
I2_DOC = "ballspace v1\nground 1 2 3\nball 1\nball 1 2\nball 1 2 3\n"


@pytest.fixture
def docs(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


class TestFormat:
    def test_parse_I1(self, I1):
        assert formats.parse(I1_DOC) == I1

    def test_unknown_label_line(self):
        with pytest.raises(InputError) as e:
            formats.parse("ballspace v1\nground 1 2 3\nball 4\n")
        assert e.value.line == 3
        assert "unknown label" in str(e.value)

    @pytest.mark.parametrize(
        "text,line",
        [
            ("ballspace v1\nground 1 1\nball 1\n", 2),
            ("ballspace v1\nground 1 2\nball\n", 3),
            ("ballspace v2\nground 1\nball 1\n", 1),
        ],
    )
    def test_errors_have_lines(self, text, line):
        with pytest.raises(InputError) as e:
            formats.parse(text)
        assert e.value.line == line

    def test_empty_family(self):
        with pytest.raises(InputError):
            formats.parse("ballspace v1\nground 1 2\n")

    def test_round_trip_canonicalizes(self):
        messy = "ballspace v1\n# comment\nground 1 2 3\nball 3 2 1\nball 1\n\nball 1\n"
        assert formats.emit(formats.parse(messy)) == "ballspace v1\nground 1 2 3\nball 1\nball 1 2 3\n"
        assert formats.emit(formats.parse(I1_DOC)) == I1_DOC

    @given(st.integers(1, 5).flatmap(lambda n: st.sets(st.integers(1, (1 << n) - 1), min_size=1).map(
        lambda s: BallSpace(GroundSet.range(n), tuple(s)))))
    def test_round_trip_property(self, space):
        text = formats.emit(space)
        assert formats.parse(text) == space
        assert formats.emit(formats.parse(text)) == text
        assert formats.from_json(json.loads(json.dumps(formats.to_json(space)))) == space

    def test_assignment(self, I2):
        a = formats.parse_assignment(I2.ground, "1=1;2=1 2;3=1 2 3")
        assert a.balls == (1, 3, 7)
        assert formats.parse_assignment(I2.ground, formats.format_assignment(a)) == a

    def test_metric_document(self):
        m, radii = formats.parse_metric("metric v1\npoints 0 1\nd 0 1 1/2\nradii 1/2 1\n")
        assert m == MetricInstance.from_pairs("01", {("0", "1"): "1/2"})
        assert radii == (0.5, 1)

    def test_bad_rational(self):
        with pytest.raises(InputError) as e:
            formats.parse_metric("metric v1\npoints 0 1\nd 0 1 one\n")
        assert e.value.line == 3

    def test_topology_round_trip(self):
        t = Topology.from_labels("12", [[], ["1"], ["1", "2"]])
        assert formats.parse_topology(formats.emit_topology(t)) == t


class TestDispatch:
    def test_classify_I1(self, docs):
        code, out, _ = dispatch(["classify", docs("i1", I1_DOC)])
        assert code == 0
        row = next(line for line in out.splitlines() if line.startswith("S2 "))
        assert row.split() == ["S2", "true", "true", "false"]

    def test_classify_property_exit(self, docs):
        path = docs("i1", I1_DOC)
        assert dispatch(["classify", path, "--property", "S2c"])[0] == 1
        assert dispatch(["classify", path, "--property", "S1c"])[0] == 0

    def test_classify_json_witness(self, docs):
        code, out, _ = dispatch(["classify", "--json", "--witness", docs("i1", I1_DOC)])
        data = json.loads(out)
        assert code == 0
        assert data["report"]["S2c"] is False

    def test_classify_exhaustive(self, docs):
        a = dispatch(["--json", "classify", docs("i1", I1_DOC)])[1]
        b = dispatch(["--json", "classify", "--exhaustive", docs("i1", I1_DOC)])[1]
        assert json.loads(a)["report"] == json.loads(b)["report"]

    def test_fixpoint_basic1b(self, docs):
        code, out, _ = dispatch(["fixpoint", "--map", "1:1,2:1,3:2", "--theorem", "basic1b", docs("i2", I2_DOC)])
        assert code == 0
        assert "unique fixed point: 1" in out

    def test_fixpoint_greedy_and_kt(self, docs):
        path = docs("i2", I2_DOC)
        code, out, _ = dispatch(["fixpoint", path, "--map", "1:1,2:1,3:2", "--greedy"])
        assert code == 0 and "trace: {1,2,3} > {1,2} > {1}" in out
        code, out, _ = dispatch(["fixpoint", "--map", "1:1,2:1,3:2", "--kt", path])
        assert code == 0 and "Fix(f) = {1}" in out

    def test_fixpoint_gfpt_with_bx(self, docs):
        path = docs("i2", I2_DOC)
        code, out, _ = dispatch(["fixpoint", "--map", "1:1,2:1,3:2", "--theorem", "GFPT2", "--bx", "1=1;2=1 2;3=1 2 3", path])
        assert code in (0, 1) and "GFPT2" in out

    def test_mine(self):
        code, out, _ = dispatch(["mine", "--n", "3", "--mode", "implications"])
        assert code == 0 and "127 spaces, 0 violations" in out

    def test_mine_witness(self):
        code, out, _ = dispatch(["mine", "--n", "3", "--mode", "witness", "--propA", "S1c", "--propB", "S2c"])
        assert code == 1
        assert formats.parse(out.split("\n", 1)[1]) is not None

    def test_mine_witness_exhausted(self):
        code, out, _ = dispatch(["mine", "--n", "3", "--mode", "witness", "--propA", "S4c", "--propB", "S5c"])
        assert code == 0 and "exhausted" in out

    def test_mine_equivalence_json(self):
        code, out, _ = dispatch(["mine", "--n", "3", "--mode", "equivalence-table", "--json"])
        assert code == 0 and json.loads(out)["violations"] == 0

    def test_mine_sample_seeded(self):
        a = dispatch(["--seed", "3", "mine", "--n", "5", "--mode", "implications", "--sample", "50"])
        b = dispatch(["mine", "--n", "5", "--mode", "implications", "--sample", "50", "--seed", "3"])
        assert a == b and a[0] == 0

    def test_construct(self, docs):
        code, out, _ = dispatch(["construct", docs("i1", I1_DOC), "--op", "close", "--closure", "Intersections"])
        assert code == 0
        assert formats.parse(out).balls == (2, 3, 6)
        code, out, _ = dispatch(["construct", docs("i2", I2_DOC), "--op", "spherical-closure", "--subset", "2"])
        assert code == 0 and out.split() == ["1", "2"]
        code, _, err = dispatch(["construct", docs("i1", I1_DOC), "--op", "spherical-closure", "--subset", "2"])
        assert code == 2 and "S*" in err

    def test_construct_union_and_topology(self, docs):
        code, out, _ = dispatch(["construct", docs("a", I1_DOC), "--op", "union", "--other", docs("b", I2_DOC)])
        assert code == 0 and len(formats.parse(out)) == 4
        code, out, _ = dispatch(["construct", docs("a", I1_DOC), "--op", "topology"])
        assert code == 0 and out.startswith("topology v1")

    def test_product(self, docs):
        y = docs("y", "ballspace v1\nground 1 2\nball 1\n")
        code, out, _ = dispatch(["product", y, y, "--mode", "pr"])
        space = formats.parse(out)
        assert code == 0 and len(space) == 3 and "1|1" in space.ground.labels

    @pytest.mark.parametrize(
        "kind,text,balls",
        [
            ("metric", "metric v1\npoints 0 1\nd 0 1 1\nradii 1/2\n", 2),
            ("ultrametric", "ultrametric v1\npoints a b c\nvalues 0 1 2\nu a b 1\nu a c 2\nu b c 2\nvariant Precise\n", 5),
            ("poset", "poset v1\nelements p q r\nleq p q\nleq p r\nvariant Segments\n", 6),
            ("topology", "topology v1\nground 1 2\nclosed\nclosed 1\nclosed 1 2\n", 2),
            ("ck", "ck v1\npoints 0 1\nd 0 1 1\nphi 0 0\nphi 1 2\n", 2),
            ("ot", "ot v1\npoints 0 1\nd 0 1 1\nphi 0 1 2\nphi 1 0 -2\nx0 1\n", 2),
        ],
    )
    def test_instances(self, docs, kind, text, balls):
        code, out, err = dispatch(["instance", "--kind", kind, docs(kind, text)])
        assert code == 0, err
        assert len(formats.parse(out.split("# assignment")[0])) == balls

    def test_input_errors_exit_2(self, docs):
        code, _, err = dispatch(["classify", docs("bad", "ballspace v1\nground 1 2 3\nball 4\n")])
        assert code == 2 and "line 3" in err
        assert dispatch(["classify", "/nonexistent/file"])[0] == 2
        assert dispatch(["mine", "--n", "9", "--mode", "implications"])[0] == 2
        assert dispatch(["frobnicate"])[0] == 2
        code, _, err = dispatch(["instance", "--kind", "metric", docs("m", "metric v1\npoints a b c\nd a b 1\nd b c 1\nd a c 3\n")])
        assert code == 2 and "triangle" in err
