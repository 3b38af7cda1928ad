import json
import logging
import random
from collections import Counter

import pytest
from randomconfigs import random_configurations, renamed

from zerocycles.catalog import fixture_names, fixture_text, get_fixture
from zerocycles.configmodel import (
    ConfigSyntaxError,
    DuplicateIdError,
    SchemaError,
    UnknownIdError,
    component_count,
    configuration_from_dict,
    configuration_to_dict,
    connection_warnings,
    counts,
    downstream_view,
    node_pair_count,
    parse_configuration,
    serialize_configuration,
    validate,
)


def two_lines_doc() -> dict:
    return {
        "name": "two-lines",
        "upstream_components": [{"id": "L1"}, {"id": "L2"}],
        "upstream_points": [{"id": "p", "branches": ["L1", "L2"]}],
        "component_map": {"L1": "Z1", "L2": "Z2"},
        "point_blocks": [{"label": "p", "points": ["p"]}],
        "branch_classes": [[["p", "a"]], [["p", "b"]]],
    }


def codes(config) -> set[str]:
    return {v.code for v in validate(config)}


class TestParse:
    def test_two_lines(self):
        cfg = parse_configuration(json.dumps(two_lines_doc()))
        assert len(cfg.upstream_components) == 2 and len(cfg.upstream_points) == 1
        assert cfg.branch_image(("p", "b")) == "Z2"

    def test_mumford_file(self):
        cfg = parse_configuration(fixture_text("mumford"))
        assert len(cfg.upstream_components) == 14
        assert len(cfg.upstream_points) == 21
        names = [c.id for c in cfg.upstream_components]
        assert names[:7] == ["E(001)", "E(100)", "E(110)", "E(111)", "E(011)", "E(101)", "E(010)"]
        assert names[7:] == ["C(110)", "C(100)", "C(010)", "C(001)", "C(101)", "C(011)", "C(111)"]
        assert Counter(p.label for p in cfg.upstream_points) == {c: 3 for c in "abcdefg"}

    def test_syntax_error_position(self):
        with pytest.raises(ConfigSyntaxError) as exc:
            parse_configuration('{\n  "name": "x",\n  oops\n}')
        assert (exc.value.line, exc.value.column) == (3, 3)
        assert "line 3, column 3" in str(exc.value)

    def test_unknown_component(self):
        doc = two_lines_doc()
        doc["upstream_points"][0]["branches"] = ["L1", "L9"]
        with pytest.raises(UnknownIdError, match="unknown id"):
            configuration_from_dict(doc)

    def test_unknown_point_in_block(self):
        doc = two_lines_doc()
        doc["point_blocks"][0]["points"].append("nope")
        with pytest.raises(UnknownIdError, match="unknown id 'nope'"):
            configuration_from_dict(doc)

    def test_duplicate_ids(self):
        doc = two_lines_doc()
        doc["upstream_components"].append({"id": "L1"})
        with pytest.raises(DuplicateIdError):
            configuration_from_dict(doc)

    @pytest.mark.parametrize(
        "mutate",
        [
            lambda d: d.update(extra=1),
            lambda d: d.pop("branch_classes"),
            lambda d: d["upstream_points"][0].update(branches=["L1"]),
            lambda d: d["branch_classes"][0].append(["p", "c"]),
            lambda d: d["upstream_components"][0].update(colour="red"),
            lambda d: d.update(name=3),
        ],
    )
    def test_schema_errors(self, mutate):
        doc = two_lines_doc()
        mutate(doc)
        with pytest.raises(SchemaError):
            configuration_from_dict(doc)

    def test_bytes_input(self):
        assert parse_configuration(json.dumps(two_lines_doc()).encode()).name == "two-lines"


class TestRoundTrip:
    @pytest.mark.parametrize("name", fixture_names())
    def test_fixture_files(self, name):
        text = fixture_text(name)
        assert serialize_configuration(parse_configuration(text)) == text

    def test_key_order(self):
        doc = configuration_to_dict(configuration_from_dict(two_lines_doc()))
        assert list(doc) == list(two_lines_doc())

    def test_random_configurations(self):
        for cfg in random_configurations(1, 100):
            assert parse_configuration(serialize_configuration(cfg)) == cfg


class TestValidate:
    @pytest.mark.parametrize("name", fixture_names())
    def test_fixtures_valid(self, name):
        assert validate(get_fixture(name).config) == []

    def test_four_classes_in_a_block(self):
        doc = {
            "name": "four",
            "upstream_components": [{"id": c} for c in ("A", "B", "C", "D")],
            "upstream_points": [{"id": "p", "branches": ["A", "B"]}, {"id": "q", "branches": ["C", "D"]}],
            "component_map": {c: c for c in "ABCD"},
            "point_blocks": [{"label": "x", "points": ["p", "q"]}],
            "branch_classes": [[["p", "a"]], [["p", "b"]], [["q", "a"]], [["q", "b"]]],
        }
        violations = validate(configuration_from_dict(doc))
        assert [v.code for v in violations] == ["too-many-branches"]
        assert "at most 3 components through a point" in violations[0].message

    def test_branches_share_class(self):
        doc = two_lines_doc()
        doc["component_map"] = {"L1": "Z", "L2": "Z"}
        doc["branch_classes"] = [[["p", "a"], ["p", "b"]]]
        assert codes(configuration_from_dict(doc)) == {"point-branches-share-class"}

    def test_not_normal_crossings(self):
        doc = two_lines_doc()
        doc["upstream_points"][0]["branches"] = ["L1", "L1"]
        assert "not-normal-crossings" in codes(configuration_from_dict(doc))

    def test_unmapped_component(self):
        doc = two_lines_doc()
        del doc["component_map"]["L2"]
        assert codes(configuration_from_dict(doc)) == {"unmapped-component"}

    def test_point_outside_blocks(self):
        doc = two_lines_doc()
        doc["point_blocks"] = []
        assert "block-partition" in codes(configuration_from_dict(doc))

    def test_branch_missing_from_classes(self):
        doc = two_lines_doc()
        doc["branch_classes"] = [[["p", "a"]]]
        assert codes(configuration_from_dict(doc)) == {"class-partition"}

    def test_class_over_two_lines(self):
        doc = two_lines_doc()
        doc["upstream_components"].append({"id": "L3"})
        doc["component_map"]["L3"] = "Z3"
        doc["upstream_points"].append({"id": "q", "branches": ["L1", "L3"]})
        doc["point_blocks"][0]["points"].append("q")
        doc["branch_classes"] = [[["p", "a"], ["q", "b"]], [["p", "b"]], [["q", "a"]]]
        assert "class-image" in codes(configuration_from_dict(doc))

    def test_class_across_blocks(self):
        doc = two_lines_doc()
        doc["upstream_points"].append({"id": "q", "branches": ["L1", "L2"]})
        doc["point_blocks"].append({"label": "q", "points": ["q"]})
        doc["branch_classes"] = [[["p", "a"], ["q", "a"]], [["p", "b"]], [["q", "b"]]]
        assert "class-refines-blocks" in codes(configuration_from_dict(doc))

    def test_disconnected_is_a_warning(self, caplog):
        cfg = get_fixture("two-lines-onto-one").config
        with caplog.at_level(logging.WARNING, logger="zerocycles.configmodel"):
            assert validate(cfg) == []
        assert "disconnected" in caplog.text
        assert connection_warnings(cfg) and component_count(cfg, "upstream") == 2


class TestCounts:
    def test_mumford(self):
        assert counts(get_fixture("mumford").config).as_tuple() == (7, 20, 6, 14, 21)

    def test_two_lines(self):
        assert counts(configuration_from_dict(two_lines_doc())).as_tuple() == (2, 1, 0, 2, 1)
        assert str(counts(configuration_from_dict(two_lines_doc()))) == "n1=2 n2=1 n3=0 m1=2 m2=1"

    def test_kato_ishida_1(self):
        assert counts(get_fixture("kato-ishida-1").config).as_tuple() == (7, 21, 7, 14, 21)

    @pytest.mark.parametrize("name", fixture_names())
    def test_fixture_expectations(self, name):
        fx = get_fixture(name)
        assert counts(fx.config) == fx.expected.counts

    @pytest.mark.parametrize("name", ["two-lines", "triangle", "square", "chain-4"])
    def test_identity_gluings(self, name):
        c = counts(get_fixture(name).config)
        assert (c.n1, c.n2, c.n3) == (c.m1, c.m2, 0)
        assert c.m1 - c.m2 == c.n1 - c.n2 + c.n3

    def test_renaming_invariance(self):
        rng = random.Random(4)
        configs = [get_fixture(n).config for n in fixture_names()] + random_configurations(2, 100)
        for cfg in configs:
            other = renamed(cfg, rng)
            assert validate(other) == []
            assert counts(other) == counts(cfg)
            assert node_pair_count(other) == node_pair_count(cfg)

    def test_per_block_contributions(self):
        for cfg in [get_fixture(n).config for n in fixture_names()] + random_configurations(3, 100):
            for pt in downstream_view(cfg).points:
                shape = sorted(Counter(pt.components).values())
                expected = {
                    (1, 1): (1, 0, 0),
                    (2,): (0, 0, 1),
                    (1, 1, 1): (3, 1, 0),
                    (1, 2): (2, 0, 1),
                    (3,): (0, 0, 3),
                }[tuple(shape)]
                assert (len(pt.distinct_pairs()), int(pt.is_triple()), len(pt.node_pairs())) == expected


class TestDownstreamView:
    def test_mumford_single_node_at_a(self):
        view = downstream_view(get_fixture("mumford").config)
        assert view.nodal_components == ["Z7"]
        nodal = [pt for pt in view.points if pt.node_pairs()]
        assert [pt.label for pt in nodal] == ["a"]
        assert Counter(nodal[0].components)["Z7"] == 2

    def test_identity_gluing_has_no_nodes(self):
        assert downstream_view(get_fixture("square").config).nodal_components == []

    def test_kato_ishida_1_all_triples(self):
        view = downstream_view(get_fixture("kato-ishida-1").config)
        assert view.nodal_components == []
        assert len(view.points) == 7 and all(pt.is_triple() for pt in view.points)

    def test_configuration_is_immutable(self):
        cfg = get_fixture("two-lines").config
        with pytest.raises(TypeError):
            cfg.component_map["L1"] = "elsewhere"  # type: ignore[index]
