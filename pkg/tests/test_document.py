import json

import pytest

from eqcat.document import document_to_json, load_document, parse_document
from eqcat.errors import InputError, OrderCapExceeded
from eqcat.fixtures import FIXTURES, load_fixture


def doc(**over):
    base = {
        "name": "t",
        "complex": {"vertices": ["a", "b", "c"], "simplices": [["a", "b"], ["b", "c"], ["a", "c"]]},
        "group": {"generators": [{"cycles": [["a", "b", "c"]]}]},
    }
    base.update(over)
    return base


def test_parse_cycles_and_images_agree():
    a = parse_document(doc())
    b = parse_document(doc(group={"generators": [{"images": {"a": "b", "b": "c", "c": "a"}}]}))
    c = parse_document(doc(group={"generators": [[["a", "b", "c"]]]}))
    assert a.complex.group.element_set == b.complex.group.element_set == c.complex.group.element_set
    assert a.complex.group.order == 3


def test_regularize_option():
    d = doc(group={"generators": [{"cycles": [["a", "b"]]}]})
    assert not parse_document(d).raw.regular
    assert parse_document(d).complex.regular
    d["options"] = {"regularize": False}
    assert not parse_document(d).complex.regular


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d["complex"]["simplices"].append(["a", "z"]), "complex.simplices[3]"),
    (lambda d: d["complex"].update(simplices="ab"), "complex.simplices"),
    (lambda d: d["complex"]["simplices"].append([]), "complex.simplices[3]"),
    (lambda d: d["complex"].update(vertices=["a", "a"]), "complex.vertices"),
    (lambda d: d["group"]["generators"].append({"cycles": [["a", "q"]]}), "group.generators[1]"),
    (lambda d: d["group"]["generators"].append({"bad": 1}), "group.generators[1]"),
    (lambda d: d.update(options={"regularize": "yes"}), "options.regularize"),
    (lambda d: d["complex"].update(simplices=[["a", "b"]]), "group"),
])
def test_field_paths_in_errors(mutate, path):
    d = doc()
    mutate(d)
    with pytest.raises(InputError) as e:
        parse_document(d)
    assert path in str(e.value)


def test_order_cap():
    verts = [str(i) for i in range(8)]
    d = {"complex": {"vertices": verts, "simplices": [verts[:2]]},
         "group": {"generators": [[verts[:2]], [verts]]}}
    with pytest.raises(OrderCapExceeded):
        parse_document(d, order_cap=100)


def test_load_bad_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"complex": ')
    with pytest.raises(InputError):
        load_document(p)
    with pytest.raises(InputError):
        load_document(tmp_path / "missing.json")


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_round_trip(name):
    d = load_fixture(name)
    again = parse_document(json.loads(json.dumps(document_to_json(d.raw, d.name))))
    assert again.raw.simplices == d.raw.simplices
    assert again.raw.group.element_set == d.raw.group.element_set
    # written documents are not regularized again on reading
    assert again.complex is again.raw
    reg = parse_document(json.loads(json.dumps(document_to_json(d.complex, d.name))))
    assert reg.raw.simplices == d.complex.simplices and reg.raw.regular
