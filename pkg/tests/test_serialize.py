"""The JSON matroid interchange format: round trips and validation."""

import json

import pytest

from cremfan.errors import InputError
from cremfan.matroid import find_isomorphism
from cremfan.serialize import (
    dumps,
    load_matroid,
    matroid_from_dict,
    matroid_to_dict,
    save_matroid,
)


def census(M):
    return {
        k: {F.elements for F in M.flats_of_rank(k)}
        for k in range(M.full_rank() + 1)
    }


class TestRoundTrips:
    def test_vectors_q(self, a3, tmp_path):
        path = tmp_path / "a3.json"
        save_matroid(a3, path, name="fixture")
        loaded = load_matroid(path)
        assert loaded.ground.labels == a3.ground.labels
        assert census(loaded) == census(a3)
        assert loaded.name == "fixture"

    def test_vectors_qsqrt5(self, tmp_path):
        from cremfan.generators import coxeter_matroid
        h3 = coxeter_matroid("H3")
        path = tmp_path / "h3.json"
        save_matroid(h3, path)
        loaded = load_matroid(path)
        assert loaded.size == 15
        assert census(loaded) == census(h3)

    def test_vectors_fp(self, tmp_path):
        from cremfan.field import Field
        from cremfan.matroid import Matroid, VectorBackend
        f2 = Field.from_spec("Fp:2")
        M = Matroid(VectorBackend(f2, [(1, 0), (0, 1), (1, 1)]))
        doc = matroid_to_dict(M)
        assert doc["field"] == "Fp:2"
        loaded = matroid_from_dict(doc)
        assert census(loaded) == census(M)

    def test_lines(self, fano_m, tmp_path):
        path = tmp_path / "fano.json"
        save_matroid(fano_m, path)
        loaded = load_matroid(path)
        assert json.loads(path.read_text())["backend"] == "lines"
        assert census(loaded) == census(fano_m)

    def test_circuits(self, u23, tmp_path):
        path = tmp_path / "u23.json"
        save_matroid(u23, path)
        loaded = load_matroid(path)
        assert census(loaded) == census(u23)

    def test_oracle_backend_materializes(self, a3, tmp_path):
        # a contraction minor has no native serialization; it is written via
        # its circuits
        C, _q = a3.contract(0).simplify()
        doc = matroid_to_dict(C)
        assert doc["backend"] == "circuits"
        loaded = matroid_from_dict(doc)
        assert find_isomorphism(loaded, C) is not None

    def test_dumps_deterministic(self, a3):
        doc = matroid_to_dict(a3)
        assert dumps(doc) == dumps(json.loads(dumps(doc)))
        assert dumps(doc).endswith("\n")


class TestValidation:
    def make_doc(self, **overrides):
        doc = {
            "schema": 1,
            "kind": "matroid",
            "elements": ["a", "b", "c"],
            "backend": "circuits",
            "data": [[0, 1, 2]],
        }
        doc.update(overrides)
        return doc

    def test_minimal_circuit_doc(self):
        M = matroid_from_dict(self.make_doc())
        assert M.size == 3 and M.full_rank() == 2

    def test_bad_schema(self):
        with pytest.raises(InputError):
            matroid_from_dict(self.make_doc(schema=99))

    def test_bad_kind(self):
        with pytest.raises(InputError):
            matroid_from_dict(self.make_doc(kind="graph"))

    def test_bad_labels(self):
        with pytest.raises(InputError):
            matroid_from_dict(self.make_doc(elements=["a", "a", "b"]))
        with pytest.raises(InputError):
            matroid_from_dict(self.make_doc(elements=["a", 2, "b"]))

    def test_bad_backend(self):
        with pytest.raises(InputError):
            matroid_from_dict(self.make_doc(backend="widget"))

    def test_index_out_of_range(self):
        with pytest.raises(InputError):
            matroid_from_dict(self.make_doc(data=[[0, 1, 7]]))

    def test_bool_is_not_an_index(self):
        with pytest.raises(InputError):
            matroid_from_dict(self.make_doc(data=[[0, 1, True]]))

    def test_vectors_need_field(self):
        doc = self.make_doc(backend="vectors", data=[["1"], ["0"]],
                            elements=["a", "b"])
        with pytest.raises(InputError):
            matroid_from_dict(doc)  # field key missing entirely
        doc["field"] = "Fp:4"  # 4 is not prime
        with pytest.raises(InputError):
            matroid_from_dict(doc)

    def test_bad_field_element(self):
        doc = self.make_doc(backend="vectors", field="Q",
                            data=[["1"], ["nope"]], elements=["a", "b"])
        with pytest.raises(InputError):
            matroid_from_dict(doc)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            load_matroid(tmp_path / "does_not_exist.json")

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(InputError):
            load_matroid(path)
