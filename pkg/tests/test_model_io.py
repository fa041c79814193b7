import json

import pytest

from core.errors import DataError
from core.model import DecisionCommittee
from core.model_io import dumps_committee, load_committee, loads_committee, save_committee


class TestRoundTrip:
    def test_lossless(self, figure3_dc):
        loaded, binarization = loads_committee(dumps_committee(figure3_dc))
        assert loaded == figure3_dc
        assert binarization is None

    def test_float_default_exact(self):
        dc = DecisionCommittee(1, 3, default=(0.1, 0.2, 0.7000000000000001))
        loaded, _ = loads_committee(dumps_committee(dc))
        assert loaded.default == dc.default

    def test_binarization_kept(self, figure3_dc):
        binarization = {"class_column": "class", "columns": []}
        _, loaded = loads_committee(dumps_committee(figure3_dc, binarization))
        assert loaded == binarization

    def test_file(self, figure3_dc, tmp_path):
        path = save_committee(figure3_dc, tmp_path / "models" / "dc.json")
        loaded, _ = load_committee(path)
        assert loaded == figure3_dc

    def test_document_fields(self, figure3_dc):
        payload = json.loads(dumps_committee(figure3_dc))
        assert payload["n"] == 4
        assert payload["rules"][1] == {"pos_literals": [0, 2, 3], "neg_literals": [], "votes": [1, -1, 1]}


class TestInvalid:
    def test_not_json(self):
        with pytest.raises(DataError):
            loads_committee("{bukan json")

    def test_missing_field(self):
        with pytest.raises(DataError):
            loads_committee(json.dumps({"n": 2, "c": 2, "rules": []}))

    def test_vote_out_of_range(self, figure3_dc):
        payload = json.loads(dumps_committee(figure3_dc))
        payload["rules"][0]["votes"] = [3, 0, 0]
        with pytest.raises(DataError):
            loads_committee(json.dumps(payload))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_committee(tmp_path / "tidak-ada.json")
