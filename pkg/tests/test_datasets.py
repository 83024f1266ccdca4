from __future__ import annotations

import pytest

from cnrg.datasets import dolphins, karate, les_miserables


class TestBundled:
    def test_karate_shape(self):
        g = karate()
        assert g.number_of_nodes() == 34
        assert g.distinct_edge_count() == 78
        assert g.is_connected()
        assert sorted(g.nodes()) == list(range(34))

    def test_les_miserables_shape(self):
        g = les_miserables()
        assert g.number_of_nodes() == 77
        assert g.distinct_edge_count() == 254
        assert g.is_connected()

    def test_simple_edges(self):
        g = karate()
        assert all(m == 1 for _, _, m in g.edges())


class TestDolphins:
    def test_missing_file_names_fetch_script(self, tmp_path, monkeypatch):
        monkeypatch.delenv("CNRG_DOLPHINS", raising=False)
        monkeypatch.chdir(tmp_path)
        with pytest.raises(FileNotFoundError) as exc_info:
            dolphins()
        assert "fetch_dolphins" in str(exc_info.value)

    def test_explicit_path(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("0 1\n1 2\n")
        g = dolphins(p)
        assert g.number_of_nodes() == 3
        assert g.distinct_edge_count() == 2

    def test_env_var_path(self, tmp_path, monkeypatch):
        p = tmp_path / "d.txt"
        p.write_text("0 1\n")
        monkeypatch.setenv("CNRG_DOLPHINS", str(p))
        g = dolphins()
        assert g.distinct_edge_count() == 1
