import json

import pytest

from homlab import (GraphMap, InputError, complete, cycle, paper_T, paper_f,
                    paper_gamma1)
from homlab.cli import main
from homlab.serialize import (bundled_fig3_certificate, certificate_from_json,
                              certificate_to_json, dumps, graph_from_json,
                              graph_signature, graph_to_json, load_graph,
                              load_graph_map, load_involution)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSerialize:
    def test_graph_round_trip(self, T):
        assert graph_from_json(graph_to_json(T)) == T

    def test_dumps_deterministic(self, T):
        a = dumps(graph_to_json(T))
        b = dumps(graph_to_json(paper_T()))
        assert a == b and a.endswith("\n")
        assert json.loads(a)["vertices"][0] == "a"

    def test_certificate_round_trip(self):
        cert = bundled_fig3_certificate()
        again = certificate_from_json(certificate_to_json(cert))
        assert again.colorings == cert.colorings

    def test_load_graph_builtin_and_file(self, tmp_path, K3):
        assert load_graph("K3") == K3
        p = tmp_path / "g.json"
        p.write_text(dumps(graph_to_json(K3)))
        assert load_graph(str(p)) == K3

    def test_load_graph_bad_file(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        with pytest.raises(InputError):
            load_graph(str(p))

    def test_load_involution_relative_names(self, K3, C5):
        z = load_involution("swap", K3)
        assert z.graph == K3 and z.involution(1) == 2
        z = load_involution("reflection", C5)
        assert z.involution(1) == 1 and z.involution(2) == 5

    def test_load_involution_mismatch(self, K3):
        with pytest.raises(InputError):
            load_involution("gamma1", K3)

    def test_string_keys_coerced_to_int_vertices(self, K3):
        z = load_involution({"graph": "K3", "map": {"1": "2", "2": "1", "3": "3"}})
        assert z.involution(1) == 2

    def test_load_graph_map_inline(self, K2, K3):
        phi = load_graph_map({"source": "K2", "target": "K3",
                              "assignment": {"1": 2, "2": 3}})
        assert phi.assignment == (2, 3)

    def test_graph_signature_stable(self, K3):
        sig = graph_signature(K3)
        assert sig.startswith("g3e3-") and sig == graph_signature(complete(3))
        # the signature ignores declaration order of the same labeling
        from homlab import Graph
        reordered = Graph.build((3, 1, 2), [(1, 2), (2, 3), (3, 1)])
        assert graph_signature(reordered) == sig


class TestCliBasics:
    def test_chrom(self, capsys):
        code, out, _ = run(capsys, "chrom", "paper_T")
        assert code == 0 and out.strip() == "3"

    def test_chrom_json(self, capsys):
        code, out, _ = run(capsys, "--json", "chrom", "K4")
        assert code == 0 and json.loads(out) == {"chromatic_number": 4}

    def test_json_flag_after_subcommand(self, capsys):
        code, out, _ = run(capsys, "chrom", "K4", "--json")
        assert code == 0 and json.loads(out) == {"chromatic_number": 4}

    def test_maps_count(self, capsys):
        code, out, _ = run(capsys, "maps", "K2", "K3", "--count")
        assert code == 0 and out.strip() == "6"

    def test_maps_none_exit_one(self, capsys):
        code, out, _ = run(capsys, "maps", "K3", "K2", "--count")
        assert code == 1 and out.strip() == "0"

    def test_hom_components(self, capsys):
        code, out, _ = run(capsys, "--json", "hom", "paper_T", "K3",
                           "--components")
        data = json.loads(out)
        assert code == 0
        assert data["size"] == 2160 and data["atoms"] == 600
        assert len(data["components"]) == 4

    def test_hom_export(self, capsys, tmp_path):
        out_path = tmp_path / "oc.json"
        code, _, _ = run(capsys, "hom", "K2", "K3", "--export", str(out_path))
        assert code == 0
        data = json.loads(out_path.read_text())
        assert len(data["simplices"][0]) == 12 and len(data["simplices"][1]) == 12

    def test_betti(self, capsys):
        code, out, _ = run(capsys, "--json", "betti", "K2", "K4")
        assert code == 0 and json.loads(out)["betti"] == [1, 0, 1]

    def test_height_full(self, capsys):
        code, out, _ = run(capsys, "--json", "height", "K2", "swap", "K4")
        data = json.loads(out)
        assert code == 0 and data["height"] == 2 and data["exact"] is True

    def test_height_component(self, capsys):
        code, out, _ = run(capsys, "--json", "height", "paper_T", "gamma2",
                           "K3", "--method", "component")
        data = json.loads(out)
        assert code == 0 and data["height"] == 1 and data["exact"] is False

    def test_height_export(self, capsys, tmp_path):
        out_path = tmp_path / "q.json"
        code, _, _ = run(capsys, "height", "K2", "swap", "K3",
                         "--export", str(out_path))
        assert code == 0
        data = json.loads(out_path.read_text())
        assert len(data["quotient"]["simplices"][0]) == 6
        assert data["w1"]["degree"] == 1 and data["w1"]["support"]

    def test_eqmap(self, capsys):
        code, out, _ = run(capsys, "--json", "eqmap", "C5", "c5_reflection",
                           "paper_T", "gamma1")
        data = json.loads(out)
        assert code == 0 and data["found"] is True
        assert data["map"]["1"] == "a"

    def test_eqmap_none(self, capsys):
        code, out, _ = run(capsys, "eqmap", "C5", "c5_reflection",
                           "K2", "k2_swap")
        assert code == 1


class TestCliCertificates:
    def test_verify_bundled(self, capsys, tmp_path):
        cert_path = tmp_path / "cert.json"
        cert_path.write_text(dumps(certificate_to_json(bundled_fig3_certificate())))
        code, out, _ = run(capsys, "--json", "verify-cert", str(cert_path))
        data = json.loads(out)
        assert code == 0 and data["valid"] is True and data["moves"] == 15

    def test_verify_invalid_exit_one(self, capsys, tmp_path):
        obj = certificate_to_json(bundled_fig3_certificate())
        del obj["colorings"][5]
        cert_path = tmp_path / "bad.json"
        cert_path.write_text(dumps(obj))
        code, out, _ = run(capsys, "--json", "verify-cert", str(cert_path))
        data = json.loads(out)
        assert code == 1 and data["valid"] is False

    def test_find_path(self, capsys, tmp_path):
        start = {"source": "K2", "target": "K3", "assignment": {"1": 1, "2": 2}}
        end = {"source": "K2", "target": "K3", "assignment": {"1": 3, "2": 2}}
        sp, ep = tmp_path / "s.json", tmp_path / "e.json"
        sp.write_text(dumps(start))
        ep.write_text(dumps(end))
        code, out, _ = run(capsys, "--json", "find-path", "K2", "K3",
                           str(sp), str(ep))
        data = json.loads(out)
        assert code == 0 and data["found"] is True
        cert = certificate_from_json(data["certificate"])
        from homlab import verify_certificate
        assert verify_certificate(cert).ok

    def test_find_path_none(self, capsys, tmp_path):
        start = {"source": "K3", "target": "K3",
                 "assignment": {"1": 1, "2": 2, "3": 3}}
        end = {"source": "K3", "target": "K3",
               "assignment": {"1": 2, "2": 1, "3": 3}}
        sp, ep = tmp_path / "s.json", tmp_path / "e.json"
        sp.write_text(dumps(start))
        ep.write_text(dumps(end))
        code, _, _ = run(capsys, "find-path", "K3", "K3", str(sp), str(ep))
        assert code == 1


class TestCliBounds:
    def test_check_swt_holds(self, capsys):
        code, out, _ = run(capsys, "--json", "check-swt", "K2", "swap", "K3")
        data = json.loads(out)
        assert code == 0 and data["status"] == "holds"

    def test_check_swt_violated_exit_one(self, capsys):
        code, out, _ = run(capsys, "--json", "check-swt", "paper_T", "gamma2",
                           "K3", "--method", "component")
        data = json.loads(out)
        assert code == 1 and data["status"] == "violated"

    def test_check_ht(self, capsys):
        code, out, _ = run(capsys, "--json", "check-ht", "K2", "K3")
        data = json.loads(out)
        assert code == 0 and data["status"] == "holds"

    def test_sweep(self, capsys):
        code, out, err = run(capsys, "sweep", "K2", "swap", "--max-n", "3",
                             "--summary")
        assert code == 0
        lines = [json.loads(line) for line in out.splitlines()]
        assert len(lines) == 4  # 1 + 1 + 2 connected graphs
        assert all(r["status"] != "violated" for r in lines)
        assert "0 violations" in err

    def test_paper_theorem2(self, capsys):
        code, out, _ = run(capsys, "paper", "theorem2")
        assert code == 0
        assert out.count("[PASS]") == 5 and "theorem2: PASS" in out

    def test_paper_theorem2_json(self, capsys):
        code, out, _ = run(capsys, "--json", "paper", "theorem2")
        data = json.loads(out)
        assert code == 0 and data["passed"] is True

    def test_paper_theorem1(self, capsys):
        code, out, _ = run(capsys, "paper", "theorem1", "C4")
        assert code == 0 and "theorem1: PASS" in out


class TestCliExitCodes:
    def test_unknown_builtin_exit_two(self, capsys):
        code, _, err = run(capsys, "chrom", "nonesuch")
        assert code == 2 and "error" in err

    def test_usage_error_exit_two(self, capsys):
        code, _, _ = run(capsys, "chrom")
        assert code == 2

    def test_unknown_subcommand_exit_two(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2

    def test_resource_cap_exit_three(self, capsys, monkeypatch):
        monkeypatch.setenv("HOMLAB_MAX_ELEMENTS", "5")
        code, _, err = run(capsys, "hom", "K2", "K3")
        assert code == 3 and "resource limit" in err

    def test_theorem1_bad_input_exit_two(self, capsys):
        code, _, _ = run(capsys, "paper", "theorem1", "K3")
        assert code == 2

    def test_byte_identical_json(self, capsys):
        _, out1, _ = run(capsys, "--json", "check-swt", "K2", "swap", "K3")
        _, out2, _ = run(capsys, "--json", "check-swt", "K2", "swap", "K3")
        assert out1 == out2
