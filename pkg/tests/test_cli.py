import json

import numpy as np
import pytest

from voxfrac import gen_reference, make_grid
from voxfrac.cli import main
from voxfrac.formats import parse_obj, read_voxel, write_obj, write_voxel

from oracles import unit_cube_mesh
from voxfrac import TriangleMesh


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_generate_square_voxl(tmp_path, capsys):
    out = tmp_path / "t.voxl"
    code, stdout, _ = run(capsys, "generate", "--shape", "square", "--x0", "9",
                          "--y0", "4", "--levels", "3", "--resolution", "9",
                          "--out", str(out))
    assert code == 0
    grid = read_voxel(out.read_bytes())
    assert grid.occupied_count == 684
    assert "ratio_deviation_vs_9_6_4: 0.0" in stdout
    assert "0,9.0,4.0" in stdout and "2,4.0,9.0" in stdout


def test_generate_sphere_obj(tmp_path, capsys):
    out = tmp_path / "s.obj"
    code, _, _ = run(capsys, "generate", "--shape", "sphere", "--x0", "4",
                     "--y0", "1", "--levels", "4", "--resolution", "32",
                     "--out", str(out))
    assert code == 0
    mesh = parse_obj(out.read_bytes())
    assert mesh.triangle_count > 0
    # voxel terraces can meet 4 quads at an edge, so full manifoldness is
    # not guaranteed; closedness (even edge counts) is
    edges = np.sort(np.concatenate([mesh.triangles[:, [0, 1]],
                                    mesh.triangles[:, [1, 2]],
                                    mesh.triangles[:, [2, 0]]]), axis=1)
    _, counts = np.unique(edges, axis=0, return_counts=True)
    assert (counts % 2 == 0).all()


def test_generate_reports_truncation(tmp_path, capsys):
    out = tmp_path / "trunc.voxl"
    code, stdout, _ = run(capsys, "generate", "--shape", "square", "--x0", "4",
                          "--y0", "0.1", "--levels", "10", "--resolution", "4",
                          "--out", str(out))
    assert code == 0
    assert "truncated_at_level: 6" in stdout


def test_generate_missing_flag_is_usage_error(tmp_path, capsys):
    code, _, stderr = run(capsys, "generate", "--shape", "square", "--y0", "4",
                          "--levels", "3", "--resolution", "9",
                          "--out", str(tmp_path / "t.voxl"))
    assert code == 1
    assert "--x0" in stderr


def test_generate_bad_extension(tmp_path, capsys):
    code, _, stderr = run(capsys, "generate", "--shape", "square", "--x0", "9",
                          "--y0", "4", "--levels", "3", "--resolution", "9",
                          "--out", str(tmp_path / "t.ply"))
    assert code == 1
    assert ".ply" in stderr


def test_dimension_on_cube_fixture(tmp_path, capsys):
    fixture = tmp_path / "cube.voxl"
    fixture.write_bytes(write_voxel(gen_reference("cube", 64)))
    report = tmp_path / "report.json"
    csv_path = tmp_path / "scales.csv"
    code, stdout, _ = run(capsys, "dimension", "--in", str(fixture),
                          "--report", str(report), "--csv", str(csv_path))
    assert code == 0
    doc = json.loads(report.read_text())
    assert abs(doc["dimension"] - 3.0) < 1e-6
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "box_side,epsilon,count"
    assert len(lines) == 8  # sides 64..1
    assert "dimension: " in stdout


def test_dimension_on_menger_fixture(tmp_path, capsys):
    fixture = tmp_path / "menger4.voxl"
    fixture.write_bytes(write_voxel(gen_reference("menger", 4)))
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "dimension", "--in", str(fixture),
                     "--report", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    # frozen from the naive-count + independent-polyfit oracle: the
    # origin-anchored power-of-two ladder on the 81-wide sponge reads low
    assert abs(doc["dimension"] - 2.4782352778793357) < 1e-9


def test_dimension_on_obj_mesh(tmp_path, capsys):
    verts, tris = unit_cube_mesh()
    path = tmp_path / "cube.obj"
    path.write_bytes(write_obj(TriangleMesh(verts, tris)))
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "dimension", "--in", str(path), "--resolution", "16",
                     "--solid", "--report", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    assert 2.0 < doc["dimension"] <= 3.0


def test_dimension_mesh_requires_resolution(tmp_path, capsys):
    verts, tris = unit_cube_mesh()
    path = tmp_path / "cube.obj"
    path.write_bytes(write_obj(TriangleMesh(verts, tris)))
    code, _, stderr = run(capsys, "dimension", "--in", str(path),
                          "--report", str(tmp_path / "r.json"))
    assert code == 1
    assert "--resolution" in stderr


def test_dimension_warns_on_open_mesh(tmp_path, capsys):
    path = tmp_path / "tri.obj"
    path.write_text("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n")
    code, _, stderr = run(capsys, "dimension", "--in", str(path),
                          "--resolution", "8", "--report", str(tmp_path / "r.json"))
    assert code == 0
    assert "manifold" in stderr


def test_dimension_empty_grid_is_numeric_failure(tmp_path, capsys):
    fixture = tmp_path / "empty.voxl"
    fixture.write_bytes(write_voxel(make_grid((8, 8, 8), 1.0)))
    code, _, _ = run(capsys, "dimension", "--in", str(fixture),
                     "--report", str(tmp_path / "r.json"))
    assert code == 3


def test_dimension_corrupt_file_is_data_error(tmp_path, capsys):
    fixture = tmp_path / "bad.voxl"
    fixture.write_bytes(b"NOPE" + b"\x00" * 60)
    code, _, stderr = run(capsys, "dimension", "--in", str(fixture),
                          "--report", str(tmp_path / "r.json"))
    assert code == 2
    assert stderr


def test_dimension_missing_file_is_data_error(tmp_path, capsys):
    code, _, _ = run(capsys, "dimension", "--in", str(tmp_path / "nope.voxl"),
                     "--report", str(tmp_path / "r.json"))
    assert code == 2


def test_census_synthetic_inverse_square(tmp_path, capsys):
    csv = tmp_path / "census.csv"
    csv.write_text("size,count\n1,1\n2,0.25\n4,0.0625\n")
    report = tmp_path / "fit.json"
    code, stdout, _ = run(capsys, "census", "--in", str(csv),
                          "--report", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    assert abs(doc["delta"] - (-2.0)) < 1e-12
    assert "delta: " in stdout


def test_census_single_row_is_numeric_failure(tmp_path, capsys):
    csv = tmp_path / "census.csv"
    csv.write_text("size,count\n1,5\n")
    code, _, _ = run(capsys, "census", "--in", str(csv),
                     "--report", str(tmp_path / "fit.json"))
    assert code == 3


def test_census_negative_size_reports_row(tmp_path, capsys):
    csv = tmp_path / "census.csv"
    csv.write_text("size,count\n1,5\n-1,4\n")
    code, _, stderr = run(capsys, "census", "--in", str(csv),
                          "--report", str(tmp_path / "fit.json"))
    assert code == 2
    assert "row 3" in stderr


def test_reference_menger(tmp_path, capsys):
    out = tmp_path / "m.voxl"
    code, stdout, _ = run(capsys, "reference", "--kind", "menger", "--size", "3",
                          "--out", str(out))
    assert code == 0
    assert read_voxel(out.read_bytes()).occupied_count == 8000
    assert "occupied: 8000" in stdout


def test_reference_cube(tmp_path, capsys):
    out = tmp_path / "c.voxl"
    code, _, _ = run(capsys, "reference", "--kind", "cube", "--size", "16",
                     "--out", str(out))
    assert code == 0
    assert read_voxel(out.read_bytes()).occupied_count == 4096


def test_reference_depth_limit(tmp_path, capsys):
    code, _, stderr = run(capsys, "reference", "--kind", "menger", "--size", "9",
                          "--out", str(tmp_path / "m.voxl"))
    assert code == 1
    assert stderr


def test_unknown_subcommand(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 1


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0
