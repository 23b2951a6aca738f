"""Acceptance criteria 1 to 10, one test each with a printed pass/fail line."""
import shutil
import subprocess
import sys
import time

import pytest

from xmodlab.catalog import load_catalog
from xmodlab.suites import SuiteContext, central_family, run_suite
from xmodlab.xmod import is_central, is_perfect

from conftest import CORE


@pytest.fixture(scope="module")
def ctx():
    return SuiteContext(load_catalog(CORE))


def emit(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'}: {detail}")


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def failures(report):
    return [(r.check, r.inputs, r.witness) for r in report.records if r.status != "PASS"]


def test_criterion_01_binary_oracle(ctx, capsys):
    r, dt = timed(lambda: run_suite(ctx.catalog, "oracle-binary", ctx))
    n = r.summary["PASS"]
    ok = not failures(r) and n >= 40 and dt < 60
    emit(capsys, 1, ok, f"binary oracle equals commutator on {n} subgroup pairs in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_02_join_decomposition(ctx, capsys):
    from xmodlab.suites import _join_triples
    r, dt = timed(lambda: run_suite(ctx.catalog, "prop-joindecomp", ctx))
    n = r.summary["PASS"]
    same = [t[0] for t in _join_triples(ctx)] == [rec.inputs.split()[0] for rec in r.records]
    ok = not failures(r) and 0 < n <= 2000 and same and dt < 120
    emit(capsys, 2, ok, f"join decomposition holds on {n} seeded triples in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_03_displacement_is_commutator(ctx, capsys):
    r, dt = timed(lambda: run_suite(ctx.catalog, "prop-higgins-coinv", ctx))
    n_actions = sum(1 for rec in r.records if not rec.inputs.startswith("xm:"))
    ok = not failures(r) and n_actions >= 15 and dt < 30
    emit(capsys, 3, ok, f"displacement equals carrier commutator for {n_actions} catalog "
         f"actions ({r.summary['PASS']} checks) in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_04_abelian_reflection(ctx, capsys):
    r, dt = timed(lambda: run_suite(ctx.catalog, "lemma-abelian", ctx))
    n = r.summary["PASS"]
    ok = not failures(r) and n >= 12 and dt < 10
    emit(capsys, 4, ok, f"M/[L,M] abelian for {n} crossed modules in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_05_delta_image(ctx, capsys):
    r, dt = timed(lambda: run_suite(ctx.catalog, "prop-delta-epi", ctx))
    s3, a5 = ctx.tensor("id_s3"), ctx.tensor("id_a5")
    ok = (not failures(r) and r.summary["SKIPPED"] == 0 and dt < 600
          and s3.delta.image.order == 3 and a5.delta.is_surjective())
    emit(capsys, 5, ok, f"image(delta) = [L,M] on {r.summary['PASS']} entries "
         f"(id_s3 image order {s3.delta.image.order}, id_a5 surjective "
         f"{a5.delta.is_surjective()}) in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_06_delta_central(ctx, capsys):
    r, dt = timed(lambda: run_suite(ctx.catalog, "prop-delta-central", ctx))
    k = ctx.tensor("id_a5").delta.kernel.order
    n_perfect = sum(1 for x in ctx.catalog.xmods.values() if is_perfect(x))
    ok = not failures(r) and r.summary["PASS"] == n_perfect and k == 2 and dt < 600
    emit(capsys, 6, ok, f"(delta, 1) central on {r.summary['PASS']} perfect entries, "
         f"id_a5 kernel order {k}, in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_07_perfect_iff_universal(ctx, capsys):
    r, dt = timed(lambda: run_suite(ctx.catalog, "thm-main", ctx))
    perfect = [n for n, x in sorted(ctx.catalog.xmods.items()) if is_perfect(x)]
    sizes = {n: len(central_family(ctx, n, ctx.uce(n))) for n in perfect}
    n_uce = sum(1 for rec in r.records if rec.check == "uce-universal" and rec.status == "PASS")
    n_np = sum(1 for rec in r.records
               if rec.check == "non-perfect-two-fillers" and rec.status == "PASS")
    ok = (not failures(r) and min(sizes.values()) >= 3 and n_uce == len(perfect)
          and n_np == len(ctx.catalog.xmods) - len(perfect) and dt < 600)
    emit(capsys, 7, ok, f"{n_uce} universal central extensions (families of "
         f"{min(sizes.values())} to {max(sizes.values())} extensions) and {n_np} "
         f"non-perfect witnesses in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_08_protoadditivity(ctx, capsys):
    r, dt = timed(lambda: run_suite(ctx.catalog, "thm-protoadd", ctx))
    semi = sum(1 for rec in r.records if rec.inputs.startswith("semi:"))
    trick = sum(1 for rec in r.records if rec.inputs.startswith("trick:"))
    ok = not failures(r) and semi >= 2 and trick >= 1 and dt < 30
    emit(capsys, 8, ok, f"reflector preserves {trick} product and {semi} semidirect split "
         f"sequences in {dt:.1f}s")
    assert ok, failures(r)


def test_criterion_09_centrality_agreement(ctx, capsys):
    t0 = time.perf_counter()
    a = run_suite(ctx.catalog, "thm-centrality-66", ctx)
    b = run_suite(ctx.catalog, "prop-chain-7", ctx)
    dt = time.perf_counter() - t0
    exts = ctx.catalog.extensions.values()
    n_c = sum(1 for e in exts if is_central(e))
    n_nc = len(ctx.catalog.extensions) - n_c
    ok = (not failures(a) and not failures(b) and len(ctx.catalog.extensions) >= 10
          and n_c > 0 and n_nc > 0 and dt < 30)
    emit(capsys, 9, ok, f"centrality notions agree on {len(ctx.catalog.extensions)} "
         f"extensions ({n_c} central, {n_nc} not) in {dt:.1f}s")
    assert ok, failures(a) + failures(b)


def test_criterion_10_determinism(tmp_path, capsys):
    exe = shutil.which("xmodlab")
    cmd = [exe] if exe else [sys.executable, "-m", "xmodlab.cli"]
    codes, blobs = [], []
    t0 = time.perf_counter()
    for i in (1, 2):
        out = tmp_path / f"run{i}.json"
        res = subprocess.run(cmd + ["verify", "--suite", "all", "--catalog", str(CORE),
                                    "--json", str(out)], capture_output=True, text=True,
                             check=False)
        codes.append(res.returncode)
        blobs.append(out.read_bytes() if out.exists() else b"")
    dt = time.perf_counter() - t0
    ok = codes == [0, 0] and blobs[0] and blobs[0] == blobs[1]
    emit(capsys, 10, ok, f"two full verify runs exit {codes} with byte-identical reports "
         f"({len(blobs[0])} bytes) in {dt:.1f}s")
    assert ok
