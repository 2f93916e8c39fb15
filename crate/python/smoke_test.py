"""Smoke test for the morphcx Python module.

Uses an installed `morphcx` if there is one, else the library from
`cargo build -p morphcx-python` (debug or release).
"""

import importlib.util
import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import morphcx

        return morphcx
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libmorphcx.so", "libmorphcx.dylib", "morphcx.dll"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                tmp = pathlib.Path(tempfile.mkdtemp())
                suffix = ".pyd" if name.endswith(".dll") else ".so"
                shutil.copy(lib, tmp / ("morphcx" + suffix))
                spec = importlib.util.spec_from_file_location("morphcx", tmp / ("morphcx" + suffix))
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("morphcx extension not found; run `cargo build -p morphcx-python` first")


def conllu(n_sentences=40):
    stems = ["talo", "kissa", "koira", "puu", "kirja", "auto", "kala", "lintu"]
    cases = [("", "Nom"), ("n", "Gen"), ("ssa", "Ine"), ("sta", "Ela"), ("lla", "Ade")]
    lines = []
    for s in range(n_sentences):
        lines.append(f"# sent_id = {s}")
        for t in range(6):
            stem = stems[(s * 3 + t) % len(stems)]
            suffix, case = cases[(s + 2 * t) % len(cases)]
            feats = f"Case={case}|Number=Sing"
            lines.append(f"{t + 1}\t{stem}{suffix}\t{stem}\tNOUN\t_\t{feats}\t0\troot\t_\t_")
        lines.append("")
    return "\n".join(lines) + "\n"


def main():
    mx = load()

    assert mx.measure_names() == ["ttr", "ws", "wh", "lh", "msp", "is", "mfh", "neg_ia"]
    assert abs(mx.entropy([1, 1, 1, 1]) - 2.0) < 1e-12

    tb = mx.parse_conllu(conllu(), "fi_synth", "fi")
    assert tb.n_sentences == 40 and tb.n_tokens == 240
    assert tb.tokens()[2][3]["Case"] in {"Nom", "Gen", "Ine", "Ela", "Ade"}

    res = mx.measure_treebank(tb, target_tokens=200, repetitions=3, seed=1, ia_draws=2)
    assert set(res) == set(mx.measure_names())
    for name, cell in res.items():
        assert cell["status"] in {"ok", "excluded"}, (name, cell)
        assert cell["mean"] is not None and math.isfinite(cell["mean"]), (name, cell)
    again = mx.measure_treebank(tb, target_tokens=200, repetitions=3, seed=1, ia_draws=2)
    assert res == again

    es = mx.edit_script("walk", "walked")
    assert es.suffix_add == "ed" and es.apply("talk") == "talked"

    r, p = mx.pearson([1, 2, 3, 4, 5], [2, 4, 6, 8, 11])
    assert r > 0.99 and p < 0.01
    rho, _ = mx.spearman([1, 2, 3, 4], [1, 8, 27, 64])
    assert rho == 1.0

    out = mx.pca([[1.0, 2.0], [2.0, 4.1], [3.0, 5.9], [4.0, 8.2]])
    assert out["explained_variance_ratio"][0] > 0.99
    assert abs(sum(out["explained_variance_ratio"]) - 1.0) < 1e-12

    x = [[float(i % 2), float(i % 3 == 0)] for i in range(12)]
    y = [2.0 * a - b for a, b in x]
    rmse, reduction, preds, alphas = mx.ridge_loocv(x, y)
    assert len(preds) == 12 and len(alphas) == 12 and rmse < 0.5

    try:
        mx.parse_conllu("1\tbroken\n", "bad", "xx")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed CoNLL-U should raise")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
