"""Smoke test for the modq_py extension.

Build the cdylib first:

    cargo build -p modq-py

then run this script with any Python >= 3.10.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[1]


def load_extension():
    names = ["libmodq_py.so", "libmodq_py.dylib", "modq_py.dll"]
    for profile in ("release", "debug"):
        for name in names:
            built = ROOT / "target" / profile / name
            if built.exists():
                stage = pathlib.Path(tempfile.mkdtemp(prefix="modq_py_"))
                ext = ".pyd" if name.endswith(".dll") else ".so"
                shutil.copy2(built, stage / f"modq_py{ext}")
                sys.path.insert(0, str(stage))
                import modq_py

                return modq_py
    sys.exit("extension not found; run `cargo build -p modq-py` first")


modq = load_extension()


def check_cyclic_four():
    rep = modq.Representation(2, 2, "V3")
    assert rep.p == 2
    assert rep.characteristic == 2
    assert rep.regime == "char2_p2"
    assert rep.dimension == 3
    assert rep.group_order == 4
    assert rep.variables == ["x", "y", "z"]

    dims = rep.invariant_dims(4)
    assert dims[0] == 1 and dims[1] == 1

    gens = rep.minimal_generators()
    assert [d for d, _ in gens] == [1, 2, 3, 4]

    pres = rep.presentation()
    assert pres.class_name == "hypersurface"
    assert pres.ambient_dim == 3
    assert pres.generator_degrees == [1, 2, 3, 4]
    assert len(pres.relations) == 1
    assert pres.hilbert_match(10)

    ideal, points = pres.singular_locus(4)
    assert ideal, "jacobian ideal should be nonempty"
    assert len(points) == 4

    counts = pres.count_points([2, 4, 8])
    assert counts == [(2, 8), (4, 64), (8, 512)]

    probe = rep.probe(["x"])
    assert probe.verdict == "regular"


def check_quotient_surface():
    rep = modq.Representation(2, 2, "V2")
    pres = rep.presentation()
    counts = pres.count_points([2, 4, 8])
    assert [c for _, c in counts] == [4, 16, 64]
    assert modq.fit_motive_class(counts) == "L^2"


def check_classification():
    regime, labels = modq.classify(2, 2)
    assert regime == "char2_p2"
    assert sorted(labels) == ["2V2", "V2", "V3"]

    _, faithful = modq.classify(3, 3, faithful=True)
    assert len(faithful) == 7


def check_hilbert_basis():
    pairs, relations = modq.hilbert_basis(5, 1, 2)
    assert (5, 0) in pairs and (0, 5) in pairs
    assert len(relations) == 3

    pairs, relations = modq.hilbert_basis(3, 1, 2)
    assert pairs == [(3, 0), (1, 1), (0, 3)]
    assert len(relations) == 1


def check_structure():
    # Sylow subgroup acts trivially here, so the ring is Cohen-Macaulay.
    rep = modq.Representation(3, 3, "V1-,V1-,V1-")
    assert rep.cm_defect() == 0
    summary = rep.structure()
    assert summary.is_cm
    assert summary.cm_defect == 0

    assert modq.Representation(5, 5, "V2+,V3+").cm_defect() == 1

    w1 = modq.Representation(3, 2, "W1")
    summary = w1.structure(degree_bound=12)
    assert summary.gorenstein_verdict == "yes"
    assert summary.presentation_class == "hypersurface"


def check_mckay():
    report = modq.mckay(3)
    assert report.class_of_y == "L^2 + 2*L"
    assert report.chi_y == 3
    assert report.conj_classes == 6
    assert not report.matches


def check_errors():
    try:
        modq.Representation(4, 2, "V3")
    except ValueError:
        pass
    else:
        raise AssertionError("composite p should be rejected")

    try:
        modq.Representation(2, 2, "V3").presentation(budget=1)
    except RuntimeError:
        pass
    else:
        raise AssertionError("tiny budget should exhaust")


CHECKS = [
    check_cyclic_four,
    check_quotient_surface,
    check_classification,
    check_hilbert_basis,
    check_structure,
    check_mckay,
    check_errors,
]

for check in CHECKS:
    check()
    print(f"ok {check.__name__}")

print(f"smoke test passed ({len(CHECKS)} checks, modq_py {modq.__version__})")
