#!/usr/bin/env python3
"""Smoke test for the torelli_py extension module.

Builds nothing itself: it expects `cargo build -p torelli-py` (or --release)
to have produced libtorelli_py.so, copies that into a temp directory under
the importable name torelli_py.so, and checks the bindings against the same
frozen values the Rust test suite uses.
"""

import json
import os
import shutil
import sys
import tempfile

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

STANDARD = {
    "V1": [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]],
    "V2": [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]],
    "V3": [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
}


def locate_extension():
    override = os.environ.get("TORELLI_PY_SO")
    candidates = [override] if override else [
        os.path.join(REPO_ROOT, "target", profile, "libtorelli_py.so")
        for profile in ("release", "debug")
    ]
    for path in candidates:
        if path and os.path.isfile(path):
            return path
    sys.exit(
        "libtorelli_py.so not found; run `cargo build -p torelli-py` first "
        "(or set TORELLI_PY_SO)"
    )


def import_extension():
    so = locate_extension()
    stage = tempfile.mkdtemp(prefix="torelli-py-")
    shutil.copy(so, os.path.join(stage, "torelli_py.so"))
    sys.path.insert(0, stage)
    import torelli_py

    return torelli_py


PASSED = 0


def check(name, actual, expected):
    global PASSED
    if actual != expected:
        sys.exit(f"FAIL {name}: expected {expected!r}, got {actual!r}")
    PASSED += 1
    print(f"ok - {name}")


def check_raises(name, fn, *args, **kwargs):
    global PASSED
    try:
        fn(*args, **kwargs)
    except ValueError as exc:
        PASSED += 1
        print(f"ok - {name} (rejected: {exc})")
        return
    sys.exit(f"FAIL {name}: expected ValueError, call succeeded")


def main():
    t = import_extension()
    a1 = [1, 0, 0, 0, 0, 0]
    b1 = [0, 1, 0, 0, 0, 0]
    a2 = [0, 0, 1, 0, 0, 0]

    # Symplectic plumbing.
    check("intersection(a1, b1)", t.intersection(a1, b1), 1)
    check("intersection(b1, a1)", t.intersection(b1, a1), -1)
    check("intersection(a1, a2)", t.intersection(a1, a2), 0)
    check("transvections are symplectic", t.is_symplectic(t.transvection(b1)), True)
    identity = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    check("identity is symplectic", t.is_symplectic(identity), True)
    swap = [row[:] for row in identity]
    swap[0], swap[1] = identity[1], identity[0]
    check("handle swap is not symplectic", t.is_symplectic(swap), False)
    check(
        "seeded random element is symplectic",
        t.is_symplectic(t.random_sp_element(3, 7, 10)),
        True,
    )
    check(
        "seeded random element is deterministic",
        t.random_sp_element(3, 7, 10),
        t.random_sp_element(3, 7, 10),
    )

    # Quadratic forms and the involution image.
    reference = [1, 1, 0, 1, 1, 1]
    check("reference form has Arf 0", t.arf(3, reference), 0)
    check("zero form has Arf 0", t.arf(3, [0] * 6), 0)
    check("genus-1 (1,1) form has Arf 1", t.arf(1, [1, 1]), 1)
    check("genus-3 Arf-0 count", t.form_count(3, 0), 36)
    check("genus-3 Arf-1 count", t.form_count(3, 1), 28)
    check("genus-2 Arf-0 count", t.form_count(2, 0), 10)
    check("involution value of reference form", t.involution_value(reference), 1)
    check("involution value of zero form", t.involution_value([0] * 6), 0)
    check_raises("involution rejects Arf-1 forms", t.involution_value, [1, 1, 0, 0, 0, 0])

    # Generator-word reduction.
    word, iterations = t.reduce([[3, 1], [2, 1]], False)
    check("full reduction yields a word", len(word) > 0, True)
    check("full reduction iteration bound", iterations <= 3 + 1 + 8, True)
    word, _ = t.reduce([[3, 1], [2, 1]], True)
    check(
        "refined reduction keeps even first-generator exponents",
        all(exp % 2 == 0 for gen, exp in word if gen == "R1"),
        True,
    )
    check_raises("refined reduction rejects wrong parity", t.reduce, [[1, 1], [1, 2]], True)
    check_raises("reduction rejects determinant 2", t.reduce, [[1, 0], [0, 2]], False)

    # Mod-2 census.
    check("sp_order(1)", t.sp_order(1), "6")
    check("sp_order(2)", t.sp_order(2), "720")
    check("sp_order(3)", t.sp_order(3), "1451520")
    check("orbit_count(3)", t.orbit_count(3), "36")
    check_raises("orbit_count(1) is undefined", t.orbit_count, 1)
    check("form_orbit_census(2)", t.form_orbit_census(2), {0: 10, 1: 6})
    check("form_orbit_census(3)", t.form_orbit_census(3), {0: 36, 1: 28})
    check("enumerate_sp_count(2)", t.enumerate_sp_count(2), 720)

    # Splittings.
    v1, v2, v3 = STANDARD["V1"], STANDARD["V2"], STANDARD["V3"]
    check("standard splitting is symmetric", t.splitting_is_symmetric(v1, v2, v3), True)
    check("reversed ordering is symmetric", t.splitting_is_symmetric(v3, v2, v1), True)
    check("other ordering is not symmetric", t.splitting_is_symmetric(v2, v1, v3), False)
    sign = t.splitting_canonical_sign(v1, v2, v3)
    check("canonical sign is a sign", sign in (1, -1), True)
    check("reversal flips the sign", t.splitting_canonical_sign(v3, v2, v1), -sign)

    # Torus lines.
    lines = t.realize_class((3, 4), "t22")
    check("t22 yields two lines", len(lines), 2)
    check("t22 twist components", sorted(l[2] for l in lines), [1, 3])
    check("t21 yields one line", len(t.realize_class((2, 1), "t21")), 1)
    check_raises("t22 rejects classes of the wrong type", t.realize_class, (2, 1), "t22")
    check_raises("unknown mode is rejected", t.realize_class, (3, 4), "bogus")

    # Certificates.
    cert_json = t.find_certificate(json.dumps([STANDARD]), seed=0, budget=0, hints=True)
    cert = json.loads(cert_json)
    check("certificate rank", cert["rank"], 1)
    check("certificate round trip", t.verify_certificate_json(cert_json), (True, 1))
    tampered = dict(cert)
    tampered["value_matrix"] = [[v + 1 for v in row] for row in cert["value_matrix"]]
    valid, _ = t.verify_certificate_json(json.dumps(tampered))
    check("tampered certificate is rejected", valid, False)

    # Frozen reference computation.
    table, pairing = t.reference_pairing()
    check("reference twist table", table, [[1, 0], [0, 1]])
    check("reference cycle pairing", pairing, -1)

    print(f"all {PASSED} checks passed")


if __name__ == "__main__":
    main()
