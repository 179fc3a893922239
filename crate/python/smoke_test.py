"""Build the `kohn` extension module, import it and exercise each binding."""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_module() -> pathlib.Path:
    subprocess.run(["cargo", "build", "--release", "-p", "kohn-py"], cwd=ROOT, check=True)
    lib = ROOT / "target" / "release" / "libkohn.so"
    dest = pathlib.Path(tempfile.mkdtemp()) / "kohn.so"
    shutil.copy(lib, dest)
    return dest.parent


def main() -> None:
    sys.path.insert(0, str(build_module()))
    import kohn

    r = kohn.Poly("2*Re(z2) + abs2(z1)^2", 2)
    assert r.is_real() and r.conjugate() == r
    z1 = kohn.Poly("z1", 2)
    assert not z1.is_real()
    assert str(z1.conjugate()) == "zbar1"
    print("r =", r)

    ideal = kohn.Ideal(2, [z1 * kohn.Poly("z2", 2), kohn.Poly("z2^2", 2)])
    assert ideal.contains(kohn.Poly("z1*z2^2 + 3*z2^2", 2))
    assert not ideal.contains(z1)
    print("basis:", ", ".join(map(str, ideal.basis())))

    minors = kohn.levi_determinants(r, 1)
    assert len(minors) == 1
    print("Levi minor:", minors[0])
    step_two = kohn.levi_determinants(r, 1, [z1])
    assert any(str(d) in ("1", "-1") for d in step_two), step_two

    problem = json.dumps({"n": 2, "q": 1, "r": "2*Re(z2) + abs2(z1)^2"})
    trace, code = kohn.run_problem_json(problem)
    doc = json.loads(trace)
    assert code == 0 and doc["trace_version"] == 1
    assert doc["summary"]["status"] == "terminated" and doc["summary"]["step"] == 2
    print("run:", doc["summary"]["status"], "at step", doc["summary"]["step"])

    flat, code = kohn.run_problem_json(json.dumps({"n": 2, "q": 1, "r": "2*Re(z2)"}))
    assert code == 2 and json.loads(flat)["summary"]["status"] == "stabilized-undetermined"

    try:
        kohn.Poly("z3", 2)
    except ValueError as e:
        print("rejected:", e)
    else:
        raise AssertionError("z3 accepted with n = 2")
    print("smoke test ok")


if __name__ == "__main__":
    main()
