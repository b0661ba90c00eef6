"""Smoke test for the oddbracket_py extension module."""

import json
import sys

import oddbracket_py as ob


def main() -> int:
    cocycles = json.loads(ob.verify_cocycles(seed=0, count=10))
    assert cocycles["passed"], cocycles
    assert len(cocycles["checks"]) == 7

    jac = json.loads(ob.verify_jacobi_m0(seed=1, count=20))
    assert jac["passed"], jac

    bad = json.dumps({"c4": [[1, [], 1.0]], "c5": [[1, [], 1.0]]})
    report = json.loads(ob.check_constraints(bad))
    assert not report["satisfied"]
    assert any(v["relation"] == "c4*c5" for v in report["violations"]), report

    family = json.dumps({"c4": [[1, [], 1.0]]})
    orderwise = json.loads(ob.verify_deformation(family, order=3))
    assert orderwise["passed"], orderwise

    normal = json.loads(ob.normalize_c4(json.dumps({"c4": [[2, [2, 3], 1.0], [2, [1, 2], 0.5]]})))
    assert normal["c4"][0][1] == [1, 2], normal

    try:
        ob.verify_cocycles(tol=1e-6, nu=1e-7)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for nu < tol")

    print("python smoke test: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
