"""Regenerate the three shipped 28x28 vortex keys in fixtures/.

The parameter sets (centers, radii, term coefficients) are fixed reference
keys used by the test suite and the sensitivity comparison; rerunning this
script must reproduce fixtures/vortex{1,2,3}.json byte for byte.
"""

from pathlib import Path

from vortexcrypt import Coord, FunctionTerm, GridShape, RandomFunction, VortexKey, VortexSpec, write_key


def sin(a, b, c):
    return FunctionTerm("sin", a, b, c)


def cos(a, b, c):
    return FunctionTerm("cos", a, b, c)


def poly(a, k):
    return FunctionTerm("poly", a, degree=k)


def term(kind, a):
    return FunctionTerm(kind, a)


SHAPE = GridShape(28, 28)

VORTEX1 = [
    ((5, 11), 4, [sin(-1.88, 1.20, 0.95), cos(1.17, 0.68, 0.74)]),
    ((18, 18), 9, [poly(1.96, 1), poly(0.03, 3), term("exp2d", 1.67), cos(1.79, 1.26, 1.60)]),
    ((10, 6), 5, [term("sqrt", 0.09), poly(0.16, 2), term("exp", 1.89), sin(-0.52, 1.46, 1.15)]),
    ((8, 12), 7, [poly(1.16, 5), term("ln1p", 0.03), term("exp", 1.40), cos(0.60, 0.67, 0.92)]),
    ((19, 15), 8, [term("pow2", 1.64), poly(3.48, 1), term("log10_1p", 0.01), sin(1.65, 1.93, 0.88)]),
]

VORTEX2 = [
    ((12, 26), 1, [poly(0.50, 1), poly(1.49, 3), term("exp2d", 0.99), cos(0.60, 0.22, 0.08)]),
    ((19, 21), 6, [term("sqrt", 1.70), poly(1.49, 2), term("exp", 0.32), sin(-1.50, 0.37, 1.51)]),
    ((8, 10), 7, [poly(1.61, 5), term("ln1p", 1.50), term("exp", 0.77), cos(1.05, 1.30, -0.34)]),
    ((12, 11), 10, [term("pow2", 0.17), poly(2.86, 1), term("log10_1p", 0.49), sin(-0.49, 1.24, 0.86)]),
]

VORTEX3 = [
    ((23, 22), 4, [sin(-1.56, 0.58, 0.81), cos(0.83, 0.06, 0.84)]),
    ((8, 12), 7, [poly(1.79, 1), poly(1.71, 3), term("exp2d", 0.66), cos(0.72, 1.26, 1.67)]),
    ((14, 10), 9, [term("sqrt", 1.20), poly(0.49, 2), term("exp", 1.41), sin(0.72, 0.23, 1.58)]),
    ((15, 26), 1, [poly(1.74, 5), term("ln1p", 1.87), term("exp", 1.84), cos(0.75, 1.17, -0.72)]),
    ((20, 19), 7, [term("pow2", 0.04), poly(0.86, 1), term("log10_1p", 0.13), sin(0.52, 1.49, 0.56)]),
]


def build(entries, seed):
    specs = tuple(
        VortexSpec(Coord(*center), radius, RandomFunction(tuple(terms)))
        for center, radius, terms in entries
    )
    key = VortexKey(SHAPE, specs, seed)
    key.validate()
    return key


def main():
    out_dir = Path(__file__).resolve().parents[1] / "fixtures"
    out_dir.mkdir(exist_ok=True)
    for name, entries, seed in [
        ("vortex1", VORTEX1, 1),
        ("vortex2", VORTEX2, 2),
        ("vortex3", VORTEX3, 3),
    ]:
        key = build(entries, seed)
        path = out_dir / f"{name}.json"
        write_key(key, path)
        print(f"{path}  digest={key.digest()}")


if __name__ == "__main__":
    main()
