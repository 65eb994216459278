"""End-to-end acceptance checks. Each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
complete; the whole module finishes in well under two minutes.
"""

import math

import numpy as np

from conjsum.conjugate import (
    conjugate_at,
    conjugate_truncated,
    default_x_grid,
    deviation_kernel_form,
)
from conjsum.functions import DEFAULT_GRID, by_name, corpus
from conjsum.kernels import conj_dirichlet_matrix
from conjsum.moduli import (
    classical_modulus,
    modulus_profile,
    pointwise_modulus_on_nodes,
)
from conjsum.summability import (
    cesaro,
    check_condition_2_1,
    check_condition_2_2,
    check_condition_2_21,
    check_condition_3_2,
    check_remark1_condition,
    check_remark2_condition,
    delta_at_zero,
    identity_matrix,
)
from conjsum.verify import (
    lhs_theorem1,
    ratio_of,
    rhs_theorem1,
    rhs_theorem2,
    transform_value,
)

PI = math.pi
GRID = DEFAULT_GRID
X_GRID = default_x_grid()
N_RANGE = (8, 16, 32, 64, 128)


def report(number: int, label: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {number} [{label}]: {status}{suffix}", flush=True)


def kernel_t_grid():
    t = PI * np.arange(1, 513) / 512.0
    return t[np.abs(np.sin(t / 2)) >= 1e-6]


def direct_kernel_table(k_max: int, t: np.ndarray) -> np.ndarray:
    nu = np.arange(k_max + 1, dtype=float)
    return np.cumsum(np.sin(np.multiply.outer(nu, t)), axis=0)


def test_criterion_1_kernel_identities():
    t = kernel_t_grid()
    direct = direct_kernel_table(128, t)
    closed = conj_dirichlet_matrix(128, t)
    half_cot = 0.5 / np.tan(0.5 * t)
    ks = np.arange(129)
    complement = np.cos(np.multiply.outer(2 * ks + 1, 0.5 * t)) / (2.0 * np.sin(0.5 * t))
    err_closed = float(np.max(np.abs(closed - direct)))
    err_comp = float(np.max(np.abs(complement - (half_cot - direct))))
    err_identity = float(np.max(np.abs(closed + complement - half_cot)))
    ok = err_closed <= 1e-10 and err_comp <= 1e-10 and err_identity <= 1e-10
    report(1, "kernel identities", ok,
           f"closed-vs-direct {err_closed:.2e}, complement {err_comp:.2e}, cot split {err_identity:.2e}")
    assert err_closed <= 1e-10
    assert err_comp <= 1e-10
    assert err_identity <= 1e-10


def test_criterion_2_lemma1_bounds():
    slack = 1 + 1e-9
    t = kernel_t_grid()
    t_half = t[t <= PI / 2]
    t_wide = np.linspace(-2 * PI, 2 * PI, 1025)
    t_wide = t_wide[np.abs(np.sin(t_wide / 2)) >= 1e-6]
    direct_half = direct_kernel_table(128, t_half)
    complement_half = 0.5 / np.tan(0.5 * t_half) - direct_half
    kernels_wide = conj_dirichlet_matrix(128, t_wide)
    ok = True
    for k in range(129):
        ok &= bool(np.all(np.abs(complement_half[k]) <= PI / (2 * t_half) * slack))
        ok &= bool(np.all(np.abs(direct_half[k]) <= PI / t_half * slack))
        ok &= bool(np.all(np.abs(kernels_wide[k]) <= 0.5 * k * (k + 1) * np.abs(t_wide) * slack))
        ok &= bool(np.all(np.abs(kernels_wide[k]) <= (k + 1) * slack))
    report(2, "Lemma 1 kernel bounds", ok, "four bounds, k <= 128")
    assert ok


def test_criterion_3_conjugate_oracle():
    cases = [
        ("sin", lambda x: -math.cos(x), 1e-6),
        ("cos", math.sin, 1e-6),
        ("sawtooth", lambda x: math.log(2 * math.sin(((x) % (2 * PI)) / 2)), 1e-4),
    ]
    worst = {}
    for name, oracle, tol in cases:
        f = by_name(name)
        err = max(abs(conjugate_at(f, x, grid=GRID) - oracle(x)) for x in X_GRID)
        worst[name] = (err, tol)
    ok = all(err <= tol for err, tol in worst.values())
    detail = ", ".join(f"{k} {v[0]:.2e}<= {v[1]:.0e}" for k, v in worst.items())
    report(3, "conjugate oracle", ok, detail)
    for name, (err, tol) in worst.items():
        assert err <= tol, name


def test_criterion_4_lemma2():
    slack = 1e-9
    ok = True
    worst = math.inf
    for f in corpus():
        for x in X_GRID:
            plain = modulus_profile(f, x, 128, "w_tilde", GRID).values
            bar = modulus_profile(f, x, 128, "w_tilde_bar", GRID).values
            counts = np.arange(1.0, 130.0)
            plain_rhs = 2.0 * np.cumsum(plain) / counts
            bar_rhs = np.cumsum(bar) / counts
            ok &= bool(np.all(plain <= plain_rhs + slack))
            ok &= bool(np.all(bar <= bar_rhs + slack))
            with np.errstate(invalid="ignore", divide="ignore"):
                margins = np.where(plain_rhs > 1e-12, plain_rhs - plain, math.inf)
            worst = min(worst, float(np.min(margins)))
    report(4, "Lemma 2 averaged-modulus inequalities", ok, f"min plain margin {worst:.2e}")
    assert ok


def test_criterion_5_eq81():
    h = 2 * PI / GRID.m
    ok = True
    worst_ratio = 0.0
    for f in corpus():
        for k in range(33):
            delta = PI / (k + 1)
            _, vals = pointwise_modulus_on_nodes(f, delta, "w_tilde", GRID)
            for p in (1.0, 2.0, math.inf):
                if math.isinf(p):
                    lhs = float(vals.max())
                else:
                    lhs = float((h * np.sum(vals**p)) ** (1.0 / p))
                rhs = classical_modulus(f, delta, p, GRID)
                if rhs <= 1e-12:
                    ok &= lhs <= 1e-12
                else:
                    worst_ratio = max(worst_ratio, lhs / rhs)
                    ok &= lhs <= rhs * (1 + 1e-6)
    report(5, "Eq. (81) pointwise-vs-classical moduli", ok, f"worst lhs/rhs {worst_ratio:.6f}")
    assert ok


def test_criterion_6_matrix_checkers():
    C, I, D0 = cesaro(128), identity_matrix(128), delta_at_zero(128)
    c21 = check_condition_2_1(C).min_constant
    c22 = check_condition_2_2(C).min_constant
    c221 = check_condition_2_21(C, C).min_constant
    c32 = check_condition_3_2(I).min_constant
    r2 = check_remark2_condition(I)
    harmonics_ok = True
    grows = []
    for n in range(129):
        got = check_remark1_condition(D0, n)
        want = math.fsum(1.0 / k for k in range(1, n + 2))
        harmonics_ok &= abs(got - want) <= 1e-12
        grows.append(got)
    unbounded = all(b > a for a, b in zip(grows, grows[1:]))
    ok = (
        c21 == 1.0
        and c22 == 1.0
        and c221 < 1.0
        and c32 == 0.0
        and r2 == 0.0
        and harmonics_ok
        and unbounded
    )
    report(6, "matrix condition checkers", ok,
           f"2.1={c21}, 2.2={c22}, 2.21={c221:.6f}, 3.2={c32}, remark2={r2}, remark1=H(n+1)")
    assert c21 == 1.0
    assert c22 == 1.0
    assert c221 < 1.0
    assert c32 == 0.0
    assert r2 == 0.0
    assert harmonics_ok and unbounded


def _running_max_growth(rhs_kind: str, A, B) -> float:
    per_n_max = []
    for n in N_RANGE:
        best = 0.0
        for f in corpus():
            for x in X_GRID:
                if rhs_kind == "T1":
                    rhs = rhs_theorem1(f, A, x, n, GRID)
                else:
                    rhs = rhs_theorem2(f, x, n, GRID)
                for truncated in (True, False):
                    lhs = lhs_theorem1(f, A, B, x, n, truncated, GRID)
                    r = ratio_of(lhs, rhs)
                    assert math.isfinite(r), (f.name, x, n)
                    best = max(best, r)
        per_n_max.append(best)
    running = np.maximum.accumulate(per_n_max)
    return float(running[-1] / running[0])


def test_criterion_7_bound_ratio_stability():
    C, I = cesaro(128), identity_matrix(128)
    assert check_condition_3_2(I).min_constant == 0.0  # precondition for identity-B
    growths = {
        "T1 cesaro/cesaro": _running_max_growth("T1", C, C),
        "T1 cesaro/identity": _running_max_growth("T1", C, I),
        "T2 cesaro/identity": _running_max_growth("T2", C, I),
        "T2 cesaro/cesaro": _running_max_growth("T2", C, C),
    }
    ok = all(g < 1.05 for g in growths.values())
    detail = ", ".join(f"{k} x{v:.4f}" for k, v in growths.items())
    report(7, "Theorem 1/2 ratio running max", ok, detail)
    for key, g in growths.items():
        assert g < 1.05, key


def test_criterion_8_corollary_decay():
    C = cesaro(128)
    f_sin = by_name("sin")
    x = PI / 3
    devs = {n: lhs_theorem1(f_sin, C, C, x, n, False, GRID) for n in (16, 32, 64, 128)}
    halving_ok = all(devs[2 * n] <= 0.75 * devs[n] for n in (16, 32, 64))
    tail_ok = True
    drops = []
    for f in corpus():
        if f.name == "const":
            continue
        d4 = lhs_theorem1(f, C, C, x, 4, False, GRID)
        d128 = lhs_theorem1(f, C, C, x, 128, False, GRID)
        tail_ok &= d128 < d4
        drops.append(f"{f.name} {d128 / d4:.3f}")
    ok = halving_ok and tail_ok
    report(8, "corollary decay", ok,
           f"sin halved ratios {[f'{devs[2*n]/devs[n]:.3f}' for n in (16, 32, 64)]}, "
           f"dev(128)/dev(4): {', '.join(drops)}")
    assert halving_ok
    assert tail_ok


def test_criterion_9_kernel_form_cross_check():
    C, I = cesaro(32), identity_matrix(32)
    worst = 0.0
    for f in corpus():
        for A, B in ((C, C), (I, I)):
            for n in (1, 2, 4, 8, 16, 32):
                for x in (5 * PI / 16, -3 * PI / 16):
                    dt, df = deviation_kernel_form(f, A, B, n, x, GRID)
                    value = transform_value(f, A, B, n, x, GRID)
                    trunc = conjugate_truncated(f, x, PI / (n + 1), GRID)
                    full = conjugate_at(f, x, grid=GRID)
                    worst = max(worst, abs(dt - (value - trunc)), abs(df - (value - full)))
    ok = worst <= 1e-6
    report(9, "kernel-form vs direct deviations", ok, f"worst |diff| {worst:.2e}")
    assert worst <= 1e-6


def test_criterion_10_cli_determinism(tmp_path):
    from conjsum.cli import main

    args = [
        "verify", "--theorem", "T1.5", "--function", "sin", "--matrix-a", "cesaro",
        "--matrix-b", "cesaro", "--n-list", "4", "8", "16",
    ]
    a, b = tmp_path / "run1.csv", tmp_path / "run2.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    ok = a.read_bytes() == b.read_bytes()
    report(10, "cmd_verify determinism", ok, f"{a.stat().st_size} bytes each")
    assert ok
