"""Embedded identity suite behind the CLI selftest command.

Each check compares an implementation path against an independent closed
form and reports its worst error; the perturb knob exists so the harness can
prove a broken constant is caught.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.stats import t as student_t

from .fcm import FcmShape, fcm_mean, fcm_pdf
from .gep import GepShape, gep_pdf
from .gsas import gsas_pdf
from .quadrature import QuadSpec
from .special import q_ratio, wright_series

_SPEC = QuadSpec(rel_tol=1e-10, abs_tol=1e-14)


def run_selftest(perturb: float = 0.0) -> list[dict]:
    """Returns one record per check: name, max_err, tol, passed."""
    bump = 1.0 + perturb
    checks = []

    xs = np.arange(-6.0, 6.01, 0.5)
    worst = 0.0
    for k in (1.0, 2.0, 5.0):
        got = gsas_pdf(FcmShape(1.0, k), xs, _SPEC) * bump
        ref = student_t(df=k).pdf(xs)
        worst = max(worst, float(np.max(np.abs(got - ref))))
    checks.append({"name": "student-t (alpha=1 sweep)", "max_err": worst, "tol": 1e-7})

    got = gsas_pdf(FcmShape(1.0, 1.0), 1.0, _SPEC) * bump
    checks.append({"name": "cauchy peak/value", "max_err": abs(got - 1.0 / (2.0 * math.pi)),
                   "tol": 1e-10})

    worst = 0.0
    for x in (0.0, 0.5, 1.0, 2.0):
        got = gep_pdf(GepShape(1.0, 1.0), x, _SPEC) * bump
        worst = max(worst, abs(got - math.exp(-abs(x)) / 2.0))
    checks.append({"name": "laplace (gep alpha=1, k=1)", "max_err": worst, "tol": 1e-9})

    worst = 0.0
    for a in (0.7, 1.5):
        for x in (0.0, 1.0, 2.0):
            got = gep_pdf(GepShape(a, 1.0), x, _SPEC) * bump
            ref = math.exp(-abs(x) ** a) / (2.0 * math.gamma(1.0 / a + 1.0))
            worst = max(worst, abs(got - ref))
    checks.append({"name": "exponential power (k=1)", "max_err": worst, "tol": 1e-6})

    worst = 0.0
    for a, k in ((0.8, 2.0), (1.5, 5.0)):
        sh, shm = FcmShape(a, k), FcmShape(a, -k)
        e1 = fcm_mean(sh)
        for x in (0.5, 1.0, 2.0):
            lhs = fcm_pdf(shm, x)
            rhs = fcm_pdf(sh, 1.0 / x) / (x ** 3 * e1) * bump
            worst = max(worst, abs(lhs - rhs))
    checks.append({"name": "fcm reflection", "max_err": worst, "tol": 1e-8})

    worst = 0.0
    for lam, mu, z in ((-0.3, 0.5, -1.2), (-0.6, 1.1, -0.4), (0.4, 0.8, 1.5)):
        lhs = lam * z * wright_series(lam, lam + mu, z) * bump
        rhs = wright_series(lam, mu - 1.0, z) + (1.0 - mu) * wright_series(lam, mu, z)
        worst = max(worst, abs(lhs - rhs))
    checks.append({"name": "wright recurrence", "max_err": worst, "tol": 1e-9})

    worst = 0.0
    for z in (0.0, 0.5, 1.0, 2.0, 3.0):
        got = q_ratio(0.5, z) * bump
        worst = max(worst, abs(got - (1.5 - z * z / 4.0)))
    checks.append({"name": "wright ratio polynomial (alpha=1/2)", "max_err": worst, "tol": 1e-9})

    for c in checks:
        c["passed"] = c["max_err"] <= c["tol"]
    return checks
