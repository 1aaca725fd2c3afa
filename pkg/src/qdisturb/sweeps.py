"""Werner and Bloch-qubit reproduction sweeps, numeric versus closed form."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import conditional, shannon, von_neumann, xlog2x
from .measure import pi2_basis, qubit_basis
from .qstate import bloch_qubit, werner
from .relations import disturbance, uncertainty

MATCH_TOL = 1e-9
ORDER_TOL = 1e-9


def _xl(x: float) -> float:
    return float(xlog2x(x))


# closed forms for the Werner family measured with any pair of qubit bases


def werner_cond(eta: float) -> float:
    return -3 * _xl((1 - eta) / 4) - _xl((1 + 3 * eta) / 4) - 1.0


def werner_mm(eta: float) -> float:
    return 2.0 - _xl(1 + eta) - _xl(1 - eta)


def werner_md(eta: float) -> float:
    return 1.0 + _xl(1 + 3 * eta) / 4 - _xl(1 - eta) / 4 - _xl(1 + eta)


def werner_dd(eta: float) -> float:
    return _xl(1 + 3 * eta) / 2 + _xl(1 - eta) / 2 - _xl(1 + eta)


def bisect(f, lo: float, hi: float, ftol: float = 1e-10, max_iter: int = 200) -> float:
    """Root of a sign-changing ``f`` on ``[lo, hi]``, stopping once ``|f| <= ftol``
    and the bracket has shrunk to float resolution."""
    flo = f(lo)
    if flo * f(hi) > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    mid = 0.5 * (lo + hi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0 or (abs(fm) <= ftol and hi - lo < 1e-14):
            break
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return mid


def werner_crossing() -> float:
    """Werner parameter where ``H(A|B)`` changes sign."""
    return bisect(werner_cond, 0.0, 1.0)


# closed forms for the (0, 0, r3) qubit, bases qubit_basis(theta, 0) and pi2_basis


def _bloch_terms(r3: float, theta: float):
    hx = shannon([(1 + r3 * math.cos(theta)) / 2, (1 - r3 * math.cos(theta)) / 2])
    hy = -_xl((2 + r3) / 4) - _xl((2 - r3) / 4)
    hrho = -_xl((1 + r3) / 2) - _xl((1 - r3) / 2)
    return hx, hy, hrho


def bloch_mm(r3: float, theta: float) -> float:
    hx, hy, _ = _bloch_terms(r3, theta)
    return hx + hy


def bloch_md(r3: float, theta: float) -> float:
    hx, hy, hrho = _bloch_terms(r3, theta)
    return hx + hy - hrho


def bloch_dd(r3: float, theta: float) -> float:
    hx, hy, hrho = _bloch_terms(r3, theta)
    return hx + hy - 2 * hrho


@dataclass
class SweepRow:
    params: dict
    mm: float
    md: float
    dd: float
    cond: float
    residual: float

    def values(self) -> list[float]:
        return [*self.params.values(), self.mm, self.md, self.dd, self.cond, self.residual]


@dataclass
class SweepResult:
    header: list[str]
    rows: list[SweepRow]
    footer: dict
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        lines += [",".join(f"{v:.12e}" for v in row.values()) for row in self.rows]
        for k, v in self.footer.items():
            lines.append(f"# {k}={v:.12e}" if isinstance(v, float) else f"# {k}={v}")
        for msg in self.failures:
            lines.append(f"# FAIL {msg}")
        return "\n".join(lines) + "\n"


def _two_measurement_values(rho, m1, m2):
    u1, u2 = uncertainty(rho, m1), uncertainty(rho, m2)
    d1, d2 = disturbance(rho, m1), disturbance(rho, m2)
    return u1 + u2, d1 + u2, d1 + d2


def werner_sweep(eta_steps: int = 101) -> SweepResult:
    if eta_steps < 2:
        raise ValueError("eta_steps must be at least 2")
    m1, m2 = qubit_basis(math.pi / 2, 0.0), pi2_basis()
    eta_star = werner_crossing()
    rows, failures = [], []
    for eta in np.linspace(0.0, 1.0, eta_steps):
        eta = float(eta)
        rho = werner(eta)
        mm, md, dd = _two_measurement_values(rho, m1, m2)
        cond = conditional(rho)
        analytic = (werner_mm(eta), werner_md(eta), werner_dd(eta), werner_cond(eta))
        resid = max(abs(a - b) for a, b in zip((mm, md, dd, cond), analytic))
        rows.append(SweepRow({"eta": eta}, mm, md, dd, cond, resid))
        if resid > MATCH_TOL:
            failures.append(f"eta={eta:.6f} numeric/analytic residual {resid:.3e}")
        if eta < eta_star and not (mm >= md - ORDER_TOL and md >= dd - ORDER_TOL):
            failures.append(f"eta={eta:.6f} expected mm >= md >= dd below the crossing")
        if eta > eta_star and not (mm <= md + ORDER_TOL and md <= dd + ORDER_TOL):
            failures.append(f"eta={eta:.6f} expected mm <= md <= dd above the crossing")
    numeric_star = bisect(lambda e: conditional(werner(e)), 0.0, 1.0, ftol=1e-9)
    at_star = werner(eta_star)
    spread = np.ptp(_two_measurement_values(at_star, m1, m2))
    footer = {
        "eta_crossing": eta_star,
        "eta_crossing_numeric": numeric_star,
        "spread_at_crossing": float(spread),
        "max_residual": max(r.residual for r in rows),
    }
    return SweepResult(["eta", "mm", "md", "dd", "cond", "residual"], rows, footer, failures)


def bloch_sweep(r3_steps: int = 51, theta_steps: int = 51) -> SweepResult:
    if r3_steps < 2 or theta_steps < 2:
        raise ValueError("grid sizes must be at least 2")
    m2 = pi2_basis()
    rows, failures = [], []
    for r3 in np.linspace(0.0, 1.0, r3_steps):
        r3 = float(r3)
        rho = bloch_qubit(r3)
        h = von_neumann(rho)
        for theta in np.linspace(0.0, math.pi, theta_steps):
            theta = float(theta)
            mm, md, dd = _two_measurement_values(rho, qubit_basis(theta, 0.0), m2)
            analytic = (bloch_mm(r3, theta), bloch_md(r3, theta), bloch_dd(r3, theta), _bloch_terms(r3, theta)[2])
            resid = max(abs(a - b) for a, b in zip((mm, md, dd, h), analytic))
            rows.append(SweepRow({"r3": r3, "theta": theta}, mm, md, dd, h, resid))
            where = f"r3={r3:.6f} theta={theta:.6f}"
            if resid > MATCH_TOL:
                failures.append(f"{where} numeric/analytic residual {resid:.3e}")
            if not (mm >= md - ORDER_TOL and md >= dd - ORDER_TOL):
                failures.append(f"{where} expected mm >= md >= dd")
            if r3 == 1.0 and max(mm, md, dd) - min(mm, md, dd) > MATCH_TOL:
                failures.append(f"{where} pure state but mm, md, dd differ")
    pure_rows = [r for r in rows if r.params["r3"] == 1.0]
    footer = {
        "max_residual": max(r.residual for r in rows),
        "max_spread_pure": max(max(r.mm, r.md, r.dd) - min(r.mm, r.md, r.dd) for r in pure_rows),
    }
    return SweepResult(["r3", "theta", "mm", "md", "dd", "cond", "residual"], rows, footer, failures)
