"""Command-line interface.

Usage::

    bicoulomb energy --n1 1..3 --n2 1..3 --xi 1,2
    bicoulomb wavefunction --state 2,2,1,1,0,0 --point 1.5,0.7,0.2
    bicoulomb orthocheck --nmax 2 -o report.csv
    bicoulomb surface --n 25 --l 12 --x 0:120:400 --y -40:40:267 -o surface.csv
    bicoulomb verify --only ode-residual --n 25 --l 12

Exit codes are 0 on success, 1 when a verification fails and 2 on bad usage.
``BICOULOMB_OUTPUT_DIR`` sets the directory that relative ``--output`` paths
are written to.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Optional

import click

from .errors import DomainError, GridError, NullConeError
from .hilbert import MATRIX_TOL, QuadratureGrid, expected_orthonormality, orthonormality_matrix
from .params import PhysicalParams
from .spectrum import QuantumNumbers, all_states, degeneracy, energy, sector_energy, wavefunction_eval
from .surfaces import export_surface, surface_grid
from .verification import CHECKS, VerifyConfig, run_checks

OUTPUT_DIR_ENV = "BICOULOMB_OUTPUT_DIR"


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


# -- flag parsing --------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"1..3"`` or ``"1,2,5"`` to a list of integers."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(v) for v in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected an integer, a range a..b or a list a,b,c; got {text!r}")
    if not values:
        raise click.BadParameter(f"empty range {text!r}")
    return values


def parse_pair(text: str, kind=float) -> tuple:
    """``"a,b"`` to an idempotent pair; a single value is used for both sectors."""
    parts = text.split(",")
    try:
        values = tuple(kind(p) for p in parts)
    except ValueError:
        raise click.BadParameter(f"expected a comma pair like 1,2; got {text!r}")
    if len(values) == 1:
        values = values * 2
    if len(values) != 2:
        raise click.BadParameter(f"expected a comma pair like 1,2; got {text!r}")
    return values


def parse_state(text: str) -> QuantumNumbers:
    """Sextuplet ``n1,n2,l1,l2,m1,m2``; omitted trailing entries default to 0."""
    try:
        values = [int(v) for v in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected integers n1,n2[,l1,l2,m1,m2]; got {text!r}")
    if not 2 <= len(values) <= 6:
        raise click.BadParameter(f"expected 2 to 6 integers n1,n2[,l1,l2,m1,m2]; got {text!r}")
    try:
        return QuantumNumbers(*values)
    except DomainError as exc:
        raise click.BadParameter(str(exc))


def parse_axis(text: str) -> tuple[float, float, int]:
    """``lo:hi:count`` for a uniform axis."""
    try:
        lo, hi, count = text.split(":")
        axis = float(lo), float(hi), int(count)
    except ValueError:
        raise click.BadParameter(f"expected lo:hi:count; got {text!r}")
    if axis[2] < 1:
        raise click.BadParameter(f"axis needs at least one node; got {text!r}")
    return axis


def build_params(xi: str, mu: float, z: float, e2: float, hbar: float) -> PhysicalParams:
    xi1, xi2 = parse_pair(xi)
    try:
        return PhysicalParams(mu=mu, Z=z, e2=e2, hbar=hbar, xi1=xi1, xi2=xi2)
    except NullConeError as exc:
        raise click.UsageError(f"xi in null cone: {exc}")
    except DomainError as exc:
        raise click.UsageError(str(exc))


def physical_options(func):
    options = [
        click.option("--xi", default="1,1", show_default=True, help="Commutator scalar as idempotent pair xi1,xi2."),
        click.option("--mu", default=1.0, show_default=True, help="Reduced mass."),
        click.option("--z", "z", default=1.0, show_default=True, help="Nuclear charge Z."),
        click.option("--e2", default=1.0, show_default=True, help="Coupling e^2."),
        click.option("--hbar", default=1.0, show_default=True, help="Reduced Planck constant."),
    ]
    for opt in reversed(options):
        func = opt(func)
    return func


def resolve_output(path: Optional[str]) -> Optional[Path]:
    if path is None or path == "-":
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def emit(data: bytes, path: Optional[str]):
    target = resolve_output(path)
    if target is None:
        click.echo(data.decode(), nl=False)
        return
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(data)


def _csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().encode()


def _table_bytes(header, rows, fmt: str) -> bytes:
    if fmt == "json":
        doc = [dict(zip(header, row)) for row in rows]
        return (json.dumps(doc, indent=2) + "\n").encode()
    return _csv_bytes(header, [[_fmt(v) if isinstance(v, float) else v for v in row] for row in rows])


# -- commands ------------------------------------------------------------------


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Bicomplex Coulomb problem: energies, eigenfunctions and checks."""


@main.command("energy")
@click.option("--n1", default="1..3", show_default=True, help="Principal numbers of sector 1 (range a..b).")
@click.option("--n2", default="1..3", show_default=True, help="Principal numbers of sector 2 (range a..b).")
@physical_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("-o", "--output", default=None, help="Output file (default stdout).")
def cmd_energy(n1, n2, xi, mu, z, e2, hbar, fmt, output):
    """Tabulate hyperbolic eigenvalues and degeneracies."""
    params = build_params(xi, mu, z, e2, hbar)
    rows = []
    for a in parse_range(n1):
        for b in parse_range(n2):
            try:
                e = energy(a, b, params)
                g = degeneracy(a, b)
            except DomainError as exc:
                raise click.UsageError(str(exc))
            rows.append([a, b, e.x, e.y, sector_energy(a, 1, params), sector_energy(b, 2, params), g])
    header = ["n1", "n2", "re", "hy", "e1", "e2", "degeneracy"]
    emit(_table_bytes(header, rows, fmt), output)


@main.command("wavefunction")
@click.option("--state", required=True, help="Sextuplet n1,n2,l1,l2,m1,m2.")
@click.option("--point", "points", multiple=True, required=True, help="Spherical point r,theta,phi (repeatable).")
@physical_options
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("-o", "--output", default=None, help="Output file (default stdout).")
def cmd_wavefunction(state, points, xi, mu, z, e2, hbar, fmt, output):
    """Sample an eigenfunction at spherical points."""
    q = parse_state(state)
    params = build_params(xi, mu, z, e2, hbar)
    rows = []
    for text in points:
        try:
            r, theta, phi = (float(v) for v in text.split(","))
        except ValueError:
            raise click.BadParameter(f"expected r,theta,phi; got {text!r}", param_hint="--point")
        try:
            psi = wavefunction_eval(q, params, r, theta, phi)
        except DomainError as exc:
            raise click.UsageError(str(exc))
        rows.append([r, theta, phi, psi.c1.real, psi.c1.imag, psi.c2.real, psi.c2.imag, str(psi)])
    header = ["r", "theta", "phi", "psi1_re", "psi1_im", "psi2_re", "psi2_im", "psi"]
    emit(_table_bytes(header, rows, fmt), output)


@main.command("orthocheck")
@click.option("--state", "states", multiple=True, help="Sextuplet n1,n2,l1,l2,m1,m2 (repeatable).")
@click.option("--nmax", type=int, default=None, help="Use every state with n1, n2 <= NMAX.")
@physical_options
@click.option("--tol", default=MATRIX_TOL, show_default=True, help="Pass threshold on the max deviation.")
@click.option("--n-r", "n_r", default=400, show_default=True, help="Radial nodes before the tail.")
@click.option("-o", "--output", default=None, help="CSV report path (default stdout).")
def cmd_orthocheck(states, nmax, xi, mu, z, e2, hbar, tol, n_r, output):
    """Check orthonormality of eigenfunctions by quadrature."""
    chosen = [parse_state(s) for s in states]
    if nmax is not None:
        if nmax < 1:
            raise click.UsageError("--nmax must be >= 1")
        chosen.extend(all_states(nmax))
    if not chosen:
        raise click.UsageError("empty state list: give --state or --nmax")
    params = build_params(xi, mu, z, e2, hbar)
    try:
        grid = QuadratureGrid.for_states(chosen, params, n_r=n_r)
    except GridError as exc:
        raise click.UsageError(str(exc))
    got = orthonormality_matrix(chosen, params, grid)
    want = expected_orthonormality(chosen)
    rows = []
    worst = 0.0
    for i, a in enumerate(chosen):
        for k, b in enumerate(chosen):
            g, w = got[i, k], want[i, k]
            dev = max(abs(g.c1 - w.c1), abs(g.c2 - w.c2))
            worst = max(worst, dev)
            rows.append([str(a), str(b), _fmt(g.c1.real), _fmt(g.c1.imag), _fmt(g.c2.real), _fmt(g.c2.imag), _fmt(dev)])
    header = ["bra", "ket", "c1_re", "c1_im", "c2_re", "c2_im", "deviation"]
    emit(_csv_bytes(header, rows), output)
    passed = worst < tol
    click.echo(f"states={len(chosen)} max_deviation={worst:.3e} tol={tol:.1e} {'PASS' if passed else 'FAIL'}", err=True)
    if not passed:
        raise SystemExit(1)


@main.command("surface")
@click.option("--n", "n", default="25", show_default=True, help="Principal number, or pair n1,n2.")
@click.option("--l", "l", default="12", show_default=True, help="Angular number, or pair l1,l2.")
@click.option("--xi", default="1,1", show_default=True, help="xi as idempotent pair (must lie in D+).")
@click.option("--z", "z", default=1.0, show_default=True, help="Nuclear charge Z.")
@click.option("--x", "x_axis", default="0:120:400", show_default=True, help="Real axis lo:hi:count.")
@click.option("--y", "y_axis", default="-40:40:267", show_default=True, help="Hyperbolic axis lo:hi:count.")
@click.option("--path", type=click.Choice(["idempotent", "polynomial"]), default="idempotent", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--no-normalize", is_flag=True, help="Drop the constant normalization prefactor.")
@click.option("-o", "--output", default=None, help="Output file (default stdout).")
def cmd_surface(n, l, xi, z, x_axis, y_axis, path, fmt, no_normalize, output):
    """Export the radial function on the hyperbolic plane."""
    n_pair = parse_pair(n, int)
    l_pair = parse_pair(l, int)
    xi_pair = parse_pair(xi)
    try:
        grid = surface_grid(
            n_pair, l_pair, xi_pair, parse_axis(x_axis), parse_axis(y_axis), path=path, Z=z, normalized=not no_normalize
        )
    except DomainError as exc:
        raise click.UsageError(str(exc))
    emit(export_surface(grid, fmt), output)


@main.command("verify")
@click.option("--only", multiple=True, type=click.Choice(list(CHECKS)), help="Run only the named check (repeatable).")
@click.option("--n", "n", type=int, default=None, help="Principal number for ode-residual.")
@click.option("--l", "l", type=int, default=None, help="Angular number for ode-residual.")
@click.option("--seed", default=0, show_default=True, help="Seed for randomized checks.")
@click.option("--samples", default=10_000, show_default=True, help="Random samples for property checks.")
def cmd_verify(only, n, l, seed, samples):
    """Run the numerical verification suite; prints one JSON line per check."""
    if n is not None and not 0 <= (l or 0) < n:
        raise click.UsageError(f"need 0 <= l < n, got n={n}, l={l}")
    results = run_checks(only or None, VerifyConfig(seed=seed, samples=samples, n=n, l=l))
    for res in results:
        doc = res.as_dict()
        doc.pop("seconds")  # keep output byte-identical across runs
        click.echo(json.dumps(doc, sort_keys=True))
    if not all(r.passed for r in results):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
