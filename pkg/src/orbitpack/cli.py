"""Command-line entry point.

One analysis per invocation. Negative mathematical verdicts (an
incompatibility witness, a collapsed symmetry class) are successful runs and
exit 0; only input, IO, and invariant errors exit nonzero. Reports are JSON;
tabular data goes to CSV with a rendered figure alongside unless --no-plots
is given.
"""

from __future__ import annotations

import csv
import json
import pathlib

import click

from . import coincidence as coin
from . import hyperbolic, packing, plots, spd
from .isometry import GroupSpec, Isometry, TwistSpec, group_from_json, verify_twist
from .pde import (BlockRadial4, Cylinder3, ProblemSpec, SYM_ANTISWAP, SYM_NONE,
                  counterexample_sequence, nehari_ground_state, radial_baseline)
from .reports import make_report, write_report


def _floats(text: str) -> list:
    try:
        return [float(tok) for tok in text.replace(";", ",").split(",") if tok.strip()]
    except ValueError as exc:
        raise click.ClickException(f"could not parse number list {text!r}: {exc}")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read JSON from {path}: {exc}")


def _load_group(path: str) -> GroupSpec:
    try:
        return group_from_json(_load_json(path))
    except (KeyError, ValueError) as exc:
        raise click.ClickException(f"malformed group spec {path}: {exc}")


def _sibling(out: str, suffix: str) -> pathlib.Path:
    p = pathlib.Path(out)
    return p.with_name(p.stem + suffix)


def _write_csv(path, header, rows) -> None:
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc}")


def _emit(doc: dict, path) -> None:
    try:
        write_report(doc, path)
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc}")


@click.group()
def main():
    """Packing-compatibility probes, twisted-symmetry tests, and ground states."""


# --------------------------------------------------------------------------
# compat


@main.group()
def compat():
    """Packing growth and twisted-triviality analyses for group specs."""


@compat.command("probe")
@click.option("--group", "group_path", required=True, type=click.Path(exists=True),
              help="Path to a group spec JSON file.")
@click.option("--radius", default=1.0, show_default=True, help="Packing ball radius.")
@click.option("--direction", required=True, help="Comma-separated ray direction.")
@click.option("--norms", default="10,20,40", show_default=True,
              help="Comma-separated increasing base point norms.")
@click.option("--samples", default=4000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--growth-factor", default=2.0, show_default=True,
              help="Required last/first count ratio for compatible evidence.")
@click.option("--flat-cap", default=2, show_default=True,
              help="Counts at or below this, flat along the ray, witness incompatibility.")
@click.option("--out", default="report.json", show_default=True)
@click.option("--curve-csv", default=None, help="Growth curve CSV path (default: <out>_growth.csv).")
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def compat_probe(group_path, radius, direction, norms, samples, seed, growth_factor,
                 flat_cap, out, curve_csv, no_timestamp, no_plots):
    """Estimate packing growth along a ray and report a compatibility verdict."""
    spec = _load_group(group_path)
    direction_vec = _floats(direction)
    norm_list = _floats(norms)
    if radius <= 0:
        raise click.ClickException("--radius must be positive")
    if samples < 1:
        raise click.ClickException("--samples must be >= 1")
    if len(direction_vec) != spec.dimension:
        raise click.ClickException(
            f"direction has {len(direction_vec)} entries, group acts on R^{spec.dimension}")
    try:
        report = packing.compatibility_probe(spec, direction_vec, radius, norm_list,
                                             samples, seed, growth_factor, flat_cap)
    except ValueError as exc:
        raise click.ClickException(str(exc))

    config = {"group": group_path, "radius": radius, "direction": direction_vec,
              "norms": norm_list, "samples": samples, "seed": seed,
              "growth_factor": growth_factor, "flat_cap": flat_cap}
    doc = make_report("compat_probe", "compat probe", config, report.to_json(),
                      timestamp=not no_timestamp)
    _emit(doc, out)

    curve_path = curve_csv or _sibling(out, "_growth.csv")
    _write_csv(curve_path, ["norm", "m_hat"],
               [[a, b] for a, b in report.growth_curve])
    if not no_plots:
        plots.growth_curve(report.growth_curve, report.verdict, _sibling(out, "_growth.png"))
    click.echo(f"verdict: {report.verdict} (m_hat along ray: "
               f"{[b for _, b in report.growth_curve]})")


@compat.command("triviality")
@click.option("--group", "group_path", required=True, type=click.Path(exists=True))
@click.option("--tau", "tau_path", default=None, type=click.Path(exists=True),
              help="Involution JSON {matrix, translation}; defaults to the spec's twist.")
@click.option("--points", default=8, show_default=True, help="Number of random test points.")
@click.option("--point", "explicit_points", multiple=True,
              help="Explicit test point (comma-separated), repeatable.")
@click.option("--samples", default=5000, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--gap-threshold", default=coin.GAP_THRESHOLD, show_default=True)
@click.option("--coincidence-tol", default=coin.COINCIDENCE_TOL, show_default=True)
@click.option("--out", default="report.json", show_default=True)
@click.option("--csv", "csv_path", default=None)
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def compat_triviality(group_path, tau_path, points, explicit_points, samples, seed,
                      gap_threshold, coincidence_tol, out, csv_path, no_timestamp,
                      no_plots):
    """Test whether the sign-twisted invariant class is trivial."""
    spec = _load_group(group_path)
    if tau_path is not None:
        tau = Isometry.from_json(_load_json(tau_path))
    elif spec.twist is not None:
        tau = spec.twist.tau
    else:
        raise click.ClickException("no twist: pass --tau or use a twisted group spec")
    pts = [_floats(p) for p in explicit_points]
    try:
        report = coin.orbit_coincidence(spec, tau, test_points=points, samples=samples,
                                        seed=seed, points=pts or None,
                                        gap_threshold=gap_threshold,
                                        coincidence_tol=coincidence_tol)
    except coin.TwistVerificationError as exc:
        raise click.ClickException(str(exc))

    checks = verify_twist(GroupSpec(spec.dimension, spec.family, TwistSpec(tau)), seed=seed)
    payload = report.to_json()
    payload["twist_checks"] = checks
    config = {"group": group_path, "tau": tau_path, "points": points,
              "explicit_points": pts, "samples": samples, "seed": seed,
              "gap_threshold": gap_threshold, "coincidence_tol": coincidence_tol}
    doc = make_report("compat_triviality", "compat triviality", config, payload,
                      timestamp=not no_timestamp)
    _emit(doc, out)

    rows = [[i, float(g), e] for i, (g, e) in
            enumerate(zip(report.gaps, report.per_point_exact))]
    _write_csv(csv_path or _sibling(out, "_gaps.csv"),
               ["point_index", "orbit_gap", "exact_coincident"], rows)
    if not no_plots:
        plots.triviality_gaps(report.gaps, gap_threshold, coincidence_tol,
                              _sibling(out, "_gaps.png"))
    click.echo(f"verdict: {report.verdict}")


# --------------------------------------------------------------------------
# curved


@main.group()
def curved():
    """Hyperboloid and determinant-one SPD analyses."""


@curved.command("rauch-sweep")
@click.option("--n", default=2, show_default=True, help="Hyperbolic dimension.")
@click.option("--pairs", default=10000, show_default=True)
@click.option("--max-norm", default=5.0, show_default=True)
@click.option("--tolerance", default=1e-9, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="report.json", show_default=True)
@click.option("--csv", "csv_path", default=None)
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def rauch_sweep_cmd(n, pairs, max_norm, tolerance, seed, out, csv_path,
                    no_timestamp, no_plots):
    """Sweep the distance-expansion inequality of the exponential map."""
    if n < 2:
        raise click.ClickException("--n must be >= 2")
    result = hyperbolic.rauch_sweep(n, pairs, seed, max_norm, tolerance)
    lhs, rhs = result.pop("lhs"), result.pop("rhs")
    config = {"n": n, "pairs": pairs, "max_norm": max_norm, "tolerance": tolerance,
              "seed": seed}
    doc = make_report("rauch_sweep", "curved rauch-sweep", config, result,
                      timestamp=not no_timestamp)
    _emit(doc, out)
    _write_csv(csv_path or _sibling(out, "_pairs.csv"),
               ["tangent_separation", "image_distance"],
               [[float(a), float(b)] for a, b in zip(lhs, rhs)])
    if not no_plots:
        plots.rauch_scatter(lhs, rhs, n, _sibling(out, "_pairs.png"))
    click.echo(f"holds: {result['holds']} (violations: {result['violations']})")


@curved.command("boost-demo")
@click.option("--step", default=1.0, show_default=True, help="Boost parameter.")
@click.option("--count", default=50, show_default=True)
@click.option("--n", default=2, show_default=True, help="Hyperbolic dimension.")
@click.option("--radius", default=None, type=float, help="Packing radius (default step/4).")
@click.option("--out", default="report.json", show_default=True)
@click.option("--csv", "csv_path", default=None)
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def boost_demo(step, count, n, radius, out, csv_path, no_timestamp, no_plots):
    """Pack the orbit of a point under a discrete group of boosts."""
    if step <= 0:
        raise click.ClickException("--step must be positive")
    if count < 1:
        raise click.ClickException("--count must be >= 1")
    report = packing.boost_demo(step, count, n=n, radius=radius)
    dists = report.notes["distances_from_base"]
    payload = {"step": step, "count": count, "n": n, "radius": report.radius,
               "m_hat": report.m_hat,
               "max_distance_error": report.notes["max_distance_error"],
               "separation_verified": report.notes["separation_verified"]}
    config = {"step": step, "count": count, "n": n, "radius": report.radius}
    doc = make_report("boost_demo", "curved boost-demo", config, payload,
                      timestamp=not no_timestamp)
    _emit(doc, out)
    _write_csv(csv_path or _sibling(out, "_orbit.csv"),
               ["orbit_index", "distance_from_base"],
               [[i, float(d)] for i, d in enumerate(dists)])
    if not no_plots:
        plots.boost_distances(step, count, dists, _sibling(out, "_orbit.png"))
    click.echo(f"m_hat = {report.m_hat} of {count} orbit points")


@curved.group("spd")
def curved_spd():
    """Analyses on the determinant-one SPD model."""


@curved_spd.command("fixed-dim")
@click.option("--n", default=2, show_default=True, help="Complex size of the unitary group.")
@click.option("--samples", default=24, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--drop-trace", is_flag=True, help="Drop the trace-zero constraint.")
@click.option("--out", default="report.json", show_default=True)
@click.option("--csv", "csv_path", default=None)
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def spd_fixed_dim(n, samples, seed, drop_trace, out, csv_path, no_timestamp, no_plots):
    """Dimension of symmetric (traceless) matrices fixed by the unitary subgroup."""
    if n < 1:
        raise click.ClickException("--n must be >= 1")
    result = spd.commutant_fixed_dim(n, samples=samples, seed=seed,
                                     traceless=not drop_trace)
    svals = result.pop("singular_values")
    result.pop("basis")
    result["singular_values"] = [float(s) for s in svals]
    config = {"n": n, "samples": samples, "seed": seed, "drop_trace": drop_trace}
    doc = make_report("spd_fixed_dim", "curved spd fixed-dim", config, result,
                      timestamp=not no_timestamp)
    _emit(doc, out)
    _write_csv(csv_path or _sibling(out, "_svals.csv"), ["index", "singular_value"],
               [[i, float(s)] for i, s in enumerate(sorted(svals))])
    if not no_plots:
        plots.singular_values(svals, spd.NULLSPACE_CUTOFF, _sibling(out, "_svals.png"))
    click.echo(f"fixed dimension: {result['dimension']}")


@curved_spd.command("twist-check")
@click.option("--n", default=2, show_default=True)
@click.option("--samples", default=50, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", default="report.json", show_default=True)
@click.option("--no-timestamp", is_flag=True)
def spd_twist_check(n, samples, seed, out, no_timestamp):
    """Check the block-sign involution against the embedded unitary subgroup."""
    if n < 1:
        raise click.ClickException("--n must be >= 1")
    result = spd.su_twist_check(n, samples=samples, seed=seed)
    config = {"n": n, "samples": samples, "seed": seed}
    doc = make_report("spd_twist_check", "curved spd twist-check", config, result,
                      timestamp=not no_timestamp)
    _emit(doc, out)
    click.echo(f"all passed: {result['all_passed']}")


# --------------------------------------------------------------------------
# solve


SOLVE_DEFAULTS = {
    "reduction": "block_radial_4",
    "symmetry_class": SYM_ANTISWAP,
    "b0": 1.0,
    "q": None,            # 2.5 on the two-axis radial grid, 3.0 on the cylinder
    "radius": 12.0,
    "grid_size": 96,
    "period": 1.0,
    "tol": 1e-6,
    "max_iter": 200000,
    "seed": 0,
    "baseline": True,
}


def _solve_config(config_path, overrides) -> dict:
    config = dict(SOLVE_DEFAULTS)
    if config_path:
        user = _load_json(config_path)
        unknown = set(user) - set(config)
        if unknown:
            raise click.ClickException(f"unknown solve config keys: {sorted(unknown)}")
        config.update(user)
    config.update({k: v for k, v in overrides.items() if v is not None})
    if config["q"] is None:
        config["q"] = 3.0 if config["reduction"] == "cylinder_3" else 2.5
    return config


def _write_field(path, domain, values) -> None:
    coords = domain.coordinates()
    if values.ndim == 1:
        rows = [[float(r), float(v)] for r, v in zip(coords[0], values)]
        _write_csv(path, ["r", "value"], rows)
    else:
        a, b = coords
        rows = [[float(a[i, j]), float(b[i, j]), float(values[i, j])]
                for i in range(values.shape[0]) for j in range(values.shape[1])]
        _write_csv(path, ["coord1", "coord2", "value"], rows)


@main.group("solve")
def solve_group():
    """Variational ground states on symmetry-reduced grids."""


@solve_group.command("scalar-field")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True),
              help="JSON config; omitted keys take the documented defaults.")
@click.option("--seed", default=None, type=int)
@click.option("--grid-size", default=None, type=int)
@click.option("--tol", default=None, type=float)
@click.option("--out", default="report.json", show_default=True)
@click.option("--field", "field_path", default=None,
              help="Solution field CSV (default: <out>_field.csv).")
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def solve_scalar_field(config_path, seed, grid_size, tol, out, field_path,
                       no_timestamp, no_plots):
    """Ground state in the configured symmetry class, with a radial baseline."""
    config = _solve_config(config_path, {"seed": seed, "grid_size": grid_size, "tol": tol})
    try:
        p = ProblemSpec(b0=config["b0"], q=config["q"])
        if config["reduction"] == "block_radial_4":
            domain = BlockRadial4(grid_size=config["grid_size"], radius=config["radius"])
        elif config["reduction"] == "cylinder_3":
            domain = Cylinder3(grid_size=config["grid_size"], radius=config["radius"],
                               period=config["period"])
        else:
            raise click.ClickException(f"unknown reduction {config['reduction']!r}")
        report = nehari_ground_state(domain, config["symmetry_class"], p,
                                     tol=config["tol"], max_iter=config["max_iter"],
                                     seed=config["seed"])
        if config["baseline"]:
            baseline = radial_baseline(p, n=domain.ambient_n, radius=config["radius"],
                                       grid_size=config["grid_size"], tol=config["tol"],
                                       max_iter=config["max_iter"], seed=config["seed"])
            report.comparison_energy = baseline.energy
            report.notes["baseline_outcome"] = baseline.outcome
    except ValueError as exc:
        raise click.ClickException(str(exc))

    doc = make_report("solve", "solve scalar-field", config, report.to_json(),
                      timestamp=not no_timestamp)
    _emit(doc, out)
    fpath = field_path or _sibling(out, "_field.csv")
    _write_field(fpath, domain, report.solution.values)
    if not no_plots:
        plots.field_heatmap(domain, report.solution.values, _sibling(out, "_field.png"))
    click.echo(f"outcome: {report.outcome}, energy: {report.energy:.6f}, "
               f"residual: {report.residual:.2e}")


@solve_group.command("radial")
@click.option("--config", "config_path", default=None, type=click.Path(exists=True))
@click.option("--n", "ambient_n", default=4, show_default=True)
@click.option("--seed", default=None, type=int)
@click.option("--grid-size", default=None, type=int)
@click.option("--tol", default=None, type=float)
@click.option("--out", default="report.json", show_default=True)
@click.option("--field", "field_path", default=None)
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def solve_radial(config_path, ambient_n, seed, grid_size, tol, out, field_path,
                 no_timestamp, no_plots):
    """Radial ground state, the baseline every nonradial class is compared to."""
    config = _solve_config(config_path, {"seed": seed, "grid_size": grid_size, "tol": tol})
    config["reduction"] = "radial"
    config["symmetry_class"] = SYM_NONE
    config["ambient_n"] = ambient_n
    if config["q"] is None:
        config["q"] = 2.5
    try:
        p = ProblemSpec(b0=config["b0"], q=config["q"])
        report = radial_baseline(p, n=ambient_n, radius=config["radius"],
                                 grid_size=config["grid_size"], tol=config["tol"],
                                 max_iter=config["max_iter"], seed=config["seed"])
    except ValueError as exc:
        raise click.ClickException(str(exc))
    doc = make_report("solve", "solve radial", config, report.to_json(),
                      timestamp=not no_timestamp)
    _emit(doc, out)
    domain = report.solution.domain
    _write_field(field_path or _sibling(out, "_field.csv"), domain, report.solution.values)
    if not no_plots:
        plots.field_heatmap(domain, report.solution.values, _sibling(out, "_field.png"))
    click.echo(f"outcome: {report.outcome}, energy: {report.energy:.6f}")


# --------------------------------------------------------------------------
# counterexample


@main.command("counterexample")
@click.option("--p", "p_exponent", default=4.0, show_default=True,
              help="Lebesgue exponent, strictly between 2 and 6.")
@click.option("--shifts", default="1,2,3,4,5,6,7,8", show_default=True)
@click.option("--spacing", default=1.0 / 128.0, show_default=True)
@click.option("--z-max", default=None, type=float)
@click.option("--out", default="report.json", show_default=True)
@click.option("--csv", "csv_path", default=None)
@click.option("--no-timestamp", is_flag=True)
@click.option("--no-plots", is_flag=True)
def counterexample_cmd(p_exponent, shifts, spacing, z_max, out, csv_path,
                       no_timestamp, no_plots):
    """Masses and pairings of the translated-bump family escaping to infinity."""
    shift_list = [int(s) for s in _floats(shifts)]
    try:
        result = counterexample_sequence(p_exponent, shift_list, spacing=spacing,
                                         z_max=z_max)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    config = {"p": p_exponent, "shifts": shift_list, "spacing": spacing,
              "z_max": result["grid"]["z_max"]}
    doc = make_report("counterexample", "counterexample", config, result,
                      timestamp=not no_timestamp)
    _emit(doc, out)
    _write_csv(csv_path or _sibling(out, "_masses.csv"),
               ["shift", "mass", "pairing"],
               [[s, m, q] for s, m, q in
                zip(result["shifts"], result["masses"], result["pairings"])])
    if not no_plots:
        plots.shifted_masses(result["shifts"], result["masses"], result["pairings"],
                             _sibling(out, "_masses.png"))
    click.echo(f"mass spread: {result['mass_spread']:.3e}")


if __name__ == "__main__":
    main()
