"""Command-line front end.

Subcommands cover the full pipeline: ``estimate`` runs ML, simple-probability
and Bayesian inference on user counts; ``tables`` and ``figures`` emit the
reference CSV datasets; ``marginalize`` runs the two-parameter
marginalization comparisons; ``simulate`` and ``coverage`` drive the seeded
Monte Carlo experiments; ``jj-divergence`` tabulates the truncated-evidence
diagnostic.

Output discipline: every CSV/JSON payload starts with a metadata block
(tool version, subcommand, tolerance config, and the seed plus PRNG identity
for stochastic runs) and contains no timestamps, so identical requests
produce byte-identical output. Floats are serialized with ``repr`` (shortest
round trip); table-reproduction cells are additionally rounded
half-away-from-zero to 1 decimal, the precision of the reference tables.

Exit codes: 0 success, 2 input error, 3 improper posterior (when no
requested prior survives), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .bayes import (
    GammaPosterior,
    PriorKind,
    PriorSpec,
    jj_divergence_demo,
    jj_truncated_evidence,
    posterior_from_sufficient,
    prior_density,
    prior_params,
    upper_limit,
)
from .classical import (
    CountData,
    ml_estimates,
    simple_probability_estimates,
    simple_probability_upper_limit,
)
from .decision import compare_priors
from .distributions import (
    GammaDist,
    NBParams,
    PoissonParams,
    ZPoissonParams,
    gamma_pdf,
    nb_pmf,
    poisson_pmf,
    prob_all_zero,
    zpoisson_pmf,
)
from .errors import (
    ConvergenceError,
    DomainError,
    ImproperPosteriorError,
    QuadratureError,
)
from .marginal import make_theta_grid, nb_marginal_numeric, zpoisson_marginal
from .montecarlo import SimConfig, coverage_experiment, prng_metadata, simulate
from .numerics import DEFAULT_TOL, EULER_GAMMA, ToleranceConfig

__all__ = ["main", "build_parser", "round_half_away"]

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IMPROPER = 3
EXIT_NUMERIC = 4

_STANDARD_PRIORS = ("bl", "jj", "jr", "me")


def round_half_away(x: float, decimals: int = 1) -> float:
    """Round with ties away from zero (0.05 -> 0.1), the table convention."""
    scale = 10.0**decimals
    return math.copysign(math.floor(abs(x) * scale + 0.5) / scale, x)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def parse_tolerance(text: str | None) -> ToleranceConfig:
    """Parse ``--tol key=value,...`` overrides onto the default config."""
    if not text:
        return DEFAULT_TOL
    overrides = {}
    for item in text.split(","):
        key, sep, raw = item.partition("=")
        key = key.strip()
        if not sep or key not in ("abs_tol", "rel_tol", "max_iter", "quad_rel_tol"):
            raise DomainError(f"unknown tolerance override {item!r}")
        overrides[key] = int(raw) if key == "max_iter" else float(raw)
    return replace(DEFAULT_TOL, **overrides)


def parse_counts_arg(text: str) -> list[int]:
    pieces = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    if not pieces:
        raise DomainError("no counts given")
    counts = []
    for piece in pieces:
        try:
            counts.append(int(piece))
        except ValueError:
            raise DomainError(f"count {piece!r} is not an integer") from None
    return counts


def read_counts_file(path: str) -> list[int]:
    counts = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            counts.append(int(body))
        except ValueError:
            raise DomainError(f"{path}:{lineno}: {body!r} is not an integer") from None
    if not counts:
        raise DomainError(f"{path}: no counts found")
    return counts


def parse_prior(text: str, t: float) -> PriorSpec:
    name = text.strip().lower()
    if name in _STANDARD_PRIORS:
        kind = PriorKind(name.upper())
        return prior_params(kind, t=t) if kind is PriorKind.ME else prior_params(kind)
    if name.startswith("custom:"):
        parts = name[len("custom:"):].split(",")
        if len(parts) != 2:
            raise DomainError(f"custom prior must be custom:a,b, got {text!r}")
        try:
            a, b = float(parts[0]), float(parts[1])
        except ValueError:
            raise DomainError(f"bad custom prior parameters in {text!r}") from None
        return PriorSpec(kind=PriorKind.CUSTOM, a=a, b=b)
    raise DomainError(f"unknown prior {text!r} (expected bl, jj, jr, me, or custom:a,b)")


def _tol_text(tol: ToleranceConfig) -> str:
    return (
        f"abs_tol={tol.abs_tol!r} rel_tol={tol.rel_tol!r} "
        f"max_iter={tol.max_iter} quad_rel_tol={tol.quad_rel_tol!r}"
    )


def _meta_lines(subcommand: str, tol: ToleranceConfig, seed: int | None = None) -> list[str]:
    lines = [
        f"# zerocount {__version__}",
        f"# subcommand: {subcommand}",
        f"# tolerance: {_tol_text(tol)}",
    ]
    if seed is not None:
        meta = prng_metadata()
        lines.append(f"# seed: {seed}")
        lines.append(f"# prng: {meta['prng_algorithm']} ({meta['prng_library']})")
    return lines


def _meta_json(subcommand: str, tol: ToleranceConfig, seed: int | None = None) -> dict:
    meta = {
        "tool": "zerocount",
        "version": __version__,
        "subcommand": subcommand,
        "tolerance": {
            "abs_tol": tol.abs_tol,
            "rel_tol": tol.rel_tol,
            "max_iter": tol.max_iter,
            "quad_rel_tol": tol.quad_rel_tol,
        },
    }
    if seed is not None:
        meta["seed"] = seed
        meta.update(prng_metadata())
    return meta


def _csv_text(meta: list[str], header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    for line in meta:
        buf.write(line + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(cell) for cell in row])
    return buf.getvalue()


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_file(out_dir: str, name: str, text: str) -> None:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / name
    path.write_text(text)
    print(f"wrote {path}")


# ---------------------------------------------------------------- estimate


def cmd_estimate(args) -> int:
    if args.counts is not None:
        counts = parse_counts_arg(args.counts)
    else:
        counts = read_counts_file(args.counts_file)
    tol = parse_tolerance(args.tol)
    data = CountData(counts, t=args.t)
    ml = ml_estimates(data)
    cls = args.cl or [0.95]
    for cl in cls:
        if not (0.0 < cl < 1.0):
            raise DomainError(f"--cl must lie in (0, 1), got {cl!r}")
    prior_names = args.prior or list(_STANDARD_PRIORS)
    priors = [parse_prior(name, args.t) for name in prior_names]

    simple = None
    if data.total == 0:
        mean_t, var_t, mean_r, var_r = simple_probability_estimates(data.n, data.t)
        alphas = [args.alpha] if args.alpha is not None else [1.0 - cl for cl in cls]
        simple = {
            "mean_theta": mean_t,
            "var_theta": var_t,
            "mean_rho": mean_r,
            "var_rho": var_r,
            "upper_limits": [
                dict(
                    zip(
                        ("alpha", "u_theta", "u_rho"),
                        (alpha, *simple_probability_upper_limit(data.n, data.t, alpha)),
                    )
                )
                for alpha in alphas
            ],
        }

    entries = []
    n_improper = 0
    for spec in priors:
        label = spec.kind.value.upper() if spec.kind is not PriorKind.CUSTOM else (
            f"custom(a={spec.a!r}, b={spec.b!r})"
        )
        try:
            post = posterior_from_sufficient(data.total, data.n, data.t, spec)
        except ImproperPosteriorError as exc:
            n_improper += 1
            entries.append({"prior": label, "spec": spec, "improper": True, "message": str(exc)})
            continue
        limits = [upper_limit(post, cl, tol=tol) for cl in cls]
        entries.append(
            {
                "prior": label,
                "spec": spec,
                "improper": False,
                "posterior": post,
                "limits": limits,
            }
        )

    if args.format == "json":
        _emit_json(_estimate_json(args, data, ml, simple, entries, tol))
    elif args.format == "csv":
        sys.stdout.write(_estimate_csv(data, ml, simple, entries, tol))
    else:
        _print_estimate(data, ml, simple, entries)
    return EXIT_IMPROPER if entries and n_improper == len(entries) else EXIT_OK


def _estimate_json(args, data, ml, simple, entries, tol) -> dict:
    payload = {
        "metadata": _meta_json("estimate", tol),
        "counts": {"n": data.n, "total": data.total, "t": data.t},
        "ml": {
            "theta_hat": ml.theta_hat,
            "rho_hat": ml.rho_hat,
            "var_counts": ml.var_counts,
            "var_mean": ml.var_mean,
            "var_rate": ml.var_rate,
            "pathological": ml.pathological,
        },
        "simple_probability": simple,
        "priors": [],
    }
    for entry in entries:
        spec = entry["spec"]
        row = {"prior": entry["prior"], "a": spec.a, "b": spec.b, "improper": entry["improper"]}
        if entry["improper"]:
            row["message"] = entry["message"]
        else:
            post: GammaPosterior = entry["posterior"]
            row["posterior"] = {"shape": post.A, "rate": post.B}
            row["mean_rho"] = post.mean
            row["var_rho"] = post.variance
            row["mean_theta"] = post.mean * data.t
            row["var_theta"] = post.variance * data.t**2
            row["upper_limits"] = [
                {
                    "cl": lim.CL,
                    "u_rho": lim.U_rho,
                    "u_theta": lim.U_theta,
                    "residual": lim.solver_residual,
                }
                for lim in entry["limits"]
            ]
        payload["priors"].append(row)
    return payload


def _estimate_csv(data, ml, simple, entries, tol) -> str:
    meta = _meta_lines("estimate", tol)
    meta.append(f"# counts: n={data.n} total={data.total} t={data.t!r}")
    meta.append(
        "# ml: theta_hat={!r} rho_hat={!r} var_counts={!r} var_mean={!r} var_rate={!r} "
        "pathological={}".format(
            ml.theta_hat, ml.rho_hat, ml.var_counts, ml.var_mean, ml.var_rate, ml.pathological
        )
    )
    if simple is not None:
        meta.append(
            "# simple_probability: mean_theta={mean_theta!r} var_theta={var_theta!r} "
            "mean_rho={mean_rho!r} var_rho={var_rho!r}".format(**simple)
        )
        for lim in simple["upper_limits"]:
            meta.append(
                "# simple_upper_limit: alpha={alpha!r} u_theta={u_theta!r} u_rho={u_rho!r}".format(
                    **lim
                )
            )
    header = [
        "prior", "a", "b", "post_shape", "post_rate", "mean_rho", "var_rho",
        "mean_theta", "var_theta", "cl", "u_rho", "u_theta", "residual", "status",
    ]
    rows = []
    for entry in entries:
        spec = entry["spec"]
        if entry["improper"]:
            rows.append([entry["prior"], spec.a, spec.b] + [None] * 10 + ["improper"])
            continue
        post = entry["posterior"]
        for lim in entry["limits"]:
            rows.append(
                [
                    entry["prior"], spec.a, spec.b, post.A, post.B, post.mean,
                    post.variance, post.mean * data.t, post.variance * data.t**2,
                    lim.CL, lim.U_rho, lim.U_theta, lim.solver_residual, "ok",
                ]
            )
    return _csv_text(meta, header, rows)


def _print_estimate(data, ml, simple, entries) -> None:
    print(f"counts: n={data.n} total={data.total} t={data.t:g}")
    print(
        f"ML: theta_hat={ml.theta_hat:.6g} rho_hat={ml.rho_hat:.6g} "
        f"var_counts={ml.var_counts:.6g} var_mean={ml.var_mean:.6g} var_rate={ml.var_rate:.6g}"
    )
    if ml.pathological:
        print(
            "  all-zero record: ML point estimate is 0 with zero estimated variance; "
            "use the simple-probability and Bayesian summaries below"
        )
    if simple is not None:
        print(
            "simple probability: mean_theta={mean_theta:.6g} var_theta={var_theta:.6g} "
            "mean_rho={mean_rho:.6g} var_rho={var_rho:.6g}".format(**simple)
        )
        for lim in simple["upper_limits"]:
            print(
                "  alpha={alpha:g}: U_theta={u_theta:.6g} U_rho={u_rho:.6g}".format(**lim)
            )
    for entry in entries:
        spec = entry["spec"]
        if entry["improper"]:
            print(f"prior {entry['prior']} (a={spec.a:g}, b={spec.b:g}): IMPROPER")
            print(f"  {entry['message']}")
            continue
        post = entry["posterior"]
        print(
            f"prior {entry['prior']} (a={spec.a:g}, b={spec.b:g}): "
            f"posterior Gamma(shape={post.A:g}, rate={post.B:g}) "
            f"mean_theta={post.mean * data.t:.6g} var_theta={post.variance * data.t ** 2:.6g} "
            f"mean_rho={post.mean:.6g} var_rho={post.variance:.6g}"
        )
        for lim in entry["limits"]:
            print(
                f"  CL={lim.CL:g}: U_theta={lim.U_theta:.6g} U_rho={lim.U_rho:.6g} "
                f"residual={lim.solver_residual:.3g}"
            )


# ---------------------------------------------------------------- tables


_TABLE3_ALPHAS = (0.01, 0.05, 0.10, 0.37)
_TABLE_CLS = (0.90, 0.95, 0.99)


def _table3_data():
    rows = []
    for alpha in _TABLE3_ALPHAS:
        u_theta, _ = simple_probability_upper_limit(1, 1.0, alpha)
        rows.append({"alpha": alpha, "cl": 1.0 - alpha, "u_theta_exact": u_theta})
    return rows


def _table4_data():
    ranking = compare_priors(0, 1)
    by_kind = {entry.prior.kind: entry for entry in ranking.entries}
    rows = []
    for kind in (PriorKind.BL, PriorKind.JR, PriorKind.ME):
        entry = by_kind[kind]
        rows.append(
            {
                "prior": kind.value.upper(),
                "mean": entry.mean_estimate,
                "bias_mean": entry.bias_mean,
                "risk_mean": entry.risk_mean,
                "var": entry.var_estimate,
                "bias_var": entry.bias_var,
                "risk_var": entry.risk_var,
            }
        )
    return rows


def _table5_data(tol: ToleranceConfig):
    rows = []
    for cl in _TABLE_CLS:
        row = {"cl": cl}
        for kind in (PriorKind.BL, PriorKind.JR, PriorKind.ME):
            spec = prior_params(kind, t=1.0) if kind is PriorKind.ME else prior_params(kind)
            post = posterior_from_sufficient(0, 1, 1.0, spec)
            lim = upper_limit(post, cl, tol=tol)
            row[kind.value.lower()] = lim
        rows.append(row)
    return rows


def cmd_tables(args) -> int:
    tol = parse_tolerance(args.tol)

    t3 = _table3_data()
    csv3 = _csv_text(
        _meta_lines("tables/table3", tol),
        ["alpha", "cl", "u_theta"],
        [[r["alpha"], r["cl"], f"{round_half_away(r['u_theta_exact']):.1f}"] for r in t3],
    )
    _write_file(args.out, "table3.csv", csv3)

    t4 = _table4_data()
    csv4 = _csv_text(
        _meta_lines("tables/table4", tol),
        ["prior", "mean", "bias_mean", "risk_mean", "var", "bias_var", "risk_var"],
        [
            [r["prior"], r["mean"], r["bias_mean"], r["risk_mean"], r["var"],
             r["bias_var"], r["risk_var"]]
            for r in t4
        ],
    )
    _write_file(args.out, "table4.csv", csv4)

    t5 = _table5_data(tol)
    csv5 = _csv_text(
        _meta_lines("tables/table5", tol),
        ["cl", "u_theta_bl", "u_theta_jr", "u_theta_me"],
        [
            [r["cl"]] + [f"{round_half_away(r[k].U_theta):.1f}" for k in ("bl", "jr", "me")]
            for r in t5
        ],
    )
    _write_file(args.out, "table5.csv", csv5)

    if args.format == "json":
        payload = {
            "metadata": _meta_json("tables", tol),
            "table3": [
                {
                    "alpha": r["alpha"],
                    "cl": r["cl"],
                    "u_theta_exact": r["u_theta_exact"],
                    "u_theta_rounded": round_half_away(r["u_theta_exact"]),
                }
                for r in t3
            ],
            "table4": t4,
            "table5": [
                {
                    "cl": r["cl"],
                    **{
                        k: {
                            "u_theta_exact": r[k].U_theta,
                            "u_theta_rounded": round_half_away(r[k].U_theta),
                            "residual": r[k].solver_residual,
                        }
                        for k in ("bl", "jr", "me")
                    },
                }
                for r in t5
            ],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        _write_file(args.out, "tables.json", text)
    return EXIT_OK


# ---------------------------------------------------------------- figures


def _frange(start: float, stop: float, step: float) -> list[float]:
    n = int(round((stop - start) / step))
    return [start + i * step for i in range(n + 1)]


def cmd_figures(args) -> int:
    tol = parse_tolerance(args.tol)

    thetas = _frange(0.0, 6.0, 0.01)
    csv1 = _csv_text(
        _meta_lines("figures/fig1", tol),
        ["theta", "zero_class_probability"],
        [[th, prob_all_zero(1, th)] for th in thetas],
    )
    _write_file(args.out, "fig1.csv", csv1)

    rhos = _frange(0.01, 5.0, 0.01)
    csv2 = _csv_text(
        _meta_lines("figures/fig2", tol),
        ["rho", "bl", "jj", "jr", "me"],
        [
            [rho] + [
                prior_density(kind, rho, t=1.0, normalized=True)
                for kind in (PriorKind.BL, PriorKind.JJ, PriorKind.JR, PriorKind.ME)
            ]
            for rho in rhos
        ],
    )
    _write_file(args.out, "fig2.csv", csv2)

    meta3 = _meta_lines("figures/fig3", tol)
    meta3.append("# bayes_means: bl=1.0 jr=0.5 me=0.5")
    curves = {
        "bl": GammaDist(a=1.0, b=1.0),
        "jr": GammaDist(a=0.5, b=1.0),
        "me": GammaDist(a=1.0, b=2.0),
    }
    csv3 = _csv_text(
        meta3,
        ["theta", "bl", "jr", "me"],
        [
            [th] + [gamma_pdf(th, curves[k]) for k in ("bl", "jr", "me")]
            for th in _frange(0.01, 6.0, 0.01)
        ],
    )
    _write_file(args.out, "fig3.csv", csv3)

    posts = {
        k: posterior_from_sufficient(
            0, 1, 1.0,
            prior_params(PriorKind(k.upper()), t=1.0) if k == "me"
            else prior_params(PriorKind(k.upper())),
        )
        for k in ("bl", "jr", "me")
    }
    csv4 = _csv_text(
        _meta_lines("figures/fig4", tol),
        ["cl", "u_theta_bl", "u_theta_jr", "u_theta_me"],
        [
            [cl] + [upper_limit(posts[k], cl, tol=tol).U_theta for k in ("bl", "jr", "me")]
            for cl in _frange(0.50, 0.99, 0.005)
        ],
    )
    _write_file(args.out, "fig4.csv", csv4)

    zp = ZPoissonParams(theta=4.5, psi=10.8907923667246459)
    nb = NBParams(theta=4.0, a=8.0)
    csv5 = _csv_text(
        _meta_lines("figures/fig5", tol),
        ["x", "poisson", "zpoisson", "nb"],
        [
            [x, poisson_pmf(x, 4.0), zpoisson_pmf(x, zp), nb_pmf(x, nb)]
            for x in range(51)
        ],
    )
    _write_file(args.out, "fig5.csv", csv5)
    return EXIT_OK


# ---------------------------------------------------------------- marginalize


def cmd_marginalize(args) -> int:
    tol = parse_tolerance(args.tol)
    if args.x < 0:
        raise DomainError(f"--x must be >= 0, got {args.x}")
    grid = make_theta_grid(args.x, step=args.step)
    model = args.model.lower()
    if model == "zpoisson":
        if args.a_lower != 0.0:
            raise DomainError("--a-lower applies only to the nb model")
        comp = zpoisson_marginal(args.x, grid, tol=tol, strategy=args.strategy)
        verdict = "PASS" if comp.linf_distance < 1e-6 else "FAIL"
    elif model == "nb":
        comp = nb_marginal_numeric(
            args.x, grid, tol=tol, strategy=args.strategy, a_lower=args.a_lower
        )
        verdict = "REPORT-ONLY"
    else:
        raise DomainError(f"unknown model {args.model!r} (expected zpoisson or nb)")

    summary = {
        "model": model,
        "x": comp.x,
        "grid_points": int(comp.theta_grid.size),
        "theta_max": float(comp.theta_grid[-1]),
        "strategy": args.strategy,
        "l1_distance": comp.l1_distance,
        "linf_distance": comp.linf_distance,
        "numeric_norm_residual": comp.numeric_norm_residual,
        "verdict": verdict,
    }
    if args.format == "json":
        _emit_json(
            {
                "metadata": _meta_json("marginalize", tol),
                **summary,
                "theta_grid": comp.theta_grid.tolist(),
                "numeric_density": comp.numeric_density.tolist(),
                "claimed_density": comp.claimed_density.tolist(),
            }
        )
    elif args.format == "csv":
        meta = _meta_lines("marginalize", tol)
        for key, value in summary.items():
            meta.append(f"# {key}: {_fmt(value)}")
        rows = [
            [th, num, clm]
            for th, num, clm in zip(
                comp.theta_grid, comp.numeric_density, comp.claimed_density
            )
        ]
        sys.stdout.write(_csv_text(meta, ["theta", "numeric_density", "claimed_density"], rows))
    else:
        print(f"model={model} x={comp.x} strategy={args.strategy}")
        print(
            f"grid: {int(comp.theta_grid.size)} points on [0, {comp.theta_grid[-1]:g}]"
        )
        print(f"l1_distance={comp.l1_distance:.6g}")
        print(f"linf_distance={comp.linf_distance:.6g}")
        print(f"numeric_norm_residual={comp.numeric_norm_residual:.6g}")
        print(f"verdict: {verdict}")
    return EXIT_OK


# ---------------------------------------------------------------- simulate


def _build_model(args):
    name = args.model.lower()
    if name == "poisson":
        if args.psi is not None or args.a is not None:
            raise DomainError("--psi/--a do not apply to the poisson model")
        return PoissonParams(theta=args.theta)
    if name == "zpoisson":
        if args.a is not None:
            raise DomainError("--a does not apply to the zpoisson model")
        if args.psi is None:
            raise DomainError("zpoisson model requires --psi")
        return ZPoissonParams(theta=args.theta, psi=args.psi)
    if name == "nb":
        if args.psi is not None:
            raise DomainError("--psi does not apply to the nb model")
        if args.a is None:
            raise DomainError("nb model requires --a")
        return NBParams(theta=args.theta, a=args.a)
    raise DomainError(f"unknown model {args.model!r} (expected poisson, zpoisson, or nb)")


def cmd_simulate(args) -> int:
    tol = parse_tolerance(args.tol)
    model = _build_model(args)
    summary = simulate(SimConfig(model=model, n_draws=args.draws, seed=args.seed))
    record = {
        "model": args.model.lower(),
        "theta": args.theta,
        "psi": args.psi,
        "a": args.a,
        "n_draws": summary.n_draws,
        "seed": args.seed,
        "sample_mean": summary.sample_mean,
        # a single draw has no ddof=1 variance; emit null rather than NaN
        "sample_variance": None if math.isnan(summary.sample_variance) else summary.sample_variance,
        "dispersion": summary.dispersion,
    }
    if args.format == "json":
        _emit_json({"metadata": _meta_json("simulate", tol, seed=args.seed), **record})
    elif args.format == "csv":
        header = list(record)
        sys.stdout.write(
            _csv_text(_meta_lines("simulate", tol, seed=args.seed), header,
                      [[record[k] for k in header]])
        )
    else:
        print(f"model={record['model']} n_draws={summary.n_draws} seed={args.seed}")
        print(f"sample_mean={summary.sample_mean:.6g}")
        print(f"sample_variance={summary.sample_variance:.6g}")
        disp = "undefined" if summary.dispersion is None else f"{summary.dispersion:.6g}"
        print(f"dispersion={disp}")
    return EXIT_OK


def cmd_coverage(args) -> int:
    tol = parse_tolerance(args.tol)
    prior = parse_prior(args.prior, args.t)
    result = coverage_experiment(
        args.rho, args.t, args.n, prior, args.cl, args.reps, args.seed, tol=tol
    )
    record = {
        "true_rho": args.rho,
        "t": args.t,
        "n": args.n,
        "prior": args.prior.lower(),
        "cl": args.cl,
        "reps": result.reps,
        "seed": args.seed,
        "coverage": result.coverage,
        "standard_error": result.standard_error,
    }
    if args.format == "json":
        _emit_json({"metadata": _meta_json("coverage", tol, seed=args.seed), **record})
    elif args.format == "csv":
        header = list(record)
        sys.stdout.write(
            _csv_text(_meta_lines("coverage", tol, seed=args.seed), header,
                      [[record[k] for k in header]])
        )
    else:
        print(
            f"coverage={result.coverage:.6g} standard_error={result.standard_error:.6g} "
            f"reps={result.reps}"
        )
    return EXIT_OK


# ---------------------------------------------------------------- jj-divergence


def cmd_jj_divergence(args) -> int:
    tol = parse_tolerance(args.tol)
    try:
        eps_values = [float(piece) for piece in args.eps.split(",") if piece.strip()]
    except ValueError:
        raise DomainError(f"bad --eps list {args.eps!r}") from None
    if not eps_values:
        raise DomainError("--eps must list at least one value")
    rows = []
    for eps in eps_values:
        evidence = jj_truncated_evidence(eps)
        log_form = -EULER_GAMMA - math.log(eps)
        rows.append(
            {
                "epsilon": eps,
                "alpha": jj_divergence_demo(eps, args.u_theta),
                "truncated_evidence": evidence,
                "log_approximation": log_form,
                "relative_gap": abs(evidence - log_form) / abs(log_form),
            }
        )
    if args.format == "json":
        _emit_json(
            {
                "metadata": _meta_json("jj-divergence", tol),
                "u_theta": args.u_theta,
                "rows": rows,
            }
        )
    elif args.format == "csv":
        header = ["epsilon", "alpha", "truncated_evidence", "log_approximation", "relative_gap"]
        sys.stdout.write(
            _csv_text(
                _meta_lines("jj-divergence", tol),
                header,
                [[row[k] for k in header] for row in rows],
            )
        )
    else:
        print(f"u_theta={args.u_theta:g}")
        for row in rows:
            print(
                "epsilon={epsilon:g}: alpha={alpha:.6g} evidence={truncated_evidence:.6g} "
                "log_form={log_approximation:.6g} rel_gap={relative_gap:.3g}".format(**row)
            )
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("table", "csv", "json"), default="table",
        help="output rendering (default: table)",
    )
    parser.add_argument("--tol", help="tolerance overrides, e.g. abs_tol=1e-13,max_iter=400")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerocount",
        description="Inference for zero-count and low-count Poisson measurements.",
    )
    parser.add_argument("--version", action="version", version=f"zerocount {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="ML, simple-probability, and Bayesian estimates")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--counts", help="comma-separated counts, e.g. 0,0,1")
    source.add_argument("--counts-file", help="file with one count per line (# comments allowed)")
    p.add_argument("--t", type=float, default=1.0, help="counting time per measurement")
    p.add_argument(
        "--prior", action="append",
        help="prior: bl, jj, jr, me, or custom:a,b (repeatable; default: all four)",
    )
    p.add_argument("--cl", type=float, action="append", help="credibility level (repeatable)")
    p.add_argument("--alpha", type=float, help="tail mass for the simple-probability limit")
    _add_common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("tables", help="emit the reference tables as CSV")
    p.add_argument("--out", default=".", help="output directory")
    _add_common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("figures", help="emit the reference figure datasets as CSV")
    p.add_argument("--out", default=".", help="output directory")
    _add_common(p)
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("marginalize", help="marginalize a two-parameter posterior")
    p.add_argument("--model", required=True, help="zpoisson or nb")
    p.add_argument("--x", type=int, required=True, help="observed count")
    p.add_argument("--step", type=float, default=0.1, help="theta grid spacing")
    p.add_argument(
        "--strategy", choices=("transform", "doubling"), default="transform",
        help="quadrature strategy",
    )
    p.add_argument("--a-lower", type=float, default=0.0, help="shape cutoff (nb only)")
    _add_common(p)
    p.set_defaults(func=cmd_marginalize)

    p = sub.add_parser("simulate", help="sample a count model and summarize")
    p.add_argument("--model", required=True, help="poisson, zpoisson, or nb")
    p.add_argument("--theta", type=float, required=True, help="mean parameter")
    p.add_argument("--psi", type=float, help="zero-class multiplier (zpoisson)")
    p.add_argument("--a", type=float, help="shape parameter (nb)")
    p.add_argument("--draws", "--bins", dest="draws", type=int, required=True,
                   help="number of draws")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("coverage", help="frequentist coverage of Bayesian upper limits")
    p.add_argument("--rho", type=float, required=True, help="true rate")
    p.add_argument("--t", type=float, default=1.0, help="counting time per measurement")
    p.add_argument("--n", type=int, default=1, help="measurements per replicate")
    p.add_argument("--prior", required=True, help="bl, jj, jr, me, or custom:a,b")
    p.add_argument("--cl", type=float, default=0.95, help="credibility level")
    p.add_argument("--reps", type=int, required=True, help="number of replicates")
    p.add_argument("--seed", type=int, default=0, help="PRNG seed")
    _add_common(p)
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("jj-divergence", help="truncated-evidence diagnostic for the JJ prior")
    p.add_argument("--eps", default="1e-2,1e-4,1e-6,1e-8",
                   help="comma-separated truncation points")
    p.add_argument("--u-theta", type=float, default=1.0, help="upper limit in the alpha ratio")
    _add_common(p)
    p.set_defaults(func=cmd_jj_divergence)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ImproperPosteriorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IMPROPER
    except (QuadratureError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
