"""Command line interface.

Subcommands: steady, stability, criteria, sweep, engineer, evolve,
williamson.  Models are supplied as JSON documents, either referencing a
catalog entry

    {"catalog": "OPOThermal", "params": {"epsilon": 0.05, "kappa": 0.8,
     "zeta": 1.5, "nbar": 0.3}}

or spelled out explicitly

    {"n": 1, "hessian": [[0.0, 0.15], [0.15, 0.0]],
     "xi": [0.0, 0.0], "h0": 0.0,
     "lindblad": [{"lambda_re": [0.0, -0.7071067811865476],
                   "lambda_im": [0.7071067811865476, 0.0],
                   "mu_re": 0.0, "mu_im": 0.0}]}

with an optional "tolerances" object ({"eig_zero_band", "stability_margin",
"residual_tol"}) in either form.  All floats are printed with 17 significant
digits; CSV output is deterministic for fixed inputs.

Exit codes: 0 success, 1 invalid input, 2 stability refusal (the requested
computation needs an asymptotically stable model), 3 engineering failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import catalog as catalog_mod
from . import criteria as criteria_mod
from . import evolution, lyapunov, williamson
from .core import Tolerances
from .model import GaussianDynamics, LindbladVector, ModelSpec, QuadraticHamiltonian, stability_check
from .williamson import EngineeringError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_STABILITY = 2
EXIT_ENGINEERING = 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; 2 means "stability refusal" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _fmt_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def _matrix_lines(m: np.ndarray) -> list[str]:
    if np.iscomplexobj(m):
        return ["  ".join(_fmt_complex(z) for z in row) for row in m]
    return ["  ".join(_fmt(x) for x in row) for row in m]


def _jsonify(obj):
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": obj.real.tolist(), "im": obj.imag.tolist()}
        return obj.tolist()
    if isinstance(obj, (bool, np.bool_)):  # before int: bool is a subclass of int
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _real_matrix(data, what: str) -> np.ndarray:
    try:
        m = np.array(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what} must be a numeric matrix: {exc}") from exc
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"{what} must be square, got shape {m.shape}")
    return m


def _parse_tolerances(doc) -> Tolerances | None:
    if "tolerances" not in doc:
        return None
    block = doc["tolerances"]
    if not isinstance(block, dict):
        raise InputError('"tolerances" must be an object')
    allowed = {"eig_zero_band", "stability_margin", "residual_tol"}
    unknown = set(block) - allowed
    if unknown:
        raise InputError(f"unknown tolerance keys: {sorted(unknown)}")
    base = Tolerances()
    return Tolerances(
        eig_zero_band=float(block.get("eig_zero_band", base.eig_zero_band)),
        stability_margin=float(block.get("stability_margin", base.stability_margin)),
        residual_tol=float(block.get("residual_tol", base.residual_tol)),
    )


def _parse_model(doc) -> tuple[ModelSpec, Tolerances | None, dict]:
    """Returns (spec, tolerances override, catalog info dict)."""
    if not isinstance(doc, dict):
        raise InputError("model document must be a JSON object")
    info: dict = {}
    tols = _parse_tolerances(doc)

    if "catalog" in doc:
        if "hessian" in doc:
            raise InputError('give either "catalog" or an explicit "hessian", not both')
        extra = set(doc) - {"catalog", "params", "tolerances"}
        if extra:
            raise InputError(f"unknown keys in catalog document: {sorted(extra)}")
        params = doc.get("params", {})
        if not isinstance(params, dict):
            raise InputError('"params" must be an object')
        try:
            cid = catalog_mod.CatalogId(doc["catalog"])
            spec = catalog_mod.catalog_build(cid, params)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        info = {"catalog": cid, "params": params}
        return spec, tols, info

    if "hessian" not in doc:
        raise InputError('model document needs either "catalog" or "hessian"')
    extra = set(doc) - {"n", "hessian", "xi", "h0", "lindblad", "tolerances"}
    if extra:
        raise InputError(f"unknown keys in model document: {sorted(extra)}")
    h = _real_matrix(doc["hessian"], '"hessian"')
    if h.shape[0] % 2:
        raise InputError(f'"hessian" must be 2n x 2n, got shape {h.shape}')
    n = h.shape[0] // 2
    if "n" in doc and int(doc["n"]) != n:
        raise InputError(f'"n" = {doc["n"]} contradicts hessian shape {h.shape}')
    xi = None
    if "xi" in doc:
        xi = np.array(doc["xi"], dtype=float)
        if xi.shape != (2 * n,):
            raise InputError(f'"xi" must have length {2 * n}, got shape {xi.shape}')
    try:
        ham = QuadraticHamiltonian(h, xi, float(doc.get("h0", 0.0)))
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    vectors = []
    entries = doc.get("lindblad", [])
    if not isinstance(entries, list):
        raise InputError('"lindblad" must be a list')
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise InputError(f"lindblad[{k}] must be an object")
        extra = set(entry) - {"lambda_re", "lambda_im", "mu_re", "mu_im"}
        if extra:
            raise InputError(f"unknown keys in lindblad[{k}]: {sorted(extra)}")
        if "lambda_re" not in entry and "lambda_im" not in entry:
            raise InputError(f"lindblad[{k}] needs lambda_re and/or lambda_im")
        re = np.array(entry.get("lambda_re", np.zeros(2 * n)), dtype=float)
        im = np.array(entry.get("lambda_im", np.zeros(2 * n)), dtype=float)
        if re.shape != (2 * n,) or im.shape != (2 * n,):
            raise InputError(f"lindblad[{k}] coupling must have length {2 * n}")
        mu = complex(float(entry.get("mu_re", 0.0)), float(entry.get("mu_im", 0.0)))
        vectors.append(LindbladVector(re + 1j * im, mu))
    return ModelSpec(ham, vectors), tols, info


def _resolve_tol(args, doc_tols: Tolerances | None) -> Tolerances:
    if getattr(args, "tol", None) is not None:
        base = doc_tols or Tolerances()
        return Tolerances(
            eig_zero_band=args.tol,
            stability_margin=base.stability_margin,
            residual_tol=args.tol,
        )
    return doc_tols or Tolerances()


def _require_stable(dyn: GaussianDynamics, tol: Tolerances) -> float:
    report = stability_check(dyn, tol)
    if not report.is_stable:
        kind = "marginally stable" if abs(report.spectral_abscissa) <= tol.stability_margin else "unstable"
        sys.stderr.write(
            f"error: model is {kind} (spectral abscissa {_fmt(report.spectral_abscissa)}); "
            "this computation needs an asymptotically stable drift matrix\n"
        )
        raise SystemExit(EXIT_STABILITY)
    return report.spectral_abscissa


def _parse_partition(arg: str | None, n: int) -> criteria_mod.Partition:
    if n < 2:
        raise InputError("separability and steerability need at least two modes")
    if arg is None:
        flipped = frozenset({n - 1})
    else:
        try:
            indices = {int(tok) for tok in arg.split(",") if tok.strip()}
        except ValueError as exc:
            raise InputError(f"--partition must be comma-separated mode numbers: {exc}") from exc
        if any(k < 1 or k > n for k in indices):
            raise InputError(f"--partition modes must lie in 1..{n}")
        flipped = frozenset(k - 1 for k in indices)
    try:
        return criteria_mod.Partition(n, flipped)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------- steady


def cmd_steady(args) -> int:
    spec, doc_tols, _ = _parse_model(_load_json(args.model))
    tol = _resolve_tol(args, doc_tols)
    dyn = spec.build(tol)
    abscissa = _require_stable(dyn, tol)
    cm = lyapunov.steady_covariance(dyn, tol)
    res = lyapunov.residual(lyapunov.steady_state_problem(dyn), cm)
    if args.json:
        payload = {
            "n": dyn.n,
            "spectral_abscissa": abscissa,
            "drift_matrix": dyn.drift_matrix,
            "diffusion": dyn.diffusion,
            "steady_cm": cm,
            "residual": res,
        }
        _emit(json.dumps(_jsonify(payload), indent=2), args.output)
        return EXIT_OK
    lines = [f"modes: {dyn.n}", f"spectral abscissa: {_fmt(abscissa)}", "steady covariance matrix:"]
    lines += _matrix_lines(cm)
    lines.append(f"residual: {_fmt(res)}")
    _emit("\n".join(lines), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- stability


def cmd_stability(args) -> int:
    spec, doc_tols, _ = _parse_model(_load_json(args.model))
    tol = _resolve_tol(args, doc_tols)
    dyn = spec.build(tol)
    report = stability_check(dyn, tol)
    if args.json:
        payload = {
            "is_stable": report.is_stable,
            "spectral_abscissa": report.spectral_abscissa,
            "spectrum": report.spectrum,
        }
        _emit(json.dumps(_jsonify(payload), indent=2), args.output)
    else:
        lines = [
            f"asymptotically stable: {'yes' if report.is_stable else 'no'}",
            f"spectral abscissa: {_fmt(report.spectral_abscissa)}",
            "drift spectrum:",
        ]
        lines += ["  " + _fmt_complex(z) for z in report.spectrum]
        if not report.is_stable and abs(report.spectral_abscissa) <= tol.stability_margin:
            lines.append("note: marginally stable, no unique steady state")
        _emit("\n".join(lines), args.output)
    return EXIT_OK if report.is_stable else EXIT_STABILITY


# ---------------------------------------------------------------- criteria


def _criterion_kinds(args, n: int) -> list:
    wanted = args.kind
    kinds: list = []
    needs_partition = wanted in ("separability", "steerability", "all")
    partition = None
    if needs_partition and n >= 2:
        partition = _parse_partition(args.partition, n)
    if wanted in ("uncertainty", "all"):
        kinds.append(criteria_mod.Uncertainty())
    if wanted in ("classicality", "all"):
        kinds.append(criteria_mod.Classicality())
    if wanted in ("separability", "all"):
        if partition is None:
            if wanted == "separability":
                raise InputError("separability needs at least two modes")
        else:
            kinds.append(criteria_mod.Separability(partition))
    if wanted in ("steerability", "all"):
        if partition is None:
            if wanted == "steerability":
                raise InputError("steerability needs at least two modes")
        else:
            kinds.append(criteria_mod.Steerability(partition, 1))
            kinds.append(criteria_mod.Steerability(partition, 2))
    return kinds


def _kind_label(kind) -> str:
    if isinstance(kind, criteria_mod.Steerability):
        steered = kind.partition.part_one if kind.steered_part == 1 else kind.partition.part_two
        modes = ",".join(str(m + 1) for m in steered)
        return f"steerability(steered part {kind.steered_part}: modes {modes})"
    if isinstance(kind, criteria_mod.Separability):
        modes = ",".join(str(m + 1) for m in kind.partition.part_two)
        return f"separability(part two: modes {modes})"
    return kind.name


def _result_dict(res: criteria_mod.CriterionResult) -> dict:
    return {
        "kind": res.kind.name,
        "label": _kind_label(res.kind),
        "level": res.level.value,
        "verdict": res.verdict.value,
        "conclusiveness": res.conclusiveness.value,
        "conclusion": res.conclusion,
        "note": res.label,
        "spectrum": res.spectrum,
        "min_eig": float(res.spectrum[0]),
        "inertia": {
            "positive": res.inertia.positive,
            "zero": res.inertia.zero,
            "negative": res.inertia.negative,
        },
    }


def _result_line(res: criteria_mod.CriterionResult) -> str:
    note = f"  [{res.label}]" if res.label else ""
    return (
        f"{res.level.value:<11s}  {_kind_label(res.kind):<44s}  "
        f"conclusion={res.conclusion:<12s} verdict={res.verdict.value:<8s} "
        f"basis={res.conclusiveness.value:<15s} min_eig={_fmt(res.spectrum[0])} "
        f"inertia={res.inertia}{note}"
    )


def cmd_criteria(args) -> int:
    spec, doc_tols, _ = _parse_model(_load_json(args.model))
    tol = _resolve_tol(args, doc_tols)
    dyn = spec.build(tol)
    _require_stable(dyn, tol)
    kinds = _criterion_kinds(args, dyn.n)
    if not kinds:
        raise InputError(f"no applicable criteria of kind {args.kind!r} for n = {dyn.n}")

    results = []
    cm = lyapunov.steady_covariance(dyn, tol) if args.level in ("state", "both") else None
    for kind in kinds:
        if args.level in ("state", "both"):
            results.append(criteria_mod.state_criterion(cm, kind, tol))
        if args.level in ("env", "both"):
            results.append(criteria_mod.environment_criterion(dyn, kind, tol))

    if args.json:
        _emit(json.dumps(_jsonify([_result_dict(r) for r in results]), indent=2), args.output)
    else:
        _emit("\n".join(_result_line(r) for r in results), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- sweep


def _sweep_range(arg: str, flag: str) -> np.ndarray:
    parts = arg.split(":")
    if len(parts) != 3:
        raise InputError(f"{flag} must be A:B:STEPS, got {arg!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise InputError(f"{flag} must be A:B:STEPS: {exc}") from exc
    if count < 1:
        raise InputError(f"{flag} needs at least one step")
    return np.linspace(lo, hi, count)


_SWEEP_KINDS = ("uncertainty", "classicality", "separability", "steerability_part1", "steerability_part2")


def _quantity_value(
    name: str,
    cid,
    params: dict,
    partition_arg: str | None,
    tol: Tolerances,
) -> float:
    spec = catalog_mod.catalog_build(cid, params, tol)
    dyn = spec.build(tol)
    report = stability_check(dyn, tol)
    if name == "abscissa":
        return report.spectral_abscissa
    if not report.is_stable:
        return math.nan
    if name in ("purity", "min_symplectic_eig"):
        cm = lyapunov.steady_covariance(dyn, tol)
        mu = williamson.symplectic_spectrum(cm)
        return float(1.0 / np.prod(mu)) if name == "purity" else float(mu.min())
    for level in ("state", "env"):
        prefix = level + "_"
        if name.startswith(prefix) and name.endswith("_min_eig"):
            kind_name = name[len(prefix) : -len("_min_eig")]
            if kind_name not in _SWEEP_KINDS:
                raise InputError(f"unknown criterion kind in quantity {name!r}")
            kind = _make_sweep_kind(kind_name, partition_arg, dyn.n)
            if level == "state":
                cm = lyapunov.steady_covariance(dyn, tol)
                res = criteria_mod.state_criterion(cm, kind, tol)
            else:
                res = criteria_mod.environment_criterion(dyn, kind, tol)
            return float(res.spectrum[0])
    raise InputError(
        f"unknown quantity {name!r}; expected abscissa, purity, min_symplectic_eig, "
        "or <state|env>_<kind>_min_eig"
    )


def _make_sweep_kind(kind_name: str, partition_arg: str | None, n: int):
    if kind_name == "uncertainty":
        return criteria_mod.Uncertainty()
    if kind_name == "classicality":
        return criteria_mod.Classicality()
    partition = _parse_partition(partition_arg, n)
    if kind_name == "separability":
        return criteria_mod.Separability(partition)
    if kind_name == "steerability_part1":
        return criteria_mod.Steerability(partition, 1)
    if kind_name == "steerability_part2":
        return criteria_mod.Steerability(partition, 2)
    raise InputError(f"unknown criterion kind {kind_name!r}")


def _bisect(f, lo: float, hi: float, iters: int = 200) -> float:
    try:
        flo, fhi = f(lo), f(hi)
    except Exception:
        return math.nan
    if not (np.isfinite(flo) and np.isfinite(fhi)) or flo * fhi > 0:
        return math.nan
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        try:
            fmid = f(mid)
        except Exception:
            return math.nan
        if not np.isfinite(fmid):
            return math.nan
        if fmid == 0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo <= 1e-14 * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def _parse_threshold_spec(spec_str: str) -> tuple[str, str, str]:
    parts = spec_str.split(":")
    if len(parts) != 3:
        raise InputError(f"--threshold must be KIND:LEVEL:PARAM, got {spec_str!r}")
    kind_name, level, param = parts
    if kind_name not in _SWEEP_KINDS or kind_name == "uncertainty":
        raise InputError(f"--threshold kind must be one of {_SWEEP_KINDS[1:]}, got {kind_name!r}")
    if level not in ("state", "env"):
        raise InputError(f"--threshold level must be state or env, got {level!r}")
    return kind_name, level, param


def cmd_sweep(args) -> int:
    spec, doc_tols, info = _parse_model(_load_json(args.model))
    del spec
    if not info:
        raise InputError("sweep needs a catalog model (named parameters to vary)")
    tol = _resolve_tol(args, doc_tols)
    cid = info["catalog"]
    base_params = dict(info["params"])

    grid1 = _sweep_range(args.range, "--range")
    grid2 = None
    if args.param2 is not None:
        if args.range2 is None:
            raise InputError("--param2 needs --range2")
        grid2 = _sweep_range(args.range2, "--range2")
    elif args.range2 is not None:
        raise InputError("--range2 needs --param2")

    quantities = args.quantity or ["abscissa"]
    thresholds = [_parse_threshold_spec(s) for s in (args.threshold or [])]
    parts = args.threshold_range.split(":")
    if len(parts) != 2:
        raise InputError(f"--threshold-range must be A:B, got {args.threshold_range!r}")
    try:
        thr_lo, thr_hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise InputError(f"--threshold-range must be A:B: {exc}") from exc

    # validate the partition once up front so a typo fails loudly instead of
    # yielding nan cells from inside the bisection
    needs_partition = any(
        k in q for q in quantities for k in ("separability", "steerability")
    ) or any(k in ("separability", "steerability_part1", "steerability_part2") for k, _, _ in thresholds)
    if needs_partition:
        base_spec = catalog_mod.catalog_build(cid, base_params)
        _parse_partition(args.partition, base_spec.n)

    def threshold_value(kind_name, level, param, point_params) -> float:
        def f(x):
            trial = dict(point_params)
            trial[param] = x
            return _quantity_value(f"{level}_{kind_name}_min_eig", cid, trial, args.partition, tol)

        return _bisect(f, thr_lo, thr_hi)

    header = [args.param] + ([args.param2] if grid2 is not None else [])
    header += quantities
    header += [f"thr_{k}_{lvl}_{prm}" for (k, lvl, prm) in thresholds]

    rows = [",".join(header)]
    points2 = grid2 if grid2 is not None else [None]
    for v1 in grid1:
        for v2 in points2:
            point = dict(base_params)
            point[args.param] = float(v1)
            cells = [_fmt(v1)]
            if v2 is not None:
                point[args.param2] = float(v2)
                cells.append(_fmt(v2))
            for q in quantities:
                try:
                    val = _quantity_value(q, cid, point, args.partition, tol)
                except InputError:
                    raise
                except Exception:
                    val = math.nan
                cells.append(_fmt(val))
            for kind_name, level, param in thresholds:
                cells.append(_fmt(threshold_value(kind_name, level, param, point)))
            rows.append(",".join(cells))
    _emit("\n".join(rows), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- engineer


def _parse_kv_params(arg: str) -> dict:
    out = {}
    for item in arg.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise InputError(f"--params entries must be key=value, got {item!r}")
        key, _, val = item.partition("=")
        try:
            out[key.strip()] = float(val)
        except ValueError as exc:
            raise InputError(f"--params value for {key.strip()!r} is not a number") from exc
    if not out:
        raise InputError("--params is empty")
    return out


def _load_target_cm(args, tol: Tolerances) -> np.ndarray:
    if args.target and args.catalog:
        raise InputError("give either --target or --catalog, not both")
    if args.target:
        doc = _load_json(args.target)
        data = doc["cm"] if isinstance(doc, dict) and "cm" in doc else doc
        return _real_matrix(data, "target covariance matrix")
    if args.catalog:
        if args.params is None:
            raise InputError("--catalog needs --params")
        try:
            cid = catalog_mod.CatalogId(args.catalog)
            return np.asarray(
                catalog_mod.catalog_analytic(cid, "target_cm", _parse_kv_params(args.params))
            )
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError("engineer needs --target FILE or --catalog ID --params ...")


def cmd_engineer(args) -> int:
    tol = _resolve_tol(args, None)
    target = _load_target_cm(args, tol)
    if target.shape[0] % 2:
        raise InputError(f"target must be 2n x 2n, got shape {target.shape}")
    dev = np.abs(target - target.T).max()
    if dev > tol.residual_tol * max(1.0, np.abs(target).max()):
        raise InputError(f"target must be symmetric, asymmetry {dev:.3e}")

    try:
        decomp = williamson.williamson_decompose(target, tol)
    except ValueError as exc:
        raise EngineeringError(f"target is not a valid covariance matrix: {exc}") from exc
    mu = decomp.mu
    if mu.min() < 1.0 - tol.eig_zero_band:
        raise EngineeringError(
            f"target is not physical: smallest symplectic eigenvalue {_fmt(mu.min())} < 1"
        )

    if args.method == "gibbs":
        spread = mu.max() - mu.min()
        if spread > 1e-9 * max(1.0, mu.max()):
            raise EngineeringError(
                "gibbs method needs equal symplectic eigenvalues "
                f"(got spread {_fmt(spread)}); use --method covariant"
            )
        alpha = float(mu.mean())
        reservoir = williamson.engineer_gibbs_target(np.linalg.inv(decomp.s), alpha, tol=tol)
    else:
        lam = decomp.lambda_matrix
        dim = lam.shape[0]
        reservoir = williamson.engineer_covariant_target(
            lam, -0.5 * np.eye(dim), lam, decomp.s, tol
        )

    cm = lyapunov.solve(reservoir.drift_matrix, reservoir.diffusion, tol=tol)
    target_dev = float(np.abs(cm - target).max())
    realization = reservoir.realization
    vectors = [
        {"lambda_re": v.coupling.real, "lambda_im": v.coupling.imag} for v in realization.vectors
    ]

    if args.json:
        payload = {
            "method": args.method,
            "target": target,
            "symplectic_spectrum": mu[::-1],
            "drift_matrix": reservoir.drift_matrix,
            "diffusion": reservoir.diffusion,
            "hessian": realization.hamiltonian.hessian,
            "lindblad": vectors,
            "verification": {
                "steady_cm_max_dev": target_dev,
                "stationary_residual": reservoir.residual,
            },
        }
        _emit(json.dumps(_jsonify(payload), indent=2), args.output)
        return EXIT_OK
    lines = [f"method: {args.method}", "engineered drift matrix:"]
    lines += _matrix_lines(reservoir.drift_matrix)
    lines.append("engineered diffusion matrix:")
    lines += _matrix_lines(reservoir.diffusion)
    lines.append("hamiltonian hessian:")
    lines += _matrix_lines(realization.hamiltonian.hessian)
    lines.append(f"coupling vectors: {len(vectors)}")
    for k, v in enumerate(realization.vectors):
        lines.append(f"  lambda[{k}]: " + "  ".join(_fmt_complex(z) for z in v.coupling))
    lines.append(f"steady-state deviation from target: {_fmt(target_dev)}")
    lines.append(f"stationary residual of target: {_fmt(reservoir.residual)}")
    _emit("\n".join(lines), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- evolve


def cmd_evolve(args) -> int:
    spec, doc_tols, _ = _parse_model(_load_json(args.model))
    tol = _resolve_tol(args, doc_tols)
    dyn = spec.build(tol)
    t_end = args.t_end
    if t_end is None:
        report = stability_check(dyn, tol)
        if not report.is_stable:
            raise InputError("--t-end is required for a model that is not asymptotically stable")
        t_end = 40.0 / abs(report.spectral_abscissa)

    dim = 2 * dyn.n
    v0 = args.v0_scale * np.eye(dim)
    x0 = np.zeros(dim)
    traj = evolution.evolve(dyn, x0, v0, t_end, dt=args.dt, record_every=max(1, args.stride), tol=tol)

    if args.json:
        payload = {
            "t_end": traj.times[-1],
            "final_mean": traj.final_mean,
            "final_cm": traj.final_cm,
        }
        _emit(json.dumps(_jsonify(payload), indent=2), args.output)
        return EXIT_OK
    header = ["t"] + [f"x{i}" for i in range(dim)] + [
        f"V_{i}_{j}" for i in range(dim) for j in range(dim)
    ]
    rows = [",".join(header)]
    for t, x, v in zip(traj.times, traj.means, traj.cms):
        rows.append(",".join([_fmt(t)] + [_fmt(c) for c in x] + [_fmt(c) for c in v.ravel()]))
    _emit("\n".join(rows), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- williamson


def cmd_williamson(args) -> int:
    tol = _resolve_tol(args, None)
    if args.cm and args.model:
        raise InputError("give either a model document or --cm, not both")
    if args.cm:
        doc = _load_json(args.cm)
        data = doc["cm"] if isinstance(doc, dict) and "cm" in doc else doc
        cm = _real_matrix(data, "covariance matrix")
    elif args.model:
        spec, doc_tols, _ = _parse_model(_load_json(args.model))
        tol = _resolve_tol(args, doc_tols)
        dyn = spec.build(tol)
        _require_stable(dyn, tol)
        cm = lyapunov.steady_covariance(dyn, tol)
    else:
        raise InputError("williamson needs a model document or --cm FILE")

    try:
        decomp = williamson.williamson_decompose(cm, tol)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    n = cm.shape[0] // 2
    j_dev = float(np.abs(decomp.s @ _j(n) @ decomp.s.T - _j(n)).max())
    m_dev = float(np.abs(decomp.s @ cm @ decomp.s.T - decomp.lambda_matrix).max())
    if args.json:
        payload = {
            "cm": cm,
            "symplectic_eigenvalues": decomp.mu,
            "s": decomp.s,
            "dev_form": j_dev,
            "dev_diag": m_dev,
        }
        _emit(json.dumps(_jsonify(payload), indent=2), args.output)
        return EXIT_OK
    lines = ["symplectic eigenvalues (ascending): " + "  ".join(_fmt(v) for v in decomp.mu)]
    lines.append("congruence S:")
    lines += _matrix_lines(decomp.s)
    lines.append(f"|S J S^T - J|_max: {_fmt(j_dev)}")
    lines.append(f"|S M S^T - Lambda|_max: {_fmt(m_dev)}")
    _emit("\n".join(lines), args.output)
    return EXIT_OK


def _j(n: int) -> np.ndarray:
    from .core import symplectic_form

    return symplectic_form(n)


# ---------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="lindlyap", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, model=True):
        if model:
            p.add_argument("model", help="path to a model JSON document")
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--tol", type=float, default=None, help="override eig_zero_band and residual_tol")
        p.add_argument("--output", default=None, help="write output to this file instead of stdout")

    p = sub.add_parser("steady", help="solve for the stationary covariance matrix")
    add_common(p)
    p.set_defaults(func=cmd_steady)

    p = sub.add_parser("stability", help="drift spectrum and stability verdict")
    add_common(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("criteria", help="state- and environment-level criteria")
    add_common(p)
    p.add_argument(
        "--kind",
        choices=["uncertainty", "classicality", "separability", "steerability", "all"],
        default="all",
    )
    p.add_argument(
        "--partition",
        default=None,
        help="comma-separated 1-based modes of part two (default: last mode)",
    )
    p.add_argument("--level", choices=["state", "env", "both"], default="both")
    p.set_defaults(func=cmd_criteria)

    p = sub.add_parser("sweep", help="scan catalog parameters, CSV output")
    add_common(p)
    p.add_argument("--param", required=True, help="catalog parameter to sweep")
    p.add_argument("--range", required=True, help="A:B:STEPS for --param")
    p.add_argument("--param2", default=None, help="optional second parameter")
    p.add_argument("--range2", default=None, help="A:B:STEPS for --param2")
    p.add_argument(
        "--quantity",
        action="append",
        help="column to report (repeatable): abscissa, purity, min_symplectic_eig, "
        "or <state|env>_<kind>_min_eig; default abscissa",
    )
    p.add_argument(
        "--threshold",
        action="append",
        help="KIND:LEVEL:PARAM bisection column (repeatable), e.g. separability:env:zeta",
    )
    p.add_argument("--threshold-range", default="1e-6:50", help="bisection bracket A:B")
    p.add_argument("--partition", default=None, help="partition for separability/steerability")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("engineer", help="build a reservoir that prepares a target state")
    add_common(p, model=False)
    p.add_argument("--target", default=None, help="JSON file with the target covariance matrix")
    p.add_argument("--catalog", default=None, help="catalog id providing a target (TMTSS)")
    p.add_argument("--params", default=None, help="comma-separated key=value catalog parameters")
    p.add_argument("--method", choices=["gibbs", "covariant"], default="gibbs")
    p.set_defaults(func=cmd_engineer)

    p = sub.add_parser("evolve", help="integrate the moment equations, CSV output")
    add_common(p)
    p.add_argument("--t-end", type=float, default=None, help="final time (default 40/|abscissa|)")
    p.add_argument("--dt", type=float, default=None, help="integrator step")
    p.add_argument("--v0-scale", type=float, default=5.0, help="initial covariance scale s in s*I")
    p.add_argument("--stride", type=int, default=200, help="record every N-th step in the CSV")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("williamson", help="symplectic normal form of a covariance matrix")
    add_common(p, model=False)
    p.add_argument("model", nargs="?", default=None, help="model document (uses its steady state)")
    p.add_argument("--cm", default=None, help="JSON file with a covariance matrix")
    p.set_defaults(func=cmd_williamson)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help or usage error
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except EngineeringError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ENGINEERING
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
