"""Command-line front end: build witnesses and states, classify, detect,
scan parameter grids to CSV, and decompose witnesses over the local
Gell-Mann basis.

All numeric parameters accept exact rationals as "p/q" strings, so
interval boundaries (alpha = 3/8, beta = 1, ...) classify exactly.
Every output artifact embeds a run manifest; outputs are deterministic
given (command, params, seed, tolerances) up to the timestamp field.
"""

from __future__ import annotations

import datetime
import json
import sys
from fractions import Fraction

import click
import numpy as np

from . import __version__
from ._backend import SEESAW_BACKEND
from .detect import (
    SeeSawConfig,
    certify_nd,
    closed_form_expectation,
    expectation,
    product_min,
)
from .gellmann import expand_local, measurement_settings_report, reconstruct
from .linalg import Tolerance, matrix_from_json, matrix_to_json
from .states import (
    beta_lambdas,
    classify_beta,
    is_ppt,
    ppt_closed_form,
    state_from_json,
    state_from_lambdas,
)
from .witness import (
    AlphaWitnessParams,
    WitnessCoefficients,
    alpha_range_report,
    check_d3_conditions,
    check_necessary_conditions,
    witness_family,
    witness_from_json,
    witness_W_alpha,
)


def _g17(x) -> str:
    return "%.17g" % float(x)


def _frac(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as e:
        raise click.BadParameter(f"expected a number or p/q rational, got {s!r}") from e


def _manifest(ctx: click.Context, command: str, params: dict) -> dict:
    opts = ctx.obj
    return {
        "command": command,
        "params": params,
        "tolerances": {"eig_tol": opts["tol"].eig_tol, "eq_tol": opts["tol"].eq_tol},
        "seed": opts["seed"],
        "restarts": opts["restarts"],
        "backend": SEESAW_BACKEND,
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }


def _fail(message: str, code: int = 2):
    json.dump({"error": message}, sys.stderr)
    sys.stderr.write("\n")
    sys.exit(code)


def _write_json(path, obj):
    if path is None or path == "-":
        json.dump(obj, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--tol-eig", default="1e-9", show_default=True, help="Eigenvalue nonnegativity slack.")
@click.option("--tol-eq", default="1e-10", show_default=True, help="Entrywise equality slack.")
@click.option("--seed", default=0, show_default=True, type=int, help="See-saw restart seed.")
@click.option("--restarts", default=64, show_default=True, type=int, help="See-saw random restarts.")
@click.version_option(__version__)
@click.pass_context
def main(ctx, tol_eig, tol_eq, seed, restarts):
    """Circulant entanglement witnesses for two qudits."""
    ctx.obj = {
        "tol": Tolerance(eig_tol=float(tol_eig), eq_tol=float(tol_eq)),
        "seed": seed,
        "restarts": restarts,
    }


def _witness_from_options(d, alpha, a, mu, primed):
    if alpha is not None:
        params = AlphaWitnessParams(d=d, alpha=_frac(alpha), primed=primed)
        return params, witness_W_alpha(params)
    if a:
        coeffs = WitnessCoefficients(d=d, a=tuple(_frac(x) for x in a), mu=_frac(mu))
        return coeffs, witness_family(coeffs)
    raise ValueError("specify either --alpha or --a coefficients")


def _witness_report(desc, W, tol):
    w = np.linalg.eigvalsh(W)
    report = {"min_eig": float(w[0]), "is_nonpositive": bool(w[0] < -tol.eig_tol)}
    if isinstance(desc, AlphaWitnessParams):
        coeffs = None
        rr = alpha_range_report(desc)
        report["alpha_range"] = {
            "interval": rr.interval.to_json(),
            "in_certified_range": rr.in_certified_range,
            "mu": str(rr.mu),
            "a0": str(rr.a0),
            "a1": str(rr.a1),
            "a1_in_unit_interval": rr.a1_in_unit,
            "nonwitness_region": rr.nonwitness_region,
        }
        if not rr.nonwitness_region:
            coeffs = desc.coefficients()
    else:
        coeffs = desc
    if coeffs is not None:
        nec = check_necessary_conditions(coeffs)
        report["necessary_conditions"] = {
            "sum_at_least_d_minus_1": nec.sum_condition,
            "a0_below_d_minus_1": nec.nonpositive_condition,
            "product_vector_value": nec.product_vector_value,
            "product_vector_matches": nec.product_vector_matches,
        }
        if coeffs.d == 3:
            d3 = check_d3_conditions(coeffs)
            report["d3"] = {"is_ew": d3.is_ew, "is_nd": d3.is_nd}
    return report


@main.group()
def witness():
    """Witness construction and checks."""


@witness.command("build")
@click.option("--d", type=int, required=True)
@click.option("--alpha", default=None, help="Witness parameter (rational ok).")
@click.option("--a", multiple=True, help="Coefficients a_0..a_{d-1} of W[a] (repeat d times).")
@click.option("--mu", default="1", show_default=True, help="Scale of W[a].")
@click.option("--primed/--no-primed", default=False, show_default=True)
@click.option("--out", default=None, help="Output path (default stdout).")
@click.pass_context
def witness_build(ctx, d, alpha, a, mu, primed, out):
    """Build W_alpha / W'_alpha or W[a_0,...,a_{d-1}] with a sidecar report."""
    try:
        desc, W = _witness_from_options(d, alpha, a, mu, primed)
        report = _witness_report(desc, W, ctx.obj["tol"])
    except ValueError as e:
        _fail(str(e))
    params = {"d": d, "alpha": alpha, "a": list(a), "mu": mu, "primed": primed}
    _write_json(out, {
        "manifest": _manifest(ctx, "witness build", params),
        "witness": desc.to_json(),
        "matrix": matrix_to_json(W),
        "report": report,
    })


@main.group()
def state():
    """State construction and classification."""


@state.command("build")
@click.option("--d", type=int, required=True)
@click.option("--beta", default=None, help="Beta-family parameter (rational ok).")
@click.option("--lambdas", default=None, help="Comma-separated lambda_1..lambda_d.")
@click.option("--out", default=None, help="Output path (default stdout).")
@click.pass_context
def state_build(ctx, d, beta, lambdas, out):
    """Build rho from beta or explicit lambdas, with PPT verdicts."""
    tol = ctx.obj["tol"]
    try:
        if beta is not None:
            s = beta_lambdas(d, _frac(beta))
        elif lambdas is not None:
            from .states import StateLambdas
            s = StateLambdas(d, tuple(_frac(x) for x in lambdas.split(",")))
        else:
            raise ValueError("specify either --beta or --lambdas")
        rho = state_from_lambdas(s)
        ppt, min_eig = is_ppt(rho, d, tol)
        report = {"ppt": ppt, "pt_min_eig": min_eig}
        if s.is_beta_family:
            report["ppt_closed_form"] = ppt_closed_form(s)
            label = classify_beta(d, s.beta)
            report["label"] = label
            if label == "SEPARABLE":
                report["label_note"] = "separability label per published reference data"
    except ValueError as e:
        _fail(str(e))
    params = {"d": d, "beta": beta, "lambdas": lambdas}
    _write_json(out, {
        "manifest": _manifest(ctx, "state build", params),
        "state": s.to_json(),
        "matrix": matrix_to_json(rho),
        "report": report,
    })


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


@main.command("detect")
@click.option("--witness-file", default=None, help="Witness description or matrix JSON.")
@click.option("--d", type=int, default=None)
@click.option("--alpha", default=None)
@click.option("--primed/--no-primed", default=False)
@click.option("--state-file", default=None, help="State description JSON.")
@click.option("--beta", default=None)
@click.option("--lambdas", default=None)
@click.option("--product-min/--no-product-min", "with_pm", default=False, show_default=True,
              help="Attach see-saw product-minimization evidence.")
@click.option("--out", default=None)
@click.pass_context
def detect_cmd(ctx, witness_file, d, alpha, primed, state_file, beta, lambdas, with_pm, out):
    """Evaluate Tr(W rho) and report detection."""
    tol = ctx.obj["tol"]
    try:
        wdesc = None
        if witness_file is not None:
            obj = _load_json(witness_file)
            if "re" in obj:
                W = matrix_from_json(obj)
                dw = int(round(np.sqrt(W.shape[0])))
            else:
                wdesc, W = witness_from_json(obj.get("witness", obj))
                dw = wdesc.d
        else:
            if d is None:
                raise ValueError("specify --witness-file or --d with witness params")
            wdesc, W = _witness_from_options(d, alpha, (), "1", primed)
            dw = d
        if state_file is not None:
            s = state_from_json(_load_json(state_file).get("state", _load_json(state_file)))
        elif beta is not None:
            s = beta_lambdas(dw, _frac(beta))
        elif lambdas is not None:
            from .states import StateLambdas
            s = StateLambdas(dw, tuple(_frac(x) for x in lambdas.split(",")))
        else:
            raise ValueError("specify --state-file, --beta or --lambdas")
        if s.d != dw:
            raise ValueError(f"dimension mismatch: witness d={dw}, state d={s.d}")
        rho = state_from_lambdas(s)
        exp = expectation(W, rho, tol.eq_tol)
        report = {
            "expectation": exp,
            "detected": bool(exp < -tol.eig_tol),
        }
        if isinstance(wdesc, AlphaWitnessParams):
            closed = closed_form_expectation(wdesc, s)
            report["closed_form"] = closed
            report["closed_form_deviation"] = abs(exp - closed)
        if with_pm:
            cfg = SeeSawConfig(restarts=ctx.obj["restarts"], seed=ctx.obj["seed"])
            pm = product_min(W, dw, cfg)
            report["product_min"] = {
                "value": pm.value, "restart_index": pm.restart_index,
                "backend": pm.backend, "rng": pm.rng,
                "seed": pm.seed, "restarts": pm.restarts,
                "certificate": "numerical",
            }
    except (ValueError, OSError) as e:
        _fail(str(e))
    params = {"witness_file": witness_file, "d": d, "alpha": alpha, "primed": primed,
              "state_file": state_file, "beta": beta, "lambdas": lambdas}
    _write_json(out, {"manifest": _manifest(ctx, "detect", params), "report": report})


@main.command("certify-nd")
@click.option("--d", type=int, required=True)
@click.option("--alpha", required=True)
@click.option("--primed/--no-primed", default=False)
@click.option("--out", default=None)
@click.pass_context
def certify_nd_cmd(ctx, d, alpha, primed, out):
    """Produce a non-decomposability certificate (detected PPT state)."""
    try:
        params = AlphaWitnessParams(d=d, alpha=_frac(alpha), primed=primed)
        cfg = SeeSawConfig(restarts=ctx.obj["restarts"], seed=ctx.obj["seed"])
        cert = certify_nd(params, cfg, ctx.obj["tol"])
    except (ValueError, RuntimeError) as e:
        _fail(str(e))
    echo = {"d": d, "alpha": alpha, "primed": primed}
    _write_json(out, {"manifest": _manifest(ctx, "certify-nd", echo), "certificate": cert.to_json()})


def _grid(start: Fraction, stop: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0 or stop < start:
        raise ValueError("grid needs step > 0 and stop >= start")
    pts = []
    x = start
    while x <= stop:
        pts.append(x)
        x += step
    if not pts:
        raise ValueError("empty grid")
    return pts


@main.command("scan")
@click.option("--d", type=int, required=True)
@click.option("--param", type=click.Choice(["alpha", "beta"]), required=True)
@click.option("--start", required=True)
@click.option("--stop", required=True)
@click.option("--step", required=True)
@click.option("--alpha", default=None, help="Fixed witness for beta scans.")
@click.option("--beta", default=None, help="Fixed state for alpha scans.")
@click.option("--primed/--no-primed", default=False)
@click.option("--out", required=True)
@click.pass_context
def scan_cmd(ctx, d, param, start, stop, step, alpha, beta, primed, out):
    """Scan an alpha or beta grid; one CSV row per grid point."""
    tol = ctx.obj["tol"]
    cfg = SeeSawConfig(restarts=ctx.obj["restarts"], seed=ctx.obj["seed"])
    try:
        pts = _grid(_frac(start), _frac(stop), _frac(step))
        rows = []
        if param == "beta":
            Wfixed = None
            wparams = None
            if alpha is not None:
                wparams = AlphaWitnessParams(d=d, alpha=_frac(alpha), primed=primed)
                Wfixed = witness_W_alpha(wparams)
            for b in pts:
                s = beta_lambdas(d, b)
                rho = state_from_lambdas(s)
                ppt, min_eig = is_ppt(rho, d, tol)
                exp = expectation(Wfixed, rho, tol.eq_tol) if Wfixed is not None else None
                rows.append([str(b), _g17(b), _g17(min_eig), str(ppt).lower(),
                             "" if exp is None else _g17(exp), "", classify_beta(d, b)])
        else:
            sfixed = beta_lambdas(d, _frac(beta)) if beta is not None else None
            rho = state_from_lambdas(sfixed) if sfixed is not None else None
            for aa in pts:
                wparams = AlphaWitnessParams(d=d, alpha=aa, primed=primed)
                W = witness_W_alpha(wparams)
                w = np.linalg.eigvalsh(W)
                pm = product_min(W, d, cfg)
                label = ("certified-EW" if alpha_range_report(wparams).in_certified_range
                         else "outside certified range")
                if rho is not None:
                    ppt, _ = is_ppt(rho, d, tol)
                    exp = expectation(W, rho, tol.eq_tol)
                    rows.append([str(aa), _g17(aa), _g17(w[0]), str(ppt).lower(),
                                 _g17(exp), _g17(pm.value), label])
                else:
                    rows.append([str(aa), _g17(aa), _g17(w[0]), "",
                                 "", _g17(pm.value), label])
    except ValueError as e:
        _fail(str(e))
    params = {"d": d, "param": param, "start": start, "stop": stop, "step": step,
              "alpha": alpha, "beta": beta, "primed": primed}
    manifest = _manifest(ctx, "scan", params)
    header = [param, f"{param}_float", "min_eig", "ppt", "expectation", "product_min", "label"]
    with open(out, "w") as fh:
        fh.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")
    click.echo(f"wrote {len(rows)} rows to {out}")


@main.command("decompose")
@click.option("--witness-file", default=None)
@click.option("--d", type=int, default=None)
@click.option("--alpha", default=None)
@click.option("--a", multiple=True)
@click.option("--mu", default="1")
@click.option("--primed/--no-primed", default=False)
@click.option("--out", required=True, help="Output basename; writes <out>.csv and <out>.json.")
@click.pass_context
def decompose_cmd(ctx, witness_file, d, alpha, a, mu, primed, out):
    """Expand a witness over the local Gell-Mann product basis."""
    tol = ctx.obj["tol"]
    try:
        if witness_file is not None:
            obj = _load_json(witness_file)
            if "re" in obj:
                W = matrix_from_json(obj)
                dd = int(round(np.sqrt(W.shape[0])))
            else:
                _, W = witness_from_json(obj.get("witness", obj))
                dd = int(obj.get("witness", obj)["d"])
        else:
            if d is None:
                raise ValueError("specify --witness-file or --d with witness params")
            _, W = _witness_from_options(d, alpha, a, mu, primed)
            dd = d
        dec = expand_local(W, dd, tol.eq_tol)
        residual = float(np.max(np.abs(reconstruct(dec) - W)))
        settings = measurement_settings_report(dec)
    except (ValueError, OSError) as e:
        _fail(str(e))
    params = {"witness_file": witness_file, "d": d, "alpha": alpha, "a": list(a),
              "mu": mu, "primed": primed}
    manifest = _manifest(ctx, "decompose", params)
    with open(out + ".csv", "w") as fh:
        fh.write("# manifest: " + json.dumps(manifest, sort_keys=True) + "\n")
        fh.write("mu_label,nu_label,coefficient\n")
        for mu_l, nu_l, c in settings:
            fh.write(f"{mu_l},{nu_l},{_g17(c)}\n")
    _write_json(out + ".json", {
        "manifest": manifest,
        "decomposition": dec.to_json(),
        "report": {"n_settings": len(settings), "reconstruction_residual": residual},
    })
    click.echo(f"{len(settings)} settings, residual {residual:.3e}; wrote {out}.csv and {out}.json")


@main.command("selftest")
@click.pass_context
def selftest_cmd(ctx):
    """Run the closed-form oracle suite; prints one line per check."""
    from .selftest import run_selftest

    ok = run_selftest(seed=ctx.obj["seed"])
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
