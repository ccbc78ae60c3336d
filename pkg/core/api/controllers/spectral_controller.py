import csv
import io
import logging
import math
from typing import Any, Callable, Dict, List

import orjson

from core.api.schemas.cli_schemas import CliCommand, CliInvocation, OutputFormat, ProblemSource, parse_grid
from core.config import get_settings
from core.models.numbers import complex_to_json
from core.models.oracle import VerificationLevel
from core.models.problem import ProblemFamily, SLProblem
from core.models.spectrum import Side
from core.services.asymptotics_service import (
    classify_lambda,
    classify_spectrum,
    condition_diagnostic,
    endpoint_data,
    decay_case,
)
from core.services.error_handling import InvalidParameterError, UnsupportedEquationError
from core.services.frobenius_service import local_exponent_table, p_symbol, singularities
from core.services.kimura_service import candidate_eigenvalues, default_window, is_triangularizable, scan_eigenvalues
from core.services.monodromy_service import compute_monodromy
from core.services.oracle_service import find_real_eigenvalues, shoot, verify
from core.services.problem_service import load_problem_file, make_allen_cahn, make_hulthen, problem_to_document, sup_nu
from core.services.spectra_report_service import (
    eigenfunction_table,
    potential_profile,
    region_grid,
    sweep_allen_cahn,
    sweep_hulthen,
    write_eigenfunction_csv,
    write_profile_csv,
    write_region_csv,
    write_sweep_csv,
)

logger = logging.getLogger(__name__)

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY


def _default(value: Any) -> Any:
    if isinstance(value, complex):
        return complex_to_json(value)
    if hasattr(value, "model_dump"):
        return value.model_dump(mode="json")
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_json(payload: Any) -> str:
    return orjson.dumps(payload, default=_default, option=JSON_OPTIONS).decode()


def _csv_text(write: Callable[[io.StringIO], None]) -> str:
    buffer = io.StringIO()
    write(buffer)
    return buffer.getvalue()


class SpectralController:
    """
    Maps a validated CliInvocation onto the services and renders the result.
    Every command returns the full text destined for stdout or --out.
    """

    @staticmethod
    def run(invocation: CliInvocation) -> str:
        handler = {
            CliCommand.ANALYZE: SpectralController.analyze,
            CliCommand.EIGENVALUES: SpectralController.eigenvalues,
            CliCommand.EIGENFUNCTION: SpectralController.eigenfunction,
            CliCommand.MONODROMY: SpectralController.monodromy,
            CliCommand.VERIFY: SpectralController.verify,
            CliCommand.SWEEP: SpectralController.sweep,
            CliCommand.REGION: SpectralController.region,
            CliCommand.PROFILE: SpectralController.profile,
        }[invocation.command]
        logger.info(f"Running {invocation.command.value}")
        return handler(invocation)

    @staticmethod
    def resolve_problem(source: ProblemSource) -> SLProblem:
        if source.problem_file is not None:
            return load_problem_file(source.problem_file)
        if source.family == ProblemFamily.HULTHEN:
            return make_hulthen(*source.params)
        return make_allen_cahn(*source.params)

    @staticmethod
    def _json_only(invocation: CliInvocation) -> None:
        if invocation.format != OutputFormat.JSON:
            raise InvalidParameterError(f"{invocation.command.value} has JSON output only")

    @staticmethod
    def analyze(invocation: CliInvocation) -> str:
        SpectralController._json_only(invocation)
        p = SpectralController.resolve_problem(invocation.source)
        d = endpoint_data(p)
        payload: Dict[str, Any] = {
            "problem": p.label(),
            "document": problem_to_document(p),
            "endpoints": d.model_dump(mode="json"),
            "decay_case": decay_case(d).value,
            "sup_nu": sup_nu(p),
            "singularities": [
                {"point": pt.describe(), "kind": pt.kind.value, "source": pt.source.value} for pt in singularities(p)
            ],
        }

        lam = invocation.options.get("lam")
        if lam is not None:
            table = classify_lambda(d, lam)
            try:
                refined = classify_spectrum(p, lam)
                payload["class"] = refined.tag.value
                payload["reason"] = refined.reason
            except UnsupportedEquationError as e:
                payload["class"] = table.tag.value
                payload["reason"] = f"refinement unavailable: {e.message}"
            payload["lambda"] = lam
            payload["table_class"] = table.tag.value
            payload["boundary"] = table.boundary
            payload["sides"] = [table.minus.model_dump(mode="json"), table.plus.model_dump(mode="json")]
            payload["diagnostics"] = [
                condition_diagnostic(d, lam, side).model_dump(mode="json") for side in (Side.MINUS, Side.PLUS)
            ]
            try:
                payload["kimura"] = is_triangularizable(p, lam).model_dump(mode="json")
            except UnsupportedEquationError:
                payload["kimura"] = None

        if invocation.options.get("psymbol"):
            payload["psymbol"] = local_exponent_table(p_symbol(p, 0.0 if lam is None else lam))
        return render_json(payload)

    @staticmethod
    def eigenvalues(invocation: CliInvocation) -> str:
        settings = get_settings()
        p = SpectralController.resolve_problem(invocation.source)
        opts = invocation.options
        lam_min, lam_max = opts.get("range") or (None, None)
        tol = settings.verify_tol if opts.get("tol") is None else opts["tol"]
        include = bool(opts.get("include_unverified"))

        if opts.get("method", "closed") == "scan":
            found = scan_eigenvalues(p, lam_min, lam_max, opts.get("grid"), include_unverified=include)
        else:
            found = candidate_eigenvalues(p, lam_min, lam_max, include_unverified=include)

        entries: List[Dict[str, Any]] = []
        for cand in found:
            lam = cand.lam.real
            miss = None
            if not opts.get("no_shoot") and cand.verified_decay:
                miss = abs(shoot(p, lam).miss)
            shot_ok = opts.get("no_shoot") or (miss is not None and miss < tol)
            entries.append(
                {
                    "lambda": lam,
                    "sqrt_lambda": math.sqrt(lam) if lam >= 0 else None,
                    "k": cand.k,
                    "sign_pattern": list(cand.sign_pattern),
                    "verified_decay": cand.verified_decay,
                    "bounded_solution": cand.bounded_solution,
                    "miss": miss,
                    "verified": bool(cand.accepted and shot_ok),
                }
            )

        if invocation.format == OutputFormat.CSV:
            columns = ["lambda", "sqrt_lambda", "k", "verified_decay", "bounded_solution", "miss", "verified"]
            return _csv_text(lambda buf: _write_rows(buf, columns, entries))

        if not opts.get("cross_check"):
            return render_json(entries)
        lo, hi = _resolve_cross_check_window(p, lam_min, lam_max)
        shooting = find_real_eigenvalues(p, lo, hi, opts.get("steps"))
        accepted = [e["lambda"] for e in entries if e["verified"]]
        agree = len(shooting) == len(accepted) and all(abs(a - b) < tol for a, b in zip(sorted(accepted), shooting))
        return render_json({"eigenvalues": entries, "cross_check": {"shooting": shooting, "agree": agree}})

    @staticmethod
    def eigenfunction(invocation: CliInvocation) -> str:
        p = SpectralController.resolve_problem(invocation.source)
        opts = invocation.options
        xs = opts.get("xs") or parse_grid(get_settings().sample_grid)
        samples = eigenfunction_table(p, opts["lam"], xs, normalize=bool(opts.get("normalize")))
        if invocation.format == OutputFormat.CSV:
            return _csv_text(lambda buf: write_eigenfunction_csv(samples, buf))
        return render_json({"lambda": opts["lam"], "samples": [{"x": x, "psi": psi} for x, psi in samples]})

    @staticmethod
    def monodromy(invocation: CliInvocation) -> str:
        SpectralController._json_only(invocation)
        p = SpectralController.resolve_problem(invocation.source)
        opts = invocation.options
        result = compute_monodromy(p, opts["lam"], base=opts.get("base"), radius=opts.get("radius"))
        payload = result.model_dump(mode="json")
        payload["eigenvalues"] = {
            "minus": list(result.m_minus.eigenvalues()),
            "plus": list(result.m_plus.eigenvalues()),
        }
        return render_json(payload)

    @staticmethod
    def verify(invocation: CliInvocation) -> str:
        SpectralController._json_only(invocation)
        p = SpectralController.resolve_problem(invocation.source)
        opts = invocation.options
        level = VerificationLevel(opts.get("level", VerificationLevel.FULL.value))
        report = verify(p, opts["lam"], opts.get("tol"), level)
        return render_json(report.model_dump(mode="json"))

    @staticmethod
    def sweep(invocation: CliInvocation) -> str:
        opts = invocation.options
        family = ProblemFamily(opts["family"])
        n = opts.get("grid") or get_settings().sweep_rows
        if family == ProblemFamily.HULTHEN:
            params = opts.get("params") or ()
            if len(params) != 2:
                raise InvalidParameterError("a Hulthén sweep takes --params alpha1,alpha3")
            table = sweep_hulthen(params[0], params[1], opts["range"], n)
        elif family == ProblemFamily.ALLEN_CAHN:
            table = sweep_allen_cahn(opts["range"], n)
        else:
            raise InvalidParameterError("sweeps are defined for the built-in families")
        if invocation.format == OutputFormat.CSV:
            return _csv_text(lambda buf: write_sweep_csv(table, buf))
        return render_json(table.model_dump(mode="json"))

    @staticmethod
    def region(invocation: CliInvocation) -> str:
        p = SpectralController.resolve_problem(invocation.source)
        opts = invocation.options
        res = opts.get("grid") or get_settings().region_resolution
        grid = region_grid(p, opts["re"], opts["im"], res)
        if invocation.format == OutputFormat.CSV:
            return _csv_text(lambda buf: write_region_csv(grid, buf))
        return render_json(
            {"re_values": grid.re_values, "im_values": grid.im_values, "letters": grid.letters()}
        )

    @staticmethod
    def profile(invocation: CliInvocation) -> str:
        p = SpectralController.resolve_problem(invocation.source)
        xs = invocation.options.get("xs") or parse_grid(get_settings().sample_grid)
        rows = potential_profile(p, xs)
        if invocation.format == OutputFormat.CSV:
            return _csv_text(lambda buf: write_profile_csv(rows, buf))
        return render_json([row.model_dump(mode="json") for row in rows])


def _resolve_cross_check_window(p: SLProblem, lam_min, lam_max):
    lo, hi = default_window(p)
    return (lo if lam_min is None else lam_min), (hi if lam_max is None else lam_max)


def _write_rows(buffer: io.StringIO, columns: List[str], rows: List[Dict[str, Any]]) -> None:
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row.get(k) is None else row[k] for k in columns})

