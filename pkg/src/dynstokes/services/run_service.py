"""
Run service for dynstokes
"""

import logging
import math
import os
from typing import Any, Dict, List, Optional

import numpy as np

from ..certify import (
    FrequencyWallGrid,
    SectorSampleGrid,
    certify_m,
    certify_mstar,
    check_e_bounds,
    check_m2_identity,
    check_product_lemma,
    check_real_part,
    check_se_bound,
    check_sqrt_lambda_bound,
    max_order,
)
from ..certify.grids import DEFAULT_MARGIN
from ..fields.containers import BoundaryField
from ..fields.dump import load_field, save_field
from ..fields.grids import TangentialGrid, WallGrid
from ..models.params import ResolventParams
from ..models.result import Result
from ..models.run_config import RunConfig
from ..oracle import OdeOracleConfig, compare_mode, compare_vprime_mode, convergence_ratio
from ..solver import (
    SolenoidalProbe,
    SolutionBundle,
    WeakFormStudy,
    biharmonic_check,
    residual_boundary,
    residual_interior,
    solve_boundary_driven,
    weak_form_check,
    weak_form_refinement,
)
from ..sweep import (
    TABLE_COLUMNS,
    alpha_uniformity,
    gradient_estimate,
    phi_family,
    resolvent_decay,
    second_order_proxy,
    truncation_length,
    wall_grid_for,
)
from ..utils.filesystem import save_csv_table, save_json_file, setup_directory_structure

logger = logging.getLogger(__name__)

REPORT_FILE = "report.json"
REPRODUCTION_TOLERANCE = 1e-12
INEQUALITY_COLUMNS = (
    "name",
    "points",
    "violations",
    "re_lambda_nonnegative",
    "re_lambda_negative",
    "slack",
    "passed",
)
CERTIFICATE_COLUMNS = (
    "symbol_id",
    "kind",
    "k",
    "delta",
    "alpha",
    "dim",
    "uniform",
    "empirical_sup",
    "refined_sup",
    "refinement_drift",
    "breakdown_count",
)
RATIO_COLUMNS = ("index", "numerator", "denominator", "ratio", "refinement_shift")


class RunService:
    """
    Service running one subcommand on a validated configuration

    Every run returns a Result whose data is the report body; a failed
    Result means a tolerance or an inequality was violated.
    """

    def __init__(self, config: RunConfig):
        """
        Initialize the service

        Args:
            config: Validated run configuration
        """
        self.config = config
        self.workers = config.run.worker_count()
        self.dirs = setup_directory_structure(config.run.out_dir)

    # Problem setup

    def params(self) -> ResolventParams:
        return self.config.problem.params()

    def tangential_grid(self, params: ResolventParams) -> TangentialGrid:
        grid = self.config.grid
        return TangentialGrid(params.tdim, grid.n, grid.box_length)

    def wall_grid(self, params: ResolventParams) -> WallGrid:
        """
        Wall grid from the configuration

        Without truncation_length and first_fraction the grid adapts to lambda.
        """
        grid = self.config.grid
        if grid.truncation_length is None and grid.first_fraction is None:
            return wall_grid_for(params, grid.wall_intervals)
        truncation = grid.truncation_length or truncation_length(params)
        return WallGrid.graded(truncation, grid.wall_intervals, grid.first_fraction)

    def boundary_data(self, tgrid: TangentialGrid, components: int) -> List[BoundaryField]:
        """Seeded data phi and probe generator b, in that order"""
        return phi_family(
            tgrid, components, 2, self.config.run.seed, band=self.config.sweep.band
        )

    def _solve(self, phi: Optional[BoundaryField] = None, normal_orders: Optional[int] = None):
        params = self.params()
        tgrid = self.tangential_grid(params)
        wgrid = self.wall_grid(params)
        data, generator = self.boundary_data(tgrid, params.tdim)
        if phi is not None:
            data = phi
        orders = normal_orders or self.config.grid.normal_orders
        logger.info(
            f"Solving lambda={params.lam:.6g} alpha={params.alpha:g} d={params.dim}: "
            f"n={tgrid.n}, M={wgrid.intervals}, Y={wgrid.truncation:.6g}"
        )
        bundle = solve_boundary_driven(
            params, tgrid, wgrid, data, normal_orders=orders, workers=self.workers
        )
        return bundle, data, generator

    # Commands

    def run(self, command: str, **options: Any) -> Result[Dict[str, Any]]:
        """
        Run one subcommand

        Args:
            command: solve, verify, oracle, certify or sweep
            **options: Command-specific options

        Returns:
            Result with the report body
        """
        handlers = {
            "solve": self.solve,
            "verify": self.verify,
            "oracle": self.oracle,
            "certify": self.certify,
            "sweep": self.sweep,
        }
        if command not in handlers:
            raise ValueError(f"unknown command {command!r}")
        return handlers[command](**options)

    def solve(self) -> Result[Dict[str, Any]]:
        """
        Solve the configured problem and dump its fields

        Returns:
            Result with the bundle summary, dump paths and residual summary
        """
        bundle, phi, _ = self._solve()
        fields_dir = self.dirs["fields_dir"]
        dumps = {
            "phi": save_field(phi, fields_dir, "phi"),
            "u_prime": save_field(bundle.u_prime, fields_dir, "u_prime"),
            "u_d": save_field(bundle.u_d, fields_dir, "u_d"),
            "pressure": save_field(bundle.pressure, fields_dir, "pressure"),
            "trace_u_prime": save_field(bundle.trace_u_prime, fields_dir, "trace_u_prime"),
        }
        summary = {}
        if bundle.max_orders["u_prime"] >= 2:
            summary["interior"] = self._interior(bundle).to_dict()
        summary["boundary"] = residual_boundary(
            bundle, tolerance=self.config.tolerances.boundary
        ).to_dict()
        logger.info(f"Wrote {len(dumps)} field dumps to {fields_dir}")
        return Result.success(
            {
                "bundle": bundle.to_dict(),
                "fields": {name: paths["header"] for name, paths in dumps.items()},
                "residuals": summary,
            }
        )

    def _interior(self, bundle: SolutionBundle):
        tol = self.config.tolerances
        return residual_interior(
            bundle,
            tolerance=tol.interior,
            divergence_tolerance=tol.divergence,
            fd_tolerance=tol.fd_agreement,
        )

    def verify(self, source: Optional[str] = None) -> Result[Dict[str, Any]]:
        """
        Run every residual verifier on a fresh solve

        Args:
            source: Output directory of an earlier solve; its data phi is
                reused and its dumped fields must be reproduced

        Returns:
            Result, failed when a verifier exceeds its tolerance
        """
        tol = self.config.tolerances
        phi = None
        if source is not None:
            fields_dir = os.path.join(source, "fields")
            phi = load_field(fields_dir, "phi")
            logger.info(f"Verifying against the dumps in {fields_dir}")
        orders = max(self.config.grid.normal_orders, 2)
        bundle, phi, generator = self._solve(phi=phi, normal_orders=orders)

        records = [
            self._interior(bundle),
            residual_boundary(bundle, phi, tolerance=tol.boundary),
            biharmonic_check(
                bundle, tolerance=tol.biharmonic, boundary_tolerance=tol.biharmonic_boundary
            ),
        ]
        weak = self._weak_form(bundle, phi, generator)

        violations = [
            f"{record.check}.{measure.name} (relative {measure.relative_max:.3e} > "
            f"{measure.tolerance:.1e} at {measure.location})"
            for record in records
            for measure in record.violations()
        ]
        if not weak.passed:
            violations.append(
                f"weak_form (extrapolated relative {weak.relative:.3e} > "
                f"{weak.tolerance:.1e}, "
                f"observed order {weak.observed_order:.2f})"
            )

        data: Dict[str, Any] = {
            "bundle": bundle.to_dict(),
            "records": [record.to_dict() for record in records],
            "weak_form": weak.to_dict(),
        }
        if source is not None:
            reproduction = self._reproduction(bundle, os.path.join(source, "fields"))
            data["reproduction"] = reproduction
            violations.extend(
                f"reproduction.{name} (relative {value:.3e})"
                for name, value in reproduction.items()
                if not value <= REPRODUCTION_TOLERANCE
            )
        data["violations"] = violations

        if violations:
            for violation in violations:
                logger.warning(f"Verification failed: {violation}")
            return Result.failure(f"{len(violations)} checks violated", data=data)
        logger.info("All verification checks passed")
        return Result.success(data)

    def _weak_form(
        self, bundle: SolutionBundle, phi: BoundaryField, generator: BoundaryField
    ) -> WeakFormStudy:
        """Weak-form defect on the solve grid and on its midpoint refinement"""
        tol = self.config.tolerances
        probe = SolenoidalProbe(bundle.tgrid, bundle.wgrid, generator)
        coarse = weak_form_check(bundle, None, probe, tolerance=tol.weak_form)

        fine_grid = bundle.wgrid.refined()
        fine_bundle = solve_boundary_driven(
            bundle.params, bundle.tgrid, fine_grid, phi, normal_orders=1, workers=self.workers
        )
        fine_probe = SolenoidalProbe(bundle.tgrid, fine_grid, generator)
        fine = weak_form_check(fine_bundle, None, fine_probe, tolerance=tol.weak_form)
        return weak_form_refinement(coarse, fine, tolerance=tol.weak_form)

    def _reproduction(self, bundle: SolutionBundle, fields_dir: str) -> Dict[str, float]:
        """Relative max difference between dumped and recomputed fields"""
        out = {}
        for name in ("u_prime", "u_d", "pressure"):
            dumped = load_field(fields_dir, name).values
            fresh = getattr(bundle, name).values
            if dumped.shape != fresh.shape:
                out[name] = math.inf
                continue
            scale = float(np.max(np.abs(fresh)))
            diff = float(np.max(np.abs(dumped - fresh)))
            out[name] = diff / scale if scale > 0.0 else diff
        return out

    def oracle(self) -> Result[Dict[str, Any]]:
        """
        Compare closed forms with the ODE oracle over the configured modes

        Returns:
            Result, failed when a deviation exceeds the oracle tolerance or the
            observed convergence ratio leaves 4 (1 +- band)
        """
        section = self.config.oracle
        tol = self.config.tolerances
        params = self.params()
        compare = compare_mode if section.target == "u_d" else compare_vprime_mode
        logger.info(f"Oracle comparison of {section.target} over {len(section.modes)} modes")

        modes = []
        violations = []
        for xi in section.modes:
            xi = np.asarray(xi, dtype=float)
            cfg = self._oracle_config(params, xi)
            comparison = compare(params, xi, cfg, steps=section.steps)
            entry = comparison.to_dict()
            if not comparison.deviation <= tol.oracle:
                violations.append(
                    f"mode xi={xi.tolist()}: deviation {comparison.deviation:.3e} > "
                    f"{tol.oracle:.1e}"
                )
            if section.convergence and section.target == "u_d":
                record = convergence_ratio(
                    params, xi, cfg or comparison.config, steps=section.steps
                )
                entry["convergence"] = record.to_dict()
                if not abs(record.ratio / 4.0 - 1.0) <= tol.convergence_band:
                    violations.append(
                        f"mode xi={xi.tolist()}: convergence ratio {record.ratio:.3f} "
                        f"outside 4 +- {tol.convergence_band:.0%}"
                    )
            modes.append(entry)

        data = {"params": params.to_dict(), "modes": modes, "violations": violations}
        if violations:
            for violation in violations:
                logger.warning(f"Oracle check failed: {violation}")
            return Result.failure(f"{len(violations)} oracle checks violated", data=data)
        return Result.success(data)

    def _oracle_config(
        self, params: ResolventParams, xi: np.ndarray
    ) -> Optional[OdeOracleConfig]:
        section = self.config.oracle
        if section.truncation_length is not None:
            return OdeOracleConfig(
                section.truncation_length,
                section.steps,
                section.decay_bc or "dirichlet_pair",
            )
        if section.decay_bc is not None and section.target == "u_d":
            s = float(np.sqrt(np.dot(xi, xi)))
            return OdeOracleConfig.for_mode(params, s, section.steps, section.decay_bc)
        return None

    # Certification

    def certification_grids(self):
        """Sector and frequency grids from the certify section"""
        section = self.config.certify
        sector_grid = SectorSampleGrid.default(
            self.config.problem.sector(),
            moduli_count=section.moduli_count,
            angle_count=section.angle_count,
            max_modulus=section.max_modulus,
            margin=section.margin,
        )
        frequency_grid = FrequencyWallGrid(
            s_min=section.s_min,
            s_max=section.s_max,
            s_count=section.s_count,
            y_min=section.y_min,
            y_max=section.y_max,
            y_count=section.y_count,
        )
        return sector_grid, frequency_grid

    def _inequalities(self, check: str, sector_grid, frequency_grid):
        section = self.config.certify
        grids = dict(
            sector_grid=sector_grid, frequency_grid=frequency_grid, workers=self.workers
        )
        reports = []
        if check in ("all", "real-part"):
            reports.append(check_real_part(**grids))
        if check in ("all", "sqrt-lambda"):
            reports.append(check_sqrt_lambda_bound(**grids))
        if check in ("all", "e-bounds"):
            reports.append(check_e_bounds(**grids))
        if check in ("all", "se-bound"):
            for order in section.se_orders:
                reports.append(check_se_bound(delta=section.delta, order=order, **grids))
        if check in ("all", "m2-identity"):
            reports.append(check_m2_identity(**grids))
        return reports

    def _certificates(self, sector_grid, frequency_grid):
        section = self.config.certify
        problem = self.config.problem
        orders = section.orders
        if orders is None:
            orders = list(range(max_order(problem.dim) + 1))
        common = dict(
            sector_grid=sector_grid,
            frequency_grid=frequency_grid,
            alpha=problem.alpha,
            dim=problem.dim,
            refine=section.refine,
            step_factor=section.step_factor,
            workers=self.workers,
        )
        certificates = []
        for k in orders:
            for symbol_id in section.mstar_symbols + section.fixed_symbols:
                certificates.append(certify_mstar(symbol_id, k, delta=section.delta, **common))
            for symbol_id in section.m_symbols:
                certificates.append(certify_m(symbol_id, k, **common))
            for m_id, mstar_id in section.products:
                cert_m = certify_m(m_id, k, **common)
                cert_mstar = certify_mstar(mstar_id, k, delta=section.delta, **common)
                certificates.append(
                    check_product_lemma(
                        cert_m,
                        cert_mstar,
                        section.delta_tilde,
                        refine=section.refine,
                        step_factor=section.step_factor,
                        workers=self.workers,
                    )
                )
        return certificates

    def certify(self, check: Optional[str] = None) -> Result[Dict[str, Any]]:
        """
        Run hard inequality checks and multiplier certificates

        Args:
            check: Restrict to one check (defaults to certify.check)

        Returns:
            Result, failed on any inequality violation, non-finite supremum or
            refinement drift above tolerance
        """
        check = check or self.config.certify.check
        sector_grid, frequency_grid = self.certification_grids()
        logger.info(
            f"Certifying '{check}' over {sector_grid.size} resolvent points x "
            f"{frequency_grid.size} (s, y) points"
        )

        reports = self._inequalities(check, sector_grid, frequency_grid)
        certificates = []
        if check in ("all", "multipliers"):
            certificates = self._certificates(sector_grid, frequency_grid)

        drift_limit = self.config.tolerances.drift
        violations = [
            f"{report.name}: {report.violations} violations "
            f"(Re lambda >= 0: {report.violations_by_half_plane['re_lambda_nonnegative']}, "
            f"Re lambda < 0: {report.violations_by_half_plane['re_lambda_negative']}), "
            f"worst at {report.worst}"
            for report in reports
            if not report.passed
        ]
        for cert in certificates:
            if not cert.finite:
                violations.append(f"{cert.symbol_id} k={cert.k}: non-finite supremum")
            elif self.config.certify.refine and not cert.stable(drift_limit):
                violations.append(
                    f"{cert.symbol_id} k={cert.k}: refinement drift "
                    f"{cert.refinement_drift} >= {drift_limit:g}"
                )

        self._write_certify_tables(reports, certificates)
        data = {
            "check": check,
            "inequalities": [report.to_dict() for report in reports],
            "certificates": [cert.to_dict() for cert in certificates],
            "violations": violations,
        }
        if violations:
            for violation in violations:
                logger.warning(f"Certification failed: {violation}")
            return Result.failure(
                f"{len(violations)} certification checks violated", data=data
            )
        logger.info("Certification passed")
        return Result.success(data)

    def _write_certify_tables(self, reports, certificates) -> None:
        tables_dir = self.dirs["tables_dir"]
        if reports:
            save_csv_table(
                os.path.join(tables_dir, "inequalities.csv"),
                INEQUALITY_COLUMNS,
                (
                    {
                        "name": report.name,
                        "points": report.points,
                        "violations": report.violations,
                        "slack": report.slack,
                        "passed": report.passed,
                        **report.violations_by_half_plane,
                    }
                    for report in reports
                ),
            )
        if certificates:
            rows = []
            for cert in certificates:
                for item in [cert] + cert.companions:
                    rows.append(
                        {
                            "symbol_id": item.symbol_id,
                            "kind": item.symbol.kind,
                            "k": item.k,
                            "delta": item.delta,
                            "alpha": item.alpha,
                            "dim": item.dim,
                            "uniform": item.uniform,
                            "empirical_sup": item.empirical_sup,
                            "refined_sup": item.refined_sup,
                            "refinement_drift": item.refinement_drift,
                            "breakdown_count": item.breakdown_count,
                        }
                    )
            save_csv_table(
                os.path.join(tables_dir, "certificates.csv"), CERTIFICATE_COLUMNS, rows
            )

    # Sweeps

    def sweep_samples(self) -> List[ResolventParams]:
        """Resolvent points of the decay sweep, ordered by modulus then angle"""
        section = self.config.sweep
        problem = self.config.problem
        sector = problem.sector()
        angles = section.angles
        if angles is None:
            edge = sector.max_angle - DEFAULT_MARGIN
            angles = [0.0, -edge, edge]
        moduli = np.logspace(
            math.log10(section.modulus_min),
            math.log10(section.modulus_max),
            section.modulus_count,
        )
        return [
            ResolventParams.from_polar(
                float(r), float(theta), alpha=problem.alpha, dim=problem.dim, sector=sector
            )
            for r in moduli
            for theta in sorted(angles)
        ]

    def sweep(self, experiment: Optional[str] = None) -> Result[Dict[str, Any]]:
        """
        Run scaling experiments

        Args:
            experiment: Restrict to one experiment (defaults to sweep.experiment)

        Returns:
            Result, failed when a slope leaves its band, a spread exceeds its
            limit or a sample is under-resolved
        """
        section = self.config.sweep
        tol = self.config.tolerances
        experiment = experiment or section.experiment
        seed = self.config.run.seed
        params = self.params()
        tgrid = self.tangential_grid(params)
        tables_dir = self.dirs["tables_dir"]
        data: Dict[str, Any] = {"experiment": experiment, "seed": seed}
        violations: List[str] = []

        if experiment in ("all", "decay", "alpha"):
            samples = self.sweep_samples()
            phi = phi_family(tgrid, params.tdim, 1, seed, band=section.band)[0]

        if experiment in ("all", "decay"):
            report = resolvent_decay(
                samples,
                section.p,
                tgrid,
                phi,
                wall_intervals=self.config.grid.wall_intervals,
                refine=section.refine,
                seed=seed,
                workers=self.workers,
            )
            save_csv_table(
                os.path.join(tables_dir, "decay.csv"), TABLE_COLUMNS, report.table_rows()
            )
            data["decay"] = report.to_dict()
            if not report.slope_within():
                violations.append(
                    f"decay: fitted slope {report.fitted_slope:.4f} outside band"
                )
            if report.under_resolved:
                violations.append("decay: under-resolved samples")

        if experiment in ("all", "alpha"):
            uniformity = alpha_uniformity(
                samples,
                section.p,
                tgrid,
                phi,
                alphas=section.alphas,
                wall_intervals=self.config.grid.wall_intervals,
                seed=seed,
                workers=self.workers,
                max_spread=tol.alpha_spread,
            )
            rows = [row for report in uniformity.reports for row in report.table_rows()]
            save_csv_table(
                os.path.join(tables_dir, "alpha_uniformity.csv"), TABLE_COLUMNS, rows
            )
            data["alpha_uniformity"] = uniformity.to_dict()
            if not uniformity.passed:
                violations.append(f"alpha uniformity: spread {uniformity.spread:.4f}")
            for alpha, report in zip(uniformity.alphas, uniformity.reports):
                if not report.slope_within():
                    violations.append(
                        f"alpha={alpha:g}: fitted slope {report.fitted_slope:.4f} outside band"
                    )

        if experiment in ("all", "gradient", "proxy"):
            wgrid = self.wall_grid(params)
            phis = phi_family(tgrid, params.tdim, section.phi_count, seed, band=section.band)
            for name, run in (("gradient", gradient_estimate), ("proxy", second_order_proxy)):
                if experiment not in ("all", name):
                    continue
                estimate = run(
                    params,
                    section.p,
                    tgrid,
                    wgrid,
                    phis,
                    refine=section.refine,
                    workers=self.workers,
                )
                save_csv_table(
                    os.path.join(tables_dir, f"{estimate.experiment}.csv"),
                    RATIO_COLUMNS,
                    [
                        {
                            "index": sample.index,
                            "numerator": sample.numerator,
                            "denominator": sample.denominator,
                            "ratio": sample.ratio,
                            "refinement_shift": sample.refinement_shift,
                        }
                        for sample in estimate.samples
                    ],
                )
                data[estimate.experiment] = estimate.to_dict()
                violations.extend(f"{estimate.experiment}: {flag}" for flag in estimate.flags)

        data["violations"] = violations
        if violations:
            for violation in violations:
                logger.warning(f"Sweep check failed: {violation}")
            return Result.failure(f"{len(violations)} sweep checks violated", data=data)
        return Result.success(data)

    # Reports

    def write_report(self, command: str, result: Result, resolved: Dict[str, Any]) -> str:
        """
        Write OUT/report.json

        Args:
            command: Subcommand that produced the result
            result: Outcome of the run
            resolved: Fully resolved configuration

        Returns:
            Path of the report
        """
        path = os.path.join(self.dirs["out_dir"], REPORT_FILE)
        report = {"command": command, "config": resolved}
        report.update(result.to_dict())
        save_json_file(path, report)
        logger.info(f"Report written to {path}")
        return path
