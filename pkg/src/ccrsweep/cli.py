"""Command-line driver: sweep (channel, x, p) grids and verify identities.

``ccrsweep sweep`` evaluates a grid of complementarity reports and writes
them as CSV or JSON in a fixed column order with shortest round-trip float
formatting, so identical configurations produce byte-identical files.

``ccrsweep verify`` re-derives every identity and invariant on a grid and
exits 0 exactly when the worst residual of each named check stays within
tolerance, printing the worst offender per check.

Options may come from a flat ``key=value`` config file (``--config``);
command-line flags win over file values.  Exit codes: 0 success, 1 tolerance
or I/O failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelKind, ChannelSpec, apply_kraus, dilate, kraus_set, validate_kraus
from .linalg import outer, partial_trace, partial_transpose, hermitian_eigenvalues
from .measures import (
    concurrence_x_state,
    hs_coherence,
    hs_predictability,
    linear_entropy,
    sector_decomposition,
)
from .reports import (
    APPLICABLE_IDENTITIES,
    BALANCED_X,
    CCRReport,
    IdentityId,
    _sudden_death_bisection,
    ccr_report,
    initial_state,
)

#: Initial-state grid matching the curve families usually plotted.
DEFAULT_X = (0.1, 0.2, 0.25, 0.5, BALANCED_X)

CSV_COLUMNS = (
    "channel", "mu", "x", "p",
    "P_hs_A", "C_hs_A", "S_l_A",
    "Cc_AB", "Cc_AEA", "Cc_AEB", "Cc_EAEB", "Cc_ABE",
    "C_global", "C_env", "concurrence_AB",
    "ppt_AEA", "ppt_AEB", "ppt_EAEB",
    "mutual_info_AB", "residual_ccr", "residual_channel_identity",
)


@dataclass(frozen=True)
class SweepConfig:
    channels: tuple[ChannelKind, ...] = tuple(ChannelKind)
    x_values: tuple[float, ...] = DEFAULT_X
    p_start: float = 0.0
    p_stop: float = 1.0
    p_count: int = 101
    mu: float = 1.0
    output: str | None = None
    fmt: str = "csv"
    tolerance: float = 1e-10

    def __post_init__(self):
        if not self.channels:
            raise ValueError("channels: must name at least one channel")
        if not all(0.0 <= x <= 1.0 for x in self.x_values):
            raise ValueError(f"x: values must lie in [0, 1], got {self.x_values}")
        if self.p_count < 2:
            raise ValueError(f"p_count: must be >= 2, got {self.p_count}")
        if not 0.0 <= self.p_start <= self.p_stop <= 1.0:
            raise ValueError(
                f"p_start/p_stop: need 0 <= start <= stop <= 1, got {self.p_start}, {self.p_stop}"
            )
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu: must lie in [0, 1], got {self.mu}")
        if ChannelKind.CADC in self.channels and self.mu not in (0.0, 1.0):
            raise ValueError(
                f"mu: CADC reports require mu of 0 or 1 (the mixed map has no "
                f"two-qubit-environment dilation), got {self.mu}"
            )
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format: must be csv or json, got {self.fmt!r}")
        if not self.tolerance > 0.0:
            raise ValueError(f"tolerance: must be positive, got {self.tolerance}")

    def p_grid(self) -> list[float]:
        return [float(p) for p in np.linspace(self.p_start, self.p_stop, self.p_count)]

    def spec(self, kind: ChannelKind, p: float) -> ChannelSpec:
        mu = self.mu if kind is ChannelKind.CADC else 0.0
        return ChannelSpec(kind, p, mu)


def run_sweep(cfg: SweepConfig) -> list[CCRReport]:
    """One report per (channel, x, p), ordered channel / x asc / p asc."""
    reports = []
    for kind in cfg.channels:
        xs = (BALANCED_X,) if kind is ChannelKind.BFC else tuple(sorted(cfg.x_values))
        for x in xs:
            for p in cfg.p_grid():
                reports.append(ccr_report(cfg.spec(kind, p), x))
    return reports


def _report_row(report: CCRReport) -> dict[str, object]:
    row: dict[str, object] = {
        "channel": report.channel.kind.value,
        "mu": report.channel.mu,
        "x": report.x,
        "p": report.p,
    }
    for name in CSV_COLUMNS[4:-2]:
        row[name] = report.measures.get(name)
    row["residual_ccr"] = report.residuals[IdentityId.CCR_UNIVERSAL]
    headline = APPLICABLE_IDENTITIES[report.channel.kind][0]
    row["residual_channel_identity"] = report.residuals[headline]
    return row


def _fmt_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return repr(float(value))  # shortest decimal that round-trips


def render_csv(reports: list[CCRReport]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for report in reports:
        row = _report_row(report)
        lines.append(",".join(_fmt_cell(row[name]) for name in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def render_json(reports: list[CCRReport]) -> str:
    return json.dumps([_report_row(r) for r in reports], indent=2) + "\n"


def emit(reports: list[CCRReport], fmt: str, path: str) -> None:
    """Write the report table; field names and order are identical for both
    formats, with inapplicable measures left empty (CSV) or null (JSON)."""
    if not reports:
        raise ValueError("nothing to emit: no reports were produced")
    text = render_csv(reports) if fmt == "csv" else render_json(reports)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


@dataclass
class _Tracker:
    """Worst residual seen per named check, with where it occurred."""

    worst: dict[str, tuple[float, str]] = field(default_factory=dict)

    def track(self, name: str, value: float, where: str) -> None:
        value = float(value)
        if name not in self.worst or value > self.worst[name][0]:
            self.worst[name] = (value, where)


def _lean_ccr_residual(spec: ChannelSpec, x: float) -> float:
    psi, layout = initial_state(spec.kind, x)
    dres = dilate(spec, psi, layout)
    rho_a = partial_trace(outer(dres.state, dres.layout), {"A"})
    return abs(
        hs_predictability(rho_a) + hs_coherence(rho_a) + linear_entropy(rho_a) - 0.5
    )


def _verify_reports(cfg: SweepConfig, t: _Tracker) -> None:
    for report in run_sweep(cfg):
        kind = report.channel.kind
        where = f"{kind.value} x={report.x:g} p={report.p:g}"
        t.track("ccr_universal", report.residuals[IdentityId.CCR_UNIVERSAL], where)
        for ident in APPLICABLE_IDENTITIES[kind]:
            if (
                ident is IdentityId.THREE_HALVES
                and kind is not ChannelKind.PFC
                and abs(report.x - BALANCED_X) > 1e-12
            ):
                # for the sigma_y-branch kinds the A-E_A correlated coherence
                # is (1 + 2 x^2 (1-x^2)) S_l, which reaches 3/2 S_l only at
                # x = 1/sqrt(2); off that point the 3/2 form is not an identity
                continue
            t.track(ident.value, report.residuals[ident], where)
        m = report.measures
        if kind is ChannelKind.ADC:
            t.track("adc_entropy_dominance", max(0.0, m["Cc_AB"] - m["S_l_A"]), where)
            if abs(report.x - BALANCED_X) <= 1e-12:
                # data-property check of the x = 1/sqrt(2) columns against the
                # closed forms of the marginal diag((1+p)/2, (1-p)/2)
                p = report.p
                t.track(
                    "adc_symmetric_columns",
                    max(
                        abs(m["P_hs_A"] - p * p / 2),
                        abs(m["Cc_AB"] - (1 - p) ** 2 / 2),
                        abs(m["S_l_A"] - (1 - p * p) / 2),
                    ),
                    where,
                )
        if kind in (ChannelKind.PDC, ChannelKind.PFC):
            t.track(
                f"{kind.value}_predictability_invariance",
                abs(m["P_hs_A"] - m["P_hs_A_initial"]),
                where,
            )
        if kind is ChannelKind.DC and report.p == 1.0:
            t.track("dc_terminal_locality", abs(m["S_l_A"]), where)
            t.track("dc_terminal_locality", abs(m["C_global"] - m["C_hs_A"]), where)
            t.track("dc_terminal_locality", abs(m["Cc_AEA"]), where)


def _verify_ccr_extended(cfg: SweepConfig, t: _Tracker) -> None:
    xs = [round(0.1 * i, 1) for i in range(11)]
    for kind in cfg.channels:
        kind_xs = [BALANCED_X] if kind is ChannelKind.BFC else xs
        for x in kind_xs:
            for p in cfg.p_grid():
                t.track(
                    "ccr_universal",
                    _lean_ccr_residual(cfg.spec(kind, p), x),
                    f"{kind.value} x={x:g} p={p:g}",
                )


def _verify_kraus(cfg: SweepConfig, t: _Tracker) -> None:
    for kind in cfg.channels:
        for p in cfg.p_grid():
            mus = (0.0, 0.5, 1.0) if kind is ChannelKind.CADC else (0.0,)
            for mu in mus:
                spec = ChannelSpec(kind, p, mu)
                where = f"{kind.value} p={p:g} mu={mu:g}"
                ks = kraus_set(spec)
                t.track("kraus_completeness", validate_kraus(ks), where)
                if kind is ChannelKind.CADC and mu == 0.5:
                    continue  # no two-qubit-environment dilation to compare
                for x in (0.5, BALANCED_X):
                    psi, layout = initial_state(kind, x)
                    dres = dilate(spec, psi, layout)
                    t.track(
                        "dilation_norm",
                        abs(float(np.vdot(dres.state, dres.state).real) - 1.0),
                        where,
                    )
                    via_dilation = partial_trace(
                        outer(dres.state, dres.layout), set(layout.labels)
                    )
                    via_kraus = apply_kraus(outer(psi, layout), ks)
                    t.track(
                        "dilation_kraus_agreement",
                        float(np.abs(via_dilation.mat - via_kraus.mat).max()),
                        f"{where} x={x:g}",
                    )


def _verify_cadc_limit(cfg: SweepConfig, t: _Tracker) -> None:
    if ChannelKind.CADC not in cfg.channels:
        return
    psi, layout = initial_state(ChannelKind.CADC, 0.5)
    rho0 = outer(psi, layout)
    for p in cfg.p_grid():
        memoryless = apply_kraus(rho0, kraus_set(ChannelSpec(ChannelKind.CADC, p, 0.0)))
        plain = apply_kraus(rho0, kraus_set(ChannelSpec(ChannelKind.ADC, p)))
        t.track(
            "cadc_memoryless_limit",
            float(np.abs(memoryless.mat - plain.mat).max()),
            f"cadc p={p:g}",
        )


def _verify_ppt_and_concurrence(cfg: SweepConfig, t: _Tracker) -> None:
    two_qubit = [k for k in cfg.channels if k.n_system_qubits == 2]
    for kind in two_qubit:
        xs = (BALANCED_X,) if kind is ChannelKind.BFC else tuple(sorted(cfg.x_values))
        for x in xs:
            for p in cfg.p_grid():
                spec = cfg.spec(kind, p)
                where = f"{kind.value} x={x:g} p={p:g}"
                psi, layout = initial_state(kind, x)
                dres = dilate(spec, psi, layout)
                rho_g = outer(dres.state, dres.layout)
                rho_ab = partial_trace(rho_g, {"A", "B"})
                conc = concurrence_x_state(rho_ab)
                lam_ab = hermitian_eigenvalues(partial_transpose(rho_ab, "A"))[0]
                entangled_but_ppt = conc > 1e-10 and lam_ab >= -cfg.tolerance
                t.track("xstate_ppt_consistency", 1.0 if entangled_but_ppt else 0.0, where)
                if kind in (ChannelKind.PDC, ChannelKind.BFC):
                    for labels, sub in ((("A", "E_A"), "A"), (("A", "E_B"), "A"),
                                        (("E_A", "E_B"), "E_A")):
                        rho = partial_trace(rho_g, set(labels))
                        lam = hermitian_eigenvalues(partial_transpose(rho, sub))[0]
                        t.track("cross_partition_ppt", max(0.0, -float(lam)), where)
                sectors = sector_decomposition(dres.state, dres.layout)
                t.track(
                    "sector_total_consistency",
                    abs(sectors.total - hs_coherence(rho_g)),
                    where,
                )


def _verify_sudden_death(cfg: SweepConfig, t: _Tracker) -> None:
    if ChannelKind.ADC not in cfg.channels:
        return
    for x in (0.1, 0.2, 0.25, 0.3, 0.5):
        closed = x / math.sqrt(1.0 - x * x)
        t.track(
            "adc_sudden_death",
            abs(closed - _sudden_death_bisection(x)),
            f"adc x={x:g}",
        )


def verify_command(cfg: SweepConfig) -> int:
    """Run every invariant check; print one worst-offender line per check."""
    t = _Tracker()
    _verify_reports(cfg, t)
    _verify_ccr_extended(cfg, t)
    _verify_kraus(cfg, t)
    _verify_cadc_limit(cfg, t)
    _verify_ppt_and_concurrence(cfg, t)
    _verify_sudden_death(cfg, t)

    failures = 0
    for name in sorted(t.worst):
        value, where = t.worst[name]
        ok = value <= cfg.tolerance
        failures += 0 if ok else 1
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name:<32} worst {value:.3e}  at {where}")
    total = len(t.worst)
    print(f"{total - failures}/{total} checks within tolerance {cfg.tolerance:g}")
    return 0 if failures == 0 else 1


# --------------------------------------------------------------------------
# argument and config-file handling
# --------------------------------------------------------------------------


def _parse_channels(text: str) -> tuple[ChannelKind, ...]:
    kinds = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        try:
            kinds.append(ChannelKind(token))
        except ValueError:
            names = ",".join(k.value for k in ChannelKind)
            raise ValueError(f"channels: unknown channel {token!r} (choose from {names})")
    return tuple(kinds)


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def read_config_file(path: str) -> dict[str, str]:
    """Flat key=value lines; blank lines and #-comments ignored."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


_CONFIG_KEYS = {
    "channels", "x", "p_start", "p_stop", "p_count", "mu", "format", "out", "tolerance",
}


def build_config(args: argparse.Namespace) -> SweepConfig:
    file_values: dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = read_config_file(args.config)
        unknown = set(file_values) - _CONFIG_KEYS
        if unknown:
            raise ValueError(f"config file: unknown keys {sorted(unknown)}")

    def pick(flag_value, key: str, convert, default):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            return convert(file_values[key])
        return default

    return SweepConfig(
        channels=pick(args.channels, "channels", _parse_channels, tuple(ChannelKind)),
        x_values=pick(args.x, "x", _parse_floats, DEFAULT_X),
        p_start=pick(args.p_start, "p_start", float, 0.0),
        p_stop=pick(args.p_stop, "p_stop", float, 1.0),
        p_count=pick(args.p_count, "p_count", int, 101),
        mu=pick(args.mu, "mu", float, 1.0),
        output=pick(getattr(args, "out", None), "out", str, None),
        fmt=pick(getattr(args, "format", None), "format", str, "csv"),
        tolerance=pick(getattr(args, "tolerance", None), "tolerance", float, 1e-10),
    )


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--channels", type=_parse_channels, metavar="adc,cadc,...",
                        help="comma-separated channel kinds (default: all)")
    parser.add_argument("--x", type=_parse_floats, metavar="0.5,0.7071,...",
                        help="comma-separated initial-state amplitudes x")
    parser.add_argument("--p-start", dest="p_start", type=float)
    parser.add_argument("--p-stop", dest="p_stop", type=float)
    parser.add_argument("--p-count", dest="p_count", type=int)
    parser.add_argument("--mu", type=float, help="CADC memory weight (0 or 1)")
    parser.add_argument("--config", help="flat key=value config file; flags win")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ccrsweep",
        description="Sweep noisy-channel complementarity reports and verify identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep_p = sub.add_parser("sweep", help="evaluate a grid and write CSV/JSON")
    _add_grid_flags(sweep_p)
    sweep_p.add_argument("--format", choices=("csv", "json"))
    sweep_p.add_argument("--out", help="output file path")

    verify_p = sub.add_parser("verify", help="run the identity/invariant suite")
    _add_grid_flags(verify_p)
    verify_p.add_argument("--tolerance", type=float, help="residual bound (default 1e-10)")

    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        if args.command == "sweep" and cfg.output is None:
            raise ValueError("out: an output path is required for sweep")
    except (ValueError, OSError) as exc:
        print(f"ccrsweep: configuration error: {exc}", file=sys.stderr)
        return 2

    if args.command == "sweep":
        try:
            reports = run_sweep(cfg)
            emit(reports, cfg.fmt, cfg.output)
        except OSError as exc:
            print(f"ccrsweep: {exc}", file=sys.stderr)
            return 1
        return 0
    return verify_command(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
