import csv
import io

from pydantic import BaseModel

from src.cover_counts.schemas import CoefficientTable, CountKey
from src.partition_functions.schemas import BosonReport, FermionReport, PropositionReport

from .schemas import CountReport, GraphListReport, IntegralReport, OutputFormat


def _joined(parts) -> str:
    return ";".join(map(str, parts))


def _key_columns(key: CountKey) -> list:
    return [key.b, key.k, key.l, _joined(key.d_comp.parts), _joined(key.e_comp.parts)]


KEY_HEADER = ["b", "k", "l", "d", "e"]


def csv_rows(report: BaseModel) -> list[list]:
    match report:
        case CoefficientTable():
            return [KEY_HEADER + ["n"]] + [_key_columns(row.key) + [row.n] for row in report.rows]
        case CountReport():
            return [KEY_HEADER + ["n"], _key_columns(report.key) + [report.n]]
        case BosonReport():
            return [KEY_HEADER + ["oracle", "graph_sum", "match"]] + [
                _key_columns(row.key) + [row.oracle, row.graph_sum, row.match] for row in report.rows
            ]
        case PropositionReport():
            return [KEY_HEADER + ["graph", "count", "f_gamma", "match"]] + [
                _key_columns(row.key) + [row.graph, row.count, row.f_gamma, row.match] for row in report.rows
            ]
        case FermionReport():
            return [["b", "d", "lhs", "rhs", "match"]] + [
                [row.b, row.d, row.lhs, row.rhs, row.match] for row in report.rows
            ]
        case GraphListReport():
            return [["graph", "aut"]] + [[entry.graph, entry.aut] for entry in report.graphs]
        case IntegralReport():
            return [["graph", "aut", "integral", "f_gamma"]] + [
                [c.graph, c.aut, c.integral, c.f_gamma] for c in report.coefficients
            ]
    raise TypeError(f"no csv layout for {type(report).__name__}")


def text_lines(report: BaseModel) -> list[str]:
    match report:
        case CountReport():
            return [str(report.n)]
        case CoefficientTable():
            return [f"{row.key} n={row.n}" for row in report.rows]
        case GraphListReport():
            lines = [f"{len(report.graphs)} graph(s) in G_{{{report.b},{report.k},{report.l}}} ({report.variant})"]
            return lines + [f"{entry.graph} aut={entry.aut}" for entry in report.graphs]
        case IntegralReport():
            lines = [f"{c.graph} aut={c.aut} I={c.integral} F={c.f_gamma}" for c in report.coefficients]
            lines.append(f"boson sum {report.key}: {report.boson_sum}")
            for check in report.numeric:
                status = "ok" if check.agrees else "MISMATCH"
                lines.append(
                    f"numeric {check.graph}: quadrature={check.quadrature_re:.12g}{check.quadrature_im:+.3g}j "
                    f"series={check.series_re:.12g} (D={check.truncation}) rel.err={check.relative_error:.3g} {status}"
                )
            return lines
        case BosonReport():
            lines = [
                f"{row.key} oracle={row.oracle} graph_sum={row.graph_sum} {'ok' if row.match else 'MISMATCH'}"
                for row in report.rows
            ]
            return lines + [f"{len(report.rows)} keys, {len(report.mismatches)} mismatches"]
        case PropositionReport():
            lines = [
                f"{row.key} {row.graph} count={row.count} F={row.f_gamma} {'ok' if row.match else 'MISMATCH'}"
                for row in report.rows
            ]
            return lines + [f"{len(report.rows)} graph rows, {len(report.mismatches)} mismatches"]
        case FermionReport():
            lines = [
                f"b={row.b} d={row.d} covers={row.lhs} fermion={row.rhs} {'ok' if row.match else 'MISMATCH'}"
                for row in report.rows
            ]
            return lines + [f"{len(report.rows)} pairs, {len(report.mismatches)} mismatches"]
    raise TypeError(f"no text layout for {type(report).__name__}")


def render(report: BaseModel, output_format: OutputFormat) -> str:
    if output_format == OutputFormat.JSON:
        return report.model_dump_json(by_alias=True, indent=2) + "\n"
    if output_format == OutputFormat.CSV:
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(csv_rows(report))
        return buffer.getvalue()
    return "\n".join(text_lines(report)) + "\n"
