from logging import getLogger

from pydantic import BaseModel

from src.context import get_run_id
from src.cover_counts.service import build_table, count_covers
from src.graph_enum.service import aut_order, enumerate_graphs
from src.graph_integrals.service import compare_numeric, exact_coefficient
from src.partition_functions.service import boson_sum, verify_boson, verify_fermion, verify_proposition

from .schemas import (
    CountReport,
    GraphEntry,
    GraphListReport,
    IntegralReport,
    RunConfig,
)


log = getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


def count_view(config: RunConfig) -> tuple[int, BaseModel]:
    key = config.count_key()
    n = count_covers(key, config.method, config.work_bound)
    log.info(f"Run ID: [{get_run_id()}] n_{{{key}}} = {n}")
    return EXIT_OK, CountReport(key=key, n=n, method=config.method)


def graphs_view(config: RunConfig) -> tuple[int, BaseModel]:
    graphs = enumerate_graphs(config.b, config.k, config.l, config.variant)
    return EXIT_OK, GraphListReport(
        b=config.b,
        k=config.k,
        l=config.l,
        variant=config.variant,
        graphs=[GraphEntry(graph=g.tokens(), aut=aut_order(g)) for g in graphs],
    )


def integral_view(config: RunConfig) -> tuple[int, BaseModel]:
    key = config.count_key()
    graphs = enumerate_graphs(key.b, key.k, key.l, config.variant)
    coefficients = [exact_coefficient(g, key.d_comp, key.e_comp) for g in graphs]

    numeric = []
    if config.numeric_check:
        z_values, w_values = [config.z] * key.k, [config.w] * key.l
        numeric = [
            compare_numeric(g, z_values, w_values, config.truncation, config.quadrature_points)
            for g in graphs
        ]

    report = IntegralReport(
        key=key,
        variant=config.variant,
        coefficients=coefficients,
        boson_sum=boson_sum(key.b, key.k, key.l, key.d_comp, key.e_comp, config.variant),
        numeric=numeric,
    )
    return (EXIT_OK if report.numeric_ok else EXIT_MISMATCH), report


def table_view(config: RunConfig) -> tuple[int, BaseModel]:
    table = build_table(config.b, config.k, config.l, config.d_max, config.method, config.work_bound, config.threads)
    return EXIT_OK, table


def verify_boson_view(config: RunConfig) -> tuple[int, BaseModel]:
    arguments = (config.b_max, config.k_max, config.l_max, config.d_max, config.work_bound, config.threads)
    report = verify_proposition(*arguments) if config.per_graph else verify_boson(*arguments)
    return (EXIT_OK if report.all_match else EXIT_MISMATCH), report


def verify_fermion_view(config: RunConfig) -> tuple[int, BaseModel]:
    report = verify_fermion(config.b_max, config.d_max, config.work_bound, config.threads)
    return (EXIT_OK if report.all_match else EXIT_MISMATCH), report
