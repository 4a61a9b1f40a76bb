import contextvars

# id of the CLI run currently executing, None outside a run
run_id_var: contextvars.ContextVar[str | None] = contextvars.ContextVar("run_id", default=None)


def get_run_id() -> str:
    return run_id_var.get() or "-"
