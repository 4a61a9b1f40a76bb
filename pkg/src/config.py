from pydantic import PositiveInt
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="HURWITZ_CX_",
        env_file="hurwitz.env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    project_name: str = "hurwitz-cx"

    # elementary group operations a single count may spend
    work_bound: PositiveInt = 10**9

    threads: PositiveInt = 1

    quadrature_points: int = 512

    log_level: str = "INFO"
    log_file: str | None = None


settings = Settings()
