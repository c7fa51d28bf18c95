import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

from backjump.models.report import Branching, Engine, EschemaMode, OutputFormat

load_dotenv()


class Settings(BaseSettings):
    # Random instance generation
    eser_seed: int = int(os.getenv("ESER_SEED", "2015"))

    # Solver defaults (CLI flags override these); unknown names fail at load time
    default_engine: Engine = Engine.cbj
    default_branching: Branching = Branching.mindom
    default_timeout_ms: int = 60000
    default_format: OutputFormat = OutputFormat.human

    # "specific" uses each constraint's own e-schema, "default" forces DOM rules everywhere
    eschema_mode: EschemaMode = EschemaMode.specific

    # Benchmark settings
    bench_workers: int = 1

    log_level: str = "WARNING"

    class Config:
        env_file = ".env"
        extra = "ignore"


settings = Settings()
