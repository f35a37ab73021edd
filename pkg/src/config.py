from pydantic_settings import BaseSettings

class Settings(BaseSettings):
    THREADS: int = 1 # Default worker count for Gram matrix computation
    LOG_LEVEL: str = "INFO"
    DEBUG_CHECKS: bool = False # Probe base kernels for symmetry before computing
    SYMMETRY_PROBES: int = 100
    MAX_UPLOAD_SIZE: int = 10 * 1024 * 1024 # Dataset upload limit of the HTTP API

    class Config:
        env_prefix = "GK_"
        env_file = ".env"

settings = Settings()
