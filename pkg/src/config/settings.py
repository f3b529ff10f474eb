from pydantic_settings import BaseSettings


class Settings(BaseSettings):

    LOG_LEVEL: str = "INFO"

    # Пул потоков для независимых подзадач (ячейки контура, мультистарты)
    WORKER_CONCURRENCY: int = 4

    # Интегрирование ОДУ
    GRID_POINTS: int = 257
    ODE_RTOL: float = 1e-12
    ODE_ATOL: float = 1e-14
    ODE_TOL: float = 1e-10
    RESCALE_THRESHOLD: float = 50.0
    SINGULARITY_THRESHOLD: float = 1e-8

    # Поиск корней по принципу аргумента
    ROOT_TOL: float = 1e-10
    CONTOUR_MIN_POINTS: int = 64
    CONTOUR_MAX_POINTS: int = 8192
    NEWTON_MAX_ITER: int = 50

    # Якорь для сведения к системе первого порядка
    ANCHOR_R0: float = 20.0
    ANCHOR_R_MAX: float = 1e3
    ANCHOR_DELTA: float = 1e-3

    # Обратная задача
    FIT_TOL: float = 1e-10
    FIT_STARTS: int = 8
    FIT_DIFF_STEP: float = 1e-6
    FIT_RIDGE: float = 1e-12

    # Произведения Адамара
    HADAMARD_TAIL_FIT: int = 20
    HADAMARD_AMBIGUITY: float = 0.05

    class Config:
        env_file = ".env"
        case_sensitive = False


settings = Settings()
