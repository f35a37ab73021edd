import logging

from fastapi import Depends, FastAPI, File, HTTPException, UploadFile, status
from fastapi.concurrency import run_in_threadpool
from pydantic import ValidationError

from . import schemas
from .config import settings
from .core.gram import min_eigenvalue, normalize_gram
from .core.matching import KernelResult
from .core.parser import parse_dataset_text
from .exceptions import GraphKernelError
from .tasks import build_setup, compute_gram, compute_pair

logging.basicConfig(level=settings.LOG_LEVEL)
log = logging.getLogger(__name__)

app = FastAPI(title="Subgraph matching kernels")


def kernel_config_query(
    kernel: schemas.KernelName = schemas.KernelName.CSI,
    max_size: int = 3,
    vertex_kernel: str = "dirac",
    edge_kernel: str = "dirac",
    d_weight: float = 1.0,
    weights: str = "uniform",
    normalize: str = "none",
) -> schemas.KernelConfig:
    """
    Dependency building a KernelConfig from query parameters.
    """
    try:
        return schemas.KernelConfig(
            kernel=kernel,
            max_size=max_size,
            vertex_kernel=vertex_kernel,
            edge_kernel=edge_kernel,
            d_weight=d_weight,
            weights=weights,
            normalize=normalize,
        )
    except ValidationError as e:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=e.errors(include_url=False, include_context=False),
        )


@app.get("/api/v1/health", response_model=schemas.HealthCheck)
def health_check():
    """
    Health check endpoint.
    """
    return {"api_status": "ok", "threads": settings.THREADS}


@app.post("/api/v1/kernels/pair", response_model=KernelResult)
def kernel_pair(request: schemas.PairRequest):
    """
    Evaluates the configured kernel on two graphs and returns the value with
    its per-size breakdown.
    """
    try:
        setup = build_setup(request.config)
        return compute_pair(request.g1, request.g2, setup)
    except GraphKernelError as e:
        log.info(f"Pair request for ({request.g1.graph_id}, {request.g2.graph_id}) rejected: {e}")
        raise HTTPException(status_code=400, detail=str(e))


@app.post("/api/v1/gram/upload", response_model=schemas.GramResponse)
async def upload_dataset(
    file: UploadFile = File(...),
    config: schemas.KernelConfig = Depends(kernel_config_query),
):
    """
    Uploads a dataset file and returns its (optionally normalized) Gram
    matrix together with the smallest eigenvalue.
    """
    file_size = file.file.seek(0, 2)
    file.file.seek(0)

    if file_size > settings.MAX_UPLOAD_SIZE:
        raise HTTPException(
            status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE,
            detail=f"File size exceeds the {settings.MAX_UPLOAD_SIZE / (1024 * 1024):.0f}MB limit. "
                   f"File size: {file_size / (1024 * 1024):.2f} MB",
        )

    log.info(f"Received dataset: {file.filename}, size: {file_size}")

    try:
        text = (await file.read()).decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="Dataset file must be UTF-8 text.")

    try:
        dataset = parse_dataset_text(text, source=file.filename)
        gram = await run_in_threadpool(compute_gram, dataset, config, settings.THREADS)
        gram = normalize_gram(gram, config.normalize)
    except GraphKernelError as e:
        raise HTTPException(status_code=400, detail=str(e))

    return schemas.GramResponse(
        ids=gram.ids,
        values=gram.values.tolist(),
        min_eigenvalue=min_eigenvalue(gram),
        normalize=config.normalize,
    )
