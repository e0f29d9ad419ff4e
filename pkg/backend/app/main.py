"""
OreSolve API - HTTP front end for the difference operator engine
Same commands and JSON reports as the CLI
"""
import logging
from datetime import datetime
from typing import List, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from app.core.config import settings
from app.core.errors import CorpusError, OreSolveError, ParseError
from app.core.logging_setup import setup_logging
from app.services import pipeline
from app.services.corpus import corpus
from app.services.pipeline import RunOptions
from app.services.report import ReportModel, build_report

setup_logging(settings.log_level)
logger = logging.getLogger(__name__)


class RunRequest(BaseModel):
    command: str
    operators: List[str]
    order: Optional[int] = None
    p: Optional[int] = None
    d: Optional[int] = None
    terms: Optional[int] = None
    filter: Optional[str] = None
    timings: bool = False


class CorpusEntryResponse(BaseModel):
    name: str
    order: int
    operator: str
    description: str = ""
    oracle: Optional[str] = None
    expected: Optional[str] = None


app = FastAPI(title=settings.app_name)
app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_credentials=True, allow_methods=["*"], allow_headers=["*"])


def _entry_response(name: str) -> CorpusEntryResponse:
    entry = corpus.get(name)
    expected = None
    if entry.expected:
        expected = " ".join([entry.expected.command] + [f"{k}={v}" for k, v in entry.expected.params.items()])
    return CorpusEntryResponse(name=entry.name, order=entry.operator.order, operator=entry.text,
                               description=entry.description, oracle=entry.oracle, expected=expected)


@app.get("/")
async def root():
    return {"message": f"{settings.app_name} - difference operator solver"}


@app.get("/health")
async def health():
    return {"status": "healthy", "schema_version": settings.report_schema_version,
            "timestamp": datetime.now().isoformat()}


@app.get("/api/v1/corpus", response_model=List[CorpusEntryResponse])
def list_corpus():
    return [_entry_response(name) for name in corpus.names()]


@app.get("/api/v1/corpus/{name}", response_model=CorpusEntryResponse)
def get_corpus_entry(name: str):
    try:
        return _entry_response(name)
    except CorpusError as e:
        raise HTTPException(status_code=404, detail=str(e))


@app.post("/api/v1/run", response_model=ReportModel)
def run_command(request: RunRequest):
    """Run one command; engine preconditions and parse errors come back as 400"""
    if request.filter not in (None, "det", "none"):
        raise HTTPException(status_code=400, detail="filter must be 'det' or 'none'")
    opts = RunOptions(
        order=request.order,
        p=request.p,
        d=request.d,
        terms=request.terms,
        use_filter=None if request.filter is None else request.filter == "det",
        timings=request.timings,
    )
    try:
        result = pipeline.run(request.command, request.operators, opts)
    except ParseError as e:
        raise HTTPException(status_code=400, detail={"error": "parse", "message": str(e), "position": e.position})
    except CorpusError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except OreSolveError as e:
        logger.warning(f"run rejected: {e}")
        raise HTTPException(status_code=400, detail=str(e))
    return build_report(result)
