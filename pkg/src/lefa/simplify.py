"""Orchestration of the five simplification experiments (E1-E5).

E1/E3 send a short direct Spanish instruction, E2/E4 run a three-stage
translation round-trip (translate to English, simplify, translate back),
and E5 sends the instruction enriched with the full guideline catalog.
The endpoint contract is a minimal chat-completion JSON shape so any
backend (fine-tuned local model or hosted model) is interchangeable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from importlib import resources as importlib_resources

import requests

from .errors import EmptyResponse, EndpointError, MissingGuidelines, StageFailure
from .linter import Diagnostic, LintConfig, lint_document
from .segmenter import segment_document
from .textmodel import ALL_GUIDELINE_IDS, GUIDELINES, Role, Theme


class PromptKind(Enum):
    SHORT_DIRECT = "short_direct"
    SHORT_DIRECT_ENGLISH = "short_direct_english"
    GUIDELINE_ENRICHED = "guideline_enriched"


def _load_prompt(name: str) -> str:
    raw = (
        importlib_resources.files("lefa.resources").joinpath(name).read_text(encoding="utf-8")
    )
    lines = [l for l in raw.splitlines() if l.strip() and not l.startswith("#")]
    return "\n".join(lines)


BASE_PROMPT_ES = _load_prompt("base_prompt_es.txt")
BASE_PROMPT_EN = _load_prompt("base_prompt_en.txt")

_EXPERIMENT_DEFAULTS = {
    # id: (model_label, roundtrip, prompt_kind)
    "E1": ("7B-finetuned", False, PromptKind.SHORT_DIRECT),
    "E2": ("7B-finetuned", True, PromptKind.SHORT_DIRECT_ENGLISH),
    "E3": ("70B", False, PromptKind.SHORT_DIRECT),
    "E4": ("70B", True, PromptKind.SHORT_DIRECT_ENGLISH),
    "E5": ("70B", False, PromptKind.GUIDELINE_ENRICHED),
}

STAGE_NAMES = ("translate_to_english", "simplify", "translate_to_spanish")


@dataclass(frozen=True)
class ExperimentConfig:
    id: str
    endpoint: str
    model_label: str = ""
    uses_translation_roundtrip: bool = False
    prompt_kind: PromptKind = PromptKind.SHORT_DIRECT
    temperature: float = 0.0
    max_output_tokens: int = 512
    timeout_ms: int = 60_000
    retries: int = 2

    def __post_init__(self) -> None:
        if self.id not in _EXPERIMENT_DEFAULTS:
            raise ValueError(f"unknown experiment id {self.id!r}")
        if self.id in {"E2", "E4"} and not self.uses_translation_roundtrip:
            raise ValueError(f"{self.id} requires the translation round-trip")
        if self.id == "E5" and self.prompt_kind is not PromptKind.GUIDELINE_ENRICHED:
            raise ValueError("E5 requires the guideline-enriched prompt")

    @classmethod
    def for_experiment(cls, experiment_id: str, endpoint: str, **overrides) -> "ExperimentConfig":
        label, roundtrip, kind = _EXPERIMENT_DEFAULTS[experiment_id]
        return cls(
            id=experiment_id,
            endpoint=endpoint,
            model_label=label,
            uses_translation_roundtrip=roundtrip,
            prompt_kind=kind,
            **overrides,
        )


@dataclass(frozen=True)
class SimplificationResult:
    input_sentence: str
    final_output: str
    transcript: tuple[tuple[str, str, str], ...]  # (stage, prompt, raw_response)
    config_id: str


def default_guideline_catalog() -> dict[str, str]:
    return {gid: GUIDELINES[gid].text for gid in ALL_GUIDELINE_IDS}


def build_prompt(
    config: ExperimentConfig,
    text: str,
    guidelines: dict[str, str] | None = None,
    stage: int = 1,
) -> str:
    """Deterministic prompt for one stage.

    For round-trip experiments ``text`` is the previous stage's output when
    ``stage`` is 2 or 3.
    """
    if config.prompt_kind is PromptKind.SHORT_DIRECT:
        return f"{BASE_PROMPT_ES}\n\n{text}"
    if config.prompt_kind is PromptKind.SHORT_DIRECT_ENGLISH:
        if stage == 1:
            return (
                "Translate the following sentence into English. "
                f"Reply with the translation only.\n\n{text}"
            )
        if stage == 2:
            return f"{BASE_PROMPT_EN}\n\n{text}"
        if stage == 3:
            return (
                "Translate the following sentence into Spanish. "
                f"Reply with the translation only.\n\n{text}"
            )
        raise ValueError(f"round-trip stage must be 1, 2 or 3, got {stage}")
    # guideline-enriched
    if not guidelines:
        raise MissingGuidelines("E5 prompt requires the guideline catalog")
    lines = "\n".join(f"{gid}. {guidelines[gid]}" for gid in sorted(guidelines, key=lambda g: int(g[1:])))
    return (
        f"{BASE_PROMPT_ES}\n\n"
        "Sigue estas pautas de lectura fácil:\n"
        f"{lines}\n\n"
        f"{text}"
    )


def _call_endpoint(config: ExperimentConfig, prompt: str, session: requests.Session) -> str:
    url = config.endpoint.rstrip("/") + "/generate"
    timeout = config.timeout_ms / 1000.0
    body = {
        "prompt": prompt,
        "temperature": config.temperature,
        "max_tokens": config.max_output_tokens,
    }
    last_error: Exception | None = None
    for _attempt in range(config.retries + 1):
        try:
            resp = session.post(url, json=body, timeout=timeout)
            if resp.status_code != 200:
                last_error = EndpointError(f"HTTP {resp.status_code} from {url}")
                continue
            text = resp.json().get("text")
            if text is None:
                last_error = EndpointError("response missing 'text' field")
                continue
            if not text.strip():
                raise EmptyResponse("endpoint returned an empty completion")
            return text
        except EmptyResponse:
            raise
        except (requests.RequestException, ValueError) as exc:
            last_error = exc
    raise EndpointError(f"endpoint failed after {config.retries + 1} attempts: {last_error}")


def simplify(
    config: ExperimentConfig,
    input_sentence: str,
    guidelines: dict[str, str] | None = None,
) -> SimplificationResult:
    """Run the configured experiment: one call, or three staged calls."""
    session = requests.Session()
    transcript: list[tuple[str, str, str]] = []
    if config.uses_translation_roundtrip:
        current = input_sentence
        for stage_no, stage_name in enumerate(STAGE_NAMES, start=1):
            prompt = build_prompt(config, current, guidelines, stage=stage_no)
            try:
                response = _call_endpoint(config, prompt, session)
            except (EndpointError, EmptyResponse) as exc:
                raise StageFailure(stage_name, exc) from exc
            transcript.append((stage_name, prompt, response))
            current = response.strip()
    else:
        prompt = build_prompt(config, input_sentence, guidelines)
        response = _call_endpoint(config, prompt, session)
        transcript.append(("simplify", prompt, response))
    return SimplificationResult(
        input_sentence=input_sentence,
        final_output=transcript[-1][2].strip(),
        transcript=tuple(transcript),
        config_id=config.id,
    )


def simplify_and_audit(
    config: ExperimentConfig,
    input_sentence: str,
    lint_config: LintConfig = LintConfig(),
    guidelines: dict[str, str] | None = None,
) -> tuple[SimplificationResult, list[Diagnostic]]:
    """Simplify, then lint the output against the guideline rule set."""
    result = simplify(config, input_sentence, guidelines)
    output_doc = segment_document(
        f"{config.id}-output", Role.ADAPTED, Theme.OTHER, result.final_output
    )
    return result, lint_document(output_doc, lint_config)
