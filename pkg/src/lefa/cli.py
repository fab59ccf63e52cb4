"""Unified command-line entry point: lefa <segment|align|stats|lint|simplify|evaluate>.

Exit codes: 0 success (for lint: no violations), 1 lint violations found,
2 configuration, usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .aligner import AlignmentConfig, align
from .corpus import PairFormat, SCHEMA_VERSION, compute_stats, export_pairs, import_pairs
from .embeddings import EmbeddingProviderConfig, ProviderKind
from .errors import LefaError
from .evaluator import (
    compare_compliance,
    detect_agreement_errors,
    detect_term_inconsistency,
    detect_unexplained_terms,
)
from .linter import LintConfig, Severity, lint_document, load_lint_config
from .segmenter import DEFAULT_CONFIG, SegmenterConfig, segment_document, tokenize
from .simplify import ExperimentConfig, default_guideline_catalog, simplify, simplify_and_audit
from .textmodel import Role, Theme, load_document, save_document

log = logging.getLogger("lefa")


def _load_tool_config(path) -> dict[str, str]:
    """Minimal key = value config file; flags always win over file values."""
    values: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise LefaError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip().strip('"')
    return values


def _parse_provider(spec: str, dims: int | None = None) -> EmbeddingProviderConfig:
    if spec.startswith(("http://", "https://")):
        return EmbeddingProviderConfig(
            kind=ProviderKind.HTTP_SERVICE, path_or_url=spec, expected_dims=dims or 768
        )
    if spec.startswith("file:"):
        spec = spec[len("file:"):]
    if dims is None:
        # infer dimensionality from the store itself
        from .embeddings import read_store

        store = read_store(spec)
        if not store:
            raise LefaError(f"embedding store {spec!r} is empty")
        dims = len(next(iter(store.values())))
    return EmbeddingProviderConfig(kind=ProviderKind.FILE_BACKED, path_or_url=spec, expected_dims=dims)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lefa", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lefa {__version__} (schema {SCHEMA_VERSION})")
    parser.add_argument("--config", help="key = value configuration file; flags win")
    parser.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="segment and tokenize a plain-text document")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--abbrev", help="abbreviation lexicon file (one entry per line)")
    p.add_argument("--id", dest="doc_id")
    p.add_argument("--role", choices=[r.value for r in Role], default="original")
    p.add_argument("--theme", choices=[t.value for t in Theme], default="other")

    p = sub.add_parser("align", help="align original and adapted documents")
    p.add_argument("--original", required=True)
    p.add_argument("--adapted", required=True)
    p.add_argument("--provider", required=True, help="file:vectors.jsonl or an http(s) URL")
    p.add_argument("--dims", type=int, help="embedding dimensionality (inferred for file stores)")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--format", choices=["jsonl", "tsv"], default="jsonl")
    p.add_argument("--one-to-one", action="store_true", help="disallow many-to-one matches")

    p = sub.add_parser("stats", help="corpus statistics for pairs or documents")
    p.add_argument("--in", dest="infiles", required=True, nargs="+")
    p.add_argument("--figures", help="directory for rendered figures")

    p = sub.add_parser("lint", help="audit a document against the guidelines")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--resources", help="resource directory (lexicons, glossary, idioms)")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--applicability", action="store_true", help="also print the applicability report")

    p = sub.add_parser("simplify", help="run a simplification experiment")
    p.add_argument("--experiment", required=True, choices=["E1", "E2", "E3", "E4", "E5"])
    p.add_argument("--in", dest="infile", required=True, help="one sentence per line")
    p.add_argument("--endpoint", required=True)
    p.add_argument("--out", dest="outfile", required=True)
    p.add_argument("--audit", action="store_true")
    p.add_argument("--resources")
    p.add_argument("--temperature", type=float, default=0.0)
    p.add_argument("--max-tokens", type=int, default=512)

    p = sub.add_parser("evaluate", help="compare a candidate against a gold adaptation")
    p.add_argument("--gold", required=True)
    p.add_argument("--candidate", required=True)
    p.add_argument("--resources")
    p.add_argument("--report", required=True)
    p.add_argument("--figures")

    return parser


def _segmenter_config(args) -> SegmenterConfig:
    if getattr(args, "abbrev", None):
        entries = [
            line.strip()
            for line in Path(args.abbrev).read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        ]
        return SegmenterConfig(abbreviation_lexicon=frozenset(entries))
    return DEFAULT_CONFIG


def _lint_config(resources: str | None) -> LintConfig:
    if resources:
        return load_lint_config(resources)
    return LintConfig()


def _cmd_segment(args) -> int:
    config = _segmenter_config(args)
    text = Path(args.infile).read_text(encoding="utf-8")
    doc_id = args.doc_id or Path(args.infile).stem
    doc = segment_document(doc_id, Role(args.role), Theme(args.theme), text, config)
    save_document(doc, args.outfile)
    print(f"{doc.id}: {len(doc.sentences)} sentences -> {args.outfile}")
    return 0


def _cmd_align(args) -> int:
    tokenizer = lambda s: tokenize(s, DEFAULT_CONFIG)
    original = load_document(args.original, tokenizer=tokenizer)
    adapted = load_document(args.adapted, tokenizer=tokenizer)
    provider = _parse_provider(args.provider, args.dims)
    config = AlignmentConfig(
        similarity_threshold=args.threshold, allow_many_to_one=not args.one_to_one
    )
    corpus = align(original, adapted, provider, config)
    export_pairs(corpus, args.outfile, PairFormat(args.format))
    print(
        f"{len(corpus.pairs)} pairs, {len(corpus.dropped_originals)} dropped originals "
        f"-> {args.outfile}"
    )
    return 0


def _cmd_stats(args) -> int:
    corpus = None
    if len(args.infiles) == 1 and not args.infiles[0].endswith(".json"):
        corpus = import_pairs(args.infiles[0])
        stats = compute_stats(corpus)
    else:
        tokenizer = lambda s: tokenize(s, DEFAULT_CONFIG)
        docs = [load_document(f, tokenizer=tokenizer) for f in args.infiles]
        stats = compute_stats(docs)
    print(json.dumps(stats.to_dict(), indent=2, ensure_ascii=False))
    if args.figures:
        from .report import render_stats_figures

        for path in render_stats_figures(stats, args.figures, corpus=corpus):
            print(f"figure: {path}", file=sys.stderr)
    return 0


def _cmd_lint(args) -> int:
    tokenizer = lambda s: tokenize(s, DEFAULT_CONFIG)
    doc = load_document(args.infile, tokenizer=tokenizer)
    config = _lint_config(args.resources)
    diagnostics = lint_document(doc, config)
    if args.format == "json":
        print(json.dumps([d.to_dict() for d in diagnostics], indent=2, ensure_ascii=False))
    else:
        for d in diagnostics:
            print(
                f"{doc.id}:s{d.sentence_index}:{d.span[0]}-{d.span[1]} "
                f"{d.guideline} {d.severity.value}: {d.message} [{d.evidence}]"
            )
        print(f"{len(diagnostics)} findings")
    if args.applicability:
        from .linter import applicability

        print(json.dumps(applicability(doc, config).to_dict(), indent=2, ensure_ascii=False))
    return 1 if any(d.severity is Severity.VIOLATION for d in diagnostics) else 0


def _cmd_simplify(args) -> int:
    config = ExperimentConfig.for_experiment(
        args.experiment,
        endpoint=args.endpoint,
        temperature=args.temperature,
        max_output_tokens=args.max_tokens,
    )
    guidelines = default_guideline_catalog() if args.experiment == "E5" else None
    lint_config = _lint_config(args.resources) if args.audit else None
    sentences = [
        line.strip()
        for line in Path(args.infile).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    with open(args.outfile, "w", encoding="utf-8") as fh:
        for sentence in sentences:
            if args.audit:
                result, diags = simplify_and_audit(config, sentence, lint_config, guidelines)
                record = {
                    "experiment": config.id,
                    "input": result.input_sentence,
                    "output": result.final_output,
                    "transcript": [list(t) for t in result.transcript],
                    "diagnostics": [d.to_dict() for d in diags],
                }
            else:
                result = simplify(config, sentence, guidelines)
                record = {
                    "experiment": config.id,
                    "input": result.input_sentence,
                    "output": result.final_output,
                    "transcript": [list(t) for t in result.transcript],
                }
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    print(f"{len(sentences)} sentences simplified -> {args.outfile}")
    return 0


def _cmd_evaluate(args) -> int:
    tokenizer = lambda s: tokenize(s, DEFAULT_CONFIG)
    gold = load_document(args.gold, tokenizer=tokenizer)
    candidate = load_document(args.candidate, tokenizer=tokenizer)
    config = _lint_config(args.resources)
    errors = detect_agreement_errors(candidate)
    errors += detect_term_inconsistency(candidate, config.synonym_groups)
    if config.glossary:
        errors += detect_unexplained_terms(
            candidate, config.glossary, config.frequency_lexicon, config.rare_rank_threshold
        )
    delta = compare_compliance(gold, candidate, config)
    report = {
        "gold": gold.id,
        "candidate": candidate.id,
        "errors": [e.to_dict() for e in errors],
        "compliance_delta": delta.to_dict(),
    }
    with open(args.report, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    print(f"{len(errors)} error instances -> {args.report}")
    if args.figures:
        from .report import render_compliance_figure

        path = render_compliance_figure(delta, args.figures)
        print(f"figure: {path}", file=sys.stderr)
    return 0


_COMMANDS = {
    "segment": _cmd_segment,
    "align": _cmd_align,
    "stats": _cmd_stats,
    "lint": _cmd_lint,
    "simplify": _cmd_simplify,
    "evaluate": _cmd_evaluate,
}


def run(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level.upper(), logging.WARNING))
    if args.config:
        # config file values fill in flags not given on the command line
        try:
            file_values = _load_tool_config(args.config)
        except (OSError, LefaError, ValueError) as exc:
            print(f"lefa: {exc}", file=sys.stderr)
            return 2
        for key, value in file_values.items():
            attr = key.replace("-", "_")
            if not hasattr(args, attr) or f"--{key.replace('_', '-')}" in argv:
                continue  # unknown key, or explicit flag wins
            current = getattr(args, attr)
            try:
                if isinstance(current, bool):
                    value = value.lower() in {"1", "true", "yes", "on"}
                elif isinstance(current, int):
                    value = int(value)
                elif isinstance(current, float):
                    value = float(value)
            except ValueError as exc:
                print(f"lefa: config key {key!r}: {exc}", file=sys.stderr)
                return 2
            setattr(args, attr, value)
    try:
        return _COMMANDS[args.command](args)
    except (LefaError, OSError, ValueError) as exc:
        print(f"lefa: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
