/**
 * Read aligned original/adapted sentence pairs (JSONL with a schema
 * header) and convert them into instruction-tuning records.
 */

export class ParseError extends Error {}
export class EmptyCorpusError extends Error {}

export interface AlignedPair {
  orig_doc: string;
  orig_idx: number;
  adp_doc: string;
  adp_idx: number;
  score: number;
  orig_text: string;
  adp_text: string;
}

export interface InstructionRecord {
  instruction: string;
  input: string;
  output: string;
}

const SCHEMA_VERSION = '1';
const SCHEMA_FORMAT = 'lefa-aligned';

function parseJsonLine(line: string, lineNo: number): Record<string, unknown> {
  let value: unknown;
  try {
    value = JSON.parse(line);
  } catch (err) {
    throw new ParseError(`line ${lineNo}: invalid JSON: ${(err as Error).message}`);
  }
  if (typeof value !== 'object' || value === null || Array.isArray(value)) {
    throw new ParseError(`line ${lineNo}: expected a JSON object`);
  }
  return value as Record<string, unknown>;
}

/** Parse the aligned-pair JSONL text, validating the schema header. */
export function parseAlignedCorpus(text: string): AlignedPair[] {
  const lines = text.split('\n').filter((line) => line.trim() !== '');
  if (lines.length === 0) {
    throw new ParseError('empty file: missing schema header');
  }
  const header = parseJsonLine(lines[0], 1);
  if (header.format !== SCHEMA_FORMAT) {
    throw new ParseError(`line 1: expected format "${SCHEMA_FORMAT}", got ${JSON.stringify(header.format)}`);
  }
  if (header.version !== SCHEMA_VERSION) {
    throw new ParseError(`line 1: unsupported schema version ${JSON.stringify(header.version)}`);
  }
  const pairs: AlignedPair[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    const rec = parseJsonLine(lines[i], lineNo);
    for (const field of ['orig_doc', 'adp_doc', 'orig_text', 'adp_text'] as const) {
      if (typeof rec[field] !== 'string') {
        throw new ParseError(`line ${lineNo}: field "${field}" must be a string`);
      }
    }
    for (const field of ['orig_idx', 'adp_idx', 'score'] as const) {
      if (typeof rec[field] !== 'number') {
        throw new ParseError(`line ${lineNo}: field "${field}" must be a number`);
      }
    }
    pairs.push({
      orig_doc: rec.orig_doc as string,
      orig_idx: rec.orig_idx as number,
      adp_doc: rec.adp_doc as string,
      adp_idx: rec.adp_idx as number,
      score: rec.score as number,
      orig_text: rec.orig_text as string,
      adp_text: rec.adp_text as string,
    });
  }
  return pairs;
}

/**
 * Extract the instruction text from a prompt resource file: lines
 * starting with "#" are comments; remaining non-blank lines are joined
 * with single newlines.
 */
export function parsePrompt(text: string): string {
  const lines = text
    .split('\n')
    .map((line) => line.trimEnd())
    .filter((line) => line.trim() !== '' && !line.trimStart().startsWith('#'));
  if (lines.length === 0) {
    throw new ParseError('prompt file contains no instruction text');
  }
  return lines.join('\n');
}

/** One instruction record per aligned pair: original in, adapted out. */
export function buildInstructionRecords(
  pairs: AlignedPair[],
  instruction: string,
): InstructionRecord[] {
  if (pairs.length === 0) {
    throw new EmptyCorpusError('aligned corpus contains no pairs');
  }
  return pairs.map((pair) => ({
    instruction,
    input: pair.orig_text,
    output: pair.adp_text,
  }));
}

/** Serialize instruction records as JSONL. */
export function serializeRecords(records: InstructionRecord[]): string {
  return records.map((rec) => JSON.stringify(rec)).join('\n') + '\n';
}
