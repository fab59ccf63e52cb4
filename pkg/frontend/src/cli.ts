#!/usr/bin/env node
/**
 * Command-line entry point.
 *
 *   lefa-finetune export --pairs <aligned.jsonl> --prompt <prompt.txt> --out <train.jsonl>
 *   lefa-finetune emit-config [--out <config.json>]
 *   lefa-finetune validate-config --config <config.json>
 */

import { readFileSync, writeFileSync } from 'node:fs';
import {
  ConfigParseError,
  emitConfigJson,
  parseConfigJson,
  validateConfig,
} from './config.js';
import {
  EmptyCorpusError,
  ParseError,
  buildInstructionRecords,
  parseAlignedCorpus,
  parsePrompt,
  serializeRecords,
} from './dataset.js';

function parseArgs(argv: string[]): Map<string, string> {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith('--')) {
      throw new UsageError(`unexpected argument: ${arg}`);
    }
    const value = argv[i + 1];
    if (value === undefined || value.startsWith('--')) {
      throw new UsageError(`missing value for ${arg}`);
    }
    args.set(arg.slice(2), value);
    i++;
  }
  return args;
}

class UsageError extends Error {}

function require(args: Map<string, string>, name: string): string {
  const value = args.get(name);
  if (value === undefined) {
    throw new UsageError(`missing required option --${name}`);
  }
  return value;
}

function cmdExport(args: Map<string, string>): number {
  const pairsText = readFileSync(require(args, 'pairs'), 'utf-8');
  const promptText = readFileSync(require(args, 'prompt'), 'utf-8');
  const outPath = require(args, 'out');
  const records = buildInstructionRecords(parseAlignedCorpus(pairsText), parsePrompt(promptText));
  writeFileSync(outPath, serializeRecords(records), 'utf-8');
  console.log(`wrote ${records.length} instruction records to ${outPath}`);
  return 0;
}

function cmdEmitConfig(args: Map<string, string>): number {
  const json = emitConfigJson();
  const outPath = args.get('out');
  if (outPath !== undefined) {
    writeFileSync(outPath, json, 'utf-8');
  } else {
    process.stdout.write(json);
  }
  return 0;
}

function cmdValidateConfig(args: Map<string, string>): number {
  const text = readFileSync(require(args, 'config'), 'utf-8');
  const mismatches = validateConfig(parseConfigJson(text));
  if (mismatches.length === 0) {
    console.log('config ok');
    return 0;
  }
  for (const mismatch of mismatches) {
    console.error(mismatch);
  }
  return 1;
}

const USAGE = `usage: lefa-finetune <command> [options]

commands:
  export            --pairs <aligned.jsonl> --prompt <prompt.txt> --out <train.jsonl>
  emit-config       [--out <config.json>]
  validate-config   --config <config.json>
`;

export function run(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    const args = parseArgs(rest);
    switch (command) {
      case 'export':
        return cmdExport(args);
      case 'emit-config':
        return cmdEmitConfig(args);
      case 'validate-config':
        return cmdValidateConfig(args);
      default:
        process.stderr.write(USAGE);
        return 2;
    }
  } catch (err) {
    if (
      err instanceof UsageError ||
      err instanceof ParseError ||
      err instanceof EmptyCorpusError ||
      err instanceof ConfigParseError ||
      (err as NodeJS.ErrnoException).code !== undefined
    ) {
      console.error(`lefa-finetune: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

process.exitCode = run(process.argv.slice(2));
