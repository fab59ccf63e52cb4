/**
 * QLoRA fine-tuning configuration: canonical defaults, JSON emission and
 * validation of externally supplied config files against those defaults.
 */

export interface FineTuneConfig {
  compute_dtype: string;
  quant_type: string;
  use_cache: boolean;
  lora_alpha: number;
  lora_dropout: number;
  lora_r: number;
  batch_size: number;
  optimizer: string;
  learning_rate: number;
  max_grad_norm: number;
  warmup_ratio: number;
  max_seq_length: number;
  epochs: number;
}

export const DEFAULT_FINETUNE_CONFIG: Readonly<FineTuneConfig> = Object.freeze({
  compute_dtype: 'float16',
  quant_type: 'nf4',
  use_cache: false,
  lora_alpha: 16,
  lora_dropout: 0.1,
  lora_r: 64,
  batch_size: 6,
  optimizer: 'paged adamw 32bit',
  learning_rate: 2e-5,
  max_grad_norm: 0.3,
  warmup_ratio: 0.03,
  max_seq_length: 512,
  epochs: 4,
});

export function emitConfig(): FineTuneConfig {
  return { ...DEFAULT_FINETUNE_CONFIG };
}

export function emitConfigJson(): string {
  return JSON.stringify(emitConfig(), null, 2) + '\n';
}

export class ConfigParseError extends Error {}

/**
 * Compare a parsed config object against a reference (the canonical
 * defaults unless another reference is given). Returns one mismatch
 * string per diverging or missing field, e.g. "lora_r: 32 ≠ 64"; an
 * empty list means the config is valid.
 */
export function validateConfig(
  candidate: unknown,
  reference: FineTuneConfig = emitConfig(),
): string[] {
  if (typeof candidate !== 'object' || candidate === null || Array.isArray(candidate)) {
    throw new ConfigParseError('config must be a JSON object');
  }
  const record = candidate as Record<string, unknown>;
  const mismatches: string[] = [];
  for (const [field, expected] of Object.entries(reference)) {
    if (!(field in record)) {
      mismatches.push(`${field}: missing ≠ ${JSON.stringify(expected)}`);
      continue;
    }
    const actual = record[field];
    if (actual !== expected) {
      mismatches.push(`${field}: ${JSON.stringify(actual)} ≠ ${JSON.stringify(expected)}`);
    }
  }
  return mismatches;
}

export function parseConfigJson(text: string): unknown {
  try {
    return JSON.parse(text);
  } catch (err) {
    throw new ConfigParseError(`invalid config JSON: ${(err as Error).message}`);
  }
}
