export interface ServiceConfig {
  /** Backend for the causal LM behind /score. */
  lmModel: string;
  /** Backend for the sentence-pair model behind /pair. */
  pairModel: string;
  /** Tokenizer identity echoed by /handshake; clients must match it. */
  tokenizerName: string;
  maxContext: number;
  maxBatchSize: number;
  /** Informational only for the stub backends. */
  device: string;
  port: number;
}

export const KNOWN_LM_MODELS = ['stub-bigram'];
export const KNOWN_PAIR_MODELS = ['stub-overlap'];

export function configFromEnv(env: NodeJS.ProcessEnv = process.env): ServiceConfig {
  const config: ServiceConfig = {
    lmModel: env.LM_MODEL ?? 'stub-bigram',
    pairModel: env.PAIR_MODEL ?? 'stub-overlap',
    tokenizerName: env.TOKENIZER_NAME ?? 'builtin_unicode',
    maxContext: Number(env.MAX_CONTEXT ?? 131072),
    maxBatchSize: Number(env.MAX_BATCH_SIZE ?? 256),
    device: env.DEVICE ?? 'cpu',
    port: Number(env.PORT ?? 8731),
  };
  validateConfig(config);
  return config;
}

export function validateConfig(config: ServiceConfig): void {
  if (!KNOWN_LM_MODELS.includes(config.lmModel)) {
    throw new Error(
      `unknown LM model '${config.lmModel}'; available backends: ${KNOWN_LM_MODELS.join(', ')}`,
    );
  }
  if (!KNOWN_PAIR_MODELS.includes(config.pairModel)) {
    throw new Error(
      `unknown pair model '${config.pairModel}'; available backends: ${KNOWN_PAIR_MODELS.join(', ')}`,
    );
  }
  if (!config.tokenizerName) {
    throw new Error('tokenizerName must be nonempty');
  }
  if (!Number.isInteger(config.maxContext) || config.maxContext <= 0) {
    throw new Error('maxContext must be a positive integer');
  }
  if (!Number.isInteger(config.maxBatchSize) || config.maxBatchSize <= 0) {
    throw new Error('maxBatchSize must be a positive integer');
  }
}
