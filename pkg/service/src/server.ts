/**
 * HTTP wiring for the scoring service.
 *
 * POST /score     {context: number[], target: number[]} -> {acc, nll}
 * POST /pair      {a, b} -> {p_no_conn}  or  {pairs: [[a, b], ...]} ->
 *                 {p_no_conn: number[]} (order preserved; malformed items
 *                 yield null plus an entry in `errors`)
 * GET  /handshake {} -> {tokenizer_name, max_context, versions}
 *
 * All responses are deterministic for identical requests: the stub-weight
 * backends are pure functions and no state is kept between calls.
 */

import express, { Express, Request, Response } from 'express';
import { scoreBigram } from './bigram.js';
import { scorePair } from './overlap.js';
import { ServiceConfig, validateConfig } from './config.js';

export const SERVICE_VERSION = '0.1.0';

function isIntArray(value: unknown): value is number[] {
  return Array.isArray(value) && value.length > 0 && value.every((x) => Number.isInteger(x));
}

function isPair(value: unknown): value is [string, string] {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    typeof value[0] === 'string' &&
    value[0].length > 0 &&
    typeof value[1] === 'string' &&
    value[1].length > 0
  );
}

export function createApp(config: ServiceConfig): Express {
  validateConfig(config);
  const app = express();
  app.use(express.json({ limit: '64mb' }));

  app.get('/handshake', (_req: Request, res: Response) => {
    res.json({
      tokenizer_name: config.tokenizerName,
      max_context: config.maxContext,
      versions: {
        service: SERVICE_VERSION,
        lm_model: config.lmModel,
        pair_model: config.pairModel,
      },
    });
  });

  app.post('/score', (req: Request, res: Response) => {
    const { context, target } = req.body ?? {};
    if (!isIntArray(context) || !isIntArray(target)) {
      res.status(400).json({ error: 'context and target must be nonempty integer arrays' });
      return;
    }
    if (context.length + target.length > config.maxContext) {
      res.status(413).json({
        error: `request length ${context.length + target.length} exceeds max_context ${config.maxContext}`,
        max_context: config.maxContext,
      });
      return;
    }
    const result = scoreBigram(context, target);
    res.json({ acc: result.acc, nll: result.nll });
  });

  app.post('/pair', (req: Request, res: Response) => {
    const body = req.body ?? {};
    if (Array.isArray(body.pairs)) {
      if (body.pairs.length > config.maxBatchSize) {
        res.status(413).json({
          error: `batch of ${body.pairs.length} exceeds max_batch_size ${config.maxBatchSize}`,
          max_batch_size: config.maxBatchSize,
        });
        return;
      }
      const probabilities: Array<number | null> = [];
      const errors: Array<{ index: number; message: string }> = [];
      body.pairs.forEach((item: unknown, index: number) => {
        if (isPair(item)) {
          probabilities.push(scorePair(item[0], item[1]));
        } else {
          probabilities.push(null);
          errors.push({ index, message: 'pair must be [nonempty string, nonempty string]' });
        }
      });
      res.json(errors.length ? { p_no_conn: probabilities, errors } : { p_no_conn: probabilities });
      return;
    }
    const { a, b } = body;
    if (typeof a !== 'string' || typeof b !== 'string' || !a || !b) {
      res.status(400).json({ error: 'a and b must be nonempty strings' });
      return;
    }
    res.json({ p_no_conn: scorePair(a, b) });
  });

  app.use((_req: Request, res: Response) => {
    res.status(404).json({ error: 'unknown endpoint' });
  });

  return app;
}
