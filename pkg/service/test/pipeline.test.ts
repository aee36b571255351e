/**
 * Integration with the corpus pipeline over the wire contract.
 *
 * Acceptance: metrics computed through this service must equal the
 * pipeline's in-process stub path to 1e-6, and the pipeline must refuse a
 * service whose handshake declares a different tokenizer.
 */

import { execFile } from 'node:child_process';
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from 'node:fs';
import { Server } from 'node:http';
import { AddressInfo } from 'node:net';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';
import { createApp } from '../src/server.js';

const PYTHON = process.env.PYTHON ?? 'python3';

interface Record {
  id: string;
  [key: string]: unknown;
}

function listen(tokenizerName: string): Promise<{ server: Server; url: string }> {
  const app = createApp({
    lmModel: 'stub-bigram',
    pairModel: 'stub-overlap',
    tokenizerName,
    maxContext: 131072,
    maxBatchSize: 256,
    device: 'cpu',
    port: 0,
  });
  return new Promise((resolve) => {
    const server = app.listen(0, () => {
      resolve({ server, url: `http://127.0.0.1:${(server.address() as AddressInfo).port}` });
    });
  });
}

// Spawned asynchronously: a blocking exec would freeze the event loop and
// with it the in-process server the CLI needs to reach.
function runCli(args: string[]): Promise<{ status: number; stderr: string }> {
  return new Promise((resolve) => {
    execFile(PYTHON, ['-m', 'longtext', ...args], (error: any, _stdout, stderr) => {
      resolve({ status: error ? (error.code ?? 1) : 0, stderr: String(stderr ?? '') });
    });
  });
}

function readRecords(path: string): Record[] {
  return readFileSync(path, 'utf-8')
    .trim()
    .split('\n')
    .map((line) => JSON.parse(line));
}

const DOCS = [
  {
    id: 'en-essay',
    domain: 'Book',
    language: 'EN',
    text:
      'Firstly, the garden was prepared with care. Then, the seeds were planted in rows. ' +
      'However, the rain did not come for weeks. The gardener watered them by hand. ' +
      'As a result, the tomatoes grew slowly but steadily. Overall, it was a fair harvest.\n' +
      'The second season went better. It rained on time, and they sold the surplus in town.',
  },
  {
    id: 'en-list',
    domain: 'CommonCrawl',
    language: 'EN',
    text: 'item one\nitem two\nitem three\nbuy now\nitem four\nitem five\ncontact us today',
  },
  {
    id: 'zh-news',
    domain: 'Law',
    language: 'ZH',
    text:
      '我们今天出发去北京。因此，大家都很高兴。他们带了很多行李。' +
      '但是，天气不太好。最后，火车准时到达了。\n第二天他们参观了博物馆。',
  },
  { id: 'tiny', domain: 'WebText', language: 'EN', text: 'too short. really.' },
];

let workDir: string;
let service: { server: Server; url: string };

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), 'scorer-service-'));
  const corpus = DOCS.map((d) => JSON.stringify(d)).join('\n') + '\n';
  writeFileSync(join(workDir, 'corpus.jsonl'), corpus);
  service = await listen('builtin_unicode');
});

afterAll(() => {
  service.server.close();
  rmSync(workDir, { recursive: true, force: true });
});

describe('pipeline equivalence', () => {
  it('service-backed metrics equal the in-process stub path to 1e-6', async () => {
    const viaStub = join(workDir, 'stub.jsonl');
    const viaService = join(workDir, 'service.jsonl');

    const stubRun = await runCli([
      'score', '--input', join(workDir, 'corpus.jsonl'), '--output', viaStub,
      '--stub-lm-scorer', '--stub-pair-scorer', '--window-size', '8',
    ]);
    expect(stubRun.status).toBe(0);

    const serviceRun = await runCli([
      'score', '--input', join(workDir, 'corpus.jsonl'), '--output', viaService,
      '--lm-endpoint', service.url, '--pair-endpoint', service.url, '--window-size', '8',
    ]);
    expect(serviceRun.status).toBe(0);

    const stubRecords = readRecords(viaStub);
    const serviceRecords = readRecords(viaService);
    expect(serviceRecords.length).toBe(stubRecords.length);

    for (let i = 0; i < stubRecords.length; i++) {
      for (const key of Object.keys(stubRecords[i])) {
        if (!key.startsWith('metrics.')) continue;
        const a = stubRecords[i][key] as number | null;
        const b = serviceRecords[i][key] as number | null;
        if (a === null) {
          expect(b, `${stubRecords[i].id} ${key}`).toBeNull();
        } else {
          expect(Math.abs((b as number) - a), `${stubRecords[i].id} ${key}`).toBeLessThan(1e-6);
        }
      }
    }

    // the corpus exercises both computable and not-computable coherence
    const byId = Object.fromEntries(serviceRecords.map((r) => [r.id, r]));
    expect(byId['en-essay']['metrics.coherence_acc_l']).not.toBeNull();
    expect(byId['tiny']['metrics.coherence_acc_l']).toBeNull();
    expect(byId['zh-news']['metrics.cohesion_dmr']).not.toBeNull();
  });

  it('pipeline rejects a tokenizer-name mismatch at startup', async () => {
    const wrong = await listen('other_tokenizer');
    try {
      const result = await runCli([
        'score', '--input', join(workDir, 'corpus.jsonl'),
        '--output', join(workDir, 'never.jsonl'),
        '--lm-endpoint', wrong.url, '--window-size', '8',
      ]);
      expect(result.status).not.toBe(0);
      expect(result.stderr).toMatch(/tokenizer mismatch/);
    } finally {
      wrong.server.close();
    }
  });
});
