import { configFromEnv } from './config.js';
import { createApp } from './server.js';

const config = configFromEnv();
const app = createApp(config);

app.listen(config.port, () => {
  console.error(
    `scorer service on :${config.port} ` +
      `(lm=${config.lmModel}, pair=${config.pairModel}, tokenizer=${config.tokenizerName})`,
  );
});
