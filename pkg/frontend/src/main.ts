import { App } from './app.js';
import { fetchConfig } from './api.js';
import { currentFragment, onFragmentChange } from './router.js';

const root = document.getElementById('app');
if (!root) {
  throw new Error('missing #app element in the shell document');
}

const app = new App(root);

onFragmentChange((fragment) => {
  void app.navigate(fragment);
});
void app.navigate(currentFragment());

// purely cosmetic: surface which wiki this instance browses
void fetchConfig()
  .then((config) => {
    document.title = `Synia · ${config.namespace_prefix.replace(/:$/, '')}`;
  })
  .catch(() => {
    /* the default title is fine */
  });
