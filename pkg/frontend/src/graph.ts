/** Query-service graph embeds, sandboxed. */

import type { GraphPanelDoc } from './api.js';

// no top navigation, no forms; scripts stay enabled so the query
// service can draw
const SANDBOX = 'allow-scripts allow-same-origin allow-popups';

export function renderGraph(panel: GraphPanelDoc): HTMLElement {
  const container = document.createElement('div');
  container.className = 'panel graph-panel';

  const iframe = document.createElement('iframe');
  iframe.src = panel.iframe_url;
  iframe.setAttribute('sandbox', SANDBOX);
  iframe.setAttribute('loading', 'lazy');
  iframe.className = 'graph-frame';
  container.appendChild(iframe);

  const fallback = document.createElement('p');
  fallback.className = 'graph-fallback';
  fallback.hidden = true;
  const link = document.createElement('a');
  link.href = panel.iframe_url;
  link.target = '_blank';
  link.rel = 'noopener';
  link.textContent = 'Open this graph on the query service';
  fallback.appendChild(link);
  container.appendChild(fallback);

  iframe.addEventListener('error', () => {
    fallback.hidden = false;
  });

  return container;
}
