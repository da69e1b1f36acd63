/** The page view: fetch on navigation, render panels in order. */

import { ApiError, fetchPage } from './api.js';
import type { PageDoc, PanelDoc } from './api.js';
import { renderGraph } from './graph.js';
import { renderTable } from './table.js';

function renderPanel(panel: PanelDoc): HTMLElement {
  switch (panel.type) {
    case 'heading': {
      const level = Math.min(Math.max(panel.level, 1), 3);
      const heading = document.createElement(`h${level}`);
      heading.textContent = panel.text;
      return heading;
    }
    case 'rule':
      return document.createElement('hr');
    case 'table':
      return renderTable(panel);
    case 'graph':
      return renderGraph(panel);
    case 'error': {
      const div = document.createElement('div');
      div.className = `panel error-panel error-${panel.kind}`;
      div.textContent = panel.message;
      return div;
    }
    case 'missing-template': {
      const div = document.createElement('div');
      div.className = 'panel missing-template-panel';
      const text = document.createElement('span');
      text.textContent = `The template page "${panel.title}" does not exist yet. `;
      div.appendChild(text);
      const link = document.createElement('a');
      link.href = panel.create_url;
      link.target = '_blank';
      link.rel = 'noopener';
      link.textContent = 'Create this template';
      div.appendChild(link);
      return div;
    }
  }
}

export class App {
  private inflight: AbortController | null = null;

  constructor(private readonly root: HTMLElement) {}

  /**
   * Load and render the page for a fragment. The previous page stays
   * visible (behind a progress marker) until the new one arrives; a
   * newer navigation aborts the older fetch.
   */
  async navigate(fragment: string): Promise<void> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.root.classList.add('loading');
    try {
      const page = await fetchPage(fragment, controller.signal);
      if (controller.signal.aborted) {
        return;
      }
      this.renderPage(page);
    } catch (error) {
      if (controller.signal.aborted) {
        return;
      }
      this.renderError(error);
    } finally {
      if (this.inflight === controller) {
        this.root.classList.remove('loading');
        this.inflight = null;
      }
    }
  }

  renderPage(page: PageDoc): void {
    this.root.textContent = '';
    if (page.stale) {
      const note = document.createElement('div');
      note.className = 'stale-note';
      note.textContent =
        'The template wiki is unreachable; showing a cached copy.';
      this.root.appendChild(note);
    }
    for (const panel of page.panels) {
      this.root.appendChild(renderPanel(panel));
    }
  }

  private renderError(error: unknown): void {
    this.root.textContent = '';
    const banner = document.createElement('div');
    banner.className = 'error-banner';
    if (error instanceof ApiError) {
      banner.textContent = `${error.kind}: ${error.message}`;
    } else {
      banner.textContent = `The page could not be loaded: ${String(error)}`;
    }
    this.root.appendChild(banner);
  }
}
