import { describe, expect, it } from 'vitest';

import type { TablePanelDoc } from '../src/api.js';
import { renderTable } from '../src/table.js';

function fixture(): TablePanelDoc {
  return {
    type: 'table',
    variables: ['work', 'workLabel', 'roles'],
    rows: [
      {
        work: {
          type: 'iri',
          value: 'http://www.wikidata.org/entity/Q595',
          local_fragment: '#actor/Q595',
        },
        workLabel: { type: 'literal', value: 'Movie One', language: 'en' },
        roles: { type: 'literal', value: '3' },
      },
      {
        work: { type: 'iri', value: 'http://www.wikidata.org/entity/Q642' },
        workLabel: { type: 'literal', value: 'Another Movie', language: 'en' },
        roles: { type: 'literal', value: '12' },
      },
    ],
    sparql: 'SELECT ?work ?workLabel ?roles WHERE { }',
  };
}

function bodyRows(root: HTMLElement): HTMLTableRowElement[] {
  return Array.from(root.querySelectorAll('tbody tr'));
}

function columnText(root: HTMLElement, index: number): string[] {
  return bodyRows(root).map(
    (row) => row.children[index]?.textContent?.trim() ?? '',
  );
}

describe('renderTable', () => {
  it('renders one column per variable and one row per binding', () => {
    const root = renderTable(fixture());
    const headers = Array.from(root.querySelectorAll('thead th'));
    expect(headers.map((th) => th.textContent)).toEqual([
      'work',
      'workLabel',
      'roles',
    ]);
    expect(bodyRows(root)).toHaveLength(2);
  });

  it('sorts by a clicked header and toggles direction', () => {
    const root = renderTable(fixture());
    const rolesHeader = root.querySelectorAll('thead th')[2] as HTMLElement;
    rolesHeader.click();
    expect(columnText(root, 2)).toEqual(['3', '12']); // numeric ascending
    rolesHeader.click();
    expect(columnText(root, 2)).toEqual(['12', '3']);
  });

  it('sorts text columns lexicographically', () => {
    const root = renderTable(fixture());
    const labelHeader = root.querySelectorAll('thead th')[1] as HTMLElement;
    labelHeader.click();
    expect(columnText(root, 1)[0]).toContain('Another Movie');
  });

  it('filters rows by substring', () => {
    const root = renderTable(fixture());
    const filter = root.querySelector('input') as HTMLInputElement;
    filter.value = 'movie one';
    filter.dispatchEvent(new Event('input'));
    expect(bodyRows(root)).toHaveLength(1);
    expect(root.textContent).toContain('Movie One');
  });

  it('shows an explicit no-results row when everything is filtered out', () => {
    const root = renderTable(fixture());
    const filter = root.querySelector('input') as HTMLInputElement;
    filter.value = 'zzz-no-such-thing';
    filter.dispatchEvent(new Event('input'));
    const cells = root.querySelectorAll('tbody td');
    expect(cells).toHaveLength(1);
    expect(cells[0].textContent).toBe('no results');
  });

  it('renders an empty result set as a no-results row', () => {
    const root = renderTable({
      type: 'table',
      variables: ['a'],
      rows: [],
      sparql: 'SELECT ?a WHERE { }',
    });
    expect(root.querySelector('td.no-results')).not.toBeNull();
  });

  it('turns cells with a local fragment into in-app links', () => {
    const root = renderTable(fixture());
    const anchor = root.querySelector('tbody a') as HTMLAnchorElement;
    expect(anchor.getAttribute('href')).toBe('#actor/Q595');
    expect(anchor.textContent).toBe('http://www.wikidata.org/entity/Q595');
  });

  it('leaves foreign iris as plain text', () => {
    const root = renderTable(fixture());
    const secondRowFirstCell = bodyRows(root)[1].children[0];
    expect(secondRowFirstCell.querySelector('a')).toBeNull();
  });

  it('shows language tags as superscript hints', () => {
    const root = renderTable(fixture());
    const hint = root.querySelector('sup.lang-hint');
    expect(hint?.textContent).toBe('en');
  });

  it('renders unbound cells as empty', () => {
    const doc = fixture();
    delete doc.rows[1].roles;
    const root = renderTable(doc);
    expect(columnText(root, 2)).toEqual(['3', '']);
  });
});
