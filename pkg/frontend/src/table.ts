/** Sortable, filterable result tables. */

import type { CellDoc, TablePanelDoc } from './api.js';

interface SortState {
  variable: string | null;
  ascending: boolean;
}

function compareValues(a: string, b: string): number {
  const numA = Number(a);
  const numB = Number(b);
  if (!Number.isNaN(numA) && !Number.isNaN(numB) && a !== '' && b !== '') {
    return numA - numB;
  }
  return a.localeCompare(b);
}

function cellText(cell: CellDoc | undefined): string {
  return cell ? cell.value : '';
}

function renderCell(cell: CellDoc | undefined): HTMLTableCellElement {
  const td = document.createElement('td');
  if (!cell) {
    return td;
  }
  if (cell.local_fragment) {
    const anchor = document.createElement('a');
    anchor.href = cell.local_fragment;
    anchor.textContent = cell.value;
    td.appendChild(anchor);
  } else {
    const span = document.createElement('span');
    span.textContent = cell.value;
    td.appendChild(span);
  }
  if (cell.language) {
    const hint = document.createElement('sup');
    hint.className = 'lang-hint';
    hint.textContent = cell.language;
    td.appendChild(hint);
  }
  return td;
}

/**
 * Build an interactive table: one column per variable, click a header to
 * sort (toggling direction), type in the filter box to narrow rows.
 */
export function renderTable(panel: TablePanelDoc): HTMLElement {
  const container = document.createElement('div');
  container.className = 'panel table-panel';

  const filter = document.createElement('input');
  filter.type = 'search';
  filter.placeholder = 'Filter rows';
  filter.className = 'table-filter';
  container.appendChild(filter);

  const table = document.createElement('table');
  table.className = 'results';
  const thead = document.createElement('thead');
  const headRow = document.createElement('tr');
  const sort: SortState = { variable: null, ascending: true };

  for (const variable of panel.variables) {
    const th = document.createElement('th');
    th.textContent = variable;
    th.tabIndex = 0;
    th.addEventListener('click', () => {
      if (sort.variable === variable) {
        sort.ascending = !sort.ascending;
      } else {
        sort.variable = variable;
        sort.ascending = true;
      }
      redraw();
    });
    headRow.appendChild(th);
  }
  thead.appendChild(headRow);
  table.appendChild(thead);

  const tbody = document.createElement('tbody');
  table.appendChild(tbody);
  container.appendChild(table);

  function visibleRows(): Record<string, CellDoc>[] {
    const needle = filter.value.trim().toLowerCase();
    let rows = panel.rows;
    if (needle) {
      rows = rows.filter((row) =>
        panel.variables.some((variable) =>
          cellText(row[variable]).toLowerCase().includes(needle),
        ),
      );
    }
    if (sort.variable !== null) {
      const key = sort.variable;
      const direction = sort.ascending ? 1 : -1;
      rows = [...rows].sort(
        (a, b) => direction * compareValues(cellText(a[key]), cellText(b[key])),
      );
    }
    return rows;
  }

  function redraw(): void {
    tbody.textContent = '';
    const rows = visibleRows();
    if (rows.length === 0) {
      const tr = document.createElement('tr');
      const td = document.createElement('td');
      td.colSpan = Math.max(panel.variables.length, 1);
      td.className = 'no-results';
      td.textContent = 'no results';
      tr.appendChild(td);
      tbody.appendChild(tr);
      return;
    }
    for (const row of rows) {
      const tr = document.createElement('tr');
      for (const variable of panel.variables) {
        tr.appendChild(renderCell(row[variable]));
      }
      tbody.appendChild(tr);
    }
  }

  filter.addEventListener('input', redraw);
  redraw();
  return container;
}
