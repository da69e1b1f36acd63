/** Typed client for the engine's page and config endpoints. */

export interface CellDoc {
  type: 'iri' | 'literal' | 'bnode';
  value: string;
  language?: string;
  datatype?: string;
  /** In-app fragment for entities on the template wiki's own Wikibase. */
  local_fragment?: string;
}

export interface HeadingPanelDoc {
  type: 'heading';
  level: number;
  text: string;
}

export interface RulePanelDoc {
  type: 'rule';
}

export interface TablePanelDoc {
  type: 'table';
  variables: string[];
  rows: Record<string, CellDoc>[];
  sparql: string;
}

export interface GraphPanelDoc {
  type: 'graph';
  iframe_url: string;
  sparql: string;
}

export interface ErrorPanelDoc {
  type: 'error';
  kind: string;
  message: string;
}

export interface MissingTemplatePanelDoc {
  type: 'missing-template';
  title: string;
  create_url: string;
}

export type PanelDoc =
  | HeadingPanelDoc
  | RulePanelDoc
  | TablePanelDoc
  | GraphPanelDoc
  | ErrorPanelDoc
  | MissingTemplatePanelDoc;

export interface PageDoc {
  fragment: string;
  template_title: string;
  generated_at: string;
  stale: boolean;
  panels: PanelDoc[];
}

export interface ConfigDoc {
  wiki_base_url: string;
  namespace_prefix: string;
  allowlist: { label: string }[];
}

export class ApiError extends Error {
  constructor(
    readonly kind: string,
    message: string,
  ) {
    super(message);
  }
}

async function errorFrom(response: Response): Promise<ApiError> {
  try {
    const body = await response.json();
    if (body && body.error) {
      return new ApiError(body.error.kind, body.error.message);
    }
  } catch {
    // fall through to the generic error
  }
  return new ApiError('http-error', `API returned ${response.status}`);
}

export async function fetchPage(
  fragment: string,
  signal?: AbortSignal,
): Promise<PageDoc> {
  const response = await fetch(
    `/api/page?fragment=${encodeURIComponent(fragment)}`,
    { signal },
  );
  if (!response.ok) {
    throw await errorFrom(response);
  }
  return (await response.json()) as PageDoc;
}

export async function fetchConfig(): Promise<ConfigDoc> {
  const response = await fetch('/api/config');
  if (!response.ok) {
    throw await errorFrom(response);
  }
  return (await response.json()) as ConfigDoc;
}
