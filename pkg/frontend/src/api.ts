/** Typed client for the proof-assistant session API.
 *
 * Requests are strictly sequential per client: a new call started while
 * another is in flight waits for it first, so the UI can never interleave
 * two state-changing requests against the same session.
 */

export type TheorySummary = {
  name: string;
  version: number;
  display: string;
  laws: number;
  conjectures: number;
  theorems: number;
};

export type TableRow = {
  name: string;
  provenance?: string;
  sideConditions: { notFreeIn: [string, string] }[];
  schema: string;
  strategy?: string;
};

export type Span = { path: string; start: number; end: number };

export type StepView = {
  law: string;
  direction: string;
  path: string;
  goalAfter: string;
};

export type ProofView = {
  id: string;
  theory: string;
  conjecture: string;
  strategy: string;
  strategyPhrase: string;
  goal: string;
  schema: string;
  target: string | null;
  focusPath: string;
  focus: string;
  focusClass: string;
  focusType: string | null;
  freeVars: string[];
  varTypes: Record<string, string>;
  complete: boolean;
  steps: StepView[];
  spans: Span[];
  activeSide?: string;
  otherSide?: string;
  blocked?: boolean;
};

export type MatchEntry = {
  lawName: string;
  theory: string;
  provenance: string;
  direction: string;
  path: string;
  preview: string;
  unbound: string[];
  defaults: Record<string, string>;
};

export type UnboundPrompt = { name: string; kind: string; default: string };

/** Either the new proof view, or a request for instantiation input. */
export type ApplyResult =
  | { view: ProofView; needs: null }
  | { view: null; needs: UnboundPrompt[] };

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchFn = typeof fetch;

export class Client {
  private chain: Promise<unknown> = Promise.resolve();

  constructor(
    private base: string,
    private fetchFn: FetchFn = (...args) => fetch(...args),
  ) {}

  private request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const run = async (): Promise<T> => {
      const response = await this.fetchFn(this.base + path, {
        method,
        headers: body === undefined ? {} : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
      const text = await response.text();
      if (!response.ok) {
        let code = "error";
        let message = text;
        try {
          const parsed = JSON.parse(text) as { code?: string; message?: string };
          code = parsed.code ?? code;
          message = parsed.message ?? message;
        } catch {
          /* non-JSON error body; keep raw text */
        }
        throw new ApiError(response.status, code, message);
      }
      const type = response.headers.get("content-type") ?? "";
      return (type.includes("text/plain") ? text : JSON.parse(text)) as T;
    };
    const next = this.chain.then(run, run);
    this.chain = next.catch(() => undefined);
    return next;
  }

  listTheories(): Promise<TheorySummary[]> {
    return this.request<{ theories: TheorySummary[] }>("GET", "/theories").then(
      (r) => r.theories,
    );
  }

  getTable(theory: string, table: string): Promise<TableRow[]> {
    return this.request<{ rows: TableRow[] }>(
      "GET",
      `/theories/${encodeURIComponent(theory)}/${table}`,
    ).then((r) => r.rows);
  }

  editTable(
    theory: string,
    table: string,
    action: string,
    row: Record<string, unknown>,
  ): Promise<TableRow[]> {
    return this.request<{ rows: TableRow[] }>(
      "POST",
      `/theories/${encodeURIComponent(theory)}/${table}`,
      { action, row },
    ).then((r) => r.rows);
  }

  theoremTranscript(theory: string, theorem: string): Promise<string> {
    return this.request<string>(
      "GET",
      `/theories/${encodeURIComponent(theory)}/theorems/${encodeURIComponent(theorem)}/transcript`,
    );
  }

  startProof(theory: string, conjecture: string, strategy: string): Promise<ProofView> {
    return this.request<ProofView>("POST", "/proofs", { theory, conjecture, strategy });
  }

  getProof(id: string): Promise<ProofView> {
    return this.request<ProofView>("GET", `/proofs/${id}`);
  }

  moveFocus(id: string, move: "up" | "down" | "left" | "right"): Promise<ProofView> {
    return this.request<ProofView>("POST", `/proofs/${id}/focus`, { move });
  }

  focusPath(id: string, path: string): Promise<ProofView> {
    return this.request<ProofView>("POST", `/proofs/${id}/focus`, { path });
  }

  matches(id: string): Promise<MatchEntry[]> {
    return this.request<{ matches: MatchEntry[] }>("GET", `/proofs/${id}/matches`).then(
      (r) => r.matches,
    );
  }

  apply(
    id: string,
    lawName: string,
    direction: string,
    instantiation?: Record<string, string>,
  ): Promise<ApplyResult> {
    return this.request<ProofView | { needsInstantiation: UnboundPrompt[] }>(
      "POST",
      `/proofs/${id}/apply`,
      { lawName, direction, instantiation },
    ).then((r) =>
      "needsInstantiation" in r
        ? { view: null, needs: r.needsInstantiation }
        : { view: r, needs: null },
    );
  }

  undo(id: string): Promise<ProofView> {
    return this.request<ProofView>("POST", `/proofs/${id}/undo`);
  }

  switchSide(id: string): Promise<ProofView> {
    return this.request<ProofView>("POST", `/proofs/${id}/side`);
  }

  promote(id: string): Promise<{ promoted: string; theory: string }> {
    return this.request<{ promoted: string; theory: string }>(
      "POST",
      `/proofs/${id}/promote`,
    );
  }

  transcript(id: string): Promise<string> {
    return this.request<string>("GET", `/proofs/${id}/transcript`);
  }
}
