/** Single-page proof-assistant client.
 *
 * One theory-browser pane and one proof window at a time.  All server
 * calls go through the sequential Client; inputs are disabled while a
 * request is in flight, and server errors are shown inline in the proof
 * window rather than as modal dialogs.
 */

import {
  ApiError,
  Client,
  MatchEntry,
  ProofView,
  TableRow,
  UnboundPrompt,
} from "./api.js";
import { renderGoal } from "./render.js";

const TABLES = [
  { key: "laws", label: "LAWS" },
  { key: "conjectures", label: "CONJ" },
  { key: "theorems", label: "THEOREMS" },
] as const;

const STRATEGIES = [
  { value: "reduce", label: "Reduce to TRUE" },
  { value: "l2r", label: "LHS to RHS" },
  { value: "both", label: "Reduce both sides" },
];

export class App {
  private doc: Document;
  private view: ProofView | null = null;
  private theory: string | null = null;
  private tab: (typeof TABLES)[number]["key"] = "laws";
  private busy = false;

  private theoriesPane!: HTMLElement;
  private tablePane!: HTMLElement;
  private proofPane!: HTMLElement;
  private popup!: HTMLElement;

  constructor(
    private root: HTMLElement,
    private client: Client,
  ) {
    this.doc = root.ownerDocument;
    this.buildShell();
  }

  /** Fetch the theory list and render the browser pane. */
  async init(): Promise<void> {
    await this.guard(async () => {
      const theories = await this.client.listTheories();
      this.theoriesPane.textContent = "";
      for (const t of theories) {
        const box = this.el("div", "theory-box", t.display);
        box.dataset.theory = t.name;
        box.title = `${t.laws} laws, ${t.conjectures} conjectures, ${t.theorems} theorems`;
        box.addEventListener("dblclick", () => void this.openTheory(t.name));
        this.theoriesPane.appendChild(box);
      }
    });
  }

  // ---------------------------------------------------------------- shell

  private buildShell(): void {
    this.root.textContent = "";
    this.theoriesPane = this.el("div", "theories");
    this.tablePane = this.el("div", "tables");
    this.proofPane = this.el("div", "proof");
    this.popup = this.el("div", "popup hidden");
    for (const pane of [this.theoriesPane, this.tablePane, this.proofPane, this.popup]) {
      this.root.appendChild(pane);
    }
    this.doc.addEventListener("keydown", (e) => this.onKey(e));
    this.doc.addEventListener("click", (e) => {
      if (!(e.target instanceof Element) || !this.popup.contains(e.target)) {
        this.hidePopup();
      }
    });
  }

  private el(tag: string, className?: string, text?: string): HTMLElement {
    const node = this.doc.createElement(tag);
    if (className) node.className = className;
    if (text !== undefined) node.textContent = text;
    return node;
  }

  /** Run a server interaction with inputs disabled and errors shown inline. */
  private async guard(work: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.root.classList.add("busy");
    try {
      await work();
      this.setError("");
    } catch (e) {
      this.setError(e instanceof ApiError ? `${e.code}: ${e.message}` : String(e));
    } finally {
      this.busy = false;
      this.root.classList.remove("busy");
    }
  }

  private setError(message: string): void {
    let bar = this.proofPane.querySelector<HTMLElement>(".error");
    if (!bar) {
      bar = this.el("div", "error");
      this.proofPane.prepend(bar);
    }
    bar.textContent = message;
  }

  // ------------------------------------------------------- theory browser

  async openTheory(name: string): Promise<void> {
    this.theory = name;
    await this.showTab(this.tab);
  }

  async showTab(tab: (typeof TABLES)[number]["key"]): Promise<void> {
    if (!this.theory) return;
    this.tab = tab;
    const theory = this.theory;
    await this.guard(async () => {
      const rows = await this.client.getTable(theory, tab);
      this.renderTable(theory, tab, rows);
    });
  }

  private renderTable(theory: string, tab: string, rows: TableRow[]): void {
    this.tablePane.textContent = "";
    this.tablePane.appendChild(this.el("h2", "table-title", theory));
    const tabsBar = this.el("div", "tabs");
    for (const t of TABLES) {
      const button = this.el("button", t.key === tab ? "tab active" : "tab", t.label);
      button.dataset.tab = t.key;
      button.addEventListener("click", () => void this.showTab(t.key));
      tabsBar.appendChild(button);
    }
    this.tablePane.appendChild(tabsBar);

    const table = this.el("table", "rows");
    for (const row of rows) {
      const tr = this.el("tr", "row");
      tr.dataset.name = row.name;
      tr.appendChild(this.el("td", "name", row.name));
      tr.appendChild(this.el("td", "schema", row.schema));
      tr.appendChild(this.el("td", "provenance", row.provenance ?? ""));
      const del = this.el("button", "delete", "x");
      del.addEventListener("click", () =>
        void this.guard(async () => {
          const updated = await this.client.editTable(theory, tab, "delete", {
            name: row.name,
          });
          this.renderTable(theory, tab, updated);
        }),
      );
      const actions = this.el("td", "actions");
      actions.appendChild(del);
      tr.appendChild(actions);
      if (tab === "conjectures") {
        tr.addEventListener("dblclick", () => this.pickStrategy(theory, row.name));
      }
      if (tab === "theorems") {
        tr.addEventListener("contextmenu", (e) => {
          e.preventDefault();
          this.showPopup([
            {
              label: "show transcript",
              run: async () => {
                const text = await this.client.theoremTranscript(theory, row.name);
                this.showTranscript(text);
              },
            },
          ]);
        });
      }
      table.appendChild(tr);
    }
    this.tablePane.appendChild(table);

    const form = this.el("div", "add-row");
    const nameInput = this.doc.createElement("input");
    nameInput.className = "new-name";
    nameInput.placeholder = "name";
    const schemaInput = this.doc.createElement("input");
    schemaInput.className = "new-schema";
    schemaInput.placeholder = "schema";
    const add = this.el("button", "add", "add");
    add.addEventListener("click", () =>
      void this.guard(async () => {
        const updated = await this.client.editTable(theory, tab, "add", {
          name: nameInput.value,
          schema: schemaInput.value,
        });
        this.renderTable(theory, tab, updated);
      }),
    );
    form.append(nameInput, schemaInput, add);
    this.tablePane.appendChild(form);
  }

  private pickStrategy(theory: string, conjecture: string): void {
    this.showPopup(
      STRATEGIES.map((s) => ({
        label: s.label,
        run: async () => {
          this.view = await this.client.startProof(theory, conjecture, s.label);
          this.renderProof();
        },
      })),
    );
  }

  private showTranscript(text: string): void {
    let pre = this.tablePane.querySelector<HTMLElement>(".transcript");
    if (!pre) {
      pre = this.el("pre", "transcript");
      this.tablePane.appendChild(pre);
    }
    pre.textContent = text;
  }

  // --------------------------------------------------------- proof window

  private renderProof(): void {
    const view = this.view;
    this.proofPane.textContent = "";
    this.setError("");
    if (!view) return;

    const header = this.el(
      "div",
      "proof-header",
      `${view.theory}$${view.conjecture} — ${view.strategyPhrase}`,
    );
    this.proofPane.appendChild(header);
    this.proofPane.appendChild(this.el("div", "breadcrumb", view.focusPath));

    const goal = this.el("div", "goal");
    goal.tabIndex = 0;
    goal.appendChild(renderGoal(this.doc, view.goal, view.spans, view.focusPath));
    goal.addEventListener("click", (e) => {
      const target = e.target as HTMLElement;
      const path = target.closest?.("[data-path]");
      if (path instanceof HTMLElement && path.dataset.path) {
        void this.setFocus(path.dataset.path);
      }
    });
    goal.addEventListener("contextmenu", (e) => {
      e.preventDefault();
      void this.openMatches();
    });
    this.proofPane.appendChild(goal);

    const type = view.focusType === null ? "" : ` : ${view.focusType}`;
    this.proofPane.appendChild(
      this.el(
        "div",
        "status",
        `${view.focusClass}${type}  free: ${view.freeVars.join(", ")}`,
      ),
    );
    if (view.activeSide) {
      const side = this.el("div", "side", `side ${view.activeSide}; other: ${view.otherSide}`);
      const swap = this.el("button", "swap", "switch side");
      swap.addEventListener("click", () =>
        void this.guard(async () => {
          this.view = await this.client.switchSide(view.id);
          this.renderProof();
        }),
      );
      side.appendChild(swap);
      this.proofPane.appendChild(side);
    }

    const steps = this.el("ol", "steps");
    for (const step of view.steps) {
      steps.appendChild(
        this.el("li", "step", `${step.law} (${step.direction}) ${step.path}`),
      );
    }
    this.proofPane.appendChild(steps);

    const undo = this.el("button", "undo", "undo");
    undo.addEventListener("click", () =>
      void this.guard(async () => {
        this.view = await this.client.undo(view.id);
        this.renderProof();
      }),
    );
    this.proofPane.appendChild(undo);

    if (view.complete) {
      this.proofPane.appendChild(
        this.el("div", "banner", "★ Proof complete! ★"),
      );
      const promote = this.el("button", "promote", "promote to theorem");
      promote.addEventListener("click", () =>
        void this.guard(async () => {
          await this.client.promote(view.id);
          this.view = null;
          this.proofPane.textContent = "";
          this.tab = "theorems";
          const rows = await this.client.getTable(view.theory, "theorems");
          this.renderTable(view.theory, "theorems", rows);
        }),
      );
      this.proofPane.appendChild(promote);
    }
  }

  async setFocus(path: string): Promise<void> {
    const view = this.view;
    if (!view) return;
    await this.guard(async () => {
      this.view = await this.client.focusPath(view.id, path);
      this.renderProof();
    });
  }

  private onKey(e: KeyboardEvent): void {
    const view = this.view;
    if (!view) return;
    const moves: Record<string, "up" | "down" | "left" | "right"> = {
      ArrowUp: "up",
      ArrowDown: "down",
      ArrowLeft: "left",
      ArrowRight: "right",
    };
    const move = moves[e.key];
    if (!move) return;
    e.preventDefault();
    void this.guard(async () => {
      // a blocked move comes back flagged but unchanged; stay silent
      this.view = await this.client.moveFocus(view.id, move);
      this.renderProof();
    });
  }

  async openMatches(): Promise<void> {
    const view = this.view;
    if (!view) return;
    await this.guard(async () => {
      const matches = await this.client.matches(view.id);
      if (matches.length === 0) {
        this.showPopup([{ label: "(no applicable laws here)", run: async () => {} }]);
        return;
      }
      this.showPopup(
        matches.map((m) => ({
          label: this.matchLabel(m),
          law: m.lawName,
          direction: m.direction,
          run: () => this.applyFlow(m),
        })),
      );
    });
  }

  private matchLabel(m: MatchEntry): string {
    const needs = m.unbound.length ? `  needs ${m.unbound.map((n) => "?" + n).join(", ")}` : "";
    return `${m.lawName} (${m.direction})  ⇒  ${m.preview}${needs}`;
  }

  private async applyFlow(
    m: MatchEntry,
    instantiation?: Record<string, string>,
  ): Promise<void> {
    const view = this.view;
    if (!view) return;
    const result = await this.client.apply(view.id, m.lawName, m.direction, instantiation);
    if (result.needs) {
      this.showInstantiationDialog(m, result.needs);
      return;
    }
    this.view = result.view;
    this.renderProof();
  }

  private showInstantiationDialog(m: MatchEntry, needs: UnboundPrompt[]): void {
    this.hidePopup();
    const dialog = this.el("div", "instantiate");
    dialog.appendChild(this.el("div", "title", `instantiate ${m.lawName}`));
    const inputs = new Map<string, HTMLInputElement>();
    for (const prompt of needs) {
      const row = this.el("label", "field", `?${prompt.name} (${prompt.kind}) `);
      const input = this.doc.createElement("input");
      input.name = prompt.name;
      input.value = prompt.default;
      inputs.set(prompt.name, input);
      row.appendChild(input);
      dialog.appendChild(row);
    }
    const ok = this.el("button", "confirm", "apply");
    ok.addEventListener("click", () =>
      void this.guard(async () => {
        const values: Record<string, string> = {};
        for (const [name, input] of inputs) values[name] = input.value;
        dialog.remove();
        await this.applyFlow(m, values);
      }),
    );
    dialog.appendChild(ok);
    this.proofPane.appendChild(dialog);
  }

  // --------------------------------------------------------------- popups

  private showPopup(
    items: { label: string; law?: string; direction?: string; run: () => Promise<void> }[],
  ): void {
    this.popup.textContent = "";
    this.popup.className = "popup";
    for (const item of items) {
      const entry = this.el("div", "menu-item", item.label);
      if (item.law) entry.dataset.law = item.law;
      if (item.direction) entry.dataset.direction = item.direction;
      entry.addEventListener("click", () => {
        this.hidePopup();
        void this.guard(item.run);
      });
      this.popup.appendChild(entry);
    }
  }

  private hidePopup(): void {
    this.popup.className = "popup hidden";
    this.popup.textContent = "";
  }
}
