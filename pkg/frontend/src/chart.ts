/** The bubble timeline: one row per repository, one circle per commit. */

import { bubbleRadius, timeTicks, TimeScale } from "./scale";
import {
  clearTimeWindow,
  commitVisible,
  initialState,
  toggleBugfixOnly,
  withHover,
  withTimeWindow,
  type ViewState,
} from "./state";
import type { AnalysisArtifact, CommitEntry, RepoEntry } from "./types";

export const ROW_HEIGHT = 48;
export const COLOR_REGULAR = "#28a745"; // added code, as on the forge's code-frequency chart
export const COLOR_BUGFIX = "#1f77b4";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ChartOptions {
  width?: number;
}

interface Layout {
  width: number;
  height: number;
  plotLeft: number;
  plotRight: number;
  top: number;
}

function svgEl<K extends keyof SVGElementTagNameMap>(name: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, name);
}

export function renderError(container: HTMLElement, message: string): void {
  const panel = document.createElement("div");
  panel.className = "fs-error";
  panel.textContent = `Cannot display artifact: ${message}`;
  container.appendChild(panel);
}

export class ForkTimeline {
  readonly artifact: AnalysisArtifact;
  state: ViewState;

  private readonly container: HTMLElement;
  private readonly layout: Layout;
  private readonly scale: TimeScale;
  private readonly repos: RepoEntry[];
  private svg: SVGSVGElement | null = null;
  private tooltip: HTMLDivElement;
  private toggle!: HTMLInputElement; // assigned by buildHeader

  constructor(container: HTMLElement, artifact: AnalysisArtifact, options: ChartOptions = {}) {
    this.container = container;
    this.artifact = artifact;
    this.state = initialState();
    this.repos = [artifact.origin, ...artifact.forks];

    const width = options.width ?? 1200;
    this.layout = {
      width,
      height: this.repos.length * ROW_HEIGHT + 24 + 34,
      plotLeft: 130,
      plotRight: width - 310,
      top: 24,
    };
    this.scale = this.makeScale();

    this.container.replaceChildren();
    this.buildHeader();
    this.tooltip = document.createElement("div");
    this.tooltip.className = "fs-tooltip";
    this.tooltip.style.display = "none";
    this.render();
    this.container.appendChild(this.tooltip);
    this.buildWarnings();
  }

  private makeScale(): TimeScale {
    const times = this.repos.flatMap((repo) =>
      repo.commits.map((c) => Date.parse(c.timestamp)),
    );
    let lo = times.length ? Math.min(...times) : Date.UTC(2020, 0, 1);
    let hi = times.length ? Math.max(...times) : Date.UTC(2020, 0, 2);
    if (hi <= lo) {
      hi = lo + 24 * 3600 * 1000;
    }
    // A little horizontal padding keeps edge bubbles inside the plot.
    const pad = (hi - lo) * 0.02;
    return new TimeScale(
      new Date(lo - pad),
      new Date(hi + pad),
      this.layout.plotLeft,
      this.layout.plotRight,
    );
  }

  private buildHeader(): void {
    const header = document.createElement("div");
    header.className = "fs-header";
    const title = document.createElement("h1");
    title.textContent = `${this.artifact.origin.full_name}: unique commits across forks`;
    header.appendChild(title);
    this.container.appendChild(header);

    const controls = document.createElement("div");
    controls.className = "fs-controls";

    const label = document.createElement("label");
    this.toggle = document.createElement("input");
    this.toggle.type = "checkbox";
    this.toggle.className = "fs-bugfix-toggle";
    this.toggle.addEventListener("change", () => {
      this.state = { ...this.state, bugfixOnly: this.toggle.checked };
      this.render();
    });
    label.append(this.toggle, document.createTextNode(" bug-fix commits only"));
    controls.appendChild(label);

    const reset = document.createElement("button");
    reset.className = "fs-reset-brush";
    reset.textContent = "reset time window";
    reset.addEventListener("click", () => {
      this.state = clearTimeWindow(this.state);
      this.render();
    });
    controls.appendChild(reset);

    this.container.appendChild(controls);
  }

  private buildWarnings(): void {
    if (!this.artifact.warnings.length) {
      return;
    }
    const panel = document.createElement("div");
    panel.className = "fs-warnings";
    panel.textContent = `${this.artifact.warnings.length} warning(s): ${this.artifact.warnings.join("; ")}`;
    this.container.appendChild(panel);
  }

  // -- public interaction API ---------------------------------------------

  toggleBugfixFilter(): void {
    this.state = toggleBugfixOnly(this.state);
    this.toggle.checked = this.state.bugfixOnly;
    this.render();
  }

  /** Sets (or clears, when start is null) the visible time window. */
  applyTimeWindow(start: Date | null, end?: Date): void {
    this.state =
      start === null || end === undefined
        ? clearTimeWindow(this.state)
        : withTimeWindow(this.state, start, end);
    this.render();
  }

  // -- rendering -------------------------------------------------------------

  render(): void {
    const fresh = svgEl("svg");
    fresh.setAttribute("class", "fs-chart");
    fresh.setAttribute("width", String(this.layout.width));
    fresh.setAttribute("height", String(this.layout.height));
    fresh.setAttribute("viewBox", `0 0 ${this.layout.width} ${this.layout.height}`);

    this.buildAxis(fresh);
    this.buildBrush(fresh);
    this.repos.forEach((repo, index) => fresh.appendChild(this.buildRow(repo, index)));

    if (this.svg) {
      this.svg.replaceWith(fresh);
    } else {
      this.container.appendChild(fresh);
    }
    this.svg = fresh;
  }

  private rowCenterY(index: number): number {
    return this.layout.top + index * ROW_HEIGHT + ROW_HEIGHT / 2;
  }

  private buildAxis(svg: SVGSVGElement): void {
    const axis = svgEl("g");
    axis.setAttribute("class", "fs-axis");
    const y = this.layout.top + this.repos.length * ROW_HEIGHT + 6;

    const base = svgEl("path");
    base.setAttribute("d", `M${this.layout.plotLeft},${y}H${this.layout.plotRight}`);
    axis.appendChild(base);

    for (const tick of timeTicks(this.scale.start, this.scale.end)) {
      const x = this.scale.x(tick.date);
      const mark = svgEl("line");
      mark.setAttribute("x1", String(x));
      mark.setAttribute("x2", String(x));
      mark.setAttribute("y1", String(y));
      mark.setAttribute("y2", String(y + 5));
      axis.appendChild(mark);
      const label = svgEl("text");
      label.setAttribute("x", String(x));
      label.setAttribute("y", String(y + 17));
      label.setAttribute("text-anchor", "middle");
      label.textContent = tick.label;
      axis.appendChild(label);
    }
    svg.appendChild(axis);
  }

  private buildBrush(svg: SVGSVGElement): void {
    const plotHeight = this.repos.length * ROW_HEIGHT;

    if (this.state.timeWindow) {
      const [start, end] = this.state.timeWindow;
      const selection = svgEl("rect");
      selection.setAttribute("class", "fs-brush-selection");
      selection.setAttribute("x", String(this.scale.x(start)));
      selection.setAttribute("width", String(this.scale.x(end) - this.scale.x(start)));
      selection.setAttribute("y", String(this.layout.top));
      selection.setAttribute("height", String(plotHeight));
      svg.appendChild(selection);
    }

    const overlay = svgEl("rect");
    overlay.setAttribute("class", "fs-brush-overlay");
    overlay.setAttribute("x", String(this.layout.plotLeft));
    overlay.setAttribute("width", String(this.layout.plotRight - this.layout.plotLeft));
    overlay.setAttribute("y", String(this.layout.top));
    overlay.setAttribute("height", String(plotHeight));
    overlay.setAttribute("fill", "transparent");

    let dragStart: number | null = null;
    const toPlotX = (event: MouseEvent): number => {
      const bounds = svg.getBoundingClientRect();
      return event.clientX - bounds.left;
    };
    overlay.addEventListener("mousedown", (event) => {
      dragStart = toPlotX(event as MouseEvent);
    });
    overlay.addEventListener("mouseup", (event) => {
      if (dragStart === null) {
        return;
      }
      const dragEnd = toPlotX(event as MouseEvent);
      const from = dragStart;
      dragStart = null;
      if (Math.abs(dragEnd - from) > 2) {
        this.applyTimeWindow(this.scale.invert(from), this.scale.invert(dragEnd));
      }
    });
    overlay.addEventListener("dblclick", () => this.applyTimeWindow(null));
    svg.appendChild(overlay);
  }

  private buildRow(repo: RepoEntry, index: number): SVGGElement {
    const row = svgEl("g");
    row.setAttribute("class", "fs-row");
    row.setAttribute("data-repo", repo.full_name);
    const y = this.rowCenterY(index);

    const line = svgEl("line");
    line.setAttribute("class", "fs-row-line");
    line.setAttribute("x1", String(this.layout.plotLeft));
    line.setAttribute("x2", String(this.layout.plotRight));
    line.setAttribute("y1", String(y));
    line.setAttribute("y2", String(y));
    row.appendChild(line);

    const owner = svgEl("text");
    owner.setAttribute("class", "fs-owner-label");
    owner.setAttribute("x", "10");
    owner.setAttribute("y", String(y + 4));
    owner.textContent = repo.owner;
    row.appendChild(owner);

    const label = svgEl("text");
    label.setAttribute("class", "fs-repo-label");
    label.setAttribute("x", String(this.layout.plotRight + 14));
    label.setAttribute("y", String(y + 4));
    const link = svgEl("a");
    link.setAttribute("href", repo.url);
    link.setAttribute("target", "_blank");
    link.textContent = repo.full_name;
    label.appendChild(link);
    row.appendChild(label);

    const count = svgEl("text");
    count.setAttribute("class", "fs-bugfix-count");
    count.setAttribute("x", String(this.layout.width - 10));
    count.setAttribute("y", String(y + 4));
    count.setAttribute("text-anchor", "end");
    count.textContent = `${repo.bugfix_count} bug fixes`;
    row.appendChild(count);

    for (const commit of repo.commits) {
      if (!commitVisible(commit, this.state)) {
        continue;
      }
      row.appendChild(this.buildCircle(commit, y));
    }
    return row;
  }

  private buildCircle(commit: CommitEntry, y: number): SVGCircleElement {
    const circle = svgEl("circle");
    circle.setAttribute(
      "class",
      commit.is_bugfix ? "fs-commit fs-bugfix" : "fs-commit fs-regular",
    );
    circle.setAttribute("data-sha", commit.sha);
    circle.setAttribute("cx", String(this.scale.x(new Date(commit.timestamp))));
    circle.setAttribute("cy", String(y));
    circle.setAttribute("r", String(bubbleRadius(commit.added_lines)));
    circle.setAttribute("fill", commit.is_bugfix ? COLOR_BUGFIX : COLOR_REGULAR);

    circle.addEventListener("click", () => {
      window.open(commit.url, "_blank");
    });
    circle.addEventListener("mouseenter", (event) => {
      this.state = withHover(this.state, commit.sha);
      this.showTooltip(commit, event as MouseEvent);
    });
    circle.addEventListener("mousemove", (event) => {
      this.positionTooltip(event as MouseEvent);
    });
    circle.addEventListener("mouseleave", () => {
      this.state = withHover(this.state, null);
      this.tooltip.style.display = "none";
    });
    return circle;
  }

  private showTooltip(commit: CommitEntry, event: MouseEvent): void {
    const lines = [commit.subject];
    if (commit.message_excerpt) {
      lines.push(commit.message_excerpt);
    }
    lines.push(`+${commit.added_lines} lines, ${commit.timestamp}`);
    this.tooltip.textContent = lines.join("\n");
    this.tooltip.style.display = "block";
    this.positionTooltip(event);
  }

  private positionTooltip(event: MouseEvent): void {
    this.tooltip.style.left = `${event.clientX + 12}px`;
    this.tooltip.style.top = `${event.clientY + 12}px`;
  }
}
