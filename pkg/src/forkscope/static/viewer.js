"use strict";
(() => {
  // src/scale.ts
  var MIN_RADIUS = 3;
  var RADIUS_SCALE = 2;
  function bubbleRadius(addedLines) {
    return MIN_RADIUS + RADIUS_SCALE * Math.log(1 + addedLines);
  }
  var TimeScale = class {
    constructor(start, end, rangeStart, rangeEnd) {
      this.start = start;
      this.end = end;
      this.rangeStart = rangeStart;
      this.rangeEnd = rangeEnd;
      if (end.getTime() <= start.getTime()) {
        throw new Error("time scale domain must not be empty");
      }
    }
    x(date) {
      const f = (date.getTime() - this.start.getTime()) / (this.end.getTime() - this.start.getTime());
      return this.rangeStart + f * (this.rangeEnd - this.rangeStart);
    }
    invert(px) {
      const f = (px - this.rangeStart) / (this.rangeEnd - this.rangeStart);
      return new Date(this.start.getTime() + f * (this.end.getTime() - this.start.getTime()));
    }
  };
  var MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"];
  function timeTicks(start, end) {
    const spanMonths = (end.getUTCFullYear() - start.getUTCFullYear()) * 12 + (end.getUTCMonth() - start.getUTCMonth());
    const ticks = [];
    if (spanMonths <= 24) {
      const step = spanMonths > 12 ? 2 : 1;
      const cursor = new Date(Date.UTC(start.getUTCFullYear(), start.getUTCMonth(), 1));
      while (cursor.getTime() <= end.getTime()) {
        if (cursor.getTime() >= start.getTime()) {
          const label = cursor.getUTCMonth() === 0 ? String(cursor.getUTCFullYear()) : MONTHS[cursor.getUTCMonth()];
          ticks.push({ date: new Date(cursor.getTime()), label });
        }
        cursor.setUTCMonth(cursor.getUTCMonth() + step);
      }
    } else {
      const years = end.getUTCFullYear() - start.getUTCFullYear();
      const step = Math.max(1, Math.ceil(years / 10));
      for (let year = start.getUTCFullYear() + 1; year <= end.getUTCFullYear(); year += step) {
        ticks.push({ date: new Date(Date.UTC(year, 0, 1)), label: String(year) });
      }
    }
    return ticks;
  }

  // src/state.ts
  function initialState() {
    return { bugfixOnly: false, timeWindow: null, hoveredCommit: null };
  }
  function toggleBugfixOnly(state) {
    return { ...state, bugfixOnly: !state.bugfixOnly };
  }
  function withTimeWindow(state, start, end) {
    const [lo, hi] = start.getTime() <= end.getTime() ? [start, end] : [end, start];
    if (lo.getTime() === hi.getTime()) {
      return { ...state, timeWindow: null };
    }
    return { ...state, timeWindow: [lo, hi] };
  }
  function clearTimeWindow(state) {
    return { ...state, timeWindow: null };
  }
  function withHover(state, sha) {
    return { ...state, hoveredCommit: sha };
  }
  function commitVisible(commit, state) {
    if (state.bugfixOnly && !commit.is_bugfix) {
      return false;
    }
    if (state.timeWindow) {
      const t = Date.parse(commit.timestamp);
      if (t < state.timeWindow[0].getTime() || t > state.timeWindow[1].getTime()) {
        return false;
      }
    }
    return true;
  }

  // src/chart.ts
  var ROW_HEIGHT = 48;
  var COLOR_REGULAR = "#28a745";
  var COLOR_BUGFIX = "#1f77b4";
  var SVG_NS = "http://www.w3.org/2000/svg";
  function svgEl(name) {
    return document.createElementNS(SVG_NS, name);
  }
  function renderError(container, message) {
    const panel = document.createElement("div");
    panel.className = "fs-error";
    panel.textContent = `Cannot display artifact: ${message}`;
    container.appendChild(panel);
  }
  var ForkTimeline = class {
    // assigned by buildHeader
    constructor(container, artifact, options = {}) {
      this.svg = null;
      var _a;
      this.container = container;
      this.artifact = artifact;
      this.state = initialState();
      this.repos = [artifact.origin, ...artifact.forks];
      const width = (_a = options.width) != null ? _a : 1200;
      this.layout = {
        width,
        height: this.repos.length * ROW_HEIGHT + 24 + 34,
        plotLeft: 130,
        plotRight: width - 310,
        top: 24
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
    makeScale() {
      const times = this.repos.flatMap(
        (repo) => repo.commits.map((c) => Date.parse(c.timestamp))
      );
      let lo = times.length ? Math.min(...times) : Date.UTC(2020, 0, 1);
      let hi = times.length ? Math.max(...times) : Date.UTC(2020, 0, 2);
      if (hi <= lo) {
        hi = lo + 24 * 3600 * 1e3;
      }
      const pad = (hi - lo) * 0.02;
      return new TimeScale(
        new Date(lo - pad),
        new Date(hi + pad),
        this.layout.plotLeft,
        this.layout.plotRight
      );
    }
    buildHeader() {
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
    buildWarnings() {
      if (!this.artifact.warnings.length) {
        return;
      }
      const panel = document.createElement("div");
      panel.className = "fs-warnings";
      panel.textContent = `${this.artifact.warnings.length} warning(s): ${this.artifact.warnings.join("; ")}`;
      this.container.appendChild(panel);
    }
    // -- public interaction API ---------------------------------------------
    toggleBugfixFilter() {
      this.state = toggleBugfixOnly(this.state);
      this.toggle.checked = this.state.bugfixOnly;
      this.render();
    }
    /** Sets (or clears, when start is null) the visible time window. */
    applyTimeWindow(start, end) {
      this.state = start === null || end === void 0 ? clearTimeWindow(this.state) : withTimeWindow(this.state, start, end);
      this.render();
    }
    // -- rendering -------------------------------------------------------------
    render() {
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
    rowCenterY(index) {
      return this.layout.top + index * ROW_HEIGHT + ROW_HEIGHT / 2;
    }
    buildAxis(svg) {
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
    buildBrush(svg) {
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
      let dragStart = null;
      const toPlotX = (event) => {
        const bounds = svg.getBoundingClientRect();
        return event.clientX - bounds.left;
      };
      overlay.addEventListener("mousedown", (event) => {
        dragStart = toPlotX(event);
      });
      overlay.addEventListener("mouseup", (event) => {
        if (dragStart === null) {
          return;
        }
        const dragEnd = toPlotX(event);
        const from = dragStart;
        dragStart = null;
        if (Math.abs(dragEnd - from) > 2) {
          this.applyTimeWindow(this.scale.invert(from), this.scale.invert(dragEnd));
        }
      });
      overlay.addEventListener("dblclick", () => this.applyTimeWindow(null));
      svg.appendChild(overlay);
    }
    buildRow(repo, index) {
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
    buildCircle(commit, y) {
      const circle = svgEl("circle");
      circle.setAttribute(
        "class",
        commit.is_bugfix ? "fs-commit fs-bugfix" : "fs-commit fs-regular"
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
        this.showTooltip(commit, event);
      });
      circle.addEventListener("mousemove", (event) => {
        this.positionTooltip(event);
      });
      circle.addEventListener("mouseleave", () => {
        this.state = withHover(this.state, null);
        this.tooltip.style.display = "none";
      });
      return circle;
    }
    showTooltip(commit, event) {
      const lines = [commit.subject];
      if (commit.message_excerpt) {
        lines.push(commit.message_excerpt);
      }
      lines.push(`+${commit.added_lines} lines, ${commit.timestamp}`);
      this.tooltip.textContent = lines.join("\n");
      this.tooltip.style.display = "block";
      this.positionTooltip(event);
    }
    positionTooltip(event) {
      this.tooltip.style.left = `${event.clientX + 12}px`;
      this.tooltip.style.top = `${event.clientY + 12}px`;
    }
  };

  // src/types.ts
  var SCHEMA_VERSION = 1;
  function checkArtifact(data) {
    const artifact = data;
    if (!artifact || typeof artifact !== "object") {
      throw new Error("artifact is not an object");
    }
    if (artifact.schema_version !== SCHEMA_VERSION) {
      throw new Error(`unsupported schema_version: ${artifact.schema_version}`);
    }
    if (!artifact.origin || !Array.isArray(artifact.forks) || !Array.isArray(artifact.warnings)) {
      throw new Error("artifact is missing origin/forks/warnings");
    }
    for (const repo of [artifact.origin, ...artifact.forks]) {
      if (typeof repo.full_name !== "string" || !Array.isArray(repo.commits)) {
        throw new Error(`malformed repository entry: ${JSON.stringify(repo).slice(0, 80)}`);
      }
    }
    return artifact;
  }

  // src/data.ts
  var INLINE_DATA_ID = "forkscope-data";
  function parseEmbedded(doc) {
    const node = doc.getElementById(INLINE_DATA_ID);
    if (!node || !node.textContent) {
      throw new Error("no embedded artifact data in page");
    }
    return checkArtifact(JSON.parse(node.textContent));
  }
  async function loadArtifact(doc) {
    try {
      const response = await fetch("./data.json");
      if (!response.ok) {
        throw new Error(`HTTP ${response.status}`);
      }
      return checkArtifact(await response.json());
    } catch {
      return parseEmbedded(doc);
    }
  }

  // src/main.ts
  async function bootstrap() {
    const root = document.getElementById("app");
    if (!root) {
      return;
    }
    try {
      const artifact = await loadArtifact(document);
      new ForkTimeline(root, artifact);
    } catch (error) {
      renderError(root, error instanceof Error ? error.message : String(error));
    }
  }
  void bootstrap();
})();
