/** View state: which commits are visible. Never touches the artifact. */

import type { CommitEntry } from "./types";

export interface ViewState {
  bugfixOnly: boolean;
  timeWindow: [Date, Date] | null;
  hoveredCommit: string | null;
}

export function initialState(): ViewState {
  return { bugfixOnly: false, timeWindow: null, hoveredCommit: null };
}

export function toggleBugfixOnly(state: ViewState): ViewState {
  return { ...state, bugfixOnly: !state.bugfixOnly };
}

/** Normalizes the endpoints so start < end always holds. */
export function withTimeWindow(state: ViewState, start: Date, end: Date): ViewState {
  const [lo, hi] = start.getTime() <= end.getTime() ? [start, end] : [end, start];
  if (lo.getTime() === hi.getTime()) {
    return { ...state, timeWindow: null };
  }
  return { ...state, timeWindow: [lo, hi] };
}

export function clearTimeWindow(state: ViewState): ViewState {
  return { ...state, timeWindow: null };
}

export function withHover(state: ViewState, sha: string | null): ViewState {
  return { ...state, hoveredCommit: sha };
}

export function commitVisible(commit: CommitEntry, state: ViewState): boolean {
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
