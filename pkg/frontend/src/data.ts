/** Artifact loading: data.json next to the page, inline blob as fallback.

Browsers refuse fetch() on file:// URLs, so the analyzer embeds a copy of
the artifact into the page; both sources carry identical JSON. */

import { checkArtifact, type AnalysisArtifact } from "./types";

export const INLINE_DATA_ID = "forkscope-data";

export function parseEmbedded(doc: Document): AnalysisArtifact {
  const node = doc.getElementById(INLINE_DATA_ID);
  if (!node || !node.textContent) {
    throw new Error("no embedded artifact data in page");
  }
  return checkArtifact(JSON.parse(node.textContent));
}

export async function loadArtifact(doc: Document): Promise<AnalysisArtifact> {
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
