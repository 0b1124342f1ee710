/** Bundle entry point for the static viewer page. */

import { ForkTimeline, renderError } from "./chart";
import { loadArtifact } from "./data";

async function bootstrap(): Promise<void> {
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
