/** Wire types of the analysis artifact (data.json). */

export interface CommitEntry {
  sha: string;
  timestamp: string; // ISO 8601, UTC, second precision
  subject: string;
  message_excerpt: string;
  added_lines: number;
  is_bugfix: boolean;
  url: string;
}

export interface RepoEntry {
  owner: string;
  name: string;
  full_name: string;
  url: string;
  divergent_count: number;
  bugfix_count: number;
  commits: CommitEntry[];
}

export interface AnalysisArtifact {
  schema_version: number;
  generated_at: string;
  origin: RepoEntry;
  forks: RepoEntry[];
  warnings: string[];
}

export const SCHEMA_VERSION = 1;

/** Cheap structural check; detailed validation happened analyzer-side. */
export function checkArtifact(data: unknown): AnalysisArtifact {
  const artifact = data as AnalysisArtifact;
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
