// Wire types mirroring the session view returned by the API. The UI never
// invents workspace state: every mutation replaces the whole view with the
// server's copy.

export interface LineStyle {
  thickness: number;
  color: string;
}

export interface PlacementView {
  image: string;
  position: { x: number; y: number };
  selected_attributes: string[];
  distance: number;
  weight: number;
  weights: Record<string, number>;
  line: LineStyle;
}

export interface HistoryEntryView {
  id: number;
  result_image: string;
  created_at: string;
  fingerprint: string;
}

export interface AttributeCatalog {
  local: string[];
  global: string[];
  layer_groups: Record<string, number[]>;
  local_preblend: Record<string, number[]>;
}

export interface BackendInfo {
  name: string;
  latent_shape: number[];
  image_size: number[];
  deterministic: boolean;
  reentrant: boolean;
  synchronous: boolean;
}

export interface SessionView {
  session_id: string;
  canvas: { width: number; height: number };
  distance_model: { d_min: number; d_max: number };
  target: string | null;
  placements: PlacementView[];
  undo_depth: number;
  redo_depth: number;
  history: HistoryEntryView[];
  images: string[];
  backend: BackendInfo;
  attributes: AttributeCatalog;
}

export type JobStatus = "queued" | "running" | "done" | "failed";

export interface JobView {
  job_id: string;
  status: JobStatus;
  entry_id: number | null;
  error: string | null;
  created_at: string;
  entry?: HistoryEntryView;
}

export interface ApiErrorBody {
  error: { code: string; message: string; field: string | null };
}
