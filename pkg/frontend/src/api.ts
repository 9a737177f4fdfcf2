// Typed client for the rnnheat region-data service. The UI never computes
// influence itself; everything displayed comes from these three endpoints.

export type Bbox = [number, number, number, number]; // x_lo, x_hi, y_lo, y_hi

export interface Meta {
  metric: string;
  mode: string;
  n: number;
  k: number;
  events: number;
  lambda: number;
  bbox: Bbox;
  measures_available: string[];
}

export interface RegionEntry {
  rnn: (string | number)[];
  influence: number;
  rects?: [number, number, number, number][];
  polylines?: [number, number][][];
}

export interface HeatmapResponse {
  meta: Record<string, unknown>;
  regions: RegionEntry[];
}

export interface RegionLookup {
  rnn: (string | number)[];
  influence: number;
}

export interface HeatmapQuery {
  threshold?: number;
  topk?: number;
  measure?: string;
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  if (!res.ok) {
    const body = await res.text().catch(() => "");
    throw new Error(`HTTP ${res.status} for ${url}${body ? `: ${body}` : ""}`);
  }
  return res.json() as Promise<T>;
}

export class ServiceClient {
  constructor(readonly baseUrl: string) {}

  meta(): Promise<Meta> {
    return getJson<Meta>(`${this.baseUrl}/meta`);
  }

  heatmap(q: HeatmapQuery = {}): Promise<HeatmapResponse> {
    const params = new URLSearchParams();
    if (q.threshold !== undefined) params.set("threshold", String(q.threshold));
    if (q.topk !== undefined) params.set("topk", String(q.topk));
    if (q.measure !== undefined) params.set("measure", q.measure);
    const qs = params.toString();
    return getJson<HeatmapResponse>(`${this.baseUrl}/heatmap${qs ? `?${qs}` : ""}`);
  }

  // null for boundary points and points outside the session bbox
  region(x: number, y: number): Promise<RegionLookup | null> {
    return getJson<RegionLookup | null>(`${this.baseUrl}/region?x=${x}&y=${y}`);
  }
}
