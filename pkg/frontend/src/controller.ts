// UI state and fetch orchestration, kept free of DOM types so the logic
// is unit-testable. Control changes trigger exactly one /heatmap request
// each; every request carries a sequence number and only the newest
// response is applied (latest-wins, stale responses dropped). Hover
// lookups go through a rate limiter and are sequence-guarded the same way.

import type { HeatmapQuery, HeatmapResponse, RegionEntry, RegionLookup } from "./api.js";
import { rateLimited, type Scheduler } from "./rate.js";

export interface ControlState {
  measure: string;
  threshold: number;
  topK: number | null;
}

export interface Tooltip {
  x: number;
  y: number;
  rnn: (string | number)[];
  influence: number;
}

export interface ServiceLike {
  heatmap(q: HeatmapQuery): Promise<HeatmapResponse>;
  region(x: number, y: number): Promise<RegionLookup | null>;
}

export interface ExplorerHooks {
  onRegions(regions: RegionEntry[]): void;
  onTooltip(tip: Tooltip | null): void;
  onBanner(message: string | null): void;
}

export const HOVER_INTERVAL_MS = 100; // <= 10 region lookups per second

export class Explorer {
  state: ControlState = { measure: "size", threshold: 0, topK: null };
  regions: RegionEntry[] = [];

  private heatmapSeq = 0;
  private appliedHeatmapSeq = 0;
  private hoverSeq = 0;
  private appliedHoverSeq = 0;
  private readonly hoverNow: (x: number, y: number) => void;

  constructor(private readonly service: ServiceLike,
              private readonly hooks: ExplorerHooks,
              sched?: Scheduler) {
    this.hoverNow = rateLimited((x: number, y: number) => {
      void this.lookupRegion(x, y);
    }, HOVER_INTERVAL_MS, sched);
  }

  // one settled control change -> one request
  setControls(next: Partial<ControlState>): Promise<void> {
    this.state = { ...this.state, ...next };
    return this.refetch();
  }

  async refetch(): Promise<void> {
    const seq = ++this.heatmapSeq;
    const q: HeatmapQuery = { measure: this.state.measure };
    if (this.state.threshold > 0) q.threshold = this.state.threshold;
    if (this.state.topK !== null) q.topk = this.state.topK;
    try {
      const res = await this.service.heatmap(q);
      if (seq <= this.appliedHeatmapSeq) return; // a newer response landed first
      this.appliedHeatmapSeq = seq;
      this.regions = res.regions;
      this.hooks.onBanner(null);
      this.hooks.onRegions(res.regions);
    } catch (err) {
      if (seq <= this.appliedHeatmapSeq) return;
      this.appliedHeatmapSeq = seq;
      this.hooks.onBanner(errorText(err));
    }
  }

  hover(x: number, y: number): void {
    this.hoverNow(x, y);
  }

  hoverLeave(): void {
    this.appliedHoverSeq = ++this.hoverSeq;
    this.hooks.onTooltip(null);
  }

  private async lookupRegion(x: number, y: number): Promise<void> {
    const seq = ++this.hoverSeq;
    try {
      const res = await this.service.region(x, y);
      if (seq <= this.appliedHoverSeq) return;
      this.appliedHoverSeq = seq;
      this.hooks.onTooltip(res === null ? null
        : { x, y, rnn: res.rnn, influence: res.influence });
    } catch {
      if (seq <= this.appliedHoverSeq) return;
      this.appliedHoverSeq = seq;
      this.hooks.onTooltip(null); // hidden on error, no banner for hovers
    }
  }
}

function errorText(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}
