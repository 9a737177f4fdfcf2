// Trailing-edge rate limiter for hover lookups: at most one call per
// `intervalMs`, and the latest arguments always win. A burst of mouse
// moves produces one immediate call plus one trailing call with the final
// position, so the request rate is bounded by 1000 / intervalMs.

export type Scheduler = {
  setTimeout(fn: () => void, ms: number): unknown;
  clearTimeout(handle: unknown): void;
  now(): number;
};

const realScheduler: Scheduler = {
  setTimeout: (fn, ms) => setTimeout(fn, ms),
  clearTimeout: (h) => clearTimeout(h as ReturnType<typeof setTimeout>),
  now: () => Date.now(),
};

export function rateLimited<A extends unknown[]>(
  fn: (...args: A) => void,
  intervalMs: number,
  sched: Scheduler = realScheduler,
): (...args: A) => void {
  let last = -Infinity;
  let pending: unknown = null;
  let queued: A | null = null;

  const fire = () => {
    last = sched.now();
    pending = null;
    const args = queued!;
    queued = null;
    fn(...args);
  };

  return (...args: A) => {
    queued = args;
    if (pending !== null) return; // trailing call already scheduled
    const wait = intervalMs - (sched.now() - last);
    if (wait <= 0) {
      fire();
    } else {
      pending = sched.setTimeout(fire, wait);
    }
  };
}
