/** Aggregates the figures are allowed to plot: median and quantile bands. */

export function quantile(xs: number[], q: number): number {
  if (xs.length === 0) throw new Error("quantile of empty sample");
  if (q < 0 || q > 1) throw new Error(`quantile level ${q} outside [0, 1]`);
  const sorted = [...xs].sort((a, b) => a - b);
  const pos = q * (sorted.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  const frac = pos - lo;
  return sorted[lo]! * (1 - frac) + sorted[hi]! * frac;
}

export function median(xs: number[]): number {
  return quantile(xs, 0.5);
}

export function groupBy<T, K>(items: T[], key: (item: T) => K): Map<K, T[]> {
  const groups = new Map<K, T[]>();
  for (const item of items) {
    const k = key(item);
    const bucket = groups.get(k);
    if (bucket) bucket.push(item);
    else groups.set(k, [item]);
  }
  return groups;
}

export function uniqueSorted(xs: number[]): number[] {
  return [...new Set(xs)].sort((a, b) => a - b);
}
