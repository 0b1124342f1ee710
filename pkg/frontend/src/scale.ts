/** Bubble sizing and the horizontal time scale. */

export const MIN_RADIUS = 3;
export const RADIUS_SCALE = 2;

/** Radius grows with the log of added lines; deletions never count. */
export function bubbleRadius(addedLines: number): number {
  return MIN_RADIUS + RADIUS_SCALE * Math.log(1 + addedLines);
}

export class TimeScale {
  constructor(
    readonly start: Date,
    readonly end: Date,
    readonly rangeStart: number,
    readonly rangeEnd: number,
  ) {
    if (end.getTime() <= start.getTime()) {
      throw new Error("time scale domain must not be empty");
    }
  }

  x(date: Date): number {
    const f = (date.getTime() - this.start.getTime()) / (this.end.getTime() - this.start.getTime());
    return this.rangeStart + f * (this.rangeEnd - this.rangeStart);
  }

  invert(px: number): Date {
    const f = (px - this.rangeStart) / (this.rangeEnd - this.rangeStart);
    return new Date(this.start.getTime() + f * (this.end.getTime() - this.start.getTime()));
  }
}

export interface Tick {
  date: Date;
  label: string;
}

const MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"];

/** Month ticks for short spans, year ticks otherwise, at most ~12 labels. */
export function timeTicks(start: Date, end: Date): Tick[] {
  const spanMonths =
    (end.getUTCFullYear() - start.getUTCFullYear()) * 12 +
    (end.getUTCMonth() - start.getUTCMonth());
  const ticks: Tick[] = [];
  if (spanMonths <= 24) {
    const step = spanMonths > 12 ? 2 : 1;
    const cursor = new Date(Date.UTC(start.getUTCFullYear(), start.getUTCMonth(), 1));
    while (cursor.getTime() <= end.getTime()) {
      if (cursor.getTime() >= start.getTime()) {
        const label =
          cursor.getUTCMonth() === 0
            ? String(cursor.getUTCFullYear())
            : MONTHS[cursor.getUTCMonth()];
        ticks.push({ date: new Date(cursor.getTime()), label });
      }
      cursor.setUTCMonth(cursor.getUTCMonth() + step);
    }
  } else {
    const years = end.getUTCFullYear() - start.getUTCFullYear();
    const step = Math.max(1, Math.ceil(years / 10));
    for (
      let year = start.getUTCFullYear() + 1;
      year <= end.getUTCFullYear();
      year += step
    ) {
      ticks.push({ date: new Date(Date.UTC(year, 0, 1)), label: String(year) });
    }
  }
  return ticks;
}
