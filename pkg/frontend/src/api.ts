/**
 * Wire types for the actidash HTTP API and a thin client over an injectable
 * transport, so tests can record and stub every request.
 */

export type Gender = "male" | "female";

export type LevelName = "sedentary" | "light" | "moderate" | "vigorous";

export const LEVEL_ORDER: readonly LevelName[] = [
  "sedentary",
  "light",
  "moderate",
  "vigorous",
];

export type KindName =
  | "height_m"
  | "weight_kg"
  | "bmi"
  | "body_fat_pct"
  | "waist_cm"
  | "systolic_mmhg"
  | "diastolic_mmhg";

export const ALL_KINDS: readonly KindName[] = [
  "height_m",
  "weight_kg",
  "bmi",
  "body_fat_pct",
  "waist_cm",
  "systolic_mmhg",
  "diastolic_mmhg",
];

export interface SubjectInfo {
  id: string;
  gender: Gender;
}

export interface DayPayload {
  date: string; // YYYY-MM-DD
  weekend: boolean;
  hours: Record<LevelName, number>;
}

export interface BiometricPoint {
  date: string;
  value: number;
}

export interface BiometricSeries {
  measurements: BiometricPoint[];
  daily?: BiometricPoint[];
}

export interface GroupBreakdown {
  means: Record<LevelName, number> | null;
  days: number;
}

export interface BreakdownPayload {
  weekday: GroupBreakdown;
  weekend: GroupBreakdown;
}

export interface TimeWindow {
  from: string;
  to: string;
}

/** Fetches a path like "/api/v1/subjects?gender=male" and yields its JSON. */
export type Transport = (path: string) => Promise<unknown>;

export function fetchTransport(baseUrl: string): Transport {
  return async (path) => {
    const response = await fetch(baseUrl + path);
    if (!response.ok) {
      let detail = `${response.status}`;
      try {
        const body = (await response.json()) as { error?: { message?: string } };
        if (body.error?.message) detail = body.error.message;
      } catch {
        // non-JSON error body; keep the status code
      }
      throw new Error(`${path}: ${detail}`);
    }
    return response.json();
  };
}

function query(params: Array<[string, string | undefined]>): string {
  const parts = params
    .filter((entry): entry is [string, string] => entry[1] !== undefined)
    .map(([key, value]) => `${key}=${encodeURIComponent(value)}`);
  return parts.length ? `?${parts.join("&")}` : "";
}

/** Day/breakdown query string: a pure function of the filter inputs. */
export function filterQuery(
  maxSedentaryHours: number,
  window: TimeWindow | null,
): string {
  return query([
    ["max_sedentary_hours", String(maxSedentaryHours)],
    ["from", window?.from],
    ["to", window?.to],
  ]);
}

export function biometricsQuery(kind: KindName, window: TimeWindow | null): string {
  return query([
    ["kinds", kind],
    ["daily", "true"],
    ["from", window?.from],
    ["to", window?.to],
  ]);
}

export class ApiClient {
  constructor(private readonly transport: Transport) {}

  async subjects(gender: Gender | null): Promise<SubjectInfo[]> {
    const suffix = query([["gender", gender ?? undefined]]);
    return (await this.transport(`/api/v1/subjects${suffix}`)) as SubjectInfo[];
  }

  async days(
    id: string,
    maxSedentaryHours: number,
    window: TimeWindow | null,
  ): Promise<DayPayload[]> {
    const suffix = filterQuery(maxSedentaryHours, window);
    return (await this.transport(
      `/api/v1/subjects/${encodeURIComponent(id)}/days${suffix}`,
    )) as DayPayload[];
  }

  async breakdown(
    id: string,
    maxSedentaryHours: number,
    window: TimeWindow | null,
  ): Promise<BreakdownPayload> {
    const suffix = filterQuery(maxSedentaryHours, window);
    return (await this.transport(
      `/api/v1/subjects/${encodeURIComponent(id)}/breakdown${suffix}`,
    )) as BreakdownPayload;
  }

  async biometrics(
    id: string,
    kind: KindName,
    window: TimeWindow | null,
  ): Promise<BiometricSeries> {
    const suffix = biometricsQuery(kind, window);
    const body = (await this.transport(
      `/api/v1/subjects/${encodeURIComponent(id)}/biometrics${suffix}`,
    )) as Record<string, BiometricSeries>;
    return body[kind] ?? { measurements: [], daily: [] };
  }
}
