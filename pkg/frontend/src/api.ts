// Typed client for the listening-study endpoints. The payloads carry only
// opaque ids: the server never tells the client which study arm a clip
// belongs to, and nothing here should ever ask.

export interface ClipSlot {
  clip_id: string;
  url: string;
  rating: number | null;
}

export interface SessionItem {
  image_id: string;
  image_url: string;
  clips: ClipSlot[];
}

export interface SessionView {
  subject_id: string;
  items: SessionItem[];
  progress: { rated: number; total: number };
}

export interface RatingInput {
  subject_id: string;
  image_id: string;
  clip_id: string;
  rating: number;
}

export interface RatingAck {
  stored: { subject_id: string; image_id: string; rating: number };
  progress: { rated: number; total: number };
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

export type FetchLike = typeof fetch;

export class StudyClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  resolve(path: string): string {
    return this.baseUrl.replace(/\/$/, '') + path;
  }

  async loadSession(subjectId: string): Promise<SessionView> {
    const resp = await this.fetchImpl(
      this.resolve(`/v1/session/${encodeURIComponent(subjectId)}`),
    );
    if (!resp.ok) {
      throw new ApiError(resp.status, `session request failed (${resp.status})`);
    }
    const body = (await resp.json()) as SessionView;
    validateSession(body);
    return body;
  }

  async submitRating(input: RatingInput): Promise<RatingAck> {
    const resp = await this.fetchImpl(this.resolve('/v1/rating'), {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(input),
    });
    if (resp.status !== 201) {
      throw new ApiError(resp.status, `rating rejected (${resp.status})`);
    }
    return (await resp.json()) as RatingAck;
  }
}

// Reject anything that is not a complete 16x3 session before rendering a
// single node, so a malformed payload cannot leave a partial screen.
export function validateSession(view: SessionView): void {
  if (!view || !Array.isArray(view.items)) {
    throw new Error('malformed session: no items');
  }
  if (view.items.length !== 16) {
    throw new Error(`malformed session: ${view.items.length} items, expected 16`);
  }
  for (const item of view.items) {
    if (!item.image_id || !item.image_url || !Array.isArray(item.clips)) {
      throw new Error('malformed session: bad item');
    }
    if (item.clips.length !== 3) {
      throw new Error(
        `malformed session: item ${item.image_id} has ${item.clips.length} clips`,
      );
    }
    for (const clip of item.clips) {
      if (!clip.clip_id || !clip.url) {
        throw new Error('malformed session: bad clip slot');
      }
    }
  }
  if (!view.progress || view.progress.total !== 48) {
    throw new Error('malformed session: progress total must be 48');
  }
}
