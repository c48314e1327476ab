import type { SessionItem, SessionView } from '../src/api.js';

export function fakeView(withRatings = false): SessionView {
  const items: SessionItem[] = [];
  for (let i = 0; i < 16; i++) {
    items.push({
      image_id: `img_${i}`,
      image_url: `/v1/image/img_${i}`,
      clips: [0, 1, 2].map((k) => ({
        clip_id: `clip_${i}_${k}`,
        url: `/v1/clip/clip_${i}_${k}`,
        rating: withRatings && i < 2 ? ((i + k) % 5) + 1 : null,
      })),
    });
  }
  return {
    subject_id: 's-test',
    items,
    progress: { rated: withRatings ? 6 : 0, total: 48 },
  };
}

export function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

export async function until(
  predicate: () => boolean,
  timeoutMs = 3000,
): Promise<void> {
  const start = Date.now();
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) {
      throw new Error('condition not reached in time');
    }
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}

export class FakeAudio {
  static instances: FakeAudio[] = [];
  playing = false;
  currentTime = 0;

  constructor(readonly url: string) {
    FakeAudio.instances.push(this);
  }

  play(): void {
    this.playing = true;
  }

  pause(): void {
    this.playing = false;
  }

  static reset(): void {
    FakeAudio.instances = [];
  }
}

export const CONDITION_WORDS = [
  'matched_emotion_style',
  'matched_extra',
  'matched_emotion',
  'mismatched_emotion',
  'mismatched',
  'baseline',
  'condition',
  'strategy',
];
