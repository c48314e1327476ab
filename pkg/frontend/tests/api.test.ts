import { describe, expect, it } from 'vitest';

import { ApiError, StudyClient, validateSession } from '../src/api.js';
import { fakeView, jsonResponse } from './helpers.js';

function clientWith(handler: (url: string, init?: RequestInit) => Response) {
  const fetchImpl = (async (input: RequestInfo | URL, init?: RequestInit) =>
    handler(String(input), init)) as typeof fetch;
  return new StudyClient('http://study.local', fetchImpl);
}

describe('StudyClient', () => {
  it('loads and validates a session', async () => {
    const client = clientWith((url) => {
      expect(url).toBe('http://study.local/v1/session/s-test');
      return jsonResponse(fakeView());
    });
    const view = await client.loadSession('s-test');
    expect(view.items).toHaveLength(16);
  });

  it('raises ApiError with status on 404', async () => {
    const client = clientWith(() => jsonResponse({ error: 'nope' }, 404));
    await expect(client.loadSession('ghost')).rejects.toThrowError(ApiError);
    await expect(client.loadSession('ghost')).rejects.toMatchObject({
      status: 404,
    });
  });

  it('rejects malformed sessions before rendering', () => {
    const short = fakeView();
    short.items = short.items.slice(0, 15);
    expect(() => validateSession(short)).toThrow(/15 items/);

    const badClips = fakeView();
    badClips.items[0]!.clips = badClips.items[0]!.clips.slice(0, 2);
    expect(() => validateSession(badClips)).toThrow(/clips/);
  });

  it('submits ratings and returns the ack', async () => {
    const client = clientWith((url, init) => {
      expect(url).toBe('http://study.local/v1/rating');
      expect(init?.method).toBe('POST');
      const body = JSON.parse(String(init?.body));
      expect(body.rating).toBe(4);
      return jsonResponse(
        { stored: body, progress: { rated: 1, total: 48 } },
        201,
      );
    });
    const ack = await client.submitRating({
      subject_id: 's',
      image_id: 'img_0',
      clip_id: 'clip_0_0',
      rating: 4,
    });
    expect(ack.progress.rated).toBe(1);
  });

  it('maps non-201 submissions to ApiError', async () => {
    const client = clientWith(() => jsonResponse({ error: 'bad' }, 422));
    await expect(
      client.submitRating({
        subject_id: 's',
        image_id: 'img_0',
        clip_id: 'clip_0_0',
        rating: 4,
      }),
    ).rejects.toMatchObject({ status: 422 });
  });
});
