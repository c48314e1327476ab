// The rating console: load a session, walk the 16 images, play clips and
// submit 1..5 ratings until all 48 slots are acknowledged.

import { ApiError, StudyClient } from './api.js';
import { ClipPlayer } from './player.js';
import { renderComplete, renderError, renderItem } from './render.js';
import { SessionState, SlotRef } from './state.js';

const RETRY_DELAY_MS = 1500;

export class StudyApp {
  private state: SessionState | null = null;
  private itemIndex = 0;
  private pendingMessage = new Map<string, string>();
  private retryTimers = new Map<string, ReturnType<typeof setTimeout>>();

  constructor(
    private readonly root: HTMLElement,
    private readonly client: StudyClient,
    private readonly subjectId: string,
    private readonly player: ClipPlayer = new ClipPlayer(),
  ) {}

  async start(): Promise<void> {
    try {
      const view = await this.client.loadSession(this.subjectId);
      this.state = new SessionState(view);
      this.itemIndex = this.state.firstIncompleteItem();
      this.render();
    } catch (err) {
      const message =
        err instanceof ApiError && err.status === 404
          ? `No session found for subject "${this.subjectId}".`
          : `Could not load the session: ${(err as Error).message}`;
      this.state = null;
      renderError(this.root, message, this.handlers());
    }
  }

  private handlers() {
    return {
      onPlay: (slot: SlotRef) => this.play(slot),
      onSelect: (slot: SlotRef, rating: number) => {
        this.state?.select(slot, rating);
        this.render();
      },
      onSubmit: (slot: SlotRef) => void this.submit(slot),
      onNavigate: (delta: number) => {
        this.player.stop();
        this.itemIndex = Math.min(
          Math.max(this.itemIndex + delta, 0),
          (this.state?.view.items.length ?? 1) - 1,
        );
        this.render();
      },
      onRetryLoad: () => void this.start(),
    };
  }

  private clipUrl(slot: SlotRef): string {
    const item = this.state!.view.items[slot.itemIndex]!;
    return this.client.resolve(item.clips[slot.clipIndex]!.url);
  }

  private async play(slot: SlotRef): Promise<void> {
    try {
      await this.player.play(this.clipUrl(slot));
    } catch {
      this.pendingMessage.set(slotKey(slot), 'Playback failed; try again.');
    }
    this.render();
  }

  async submit(slot: SlotRef): Promise<void> {
    if (!this.state) return;
    const rating =
      this.state.selectedRating(slot) ?? this.state.ackedRating(slot);
    if (rating === null) {
      this.pendingMessage.set(slotKey(slot), 'Pick a rating first.');
      this.render();
      return;
    }
    const item = this.state.view.items[slot.itemIndex]!;
    try {
      await this.client.submitRating({
        subject_id: this.subjectId,
        image_id: item.image_id,
        clip_id: item.clips[slot.clipIndex]!.clip_id,
        rating,
      });
      this.state.markAcked(slot, rating);
      this.pendingMessage.delete(slotKey(slot));
      this.cancelRetry(slot);
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.pendingMessage.set(slotKey(slot), 'Rating rejected; pick 1-5.');
      } else {
        this.pendingMessage.set(slotKey(slot), 'Saving... will retry.');
        this.scheduleRetry(slot);
      }
    }
    this.render();
  }

  private scheduleRetry(slot: SlotRef): void {
    const key = slotKey(slot);
    this.cancelRetry(slot);
    this.retryTimers.set(
      key,
      setTimeout(() => void this.submit(slot), RETRY_DELAY_MS),
    );
  }

  private cancelRetry(slot: SlotRef): void {
    const timer = this.retryTimers.get(slotKey(slot));
    if (timer !== undefined) {
      clearTimeout(timer);
      this.retryTimers.delete(slotKey(slot));
    }
  }

  private render(): void {
    if (!this.state) return;
    if (this.state.complete) {
      this.player.stop();
      renderComplete(this.root, this.state.total);
      return;
    }
    renderItem(
      this.root,
      this.state,
      this.itemIndex,
      this.handlers(),
      this.player.playingUrl,
      this.pendingMessage,
    );
  }

  // test hooks
  get sessionState(): SessionState | null {
    return this.state;
  }

  get currentItemIndex(): number {
    return this.itemIndex;
  }
}

function slotKey(slot: SlotRef): string {
  return `${slot.itemIndex}:${slot.clipIndex}`;
}
