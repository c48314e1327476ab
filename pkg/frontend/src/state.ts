// Session progress state. The server is the source of truth: a slot counts
// as done only once the server acknowledged it, and reloading rebuilds this
// state from the session payload's echoed ratings.

import type { SessionView } from './api.js';

export interface SlotRef {
  itemIndex: number;
  clipIndex: number;
}

export class SessionState {
  readonly total: number;
  private acked = new Map<string, number>();
  private selections = new Map<string, number>();

  constructor(readonly view: SessionView) {
    this.total = view.items.length * 3;
    view.items.forEach((item, itemIndex) => {
      item.clips.forEach((clip, clipIndex) => {
        if (clip.rating !== null && clip.rating !== undefined) {
          this.acked.set(keyOf({ itemIndex, clipIndex }), clip.rating);
        }
      });
    });
  }

  select(slot: SlotRef, rating: number): void {
    if (!Number.isInteger(rating) || rating < 1 || rating > 5) {
      throw new Error(`rating must be an integer in 1..5, got ${rating}`);
    }
    // last selection before submit wins
    this.selections.set(keyOf(slot), rating);
  }

  selectedRating(slot: SlotRef): number | null {
    return this.selections.get(keyOf(slot)) ?? null;
  }

  markAcked(slot: SlotRef, rating: number): void {
    this.acked.set(keyOf(slot), rating);
  }

  ackedRating(slot: SlotRef): number | null {
    return this.acked.get(keyOf(slot)) ?? null;
  }

  get ackedCount(): number {
    return this.acked.size;
  }

  get complete(): boolean {
    return this.acked.size === this.total;
  }

  // first item with an unrated slot, for resuming mid-session
  firstIncompleteItem(): number {
    for (let itemIndex = 0; itemIndex < this.view.items.length; itemIndex++) {
      for (let clipIndex = 0; clipIndex < 3; clipIndex++) {
        if (this.ackedRating({ itemIndex, clipIndex }) === null) {
          return itemIndex;
        }
      }
    }
    return this.view.items.length - 1;
  }
}

function keyOf(slot: SlotRef): string {
  return `${slot.itemIndex}:${slot.clipIndex}`;
}
