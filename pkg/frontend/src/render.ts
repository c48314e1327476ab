// DOM construction. Clips are presented strictly by position ("Clip 1..3");
// no element, attribute or class name may reveal a study condition.

import type { SessionItem } from './api.js';
import type { SessionState, SlotRef } from './state.js';

export const RATING_WORDS = ['Bad', 'Poor', 'Fair', 'Good', 'Excellent'];

export interface Handlers {
  onPlay(slot: SlotRef): void;
  onSelect(slot: SlotRef, rating: number): void;
  onSubmit(slot: SlotRef): void;
  onNavigate(delta: number): void;
  onRetryLoad(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderError(root: HTMLElement, message: string,
                            handlers: Handlers): void {
  root.replaceChildren();
  const box = el('div', 'error-screen');
  box.appendChild(el('p', 'error-message', message));
  const retry = el('button', 'retry-button', 'Retry');
  retry.addEventListener('click', () => handlers.onRetryLoad());
  box.appendChild(retry);
  root.appendChild(box);
}

export function renderComplete(root: HTMLElement, total: number): void {
  root.replaceChildren();
  const box = el('div', 'finish-screen');
  box.appendChild(el('h1', undefined, 'All done!'));
  box.appendChild(el(
    'p', undefined,
    `You rated all ${total} image-music pairs. Thank you for participating.`,
  ));
  root.appendChild(box);
}

export function renderItem(
  root: HTMLElement,
  state: SessionState,
  itemIndex: number,
  handlers: Handlers,
  playingUrl: string | null,
  pendingMessage: Map<string, string>,
): void {
  const item = state.view.items[itemIndex] as SessionItem;
  root.replaceChildren();

  const header = el('header', 'progress-header');
  header.appendChild(el(
    'span', 'progress-count',
    `${state.ackedCount}/${state.total} rated`,
  ));
  header.appendChild(el(
    'span', 'item-count',
    `Image ${itemIndex + 1} of ${state.view.items.length}`,
  ));
  root.appendChild(header);

  const figure = el('figure', 'study-image');
  const img = el('img');
  img.src = item.image_url;
  img.alt = 'study image';
  figure.appendChild(img);
  root.appendChild(figure);

  const prompt = el(
    'p', 'prompt',
    'Please rate the suitability of the music for this image.',
  );
  root.appendChild(prompt);

  const list = el('div', 'clip-list');
  item.clips.forEach((clip, clipIndex) => {
    const slot: SlotRef = { itemIndex, clipIndex };
    const row = el('section', 'clip-row');
    row.dataset.slot = String(clipIndex);

    const title = el('h2', 'clip-title', `Clip ${clipIndex + 1}`);
    row.appendChild(title);

    const play = el('button', 'play-button',
                    playingUrl === clip.url ? 'Playing' : 'Play');
    play.addEventListener('click', () => handlers.onPlay(slot));
    row.appendChild(play);

    const scale = el('div', 'rating-scale');
    const acked = state.ackedRating(slot);
    const selected = state.selectedRating(slot) ?? acked;
    for (let value = 1; value <= 5; value++) {
      const label = el(
        'button', 'rating-option',
        `${value} ${RATING_WORDS[value - 1]}`,
      );
      if (selected === value) label.classList.add('selected');
      label.addEventListener('click', () => handlers.onSelect(slot, value));
      scale.appendChild(label);
    }
    row.appendChild(scale);

    const submit = el('button', 'submit-button',
                      acked !== null ? 'Update rating' : 'Submit rating');
    submit.addEventListener('click', () => handlers.onSubmit(slot));
    row.appendChild(submit);

    const status = el('span', 'slot-status');
    const pending = pendingMessage.get(`${itemIndex}:${clipIndex}`);
    if (pending) {
      status.textContent = pending;
      status.classList.add('attention');
    } else if (acked !== null) {
      status.textContent = `Saved: ${acked}`;
    }
    row.appendChild(status);

    list.appendChild(row);
  });
  root.appendChild(list);

  const nav = el('nav', 'item-nav');
  const prev = el('button', 'nav-prev', 'Previous image');
  prev.disabled = itemIndex === 0;
  prev.addEventListener('click', () => handlers.onNavigate(-1));
  const next = el('button', 'nav-next', 'Next image');
  next.disabled = itemIndex === state.view.items.length - 1;
  next.addEventListener('click', () => handlers.onNavigate(1));
  nav.appendChild(prev);
  nav.appendChild(next);
  root.appendChild(nav);
}
