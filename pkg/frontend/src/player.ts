// Clip playback: at most one clip audible at a time, unlimited replays.

export interface AudioHandle {
  play(): Promise<void> | void;
  pause(): void;
  currentTime: number;
}

export type AudioFactory = (url: string) => AudioHandle;

const domAudioFactory: AudioFactory = (url) => new Audio(url);

export class ClipPlayer {
  private active: AudioHandle | null = null;
  private activeUrl: string | null = null;
  private handles = new Map<string, AudioHandle>();

  constructor(private readonly factory: AudioFactory = domAudioFactory) {}

  async play(url: string): Promise<void> {
    if (this.active && this.activeUrl !== url) {
      this.active.pause();
      this.active.currentTime = 0;
    }
    let handle = this.handles.get(url);
    if (!handle) {
      handle = this.factory(url);
      this.handles.set(url, handle);
    }
    this.active = handle;
    this.activeUrl = url;
    handle.currentTime = 0;
    await handle.play();
  }

  stop(): void {
    if (this.active) {
      this.active.pause();
      this.active.currentTime = 0;
    }
    this.active = null;
    this.activeUrl = null;
  }

  get playingUrl(): string | null {
    return this.activeUrl;
  }
}
