import { StudyClient } from './api.js';
import { StudyApp } from './app.js';

const params = new URLSearchParams(window.location.search);
const subject = params.get('subject') ?? 'anonymous';
const base = params.get('base') ?? '';

const root = document.getElementById('app');
if (!root) {
  throw new Error('missing #app mount point');
}
void new StudyApp(root, new StudyClient(base), subject).start();
