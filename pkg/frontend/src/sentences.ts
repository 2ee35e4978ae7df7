const TERMINATORS = new Set([".", "!", "?"]);

/**
 * Live sentence counter for the goal editor: segments ended by '.', '!'
 * or '?' before whitespace or end of text; a trailing unterminated
 * non-empty segment counts as one. Mirrors the server's counter for
 * display only; the server stays authoritative on agreement.
 */
export function sentenceCount(text: string): number {
  let count = 0;
  let hasContent = false;
  const n = text.length;
  for (let i = 0; i < n; i++) {
    const ch = text[i]!;
    if (TERMINATORS.has(ch)) {
      const atBoundary = i + 1 >= n || /\s/.test(text[i + 1]!);
      if (atBoundary && hasContent) {
        count += 1;
        hasContent = false;
      }
    } else if (!/\s/.test(ch)) {
      hasContent = true;
    }
  }
  if (hasContent) count += 1;
  return count;
}

/** The agreed goal statement must run one to three sentences. */
export function withinSentenceBudget(count: number): boolean {
  return count >= 1 && count <= 3;
}
