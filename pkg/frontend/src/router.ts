/** Hash-based routing: the location fragment is the whole route. */

export function currentFragment(): string {
  return window.location.hash;
}

/**
 * Subscribe to fragment changes. Returns an unsubscribe function.
 * The handler receives the new fragment including its leading '#'
 * (or '' on an empty hash).
 */
export function onFragmentChange(
  handler: (fragment: string) => void,
): () => void {
  const listener = () => handler(currentFragment());
  window.addEventListener('hashchange', listener);
  return () => window.removeEventListener('hashchange', listener);
}
