/** Minimal server-sent-events reader over fetch streaming.
 *
 * EventSource would do in a browser, but a fetch-based reader runs in both
 * the browser and node, which lets the end-to-end tests drive the exact
 * code the UI uses.
 */

import type { StreamEvent } from "./types.js";

export async function* sseEvents(
  url: string,
  signal?: AbortSignal,
): AsyncGenerator<StreamEvent> {
  const response = await fetch(url, { signal, headers: { accept: "text/event-stream" } });
  if (!response.ok || !response.body) {
    throw new Error(`stream request failed: ${response.status}`);
  }
  const reader = response.body.getReader();
  const decoder = new TextDecoder();
  let buffer = "";
  try {
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      for (;;) {
        const split = buffer.indexOf("\n\n");
        if (split < 0) break;
        const block = buffer.slice(0, split);
        buffer = buffer.slice(split + 2);
        const data = block
          .split("\n")
          .filter((line) => line.startsWith("data:"))
          .map((line) => line.slice(5).trim())
          .join("\n");
        if (data) {
          yield JSON.parse(data) as StreamEvent;
        }
      }
    }
  } finally {
    reader.releaseLock();
  }
}
