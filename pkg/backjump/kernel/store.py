"""The chronological event store with a backtrackable tail."""
from typing import Iterator, Optional

from backjump.kernel.events import Event


class EventStore:
    """Append-only list of events; world pops truncate it back to a saved length."""

    def __init__(self):
        self._events: list[Event] = []

    def append(self, event: Event) -> int:
        self._events.append(event)
        return len(self._events) - 1

    @property
    def tail(self) -> int:
        """Index of the last live event, -1 when the store is empty."""
        return len(self._events) - 1

    def __len__(self) -> int:
        return len(self._events)

    def __getitem__(self, index: int) -> Event:
        return self._events[index]

    def truncate(self, length: int):
        del self._events[length:]

    def events_backward(self, start: Optional[int] = None) -> Iterator[tuple[int, Event]]:
        """Yield (index, event) from `start` (default: tail) down to 0."""
        i = self.tail if start is None else start
        if i > self.tail:
            raise IndexError(f"start {i} beyond tail {self.tail}")
        events = self._events
        while i >= 0:
            yield i, events[i]
            i -= 1

    def __iter__(self) -> Iterator[Event]:
        return iter(self._events)
