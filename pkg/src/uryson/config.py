"""Enumeration caps shared by every exact enumerator."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace
from typing import Iterator, Optional


@dataclass(frozen=True)
class Caps:
    fragments: int = 20  # max |supp(x)| for fragment enumeration (2**20 fragments)
    partitions: int = 10  # max |supp(x)| for set-partition enumeration (Bell(10))
    materialize: int = 100_000  # max tail points turned into samples or scanned


_caps: contextvars.ContextVar[Caps] = contextvars.ContextVar("uryson_caps", default=Caps())


def current() -> Caps:
    return _caps.get()


def set_caps(fragments: Optional[int] = None, partitions: Optional[int] = None,
             materialize: Optional[int] = None) -> Caps:
    caps = _caps.get()
    changes = {k: v for k, v in
               dict(fragments=fragments, partitions=partitions, materialize=materialize).items()
               if v is not None}
    new = replace(caps, **changes)
    _caps.set(new)
    return new


@contextlib.contextmanager
def caps(fragments: Optional[int] = None, partitions: Optional[int] = None,
         materialize: Optional[int] = None) -> Iterator[Caps]:
    token = _caps.set(_caps.get())
    try:
        yield set_caps(fragments, partitions, materialize)
    finally:
        _caps.reset(token)
