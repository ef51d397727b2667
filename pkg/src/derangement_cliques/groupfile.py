"""Line-oriented group files.

A file looks like::

    # free comment lines
    name: alt4_deg6
    degree: 6
    tag: order=12
    gen: [1,2,0,4,5,3]

``gen`` lines hold 0-indexed image arrays.  ``tag`` lines carry ``key=value``
claims that ``verify_catalog`` checks.  Whitespace inside lines is ignored on
input; ``serialize`` writes the canonical layout above, so
``serialize(parse(text)) == text`` for canonical text.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidPermutation, ParseError
from .perm import DEFAULT_CAP, PermGroup, Permutation


@dataclass(frozen=True)
class GroupRecord:
    name: str
    degree: int
    generators: tuple[Permutation, ...]
    tags: tuple[tuple[str, str], ...] = ()
    comments: tuple[str, ...] = field(default=(), compare=True)

    def tag(self, key: str, default: str | None = None) -> str | None:
        for k, v in self.tags:
            if k == key:
                return v
        return default

    def with_tags(self, **updates) -> GroupRecord:
        tags = dict(self.tags)
        for k, v in updates.items():
            tags[k] = _tag_text(v)
        return GroupRecord(self.name, self.degree, self.generators, tuple(tags.items()), self.comments)

    def group(self, cap: int = DEFAULT_CAP) -> PermGroup:
        return PermGroup(self.degree, self.generators, cap=cap, name=self.name)


def _tag_text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def make_record(name: str, G: PermGroup, tags: dict | None = None,
                comments: Iterable[str] = ()) -> GroupRecord:
    items = tuple((k, _tag_text(v)) for k, v in (tags or {}).items())
    return GroupRecord(name, G.degree, tuple(G.generators), items, tuple(comments))


def _parse_images(text: str, lineno: int) -> list[int]:
    body = text.replace(" ", "").replace("\t", "")
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("generator must be written as [i0,i1,...]", lineno)
    inner = body[1:-1]
    if not inner:
        return []
    try:
        return [int(x) for x in inner.split(",")]
    except ValueError:
        raise ParseError(f"non-integer entry in {text.strip()}", lineno) from None


def parse_group_text(text: str) -> GroupRecord:
    name = None
    degree = None
    gens: list[tuple[int, list[int]]] = []
    tags: list[tuple[str, str]] = []
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        value = value.strip()
        if key == "name":
            if name is not None:
                raise ParseError("duplicate name", lineno)
            if not value or any(c.isspace() for c in value):
                raise ParseError("name must be a single non-empty token", lineno)
            name = value
        elif key == "degree":
            if degree is not None:
                raise ParseError("duplicate degree", lineno)
            try:
                degree = int(value)
            except ValueError:
                raise ParseError(f"degree is not an integer: {value!r}", lineno) from None
            if degree < 1:
                raise ParseError("degree must be positive", lineno)
        elif key == "gen":
            gens.append((lineno, _parse_images(value, lineno)))
        elif key == "tag":
            k, eq, v = value.partition("=")
            k, v = k.strip(), v.strip()
            if not eq or not k:
                raise ParseError("tag must be key=value", lineno)
            tags.append((k, v))
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if name is None:
        raise ParseError("missing name")
    if degree is None:
        raise ParseError("missing degree")
    perms = []
    for lineno, images in gens:
        if len(images) != degree:
            raise InvalidPermutation(f"line {lineno}: generator has {len(images)} images, degree is {degree}")
        try:
            perms.append(Permutation(images))
        except InvalidPermutation as exc:
            raise InvalidPermutation(f"line {lineno}: {exc}") from None
    if not perms:
        perms.append(Permutation.identity(degree))
    return GroupRecord(name, degree, tuple(perms), tuple(tags), tuple(comments))


def parse_group_file(source) -> GroupRecord:
    """Parse a path or an open text stream."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return parse_group_text(fh.read())
    if isinstance(source, io.IOBase) or hasattr(source, "read"):
        return parse_group_text(source.read())
    raise TypeError(f"cannot read a group file from {type(source).__name__}")


def serialize(record: GroupRecord) -> str:
    lines = [f"# {c}" if c else "#" for c in record.comments]
    lines.append(f"name: {record.name}")
    lines.append(f"degree: {record.degree}")
    lines.extend(f"tag: {k}={v}" for k, v in record.tags)
    lines.extend("gen: [" + ",".join(map(str, g.images)) + "]" for g in record.generators)
    return "\n".join(lines) + "\n"


def write_group_file(record: GroupRecord, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(record))
