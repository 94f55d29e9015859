"""Slot layouts of tensor products of Toeplitz, sphere and circle factors."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import List, Tuple

from mpkcheck.utils.error import IncompatibleSlot, SignatureMismatch


class BlockKind(str, Enum):
    SPHERE = "S"
    TOEPLITZ = "T"
    CIRCLE = "C"


@dataclass(frozen=True)
class Block:
    kind: BlockKind
    width: int = 1

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError("block width must be positive")
        if self.kind != BlockKind.SPHERE and self.width != 1:
            raise ValueError(f"{self.kind.name} blocks have width 1")

    @property
    def label(self) -> str:
        return f"S{self.width}" if self.kind == BlockKind.SPHERE else self.kind.value


def SphereBlock(m: int) -> Block:
    """C(S^{2m-1}_H): m Toeplitz slots modulo the m-fold compact ideal."""
    return Block(BlockKind.SPHERE, m)


ToeplitzSlot = Block(BlockKind.TOEPLITZ)
CircleSlot = Block(BlockKind.CIRCLE)


@dataclass(frozen=True)
class Signature:
    """Ordered blocks; slots are addressed by a global index."""

    blocks: Tuple[Block, ...] = ()

    @classmethod
    def of(cls, *blocks: Block) -> "Signature":
        return cls(tuple(blocks))

    @classmethod
    def toeplitz(cls, m: int) -> "Signature":
        return cls((ToeplitzSlot,) * m)

    @classmethod
    def sphere(cls, m: int) -> "Signature":
        """Signature of C(S^{2m-1}_H); m = n+1 for the sphere over CP^n."""
        return cls((SphereBlock(m),))

    @classmethod
    def circle(cls) -> "Signature":
        return cls((CircleSlot,))

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """``"S2,T,C"`` -> SphereBlock(2), ToeplitzSlot, CircleSlot; ``"T3"`` is three Toeplitz slots."""
        blocks: List[Block] = []
        for raw in text.replace("⊗", ",").split(","):
            item = raw.strip().upper()
            if not item:
                continue
            head, tail = item[0], item[1:]
            count = int(tail) if tail else 1
            if head == "S":
                blocks.append(SphereBlock(count))
            elif head == "T":
                blocks.extend([ToeplitzSlot] * count)
            elif head == "C":
                blocks.extend([CircleSlot] * count)
            else:
                raise ValueError(f"unknown signature block '{raw.strip()}'")
        return cls(tuple(blocks))

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.blocks + other.blocks)

    def __str__(self) -> str:
        return "⊗".join(b.label for b in self.blocks) or "ℂ"

    @property
    def label(self) -> str:
        return ",".join(b.label for b in self.blocks)

    @cached_property
    def slot_kinds(self) -> Tuple[BlockKind, ...]:
        """Per slot: TOEPLITZ (also inside sphere blocks) or CIRCLE."""
        kinds: List[BlockKind] = []
        for block in self.blocks:
            kind = BlockKind.CIRCLE if block.kind == BlockKind.CIRCLE else BlockKind.TOEPLITZ
            kinds.extend([kind] * block.width)
        return tuple(kinds)

    @cached_property
    def block_ranges(self) -> Tuple[Tuple[Block, int, int], ...]:
        out = []
        start = 0
        for block in self.blocks:
            out.append((block, start, start + block.width))
            start += block.width
        return tuple(out)

    @cached_property
    def sphere_ranges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((s, e) for b, s, e in self.block_ranges if b.kind == BlockKind.SPHERE)

    @property
    def slot_count(self) -> int:
        return len(self.slot_kinds)

    def __len__(self) -> int:
        return self.slot_count

    @cached_property
    def circle_slots(self) -> Tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.slot_kinds) if k == BlockKind.CIRCLE)

    @cached_property
    def toeplitz_slots(self) -> Tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.slot_kinds) if k == BlockKind.TOEPLITZ)

    def is_circle(self, slot: int) -> bool:
        self._check_slot(slot)
        return self.slot_kinds[slot] == BlockKind.CIRCLE

    def in_sphere_block(self, slot: int) -> bool:
        self._check_slot(slot)
        return any(s <= slot < e for s, e in self.sphere_ranges)

    def _check_slot(self, slot: int) -> None:
        if not 0 <= slot < self.slot_count:
            raise IncompatibleSlot(
                f"slot {slot} out of range for signature {self}",
                details={"slot": slot, "signature": self.label},
            )

    def lift(self) -> "Signature":
        """Replace every sphere block by its Toeplitz slots (representatives)."""
        blocks: List[Block] = []
        for block in self.blocks:
            if block.kind == BlockKind.SPHERE:
                blocks.extend([ToeplitzSlot] * block.width)
            else:
                blocks.append(block)
        return Signature(tuple(blocks))

    def with_symbol_at(self, slot: int) -> "Signature":
        """Signature after the symbol map turns a standalone Toeplitz slot into a circle slot."""
        if self.is_circle(slot) or self.in_sphere_block(slot):
            raise IncompatibleSlot(
                f"slot {slot} of {self} is not a standalone Toeplitz slot",
                details={"slot": slot, "signature": self.label},
            )
        blocks = list(self.blocks)
        for index, (block, start, _) in enumerate(self.block_ranges):
            if start == slot:
                blocks[index] = CircleSlot
                break
        return Signature(tuple(blocks))

    def same_slots(self, other: "Signature") -> bool:
        return self.slot_kinds == other.slot_kinds


def require_same(a: Signature, b: Signature) -> None:
    if a != b:
        raise SignatureMismatch(
            f"signature mismatch: {a} vs {b}",
            details={"left": a.label, "right": b.label},
        )
