from enum import Enum


class Role(str, Enum):
    """Owner of a position: the existential player or the universal one."""

    E = "E"
    A = "A"

    @property
    def opponent(self) -> "Role":
        return Role.A if self is Role.E else Role.E

    def __str__(self) -> str:
        return self.value
