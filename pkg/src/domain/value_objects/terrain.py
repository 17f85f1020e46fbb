"""
Terrain Value Object

Cell types of the gridworld and their grid-text characters.
"""
from enum import Enum
from typing import Optional, Tuple


class Terrain(str, Enum):
    """
    Terrain type of a grid cell

    Business Rules:
        - WALL cells are impassable and never become MDP states
        - DIRT, GRASS and LAVA share their reward weight across tasks
        - GOLD and SILVER carry the task-specific preferences
        - Feature order is DIRT, GRASS, LAVA, GOLD, SILVER
    """
    WALL = "WALL"
    DIRT = "DIRT"
    GRASS = "GRASS"
    LAVA = "LAVA"
    GOLD = "GOLD"
    SILVER = "SILVER"

    def __str__(self) -> str:
        return self.value

    @property
    def char(self) -> str:
        """Character used in grid text"""
        return _CHARS[self]

    @property
    def display_name(self) -> str:
        """Get human-readable display name"""
        return self.value.capitalize()

    @property
    def is_passable(self) -> bool:
        return self != Terrain.WALL

    @property
    def feature_index(self) -> Optional[int]:
        """Index in the terrain feature vector (None for walls)"""
        if self == Terrain.WALL:
            return None
        return FEATURE_TERRAINS.index(self)

    @classmethod
    def from_char(cls, char: str) -> 'Terrain':
        """
        Decode a grid-text character

        Args:
            char: One of '#', 'd', 'g', 'l', 'G', 'S' or '@' (a dirt start cell)

        Returns:
            Terrain enum value

        Raises:
            ValueError: If the character is not part of the grid alphabet
        """
        if char == START_CHAR:
            return cls.DIRT
        for terrain, terrain_char in _CHARS.items():
            if terrain_char == char:
                return terrain
        raise ValueError(f"Invalid terrain character: {char!r}")

    @classmethod
    def from_string(cls, value: str) -> 'Terrain':
        """
        Create Terrain from string

        Args:
            value: Terrain name (case-insensitive)

        Returns:
            Terrain enum value

        Raises:
            ValueError: If value is not a valid terrain
        """
        try:
            return cls[value.strip().upper()]
        except KeyError:
            valid = ', '.join(t.value for t in cls)
            raise ValueError(f"Invalid terrain: {value}. Valid terrains: {valid}")


START_CHAR = "@"

_CHARS = {
    Terrain.WALL: "#",
    Terrain.DIRT: "d",
    Terrain.GRASS: "g",
    Terrain.LAVA: "l",
    Terrain.GOLD: "G",
    Terrain.SILVER: "S",
}

FEATURE_TERRAINS: Tuple[Terrain, ...] = (
    Terrain.DIRT,
    Terrain.GRASS,
    Terrain.LAVA,
    Terrain.GOLD,
    Terrain.SILVER,
)
