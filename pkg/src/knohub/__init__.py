"""knohub: versioned engineering knowledge with personal and shared bases."""

__version__ = "0.1.0"
