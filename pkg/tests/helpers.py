"""Shared builders for test inputs."""


def tagged(*blocks, ef=True):
    """Assemble a tagged-field export from ``{tag: value or [lines]}`` blocks."""
    lines = ["FN Thomson Reuters Web of Science", "VR 1.0"]
    for block in blocks:
        for tag, value in block.items():
            values = value if isinstance(value, list) else [value]
            lines.append(f"{tag} {values[0]}")
            lines += [f"   {v}" for v in values[1:]]
        lines += ["ER", ""]
    if ef:
        lines.append("EF")
    return ("\n".join(lines) + "\n").encode("utf-8")
