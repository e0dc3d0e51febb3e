"""Text renderings of sweep results (curves and surfaces)."""
from __future__ import annotations

import numpy as np

SHADES = " .:-=+*#%@"


def plot_curve(x, y, width=72, height=20, y_max=0.5, label="negativity"):
    x, y = np.asarray(x, float), np.asarray(y, float)
    cols = np.minimum(((x - x[0]) / (x[-1] - x[0]) * (width - 1)).round().astype(int), width - 1)
    top = np.full(width, -1.0)
    np.maximum.at(top, cols, y)
    levels = np.clip((top / y_max * (height - 1)).round().astype(int), -1, height - 1)
    lines = []
    for r in range(height - 1, -1, -1):
        axis_label = f"{y_max * r / (height - 1):6.3f} |"
        lines.append(axis_label + "".join("*" if lv == r else " " for lv in levels))
    lines.append(" " * 7 + "+" + "-" * width)
    lines.append(f"{'':8}{x[0]:<.6g}{'':>{max(1, width - 24)}}{x[-1]:>.6g}")
    lines.append(f"{'':8}{label} (max {np.max(y):.6g})")
    return "\n".join(lines)


def plot_surface(z, x_name, y_name, x_range, y_range, width=72, height=36, z_max=0.5):
    """Shade a 2-D grid; rows of ``z`` run along the first axis (drawn vertically)."""
    z = np.asarray(z, float)
    ri = np.linspace(0, z.shape[0] - 1, min(height, z.shape[0])).round().astype(int)
    ci = np.linspace(0, z.shape[1] - 1, min(width, z.shape[1])).round().astype(int)
    sub = z[np.ix_(ri, ci)]
    idx = np.clip((sub / z_max * (len(SHADES) - 1)).round().astype(int), 0, len(SHADES) - 1)
    lines = [f"{y_name}: {y_range[0]:.6g} -> {y_range[1]:.6g} (left to right)"]
    for k, row in zip(ri, idx):
        lines.append("".join(SHADES[i] for i in row))
    lines.append(f"{x_name}: {x_range[0]:.6g} -> {x_range[1]:.6g} (top to bottom); "
                 f"shades '{SHADES}' span 0..{z_max:g}; max {np.max(z):.6g}")
    return "\n".join(lines)
