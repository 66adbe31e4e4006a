"""Line-chart SVG output with no plotting dependencies."""

from __future__ import annotations

from ..fileio import atomic_write_text

__all__ = ["emit_svg_plot"]

PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
]

AXIS_LABELS = {
    "nodes": "Number of nodes",
    "radius_ratio": "Normalized sensing radius",
    "density": "Node density (nodes/m^2)",
}

WIDTH, HEIGHT = 960, 600
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 80, 230, 60, 80


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def emit_svg_plot(rows, path, title: str | None = None, y_label: str = "Coverage fraction") -> None:
    """Render one line series per model label; analytic values take precedence.

    Output is deterministic for identical rows: series are sorted by label,
    points by sweep value, and no timestamps are embedded.
    """
    if not rows:
        raise ValueError("no rows to plot")
    sweep_param = rows[0].sweep_param
    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        y = row.f_analytic if row.f_analytic is not None else row.f_mc
        if y is None:
            continue
        series.setdefault(row.model, []).append((row.sweep_value, y))
    if not series:
        raise ValueError("rows carry no values to plot")
    labels = sorted(series)
    for label in labels:
        series[label].sort()

    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts]
    x_min, x_max = min(xs), max(xs)
    if x_max <= x_min:
        x_min, x_max = x_min - 1.0, x_max + 1.0
    y_min, y_max = 0.0, max(1.0, max(ys))

    plot_left = MARGIN_LEFT
    plot_right = WIDTH - MARGIN_RIGHT
    plot_top = MARGIN_TOP
    plot_bottom = HEIGHT - MARGIN_BOTTOM

    def x_px(x: float) -> float:
        return plot_left + (x - x_min) / (x_max - x_min) * (plot_right - plot_left)

    def y_px(y: float) -> float:
        return plot_bottom - (y - y_min) / (y_max - y_min) * (plot_bottom - plot_top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="32" text-anchor="middle" font-size="20" '
            f'font-family="sans-serif">{_escape(title)}</text>'
        )

    # horizontal grid and y ticks
    n_y_ticks = 5
    for i in range(n_y_ticks + 1):
        value = y_min + (y_max - y_min) * i / n_y_ticks
        y = y_px(value)
        parts.append(
            f'<line x1="{plot_left}" y1="{y:.2f}" x2="{plot_right}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{plot_left - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="12" font-family="sans-serif">{value:.2f}</text>'
        )

    # x ticks
    n_x_ticks = 6
    for i in range(n_x_ticks + 1):
        value = x_min + (x_max - x_min) * i / n_x_ticks
        x = x_px(value)
        parts.append(
            f'<line x1="{x:.2f}" y1="{plot_bottom}" x2="{x:.2f}" y2="{plot_bottom + 5}" '
            f'stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{plot_bottom + 22}" text-anchor="middle" '
            f'font-size="12" font-family="sans-serif">{value:g}</text>'
        )

    # axes
    parts.append(
        f'<line x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" y2="{plot_bottom}" '
        f'stroke="#000000" stroke-width="2"/>'
    )
    parts.append(
        f'<line x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" y2="{plot_bottom}" '
        f'stroke="#000000" stroke-width="2"/>'
    )

    # series and legend
    legend_x = plot_right + 20
    legend_y = plot_top + 10
    for idx, label in enumerate(labels):
        color = PALETTE[idx % len(PALETTE)]
        points = series[label]
        coords = " ".join(f"{x_px(x):.2f},{y_px(y):.2f}" for x, y in points)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>'
        )
        if len(points) <= 40:
            for x, y in points:
                parts.append(
                    f'<circle cx="{x_px(x):.2f}" cy="{y_px(y):.2f}" r="2.5" fill="{color}"/>'
                )
        ly = legend_y + idx * 22
        parts.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 22}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{legend_x + 28}" y="{ly + 4}" font-size="13" '
            f'font-family="sans-serif">{_escape(label)}</text>'
        )

    # axis labels
    x_label = AXIS_LABELS.get(sweep_param, sweep_param)
    parts.append(
        f'<text x="{(plot_left + plot_right) / 2:.1f}" y="{HEIGHT - 20}" '
        f'text-anchor="middle" font-size="14" font-family="sans-serif">{_escape(x_label)}</text>'
    )
    mid_y = (plot_top + plot_bottom) / 2
    parts.append(
        f'<text x="24" y="{mid_y:.1f}" text-anchor="middle" font-size="14" '
        f'font-family="sans-serif" transform="rotate(-90 24 {mid_y:.1f})">'
        f"{_escape(y_label)}</text>"
    )
    parts.append("</svg>")
    atomic_write_text(path, "\n".join(parts) + "\n")
