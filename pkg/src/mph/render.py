"""Deterministic SVG output: N^2 region plots, Hilbert function grids, barcodes."""
from xml.sax.saxutils import escape

CELL = 28
PAD = 36
COLORS = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b2", "#937860"]


def _doc(width, height, body):
    return ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">\n'
            '<rect id="background" x="0" y="0" width="%d" height="%d" fill="white"/>\n%s</svg>\n'
            % (width, height, width, height, width, height, body))


def _grid(ox, oy, extent, ident):
    """Axes and cell outlines for degrees 0..extent (x1 right, x2 up)."""
    e1, e2 = extent
    out = ['<g id="%s-grid" stroke="#cccccc" fill="none">' % ident]
    for i in range(e1 + 1):
        for j in range(e2 + 1):
            x, y = _cell_xy(ox, oy, (i, j), e2)
            out.append('<rect x="%d" y="%d" width="%d" height="%d"/>' % (x, y, CELL, CELL))
    out.append("</g>")
    out.append('<g id="%s-labels" font-family="monospace" font-size="10" fill="#333333">' % ident)
    for i in range(e1 + 1):
        x, y = _cell_xy(ox, oy, (i, 0), e2)
        out.append('<text x="%d" y="%d" text-anchor="middle">%d</text>' % (x + CELL // 2, y + CELL + 12, i))
    for j in range(e2 + 1):
        x, y = _cell_xy(ox, oy, (0, j), e2)
        out.append('<text x="%d" y="%d" text-anchor="end">%d</text>' % (x - 4, y + CELL // 2 + 4, j))
    out.append("</g>")
    return out


def _cell_xy(ox, oy, u, e2):
    return ox + u[0] * CELL, oy + (e2 - u[1]) * CELL


def _panel_size(extent):
    return (extent[0] + 1) * CELL + 2 * PAD, (extent[1] + 1) * CELL + 2 * PAD + 14


def region_panels(panels, extent):
    """Panels of shaded regions; each panel is (title, [(prime, contains), ...])."""
    w, h = _panel_size(extent)
    body = []
    for k, (title, layers) in enumerate(panels):
        ox, oy = k * w + PAD, PAD + 14
        ident = "panel%d" % k
        body.append('<text id="%s-title" x="%d" y="%d" font-family="monospace" font-size="12">%s</text>'
                    % (ident, ox, PAD - 6, escape(title)))
        for depth, (label, contains) in enumerate(layers):
            color = COLORS[depth % len(COLORS)]
            body.append('<g id="%s-layer%d" fill="%s" fill-opacity="0.45">' % (ident, depth, color))
            body.append("<title>%s</title>" % escape(label))
            for i in range(extent[0] + 1):
                for j in range(extent[1] + 1):
                    if contains((i, j)):
                        x, y = _cell_xy(ox, oy, (i, j), extent[1])
                        inset = 3 * depth
                        body.append('<rect x="%d" y="%d" width="%d" height="%d"/>'
                                    % (x + inset, y + inset, CELL - 2 * inset, CELL - 2 * inset))
            body.append("</g>")
        body.extend(_grid(ox, oy, extent, ident))
    return _doc(max(1, len(panels)) * w, h, "\n".join(body) + "\n")


def strata_svg(shape, chains, extent):
    if shape.r != 2:
        raise ValueError("region plots need r = 2")
    panels = [("ss(M) = %s" % shape, [(str(p), p.region_contains) for p in shape.regions])]
    for k, chain in enumerate(chains):
        title = " ⊃ ".join("c%s" % p for p in chain)
        panels.append((title, [(str(p), p.region_contains) for p in chain]))
    return region_panels(panels, extent)


def hf_svg(HF, extent):
    """Hilbert function of an r = 2 module as a labelled grid."""
    if HF.r != 2:
        raise ValueError("grid plots need r = 2")
    w, h = _panel_size(extent)
    body = []
    peak = max([HF((i, j)) for i in range(extent[0] + 1) for j in range(extent[1] + 1)] + [1])
    body.append('<g id="hf-cells" font-family="monospace" font-size="11" text-anchor="middle">')
    for i in range(extent[0] + 1):
        for j in range(extent[1] + 1):
            d = HF((i, j))
            if not d:
                continue
            x, y = _cell_xy(PAD, PAD + 14, (i, j), extent[1])
            body.append('<rect x="%d" y="%d" width="%d" height="%d" fill="#4c72b0" fill-opacity="%.3f"/>'
                        % (x, y, CELL, CELL, 0.15 + 0.6 * d / peak))
            body.append('<text x="%d" y="%d">%d</text>' % (x + CELL // 2, y + CELL // 2 + 4, d))
    body.append("</g>")
    body.extend(_grid(PAD, PAD + 14, extent, "hf"))
    return _doc(w, h, "\n".join(body) + "\n")


def barcode_svg(bc, extent=None):
    """Bars drawn left to right, one row each; infinite bars end in an arrow."""
    ends = [b.birth for b in bc.bars] + [b.death for b in bc.bars if b.death is not None]
    extent = extent if extent is not None else (max(ends) + 2 if ends else 2)
    unit = CELL
    width = 2 * PAD + (extent + 1) * unit
    height = 2 * PAD + max(1, len(bc.bars)) * 14 + 20
    body = ['<g id="axis" stroke="#333333" font-family="monospace" font-size="10">']
    base = height - PAD
    body.append('<line x1="%d" y1="%d" x2="%d" y2="%d"/>' % (PAD, base, PAD + extent * unit, base))
    for k in range(extent + 1):
        x = PAD + k * unit
        body.append('<line x1="%d" y1="%d" x2="%d" y2="%d"/>' % (x, base, x, base + 4))
        body.append('<text x="%d" y="%d" stroke="none" fill="#333333" text-anchor="middle">%d</text>'
                    % (x, base + 15, k))
    body.append("</g>")
    body.append('<g id="bars" stroke="#4c72b0" stroke-width="4">')
    for n, b in enumerate(bc.bars):
        y = PAD + n * 14
        x0 = PAD + b.birth * unit
        x1 = PAD + (extent * unit if b.death is None else b.death * unit)
        body.append('<line x1="%d" y1="%d" x2="%d" y2="%d"><title>%s</title></line>' % (x0, y, x1, y, escape(str(b))))
        if b.death is None:
            body.append('<polygon points="%d,%d %d,%d %d,%d" fill="#4c72b0" stroke="none"/>'
                        % (x1, y - 5, x1 + 8, y, x1, y + 5))
    body.append("</g>")
    return _doc(width, height, "\n".join(body) + "\n")
