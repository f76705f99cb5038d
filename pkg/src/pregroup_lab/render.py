"""Text, TSV and SVG renderings of parses and derivations."""

from __future__ import annotations

from typing import List, Sequence
from xml.sax.saxutils import escape

from .reducer import Derivation, Parse


def derivation_lines(d: Derivation) -> List[str]:
    lines = ["{}-{} : {} {}".format(i, j, d.term[i - 1], d.term[j - 1]) for i, j in d.links]
    lines.append("* {} : {} <= {}".format(d.survivor, d.term[d.survivor - 1], d.target))
    return lines


def parse_text(p: Parse, index: int = 1, show_links: bool = True) -> str:
    """
    Words over their types, as columns, then the links::

        parse 1 <= s1
          she  sleeps
          pi3  pi3^r s1
          1-2 : pi3 pi3^r
          * 3 : s1 <= s1
    """
    words = list(p.tokens)
    types = [str(t) for t in p.choice]
    widths = [max(len(w), len(t)) for w, t in zip(words, types)]
    out = ["parse {} <= {}".format(index, p.target),
           "  " + "  ".join(w.ljust(k) for w, k in zip(words, widths)).rstrip(),
           "  " + "  ".join(t.ljust(k) for t, k in zip(types, widths)).rstrip()]
    lines = derivation_lines(p.derivation)
    out += ["  " + line for line in (lines if show_links else lines[-1:])]
    return "\n".join(out)


def parse_tsv(p: Parse, sentence_index: int, index: int) -> str:
    d = p.derivation
    return "\t".join([
        str(sentence_index), str(index), " ".join(p.tokens), str(p.target),
        " | ".join(map(str, p.choice)),
        ",".join("{}-{}".format(i, j) for i, j in d.links) or "-",
        str(d.survivor)])


TSV_HEADER = "sentence\tparse\twords\ttarget\ttypes\tlinks\tsurvivor"


def svg_links(parses: Sequence[Parse], step: int = 56) -> str:
    """
    Arc diagrams, one row per parse: the factors of the term on a line and
    every link as an arc drawn below it.  Arcs never cross.
    """
    rows = []
    height = 0
    width = 0
    for n, p in enumerate(parses):
        d = p.derivation
        top = height + 24
        x = lambda k: 20 + (k - 1) * step
        parts = ['<text x="4" y="{}" font-size="11">{}</text>'.format(
            top - 8, escape("parse {} <= {}".format(n + 1, p.target)))]
        pos = 1
        for word, term in zip(p.tokens, p.choice):
            if len(term):
                mid = (x(pos) + x(pos + len(term) - 1)) / 2
                parts.append('<text x="{:g}" y="{}" font-size="12" text-anchor="middle" '
                             'font-weight="bold">{}</text>'.format(mid, top + 14, escape(word)))
            for f in term:
                parts.append('<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>'
                             .format(x(pos), top + 32, escape(str(f))))
                pos += 1
        base = top + 38
        depth_max = 0
        for i, j in d.links:
            depth = (j - i) * 9
            depth_max = max(depth_max, depth)
            parts.append('<path d="M {} {} C {} {} {} {} {} {}" fill="none" stroke="black"/>'
                         .format(x(i), base, x(i), base + depth, x(j), base + depth, x(j), base))
        parts.append('<circle cx="{}" cy="{}" r="3" fill="red"/>'.format(x(d.survivor), base + 4))
        rows.append("\n".join(parts))
        height = base + depth_max + 16
        width = max(width, 40 + (len(d.term) - 1) * step)
    return ('<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" '
            'font-family="monospace">\n{}\n</svg>\n'.format(width, max(height, 20), "\n".join(rows)))
