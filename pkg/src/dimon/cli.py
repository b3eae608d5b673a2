"""Batch command-line front end for reproduction runs and CI.

Verbs: build, verify-presentation, enumerate, check-relations, forms,
tietze, green, formulas.  Reports are line-oriented text by default
and machine-readable JSON behind --json; the exit code is 0 exactly
when every requested verdict is PASS.

    dimon build --family odi --n 5 --out m.json
    dimon verify-presentation --family R --n 4
    dimon formulas --n-range 4..10
"""

import json as _json
import sys

import click

from . import congruence, monoids, presentations
from .congruence import EnumerationCaps, Verdict
from .monoids import MonoidFamily
from .presentations import RelationFamily

# the monoid each relation family presents
TARGET_MONOID = {
    RelationFamily.R: MonoidFamily.ODI,
    RelationFamily.V: MonoidFamily.ODI,
    RelationFamily.U: MonoidFamily.OCI,
    RelationFamily.VBAR: MonoidFamily.MDI,
    RelationFamily.VBAR_PRIME: MonoidFamily.MDI,
    RelationFamily.Q: MonoidFamily.OPDI,
    RelationFamily.Q_PRIME: MonoidFamily.OPDI,
    RelationFamily.Q0: MonoidFamily.CI,
}

# printed in the order of the standard count table
COUNT_ORDER = (
    RelationFamily.R,
    RelationFamily.V,
    RelationFamily.VBAR,
    RelationFamily.VBAR_PRIME,
    RelationFamily.Q,
    RelationFamily.Q_PRIME,
    RelationFamily.U,
    RelationFamily.Q0,
)


def _emit(lines, payload, ok, as_json):
    if as_json:
        click.echo(_json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)
    sys.exit(0 if ok else 1)


def _monoid_family(text):
    try:
        return MonoidFamily.parse(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _relation_family(text):
    try:
        return RelationFamily.parse(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _caps(max_classes, max_steps):
    caps = EnumerationCaps.default()
    if max_classes is not None:
        caps = EnumerationCaps(max_classes=max_classes, max_steps=caps.max_steps)
    if max_steps is not None:
        caps = EnumerationCaps(max_classes=caps.max_classes, max_steps=max_steps)
    return caps


def _parse_range(text):
    """Parse "4..10" (or a single "6") into an inclusive range."""
    lo, sep, hi = text.partition("..")
    try:
        lo_n = int(lo)
        hi_n = int(hi) if sep else lo_n
    except ValueError:
        raise click.BadParameter(f"bad range {text!r}, expected like 4..10")
    if hi_n < lo_n:
        raise click.BadParameter(f"empty range {text!r}")
    return range(lo_n, hi_n + 1)


@click.group()
def main():
    """Dihedral inverse monoid workbench."""


@main.command()
@click.option("--family", required=True, help="monoid family (odi, mdi, opdi, di, ci, oci)")
@click.option("--n", type=int, required=True, help="degree of the chain")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write the monoid as JSON")
@click.option("--dot", type=click.Path(dir_okay=False), default=None,
              help="write the right Cayley graph in DOT format")
@click.option("--json", "as_json", is_flag=True, help="machine-readable report")
def build(family, n, out, dot, as_json):
    """Build a monoid family by closure and report its size."""
    fam = _monoid_family(family)
    m = monoids.build_named(fam, n)
    lines = [f"{fam.value} n={n}: size {m.size}, degree {m.degree}, "
             f"{len(m.generators)} generators"]
    if out:
        with open(out, "w") as fh:
            _json.dump(m.to_json_dict(), fh)
        lines.append(f"wrote {out}")
    if dot:
        with open(dot, "w") as fh:
            fh.write(monoids.right_cayley_dot(m))
        lines.append(f"wrote {dot}")
    payload = {"verb": "build", "family": fam.value, "n": n, "size": m.size,
               "degree": m.degree, "generators": len(m.generators),
               "out": out, "dot": dot}
    _emit(lines, payload, True, as_json)


@main.command("verify-presentation")
@click.option("--family", required=True,
              help="relation family (R, U, V, Vbar, VbarPrime, Q, Q0, QPrime)")
@click.option("--n", type=int, required=True)
@click.option("--max-classes", type=int, default=None)
@click.option("--max-steps", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def verify_presentation(family, n, max_classes, max_steps, as_json):
    """Check a relation family presents its monoid, by enumeration."""
    fam = _relation_family(family)
    target = TARGET_MONOID[fam]
    p = presentations.build_relations(fam, n)
    a = presentations.build_assignment(fam, n)
    m = monoids.build_named(target, n)
    v = congruence.verify_presentation(p, a, m, _caps(max_classes, max_steps))
    if v.verdict is Verdict.PASS:
        lines = [f"PASS, reports {v.class_count} = {v.monoid_size}"]
    elif v.verdict is Verdict.FAIL and v.failing_tags:
        lines = [f"FAIL, relations do not hold: {', '.join(v.failing_tags)}"]
    elif v.verdict is Verdict.FAIL:
        lines = [f"FAIL, reports {v.class_count} != {v.monoid_size}"]
    else:
        lines = [f"INDETERMINATE, enumeration capped before {v.monoid_size}"]
    payload = {"verb": "verify-presentation", "family": fam.value, "n": n,
               "monoid": target.value, "verdict": v.verdict.value,
               "classes": v.class_count, "size": v.monoid_size,
               "failing": list(v.failing_tags)}
    _emit(lines, payload, v.verdict is Verdict.PASS, as_json)


@main.command()
@click.option("--presentation", "path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="presentation JSON file")
@click.option("--max-classes", type=int, default=None)
@click.option("--max-steps", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def enumerate(path, max_classes, max_steps, as_json):
    """Enumerate the congruence classes of a presentation file."""
    with open(path) as fh:
        p = presentations.Presentation.from_json_dict(_json.load(fh))
    r = congruence.enumerate_classes(p, _caps(max_classes, max_steps))
    if r.is_complete:
        lines = [f"{p.label}: complete, {r.class_count} classes"]
    else:
        lines = [f"{p.label}: capped at max_classes={r.caps.max_classes}, "
                 f"max_steps={r.caps.max_steps}"]
    payload = {"verb": "enumerate", "presentation": path, "label": p.label,
               "result": r.to_json_dict()}
    _emit(lines, payload, r.is_complete, as_json)


@main.command("check-relations")
@click.option("--family", required=True)
@click.option("--n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def check_relations(family, n, as_json):
    """Check every relation of a family holds under its generator maps."""
    fam = _relation_family(family)
    p = presentations.build_relations(fam, n)
    a = presentations.build_assignment(fam, n)
    report = presentations.check_relations_hold(p, a)
    if report.all_hold:
        lines = [f"{p.label}: all {len(p.relations)} relations hold"]
    else:
        tags = ", ".join(rel.tag for rel in report.failing)
        lines = [f"{p.label}: {len(report.failing)} relations fail: {tags}"]
    payload = {"verb": "check-relations", "family": fam.value, "n": n,
               "relations": len(p.relations), "all_hold": report.all_hold,
               "failing": [rel.tag for rel in report.failing]}
    _emit(lines, payload, report.all_hold, as_json)


@main.command()
@click.option("--family", required=True, help="relation family with a forms set (R, Vbar, Q)")
@click.option("--n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def forms(family, n, as_json):
    """Verify the candidate forms set is a transversal of the classes."""
    fam = _relation_family(family)
    p = presentations.build_relations(fam, n)
    if fam is RelationFamily.R:
        base = congruence.enumerate_classes(
            presentations.build_relations(RelationFamily.U, n))
        fs = presentations.build_forms(fam, n, base)
    elif fam is RelationFamily.VBAR:
        base = congruence.enumerate_classes(
            presentations.build_relations(RelationFamily.V, n))
        fs = presentations.build_forms(fam, n, base)
    elif fam is RelationFamily.Q:
        fs = presentations.build_forms(fam, n)
    else:
        raise click.BadParameter(f"no forms construction for {fam.value}")
    a = presentations.build_assignment(fam, n)
    m = monoids.build_named(TARGET_MONOID[fam], n)
    v = congruence.verify_forms_set(p, fs, a, m)
    if v.verdict is Verdict.PASS:
        lines = [f"PASS, {v.forms_count} forms cover {v.class_count} classes "
                 f"of a monoid of size {v.monoid_size}"]
    else:
        lines = [f"FAIL: {'; '.join(v.problems)}"]
    payload = {"verb": "forms", "family": fam.value, "n": n,
               "monoid": TARGET_MONOID[fam].value, "verdict": v.verdict.value,
               "forms": v.forms_count, "classes": v.class_count,
               "size": v.monoid_size, "problems": list(v.problems)}
    _emit(lines, payload, v.verdict is Verdict.PASS, as_json)


@main.command()
@click.option("--chain", type=click.Choice(["odi", "opdi"]), required=True)
@click.option("--n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def tietze(chain, n, as_json):
    """Replay a generator-elimination chain and re-verify class counts."""
    if chain == "odi":
        steps = presentations.odi_elimination_chain(n)
        target = MonoidFamily.ODI
    else:
        steps = presentations.opdi_elimination_chain(n)
        target = MonoidFamily.OPDI
    m = monoids.build_named(target, n)
    lines = []
    rows = []
    counts = []
    for p in steps:
        r = congruence.enumerate_classes(p)
        counts.append(r.class_count)
        lines.append(f"{p.label}: {len(p.letters)} letters, "
                     f"{r.class_count} classes")
        rows.append({"label": p.label, "letters": len(p.letters),
                     "classes": r.class_count})
    ok = len(set(counts)) == 1 and counts[0] == m.size
    if ok:
        lines.append(f"PASS, class count preserved at {m.size} = |{target.value}({n})|")
    else:
        lines.append(f"FAIL, class counts {counts} vs size {m.size}")
    payload = {"verb": "tietze", "chain": chain, "n": n, "steps": rows,
               "verdict": "PASS" if ok else "FAIL", "size": m.size}
    _emit(lines, payload, ok, as_json)


@main.command()
@click.option("--family", required=True)
@click.option("--n", type=int, required=True)
@click.option("--json", "as_json", is_flag=True)
def green(family, n, as_json):
    """Report Green's relation class counts for a monoid family."""
    fam = _monoid_family(family)
    m = monoids.build_named(fam, n)
    g = monoids.green_classes(m)
    c = g.counts()
    lines = [f"{fam.value} n={n}: size {m.size}, R-classes {c['r']}, "
             f"L-classes {c['l']}, H-classes {c['h']}, D-classes {c['d']}"]
    payload = {"verb": "green", "family": fam.value, "n": n, "size": m.size,
               "r_classes": c["r"], "l_classes": c["l"],
               "h_classes": c["h"], "d_classes": c["d"]}
    _emit(lines, payload, True, as_json)


@main.command()
@click.option("--n-range", "n_range", required=True, help="inclusive range like 4..10")
@click.option("--json", "as_json", is_flag=True)
def formulas(n_range, as_json):
    """Evaluate the closed-form size and relation-count formulas.

    Cardinality formulas are cross-checked against built monoids; the
    eight relation-count columns are the formula values.
    """
    rng = _parse_range(n_range)
    lines = []
    rows = []
    ok = True
    for n in rng:
        cards = {}
        parts = []
        for fam in (MonoidFamily.ODI, MonoidFamily.MDI, MonoidFamily.OCI):
            want = monoids.cardinality_formula(fam, n)
            got = monoids.build_named(fam, n).size
            ok &= want == got
            cards[fam.value] = {"formula": want, "built": got,
                                "ok": want == got}
            parts.append(f"|{fam.value.upper()}|={want}"
                         + ("" if want == got else f"!={got}"))
        counts = {}
        for fam in COUNT_ORDER:
            value = presentations.expected_relation_count(fam, n)
            counts[fam.value] = value
            parts.append(f"|{fam.value}|={value}")
        lines.append(f"n={n}: " + " ".join(parts))
        rows.append({"n": n, "cardinalities": cards, "relation_counts": counts})
    lines.append("cardinality cross-checks " + ("ok" if ok else "FAILED"))
    payload = {"verb": "formulas", "rows": rows,
               "verdict": "PASS" if ok else "FAIL"}
    _emit(lines, payload, ok, as_json)


if __name__ == "__main__":
    main()
