"""Reference value table handling and comparison."""

import csv
import io

from .catalog import data_dir


def reference_values(path=None):
    """Census reference values as {column: {r: value}}."""
    if path is None:
        text = (data_dir() / "reference_values.csv").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    reader = csv.reader(io.StringIO("\n".join(lines)))
    header = next(reader)
    out = {name: {} for name in header[1:]}
    for row in reader:
        r = int(row[0])
        for name, cell in zip(header[1:], row[1:]):
            if cell.strip():
                out[name][r] = float(cell)
    return out


def compare_with_reference(computed, reference, tol=1e-6):
    """Diff computed values {column: {r: value}} against a reference table.

    Columns without computed values are reported as "nodiag"; returns a dict
    with per-column status and the maximum absolute deviation seen.
    """
    report = {"columns": {}, "max_deviation": 0.0, "passed": True}
    for name in sorted(reference):
        ref_col = reference[name]
        got_col = computed.get(name)
        if not got_col:
            report["columns"][name] = {"status": "nodiag"}
            continue
        devs = {}
        for r, want in ref_col.items():
            if r in got_col:
                devs[r] = abs(got_col[r] - want)
        worst = max(devs.values()) if devs else 0.0
        ok = worst <= tol and bool(devs)
        report["columns"][name] = {
            "status": "ok" if ok else "fail",
            "max_deviation": worst,
            "levels": sorted(devs),
        }
        report["max_deviation"] = max(report["max_deviation"], worst)
        if not ok:
            report["passed"] = False
    return report
