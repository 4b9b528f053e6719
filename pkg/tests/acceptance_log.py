"""Collects acceptance sub-check outcomes so the run can end with one
pass/fail line per criterion."""

from collections import OrderedDict

TITLES = {
    1: "4-free campaign",
    2: "5-free campaign",
    3: "drilling chain",
    4: "oracle suite",
    5: "property suite",
    6: "negative control",
}

RESULTS = OrderedDict((n, []) for n in TITLES)


def record(criterion, name, ok, detail=""):
    RESULTS[criterion].append((name, bool(ok), detail))
    return ok


def lines():
    out = []
    for n, title in TITLES.items():
        subs = RESULTS[n]
        if not subs:
            out.append(f"criterion {n} ({title}): NOT RUN")
            continue
        failed = [f"{name} [{detail}]" if detail else name for name, ok, detail in subs if not ok]
        verdict = "PASS" if not failed else "FAIL"
        tail = f"; failing: {'; '.join(failed)}" if failed else ""
        out.append(f"criterion {n} ({title}): {verdict} ({len(subs) - len(failed)}/{len(subs)} "
                   f"sub-checks){tail}")
    return out
