"""Independent reference implementations used only by the tests.

Nothing here imports the package: the oracles must not share code paths
with what they check.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"


# --- data transcribed from the published tables ------------------------------


def published_intervals() -> tuple[list[str], dict[str, list[int]], list[int]]:
    """(interval labels, skill -> per-interval counts, per-interval totals)."""
    with open(FIXTURES / "interval_counts.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    labels = rows[0][1:]
    counts = {r[0]: [int(v) for v in r[1:]] for r in rows[1:] if r[0] != "TOTAL"}
    totals = next([int(v) for v in r[1:]] for r in rows if r[0] == "TOTAL")
    return labels, counts, totals


def published_counts(name: str) -> dict[str, int]:
    with open(FIXTURES / name, newline="") as fh:
        return {r["skill"]: int(r["count"]) for r in csv.DictReader(fh)}


def published_percentages() -> dict[str, tuple[float, float]]:
    """skill -> (job_pct, edu_pct) as printed."""
    with open(FIXTURES / "published_percentages.csv", newline="") as fh:
        return {r["skill"]: (float(r["job_pct"]), float(r["edu_pct"])) for r in csv.DictReader(fh)}


# --- brute-force boundary scanner ------------------------------------------


def _lower_ascii(ch: str) -> str:
    return chr(ord(ch) + 32) if "A" <= ch <= "Z" else ch


def _is_ident(ch: str) -> bool:
    return ch.isalnum() or ch in "#+."


def brute_force_occurs(text: str, keyword: str) -> bool:
    """Try every start position and compare character by character."""
    n, k = len(text), len(keyword)
    for i in range(n - k + 1):
        if all(_lower_ascii(text[i + j]) == _lower_ascii(keyword[j]) for j in range(k)):
            before_ok = i == 0 or not _is_ident(text[i - 1])
            j = i + k
            after_ok = (
                j == n
                or not _is_ident(text[j])
                or (text[j] == "." and (j + 1 == n or not _is_ident(text[j + 1])))
            )
            if before_ok and after_ok:
                return True
    return False


def brute_force_skills(text: str, entries: list[tuple[str, list[str]]]) -> set[str]:
    return {skill for skill, keywords in entries if any(brute_force_occurs(text, kw) for kw in keywords)}


# 40 keywords over 22 skills, chosen to collide with each other
RANDOM_DICT: list[tuple[str, list[str]]] = [
    ("Java", ["Java"]),
    ("JavaScript", ["JavaScript", "ECMAScript"]),
    ("C++", ["C++", "Cpp"]),
    ("C#", ["C#", "C sharp"]),
    ("F#", ["F#"]),
    (".NET Framework", [".NET", ".NET Framework", ".NET Core"]),
    ("ASP.NET", ["ASP.NET", "ASP.NET Core"]),
    ("Node.js", ["Node.js", "NodeJS"]),
    ("HTML/CSS", ["HTML", "HTML5", "CSS", "CSS3"]),
    ("SQL", ["SQL", "T-SQL", "PL/SQL"]),
    ("NoSQL", ["NoSQL"]),
    ("Python", ["Python", "Python3"]),
    ("Spark", ["Apache Spark", "Spark"]),
    ("React.js", ["React", "React.js"]),
    ("Git", ["Git", "GitHub"]),
    ("Kubernetes", ["Kubernetes", "K8s"]),
    ("Docker", ["Docker"]),
    ("TypeScript", ["TypeScript"]),
    ("Swift", ["Swift"]),
    ("iOS", ["iOS"]),
    ("Bash/Shell", ["Bash", "PowerShell"]),
    ("XML", ["XML"]),
]
assert sum(len(k) for _, k in RANDOM_DICT) == 40

_FILLER = ["the", "we", "use", "och", "erfarenhet", "av", "utvecklare", "år", "Göteborg", "İstanbul",
           "ScriptJava", "x", "2021", "v2", "_", "team", "Go", "C", "R", "Julia", "Flow", "Chef"]
_GLUE = [" ", " ", " ", ", ", ". ", ".", "#", "+", "(", ")", "/", "-", "\n", "\t", ":", ";", "", "_", "!", "é"]


def random_text(rng: random.Random, max_tokens: int = 25) -> str:
    keywords = [kw for _, kws in RANDOM_DICT for kw in kws]
    parts = []
    for _ in range(rng.randint(0, max_tokens)):
        roll = rng.random()
        if roll < 0.45:
            kw = rng.choice(keywords)
            style = rng.random()
            if style < 0.3:
                kw = kw.lower()
            elif style < 0.45:
                kw = kw.upper()
            parts.append(kw)
        else:
            parts.append(rng.choice(_FILLER))
        parts.append(rng.choice(_GLUE))
    return "".join(parts)


# --- least squares by iterative minimization --------------------------------


def least_squares_cg(xs: list[float], ys: list[float], cycles: int = 8) -> tuple[float, float]:
    """Minimize sum((m*x + b - y)^2) by conjugate-gradient descent.

    Gradients are computed from residuals at each iterate, never from the
    closed-form normal-equation sums.
    """

    def grad(m: float, b: float) -> tuple[float, float]:
        gm = gb = 0.0
        for x, y in zip(xs, ys):
            r = m * x + b - y
            gm += 2 * r * x
            gb += 2 * r
        return gm, gb

    def hess_dot(dm: float, db: float) -> tuple[float, float]:
        # Hessian of the quadratic applied to a direction
        hm = hb = 0.0
        for x in xs:
            t = dm * x + db
            hm += 2 * t * x
            hb += 2 * t
        return hm, hb

    m = b = 0.0
    for _ in range(cycles):
        gm, gb = grad(m, b)
        dm, db = -gm, -gb
        for _ in range(2):
            if gm == 0 and gb == 0:
                break
            hm, hb = hess_dot(dm, db)
            curv = dm * hm + db * hb
            if curv <= 0:
                break
            alpha = -(gm * dm + gb * db) / curv
            m += alpha * dm
            b += alpha * db
            ngm, ngb = grad(m, b)
            beta = (ngm * hm + ngb * hb) / curv
            dm, db = -ngm + beta * dm, -ngb + beta * db
            gm, gb = ngm, ngb
    return m, b
