"""Plain-text game files: parse with line-numbered errors, emit canonically.

Format (1-based indices, ``#`` comments, blank lines ignored)::

    players 3
    resources 9
    latency 1 10 0          # resource, alpha, beta (rationals as p/q or p)
    strategy 1 1 : 3        # player, strategy index, resource list
    strategy 1 2 : 1 2
    gamma dense             # followed by n rows of n rationals
    1 1 1
    0 1 1
    1 0 1

The context block may instead be one line, ``gamma v: v1 ... vn``, for the
single-level family.  Emission is canonical (sorted, comment-free), so
parse-emit round trips are byte-stable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .contexts import SocialContext, make_context, make_gamma_v
from .game import Game
from .numerics import format_rational

__all__ = ["GameFileError", "parse_game_text", "parse_game_file", "emit_game"]


class GameFileError(ValueError):
    def __init__(self, line: Optional[int], message: str):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


def _rational_token(token: str, line: int, what: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise GameFileError(line, f"{what} {token!r} is not a rational (use p/q or p)")


def parse_game_text(text: str) -> tuple[Game, SocialContext]:
    n: Optional[int] = None
    m: Optional[int] = None
    latencies: dict[int, tuple[Fraction, Fraction]] = {}
    strategies: dict[int, dict[int, frozenset[int]]] = {}
    gamma_rows: Optional[list[list[Fraction]]] = None
    gamma_v: Optional[list[Fraction]] = None
    dense_remaining = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dense_remaining > 0:
            assert gamma_rows is not None and n is not None
            entries = line.split()
            if len(entries) != n:
                raise GameFileError(lineno, f"gamma row needs {n} entries, got {len(entries)}")
            row = [_rational_token(tok, lineno, "gamma entry") for tok in entries]
            for g in row:
                if g < 0:
                    raise GameFileError(lineno, f"gamma entry {g}: spite unsupported")
            gamma_rows.append(row)
            dense_remaining -= 1
            continue
        tokens = line.split()
        keyword = tokens[0].lower()
        if keyword == "players":
            if n is not None:
                raise GameFileError(lineno, "duplicate players line")
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise GameFileError(lineno, "expected: players N (N >= 1)")
            n = int(tokens[1])
        elif keyword == "resources":
            if m is not None:
                raise GameFileError(lineno, "duplicate resources line")
            if len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                raise GameFileError(lineno, "expected: resources M (M >= 1)")
            m = int(tokens[1])
        elif keyword == "latency":
            if m is None:
                raise GameFileError(lineno, "latency before the resources line")
            if len(tokens) != 4:
                raise GameFileError(lineno, "expected: latency E ALPHA BETA")
            if not tokens[1].isdigit() or not 1 <= int(tokens[1]) <= m:
                raise GameFileError(lineno, f"resource index {tokens[1]} out of range 1..{m}")
            e = int(tokens[1])
            if e in latencies:
                raise GameFileError(lineno, f"duplicate latency for resource {e}")
            alpha = _rational_token(tokens[2], lineno, "alpha")
            beta = _rational_token(tokens[3], lineno, "beta")
            if alpha < 0:
                raise GameFileError(lineno, f"alpha for resource {e} must be non-negative")
            if alpha + beta < 0:
                raise GameFileError(lineno, f"resource {e} latency is negative at congestion 1")
            latencies[e] = (alpha, beta)
        elif keyword == "strategy":
            if n is None or m is None:
                raise GameFileError(lineno, "strategy before the players/resources lines")
            if len(tokens) < 5 or tokens[3] != ":":
                raise GameFileError(lineno, "expected: strategy P K : e1 e2 ...")
            if not tokens[1].isdigit() or not 1 <= int(tokens[1]) <= n:
                raise GameFileError(lineno, f"player index {tokens[1]} out of range 1..{n}")
            if not tokens[2].isdigit() or int(tokens[2]) < 1:
                raise GameFileError(lineno, f"strategy index {tokens[2]} must be >= 1")
            p, k = int(tokens[1]), int(tokens[2])
            resources = []
            for tok in tokens[4:]:
                if not tok.isdigit() or not 1 <= int(tok) <= m:
                    raise GameFileError(lineno, f"resource index {tok!r} out of range 1..{m}")
                resources.append(int(tok))
            if k in strategies.setdefault(p, {}):
                raise GameFileError(lineno, f"duplicate strategy {k} for player {p}")
            strategies[p][k] = frozenset(r - 1 for r in resources)
        elif keyword == "gamma":
            if n is None:
                raise GameFileError(lineno, "gamma before the players line")
            if gamma_rows is not None or gamma_v is not None:
                raise GameFileError(lineno, "duplicate gamma block")
            if len(tokens) == 2 and tokens[1].lower() == "dense":
                gamma_rows = []
                dense_remaining = n
            elif tokens[1].lower() in ("v:", "v"):
                entries = tokens[2:] if tokens[1].lower() == "v:" else tokens[3:]
                if tokens[1].lower() == "v" and (len(tokens) < 3 or tokens[2] != ":"):
                    raise GameFileError(lineno, "expected: gamma v: v1 ... vN")
                if len(entries) != n:
                    raise GameFileError(lineno, f"gamma v needs {n} entries, got {len(entries)}")
                gamma_v = [_rational_token(tok, lineno, "altruism level") for tok in entries]
                for v in gamma_v:
                    if v < 0:
                        raise GameFileError(lineno, f"altruism level {v}: spite unsupported")
                    if v > 1:
                        raise GameFileError(lineno, f"altruism level {v} is outside [0, 1]")
            else:
                raise GameFileError(lineno, "expected: gamma dense | gamma v: ...")
        else:
            raise GameFileError(lineno, f"unknown keyword {tokens[0]!r}")

    if n is None:
        raise GameFileError(None, "missing players line")
    if m is None:
        raise GameFileError(None, "missing resources line")
    if dense_remaining > 0:
        raise GameFileError(None, f"gamma block is missing {dense_remaining} rows")
    if gamma_rows is None and gamma_v is None:
        raise GameFileError(None, "missing gamma block")
    for p in range(1, n + 1):
        if p not in strategies:
            raise GameFileError(None, f"player {p} has no strategies")
        indices = sorted(strategies[p])
        if indices != list(range(1, len(indices) + 1)):
            raise GameFileError(None, f"player {p} strategy indices must be 1..{len(indices)}")
        for k in indices:
            if not strategies[p][k]:
                raise GameFileError(None, f"player {p} strategy {k} is empty")

    alpha = tuple(latencies.get(e, (Fraction(0), Fraction(0)))[0] for e in range(1, m + 1))
    beta = tuple(latencies.get(e, (Fraction(0), Fraction(0)))[1] for e in range(1, m + 1))
    strategy_tuple = tuple(
        tuple(strategies[p][k] for k in sorted(strategies[p])) for p in range(1, n + 1)
    )
    try:
        game = Game(strategy_tuple, alpha, beta)
        ctx = make_gamma_v(gamma_v) if gamma_v is not None else make_context(gamma_rows)
    except ValueError as exc:
        raise GameFileError(None, str(exc))
    if ctx.n != game.n:
        raise GameFileError(None, f"gamma block is {ctx.n}x{ctx.n} for {game.n} players")
    return game, ctx


def parse_game_file(path) -> tuple[Game, SocialContext]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_game_text(handle.read())


def emit_game(game: Game, ctx: SocialContext) -> str:
    """Canonical text: fixed ordering, sorted resources, no comments."""
    lines = [f"players {game.n}", f"resources {game.m}"]
    for e in range(game.m):
        lines.append(
            f"latency {e + 1} {format_rational(game.alpha[e])} {format_rational(game.beta[e])}"
        )
    for p in range(game.n):
        for k, strat in enumerate(game.strategies[p]):
            resources = " ".join(str(e + 1) for e in sorted(strat))
            lines.append(f"strategy {p + 1} {k + 1} : {resources}")
    levels = ctx.altruism_levels
    if levels is not None:
        lines.append("gamma v: " + " ".join(format_rational(v) for v in levels))
    else:
        lines.append("gamma dense")
        for row in ctx.gamma:
            lines.append(" ".join(format_rational(g) for g in row))
    return "\n".join(lines) + "\n"
