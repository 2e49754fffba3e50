"""Serialize fixture structures into the CLI's JSON input schema."""

from fractions import Fraction


def _s(c):
    return str(Fraction(c))


def _matrix(op, dim):
    return [
        [_s(op.columns[j].get(i)) for j in range(dim)] for i in range(dim)
    ]


def _mult_rows(mult):
    rows = []
    for (i, j), vec in sorted(mult.items()):
        for k, c in sorted(vec.items()):
            rows.append([i, j, k, _s(c)])
    return rows


def _comult_rows(comult):
    rows = []
    for i, vec in sorted(comult.items()):
        for (j, k), c in sorted(vec.items()):
            rows.append([i, j, k, _s(c)])
    return rows


def hopf_to_json(h):
    dim = h.dim
    return {
        "dim": dim,
        "mult": _mult_rows(h.mult),
        "unit": [_s(h.unit.get(i)) for i in range(dim)],
        "alpha": _matrix(h.alpha, dim),
        "comult": _comult_rows(h.comult),
        "counit": [_s(h.counit.get(i, 0)) for i in range(dim)],
        "beta": _matrix(h.beta, dim),
        "antipode": _matrix(h.antipode, dim),
    }


def lie_to_json(g):
    bracket = []
    for (i, j), vec in sorted(g.table.items()):
        bracket.append([i, j, [_s(vec.get(k)) for k in range(g.dim)]])
    return {
        "dim": g.dim,
        "bracket": bracket,
        "phi": _matrix(g.phi, g.dim),
    }


def action_rows(table):
    rows = []
    for (i, j), vec in sorted(table.items()):
        for k, c in sorted(vec.items()):
            rows.append([i, j, k, _s(c)])
    return rows


def matched_pair_to_json(mp, u_name, v_name):
    return {
        "u": u_name,
        "v": v_name,
        "left": action_rows(mp.left),
        "right": action_rows(mp.right),
    }


def mutual_pair_to_json(m, f_name, u_name):
    coaction = []
    for i, vec in sorted(m.coaction.items()):
        for (j, k), c in sorted(vec.items()):
            coaction.append([i, j, k, _s(c)])
    return {
        "f": f_name,
        "u": u_name,
        "action": action_rows(m.action),
        "coaction": coaction,
    }


def lie_pair_to_json(pair, g_name, h_name):
    return {
        "g": g_name,
        "h": h_name,
        "h_on_g": action_rows(pair.h_on_g.act),
        "g_on_h": action_rows(pair.g_on_h.act),
    }
