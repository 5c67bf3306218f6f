"""Pure-Python labeled BFS over a precomputed transition table."""

from __future__ import annotations

from collections import deque


def labeled_bfs(trans, perm_next, start_state: int, start_perm: int, identity_perm: int, budget: int):
    """Visit (state, perm) pairs reachable from the start.

    ``trans[s][g]`` is the unlabeled successor of s under generator g and
    ``perm_next[p][g]`` the permutation index after g.  Returns
    (total, length, closed, exceeded).
    """
    n_states = len(trans)
    n_gens = len(trans[0]) if n_states else 0
    n_perms = len(perm_next)
    tr = [list(map(int, row)) for row in trans]
    pn = [list(map(int, row)) for row in perm_next]
    seen = bytearray(n_states * n_perms)
    start = start_state * n_perms + start_perm
    seen[start] = 1
    queue = deque([start])
    total = 1
    length = 1 if start_perm == identity_perm else 0
    while queue:
        code = queue.popleft()
        s, p = divmod(code, n_perms)
        row, prow = tr[s], pn[p]
        for g in range(n_gens):
            c = row[g] * n_perms + prow[g]
            if not seen[c]:
                seen[c] = 1
                total += 1
                if prow[g] == identity_perm:
                    length += 1
                if total > budget:
                    return total, length, False, True
                queue.append(c)
    # closure: every generator keeps every visited pair inside the set
    closed = True
    for code in range(n_states * n_perms):
        if not seen[code]:
            continue
        s, p = divmod(code, n_perms)
        for g in range(n_gens):
            if not seen[tr[s][g] * n_perms + pn[p][g]]:
                closed = False
                break
        if not closed:
            break
    return total, length, closed, False


def class_bfs(mul, inv, trace_id, cells, cell_len, cmaps, gen_pq, start, budget: int):
    """Conjugacy-class BFS over a finite group given by its Cayley table.

    ``cells[c][:cell_len[c]]`` lists the members of cell c in product order,
    ``cmaps[g][c]`` is the parent cell carrying the same value (-1 if none)
    and ``gen_pq[g]`` = (p, q, forward).  Returns (witness, keys, trans,
    exceeded) as nested lists.
    """
    mul = [list(map(int, r)) for r in mul]
    inv = list(map(int, inv))
    tid = list(map(int, trace_id))
    cells = [tuple(int(x) for x in r[: int(ln)]) for r, ln in zip(cells, cell_len)]
    cmaps = [[int(x) for x in r] for r in cmaps]
    gens = [tuple(int(x) for x in r) for r in gen_pq]

    def key_of(ids, parent_key, cmap):
        out = []
        for c, members in enumerate(cells):
            src = cmap[c] if cmap is not None else -1
            if src >= 0:
                out.append(parent_key[src])
                continue
            acc = ids[members[0]]
            for m in members[1:]:
                acc = mul[acc][ids[m]]
            out.append(tid[acc])
        return tuple(out)

    ids0 = tuple(int(x) for x in start)
    k0 = key_of(ids0, None, None)
    index = {k0: 0}
    witness = [ids0]
    keys = [k0]
    trans = []
    head = 0
    while head < len(witness):
        ids, key = witness[head], keys[head]
        head += 1
        row = []
        for g, (p, q, fwd) in enumerate(gens):
            new = list(ids)
            mp, mq = ids[p], ids[q]
            if fwd:
                new[p] = mul[mul[mp][mq]][inv[mp]]
                new[q] = mp
            else:
                new[p] = mq
                new[q] = mul[mul[inv[mq]][mp]][mq]
            new = tuple(new)
            ck = key_of(new, key, cmaps[g])
            c = index.get(ck)
            if c is None:
                c = len(witness)
                if c >= budget:
                    return witness, keys, trans, True
                index[ck] = c
                witness.append(new)
                keys.append(ck)
            row.append(c)
        trans.append(row)
    return witness, keys, trans, False
