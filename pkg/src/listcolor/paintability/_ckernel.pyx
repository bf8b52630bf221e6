# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled paint-game solver with the same semantics and keys as PyKernel."""

from libcpp.vector cimport vector
from libcpp.string cimport string
from libcpp.unordered_map cimport unordered_map
from libcpp.algorithm cimport sort
from libcpp.pair cimport pair
from cython.operator cimport dereference as deref

ctypedef vector[int] Col
ctypedef vector[Col] Pos


cdef bint col_greater(const Col& a, const Col& b) noexcept:
    # lexicographic "a > b" on descending-sorted columns
    cdef size_t i = 0
    cdef size_t n = a.size() if a.size() < b.size() else b.size()
    while i < n:
        if a[i] != b[i]:
            return a[i] > b[i]
        i += 1
    return a.size() > b.size()


cdef bint int_greater(const int& a, const int& b) noexcept:
    return a > b


cdef void canonical(Pos& p):
    cdef size_t i
    for i in range(p.size()):
        sort(p[i].begin(), p[i].end(), int_greater)
    sort(p.begin(), p.end(), col_greater)


cdef string encode(const Pos& p):
    cdef string s
    cdef size_t i, j
    for i in range(p.size()):
        for j in range(p[i].size()):
            s.push_back(<char>p[i][j])
        s.push_back(<char>0)
    return s


cdef class CKernel:
    cdef unordered_map[string, int] memo
    cdef public str name

    def __init__(self):
        self.name = "compiled"

    def __len__(self):
        return self.memo.size()

    def clear(self):
        self.memo.clear()

    def items(self):
        cdef pair[string, int] kv
        out = []
        for kv in self.memo:
            out.append((_decode(kv.first), bool(kv.second)))
        return iter(out)

    def insert(self, pos, value):
        cdef Pos p = _to_pos(pos)
        canonical(p)
        cdef int flag = 0
        if value:
            flag = 1
        self.memo[encode(p)] = flag

    def lookup(self, pos):
        cdef Pos p = _to_pos(pos)
        canonical(p)
        cdef unordered_map[string, int].iterator it = self.memo.find(encode(p))
        if it == self.memo.end():
            return None
        return bool(deref(it).second)

    def solve(self, pos):
        cdef Pos p = _to_pos(pos)
        cdef size_t i, j
        for i in range(p.size()):
            for j in range(p[i].size()):
                if p[i][j] == 0:
                    return True
                if p[i][j] < 0 or p[i][j] > 255:
                    raise ValueError("budgets must lie in 0..255")
        canonical(p)
        return self._solve(p)

    cdef bint _solve(self, Pos& pos):
        if pos.size() == 0:
            return False
        cdef string key = encode(pos)
        cdef unordered_map[string, int].iterator it = self.memo.find(key)
        if it != self.memo.end():
            return deref(it).second != 0

        cdef size_t ncol = pos.size()
        # distinct values and multiplicities per column (columns are sorted)
        cdef vector[int] ent_col, ent_val, ent_max
        cdef size_t c, d, j, e
        for c in range(ncol):
            j = 0
            while j < pos[c].size():
                e = j
                while e < pos[c].size() and pos[c][e] == pos[c][j]:
                    e += 1
                ent_col.push_back(c)
                ent_val.push_back(pos[c][j])
                ent_max.push_back(<int>(e - j))
                j = e
        cdef size_t nent = ent_col.size()
        cdef vector[int] sel = vector[int](nent, 0)
        cdef vector[int] npres = vector[int](ncol, 0)
        cdef vector[int] ones = vector[int](ncol, 0)
        cdef bint result = False, win
        cdef int nones, first_one, k, v
        cdef Pos nxt
        cdef Col col
        while True:
            j = 0
            while j < nent:
                sel[j] += 1
                if sel[j] <= ent_max[j]:
                    break
                sel[j] = 0
                j += 1
            if j == nent:
                break
            for c in range(ncol):
                npres[c] = 0
                ones[c] = 0
            for j in range(nent):
                npres[ent_col[j]] += sel[j]
                if ent_val[j] == 1 and sel[j] > 0:
                    ones[ent_col[j]] = 1
            nones = 0
            first_one = -1
            for c in range(ncol):
                if ones[c]:
                    nones += 1
                    if first_one < 0:
                        first_one = <int>c
            if nones >= 2:
                result = True
                break
            win = True
            for c in range(ncol):
                if npres[c] == 0:
                    continue
                if first_one >= 0 and first_one != <int>c:
                    continue
                nxt.clear()
                for d in range(ncol):
                    col.clear()
                    for j in range(nent):
                        if ent_col[j] != <int>d:
                            continue
                        v = ent_val[j]
                        for k in range(ent_max[j] - sel[j]):
                            col.push_back(v)
                        if d != c:
                            for k in range(sel[j]):
                                col.push_back(v - 1)
                    if col.size() > 0:
                        nxt.push_back(col)
                if nxt.size() == 0:
                    win = False
                    break
                canonical(nxt)
                if not self._solve(nxt):
                    win = False
                    break
            if win:
                result = True
                break
        cdef int flag = result
        self.memo[key] = flag
        return result


cdef Pos _to_pos(pos) except *:
    cdef Pos p
    cdef Col col
    for c in pos:
        col.clear()
        for b in c:
            col.push_back(<int>b)
        if col.size() > 0:
            p.push_back(col)
    return p


def _decode(bytes key):
    cols = []
    cur = []
    for b in key:
        if b == 0:
            cols.append(tuple(cur))
            cur = []
        else:
            cur.append(b)
    return tuple(cols)
