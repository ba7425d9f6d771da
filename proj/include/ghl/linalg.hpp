#pragma once

// Exact sparse linear algebra over a field: rank, solve, kernel bases.
//
// Pivoting is fixed once and for all: columns are processed left to
// right and the pivot in a column is the active row with the lowest
// index ("leftmost-lowest").  Every basis and certificate downstream
// depends on this rule being deterministic.  A dense elimination path
// is used below 64x64; it performs the same operations in the same
// order, so outputs are identical.

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ghl/field.hpp"

namespace ghl {

template <class El>
struct Triplet {
    int row;
    int col;
    El value;
};

// Coordinate-format sparse matrix.  Invariants: no duplicate (row, col)
// pairs, no stored zeros, entries sorted by (row, col).
template <class El>
struct SparseMat {
    int rows = 0;
    int cols = 0;
    std::vector<Triplet<El>> entries;

    static SparseMat zero(int r, int c) { return SparseMat{r, c, {}}; }

    template <class F>
    static SparseMat identity(const F& f, int n) {
        SparseMat m{n, n, {}};
        for (int i = 0; i < n; ++i) m.entries.push_back({i, i, f.one()});
        return m;
    }

    void sort_entries() {
        std::sort(entries.begin(), entries.end(), [](const Triplet<El>& a, const Triplet<El>& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
    }

    template <class F>
    void validate(const F& f) const {
        for (size_t k = 0; k < entries.size(); ++k) {
            const auto& e = entries[k];
            if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
                throw malformed_input("sparse entry out of bounds");
            if (f.is_zero(e.value)) throw malformed_input("stored zero in sparse matrix");
            if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col)
                throw malformed_input("duplicate sparse entry");
        }
    }

    SparseMat transposed() const {
        SparseMat t{cols, rows, {}};
        t.entries.reserve(entries.size());
        for (const auto& e : entries) t.entries.push_back({e.col, e.row, e.value});
        t.sort_entries();
        return t;
    }

    template <class F>
    std::vector<El> apply(const F& f, const std::vector<El>& x) const {
        assert((int)x.size() == cols);
        std::vector<El> y(rows, f.zero());
        for (const auto& e : entries) y[e.row] = f.add(y[e.row], f.mul(e.value, x[e.col]));
        return y;
    }
};

// A builder which accumulates (possibly repeated) contributions and
// squashes them into a valid SparseMat.
template <class El>
class MatBuilder {
  public:
    MatBuilder(int rows, int cols) : rows_(rows), cols_(cols) {}

    template <class F>
    void add(const F& f, int r, int c, const El& v) {
        if (f.is_zero(v)) return;
        raw_.push_back({r, c, v});
    }

    template <class F>
    SparseMat<El> take(const F& f) {
        SparseMat<El> m{rows_, cols_, std::move(raw_)};
        m.sort_entries();
        std::vector<Triplet<El>> out;
        out.reserve(m.entries.size());
        for (auto& e : m.entries) {
            if (!out.empty() && out.back().row == e.row && out.back().col == e.col)
                out.back().value = f.add(out.back().value, e.value);
            else
                out.push_back(e);
        }
        std::vector<Triplet<El>> squashed;
        squashed.reserve(out.size());
        for (auto& e : out)
            if (!f.is_zero(e.value)) squashed.push_back(std::move(e));
        m.entries = std::move(squashed);
        raw_.clear();
        return m;
    }

  private:
    int rows_, cols_;
    std::vector<Triplet<El>> raw_;
};

namespace detail {

// one sparse row: sorted (col, value), value never zero
template <class El>
using Row = std::vector<std::pair<int, El>>;

// r := r - factor * p   (merged walk over sorted rows)
template <class F, class El>
Row<El> row_axpy(const F& f, const Row<El>& r, const El& factor, const Row<El>& p) {
    Row<El> out;
    out.reserve(r.size() + p.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            El v = f.neg(f.mul(factor, p[j].second));
            if (!f.is_zero(v)) out.emplace_back(p[j].first, std::move(v));
            ++j;
        } else {
            El v = f.sub(r[i].second, f.mul(factor, p[j].second));
            if (!f.is_zero(v)) out.emplace_back(r[i].first, std::move(v));
            ++i, ++j;
        }
    }
    return out;
}

// Row echelon form under the leftmost-lowest rule.  Pivot rows are
// normalized to leading coefficient 1.  Optionally carries a right-hand
// side along (for solve).
template <class F, class El>
struct EchelonForm {
    // pivot column -> (row, rhs) with leading coefficient 1 at that column
    std::map<int, std::pair<Row<El>, El>> pivots;
    // reduced-to-zero rows whose rhs stayed nonzero (inconsistencies)
    std::vector<El> dead_rhs;
    int cols = 0;

    int rank() const { return (int)pivots.size(); }
    bool consistent() const { return dead_rhs.empty(); }
};

// Reduce one row (with rhs) against the current pivots; either absorb it
// as a new pivot or report where it died.
template <class F, class El>
bool echelon_insert(const F& f, EchelonForm<F, El>& e, Row<El> row, El rhs) {
    while (!row.empty()) {
        int lead = row.front().first;
        auto it = e.pivots.find(lead);
        if (it == e.pivots.end()) {
            El inv = f.inv(row.front().second);
            for (auto& [c, v] : row) v = f.mul(v, inv);
            rhs = f.mul(rhs, inv);
            e.pivots.emplace(lead, std::make_pair(std::move(row), std::move(rhs)));
            return true;
        }
        El factor = row.front().second;
        row = row_axpy(f, row, factor, it->second.first);
        rhs = f.sub(rhs, f.mul(factor, it->second.second));
    }
    if (!f.is_zero(rhs)) {
        e.dead_rhs.push_back(rhs);
        return false;
    }
    return true;
}

template <class F, class El>
EchelonForm<F, El> echelon(const F& f, const SparseMat<El>& m, const std::vector<El>* rhs) {
    EchelonForm<F, El> e;
    e.cols = m.cols;
    // group entries into rows (entries are sorted by row, col)
    size_t k = 0;
    for (int r = 0; r < m.rows; ++r) {
        Row<El> row;
        while (k < m.entries.size() && m.entries[k].row == r) {
            row.emplace_back(m.entries[k].col, m.entries[k].value);
            ++k;
        }
        if (row.empty()) {
            if (rhs && !f.is_zero((*rhs)[r])) e.dead_rhs.push_back((*rhs)[r]);
            continue;
        }
        echelon_insert(f, e, std::move(row), rhs ? (*rhs)[r] : f.zero());
    }
    return e;
}

// Back-substitution through the echelon form: free variables take the
// prescribed values, pivot variables are solved bottom-up.
template <class F, class El>
std::vector<El> back_substitute(const F& f, const EchelonForm<F, El>& e,
                                const std::vector<std::pair<int, El>>& free_values,
                                bool use_rhs) {
    std::vector<El> x(e.cols, f.zero());
    for (const auto& [c, v] : free_values) x[c] = v;
    for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
        const auto& [row, rhs] = it->second;
        El acc = use_rhs ? rhs : f.zero();
        for (size_t i = 1; i < row.size(); ++i)
            acc = f.sub(acc, f.mul(row[i].second, x[row[i].first]));
        x[it->first] = acc;  // leading coefficient is 1
    }
    return x;
}

template <class F, class El>
void normalize_kernel_vector(const F& f, std::vector<El>& v);

template <class El>
inline void normalize_rational_vector(std::vector<El>& v) {
    // scale to a primitive integer vector with positive leading entry
    mpz_class den(1), num(0);
    for (const auto& q : v) {
        if (sgn(q) == 0) continue;
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
        den = l;
    }
    for (auto& q : v) q *= den;
    for (const auto& q : v) {
        if (sgn(q) == 0) continue;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), q.get_num().get_mpz_t());
        num = g;
    }
    if (num != 0)
        for (auto& q : v) q /= num;
    for (const auto& q : v) {
        if (sgn(q) == 0) continue;
        if (sgn(q) < 0)
            for (auto& w : v) w = -w;
        break;
    }
    for (auto& q : v) q.canonicalize();
}

inline void normalize_field_vector(const PrimeField& f, std::vector<uint32_t>& v) {
    for (const auto& a : v) {
        if (f.is_zero(a)) continue;
        uint32_t inv = f.inv(a);
        for (auto& w : v) w = f.mul(w, inv);
        break;
    }
}

inline void normalize_vector(const PrimeField& f, std::vector<uint32_t>& v) {
    normalize_field_vector(f, v);
}
inline void normalize_vector(const Rationals&, std::vector<mpq_class>& v) {
    normalize_rational_vector(v);
}

}  // namespace detail

// --------------------------------------------------------------------
// public operations
// --------------------------------------------------------------------

namespace detail {
template <class F, class El>
int dense_rank(const F& f, const SparseMat<El>& m);
}

template <class F>
int rank(const F& f, const SparseMat<typename F::Elem>& m) {
    if (m.rows < 64 && m.cols < 64) return detail::dense_rank(f, m);
    auto e = detail::echelon(f, m, static_cast<const std::vector<typename F::Elem>*>(nullptr));
    return e.rank();
}

template <class F>
int rank_sparse(const F& f, const SparseMat<typename F::Elem>& m) {
    auto e = detail::echelon(f, m, static_cast<const std::vector<typename F::Elem>*>(nullptr));
    return e.rank();
}

// Deterministic kernel basis, one vector per free column, ordered by
// free column index.  Vectors are normalized (leading coefficient 1
// over F_p, primitive integer with positive leading entry over Q).
template <class F>
std::vector<std::vector<typename F::Elem>> kernel_basis(const F& f,
                                                        const SparseMat<typename F::Elem>& m) {
    using El = typename F::Elem;
    auto e = detail::echelon(f, m, static_cast<const std::vector<typename F::Elem>*>(nullptr));
    std::vector<std::vector<El>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (e.pivots.count(c)) continue;
        std::vector<El> v = detail::back_substitute(f, e, {{c, f.one()}}, false);
        detail::normalize_vector(f, v);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
struct SolveResult {
    bool consistent = false;
    std::vector<typename F::Elem> particular;                // valid iff consistent
    std::vector<std::vector<typename F::Elem>> kernel;       // always the kernel basis
};

// One particular solution of m x = b (free variables set to zero)
// together with the kernel basis, or an inconsistency report.
template <class F>
SolveResult<F> solve(const F& f, const SparseMat<typename F::Elem>& m,
                     const std::vector<typename F::Elem>& b) {
    if ((int)b.size() != m.rows) throw malformed_input("solve: dimension mismatch");
    auto e = detail::echelon(f, m, &b);
    SolveResult<F> out;
    out.kernel = kernel_basis(f, m);
    if (!e.consistent()) return out;
    out.consistent = true;
    out.particular = detail::back_substitute(f, e, {}, true);
    return out;
}

// Incremental equation system used by the homotopy solver: equations
// arrive stage by stage and inconsistency is detected the moment the
// offending stage is added.
template <class F>
class IncrementalSystem {
  public:
    using El = typename F::Elem;

    IncrementalSystem(const F& f, int cols) : f_(f) { form_.cols = cols; }

    // returns false iff this equation contradicts the ones before it
    bool add(detail::Row<El> row, El rhs) {
        return detail::echelon_insert(f_, form_, std::move(row), std::move(rhs));
    }

    // free unknowns at zero
    std::vector<El> solution() const { return detail::back_substitute(f_, form_, {}, true); }

    int rank() const { return form_.rank(); }

  private:
    F f_;
    detail::EchelonForm<F, El> form_;
};

template <class F>
SparseMat<typename F::Elem> sp_mul(const F& f, const SparseMat<typename F::Elem>& a,
                                   const SparseMat<typename F::Elem>& b) {
    if (a.cols != b.rows) throw malformed_input("sparse product: shape mismatch");
    // bucket b's entries by row
    std::vector<std::vector<const Triplet<typename F::Elem>*>> brows(b.rows);
    for (const auto& e : b.entries) brows[e.row].push_back(&e);
    MatBuilder<typename F::Elem> out(a.rows, b.cols);
    for (const auto& ea : a.entries)
        for (const auto* eb : brows[ea.col]) out.add(f, ea.row, eb->col, f.mul(ea.value, eb->value));
    return out.take(f);
}

template <class F>
SparseMat<typename F::Elem> sp_add(const F& f, const SparseMat<typename F::Elem>& a,
                                   const SparseMat<typename F::Elem>& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw malformed_input("sparse sum: shape mismatch");
    MatBuilder<typename F::Elem> out(a.rows, a.cols);
    for (const auto& e : a.entries) out.add(f, e.row, e.col, e.value);
    for (const auto& e : b.entries) out.add(f, e.row, e.col, e.value);
    return out.take(f);
}

template <class F>
SparseMat<typename F::Elem> sp_scale(const F& f, const typename F::Elem& c,
                                     const SparseMat<typename F::Elem>& a) {
    MatBuilder<typename F::Elem> out(a.rows, a.cols);
    for (const auto& e : a.entries) out.add(f, e.row, e.col, f.mul(c, e.value));
    return out.take(f);
}

template <class F>
bool sp_eq(const F& f, const SparseMat<typename F::Elem>& a,
           const SparseMat<typename F::Elem>& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    auto d = sp_add(f, a, sp_scale(f, f.neg(f.one()), b));
    return d.entries.empty();
}

template <class F>
std::vector<typename F::Elem> sp_column(const F& f, const SparseMat<typename F::Elem>& a, int c) {
    std::vector<typename F::Elem> v(a.rows, f.zero());
    for (const auto& e : a.entries)
        if (e.col == c) v[e.row] = e.value;
    return v;
}

// matrix whose columns are the given vectors
template <class F>
SparseMat<typename F::Elem> sp_from_columns(const F& f, int rows,
                                            const std::vector<std::vector<typename F::Elem>>& cs) {
    MatBuilder<typename F::Elem> out(rows, (int)cs.size());
    for (int j = 0; j < (int)cs.size(); ++j)
        for (int i = 0; i < rows; ++i) out.add(f, i, j, cs[j][i]);
    return out.take(f);
}

// dense mirror of the elimination, used as an agreement oracle and as a
// fallback for tiny matrices
namespace detail {

template <class F, class El>
int dense_rank(const F& f, const SparseMat<El>& m) {
    std::vector<std::vector<El>> a(m.rows, std::vector<El>(m.cols, f.zero()));
    for (const auto& e : m.entries) a[e.row][e.col] = e.value;
    std::vector<bool> used(m.rows, false);
    int rank = 0;
    for (int j = 0; j < m.cols; ++j) {
        int piv = -1;
        for (int r = 0; r < m.rows; ++r)
            if (!used[r] && !f.is_zero(a[r][j])) { piv = r; break; }
        if (piv < 0) continue;
        used[piv] = true;
        ++rank;
        El inv = f.inv(a[piv][j]);
        for (int c = j; c < m.cols; ++c) a[piv][c] = f.mul(a[piv][c], inv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == piv || f.is_zero(a[r][j])) continue;
            El factor = a[r][j];
            for (int c = j; c < m.cols; ++c)
                a[r][c] = f.sub(a[r][c], f.mul(factor, a[piv][c]));
        }
    }
    return rank;
}

}  // namespace detail

}  // namespace ghl
