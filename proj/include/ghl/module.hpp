#pragma once

// Graded modules over a free graded-commutative algebra, given degreewise:
// dimensions up to the truncation degree and one matrix per (generator,
// degree) for the action.  Minimal generators, freeness tests and
// restriction of scalars all work on this representation.

#include <optional>
#include <vector>

#include "ghl/algebra.hpp"
#include "ghl/linalg.hpp"
#include "ghl/poly.hpp"

namespace ghl {

template <class F>
struct GradedModule {
    using El = typename F::Elem;

    AlgebraPtr ring;
    int D = 0;
    std::vector<int> dims;  // 0..D
    // actions[g][i]: matrix dims[i+deg g] x dims[i]  (present while i+deg g <= D)
    std::vector<std::vector<SparseMat<El>>> actions;

    int dim(int i) const { return (i >= 0 && i <= D) ? dims[i] : 0; }

    const SparseMat<El>& action(int g, int i) const { return actions[g][i]; }

    GradedDims poincare_series() const {
        GradedDims s(D);
        for (int i = 0; i <= D; ++i) s.c[i] = dims[i];
        return s;
    }
};

namespace detail {
template <class F>
void allocate_actions(GradedModule<F>& m) {
    const auto& gens = m.ring->generators();
    m.actions.assign(gens.size(), {});
    for (size_t g = 0; g < gens.size(); ++g) {
        int e = gens[g].degree;
        m.actions[g].resize(m.D + 1);
        for (int i = 0; i + e <= m.D; ++i)
            m.actions[g][i] = SparseMat<typename F::Elem>::zero(m.dim(i + e), m.dim(i));
        for (int i = std::max(0, m.D - e + 1); i <= m.D; ++i)
            m.actions[g][i] = SparseMat<typename F::Elem>::zero(0, m.dim(i));
    }
}
}  // namespace detail

// K in degree zero; every positive-degree generator acts by zero.
template <class F>
GradedModule<F> trivial_module(const F&, AlgebraPtr ring) {
    GradedModule<F> m;
    m.ring = ring;
    m.D = ring->truncation();
    m.dims.assign(m.D + 1, 0);
    m.dims[0] = 1;
    detail::allocate_actions(m);
    return m;
}

// the ring as a module over itself
template <class F>
GradedModule<F> module_of_ring(const F& f, AlgebraPtr ring) {
    GradedModule<F> m;
    m.ring = ring;
    m.D = ring->truncation();
    m.dims.resize(m.D + 1);
    for (int i = 0; i <= m.D; ++i) m.dims[i] = (int)ring->dim(i);
    detail::allocate_actions(m);
    const auto& gens = ring->generators();
    for (size_t g = 0; g < gens.size(); ++g) {
        int e = gens[g].degree;
        auto xg = ring->generator_monomial((int)g);
        for (int i = 0; i + e <= m.D; ++i) {
            MatBuilder<typename F::Elem> b(m.dim(i + e), m.dim(i));
            const auto& bas = ring->basis(i);
            Monomial prod;
            for (int c = 0; c < (int)bas.size(); ++c) {
                int s = ring->mul(xg, bas[c], prod);
                if (s == 0) continue;
                b.add(f, ring->index_of(prod), c, s < 0 ? f.neg(f.one()) : f.one());
            }
            m.actions[g][i] = b.take(f);
        }
    }
    return m;
}

// action of a monomial: generator actions composed, highest index applied
// first (irrelevant for even generators, which commute strictly)
template <class F>
SparseMat<typename F::Elem> act_monomial(const F& f, const GradedModule<F>& m, const Monomial& mon,
                                         int i) {
    int total = m.ring->degree(mon);
    auto acc = SparseMat<typename F::Elem>::identity(f, m.dim(i));
    int at = i;
    for (int g = (int)mon.e.size() - 1; g >= 0; --g) {
        int e = m.ring->generators()[g].degree;
        for (int k = 0; k < (int)mon.e[g]; ++k) {
            if (at + e > m.D) return SparseMat<typename F::Elem>::zero(m.dim(i + total), m.dim(i));
            acc = sp_mul(f, m.action(g, at), acc);
            at += e;
        }
    }
    return acc;
}

template <class F>
SparseMat<typename F::Elem> act_element(const F& f, const GradedModule<F>& m, const RElem<F>& p,
                                        int i, int target_degree) {
    auto acc = SparseMat<typename F::Elem>::zero(m.dim(i + target_degree), m.dim(i));
    for (const auto& [mon, c] : p.terms) {
        if (m.ring->degree(mon) != target_degree) throw error("act_element: inhomogeneous");
        acc = sp_add(f, acc, sp_scale(f, c, act_monomial(f, m, mon, i)));
    }
    return acc;
}

// restriction of scalars along an algebra map (monomial images)
template <class F>
GradedModule<F> restrict_module(const F& f, const AlgebraHom& hom, const GradedModule<F>& m) {
    if (m.ring.get() != hom.tgt.get()) throw field_mismatch("restrict_module: ring mismatch");
    GradedModule<F> r;
    r.ring = hom.src;
    r.D = std::min(m.D, hom.src->truncation());
    r.dims.assign(r.D + 1, 0);
    for (int i = 0; i <= r.D; ++i) r.dims[i] = m.dim(i);
    detail::allocate_actions(r);
    const auto& gens = hom.src->generators();
    for (size_t g = 0; g < gens.size(); ++g) {
        int e = gens[g].degree;
        Monomial img;
        int sign = hom.apply(hom.src->generator_monomial((int)g), img);
        if (hom.tgt->degree(img) != e) throw malformed_input("restrict_module: degree mismatch");
        for (int i = 0; i + e <= r.D; ++i) {
            if (sign == 0) continue;  // generator acts by zero
            auto a = act_monomial(f, m, img, i);
            r.actions[g][i] = sign < 0 ? sp_scale(f, f.neg(f.one()), a) : a;
        }
    }
    return r;
}

// subsets of {0..n-1} grouped by size, each group in lexicographic order
inline std::vector<std::vector<std::vector<int>>> subsets_by_rank(int n) {
    std::vector<std::vector<std::vector<int>>> out(n + 1);
    std::vector<int> cur;
    // lexicographic enumeration of all subsets by recursion
    auto rec = [&](auto&& self, int start) -> void {
        out[cur.size()].push_back(cur);
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// A ⊗ Δ(z_1..z_s) with deg z_i = e_i - 1, the ring acting on the left
// tensor factor.  Basis per degree: (subset S by size then lex) x
// (monomial basis of A).
template <class F>
struct LoopModule {
    GradedModule<F> module;
    std::vector<std::vector<int>> z_subsets;  // flattened subsets, basis block order
    std::vector<int> z_degrees;               // degree of each subset block
    // offset of block S at module degree i: sum over earlier blocks of dim A(i - deg z_T)
};

template <class F>
LoopModule<F> loop_module(const F& f, AlgebraPtr ring) {
    int s = ring->num_generators();
    int D = ring->truncation();
    LoopModule<F> L;
    auto by_rank = subsets_by_rank(s);
    for (const auto& group : by_rank)
        for (const auto& S : group) {
            int zd = 0;
            for (int i : S) zd += ring->generators()[i].degree - 1;
            L.z_subsets.push_back(S);
            L.z_degrees.push_back(zd);
        }
    GradedModule<F>& m = L.module;
    m.ring = ring;
    m.D = D;
    m.dims.assign(D + 1, 0);
    for (int i = 0; i <= D; ++i) {
        long long d = 0;
        for (int zd : L.z_degrees)
            if (i - zd >= 0) d += ring->dim(i - zd);
        m.dims[i] = (int)d;
    }
    detail::allocate_actions(m);
    const auto& gens = ring->generators();
    for (size_t g = 0; g < gens.size(); ++g) {
        int e = gens[g].degree;
        auto xg = ring->generator_monomial((int)g);
        for (int i = 0; i + e <= D; ++i) {
            MatBuilder<typename F::Elem> b(m.dim(i + e), m.dim(i));
            int col_off = 0;
            for (size_t blk = 0; blk < L.z_subsets.size(); ++blk) {
                int zd = L.z_degrees[blk];
                int ad = i - zd;
                if (ad < 0) continue;
                // row offset of this block at degree i+e
                int row_off = 0;
                for (size_t t = 0; t < blk; ++t)
                    if (i + e - L.z_degrees[t] >= 0) row_off += (int)ring->dim(i + e - L.z_degrees[t]);
                const auto& bas = ring->basis(ad);
                Monomial prod;
                for (int c = 0; c < (int)bas.size(); ++c) {
                    int sg = ring->mul(xg, bas[c], prod);
                    if (sg == 0) continue;
                    b.add(f, row_off + ring->index_of(prod), col_off + c,
                          sg < 0 ? f.neg(f.one()) : f.one());
                }
                col_off += (int)ring->dim(ad);
            }
            m.actions[g][i] = b.take(f);
        }
    }
    return L;
}

// Koszul commutation of the generator actions, checked as exact matrix
// identities in every degree where both composites are defined.
template <class F>
bool check_action_relations(const F& f, const GradedModule<F>& m) {
    int n = m.ring->num_generators();
    const auto& gens = m.ring->generators();
    for (int g = 0; g < n; ++g)
        for (int h = g; h < n; ++h) {
            int eg = gens[g].degree, eh = gens[h].degree;
            bool anti = (eg % 2) && (eh % 2) && m.ring->characteristic() != 2;
            for (int i = 0; i + eg + eh <= m.D; ++i) {
                auto gh = sp_mul(f, m.action(g, i + eh), m.action(h, i));
                auto hg = sp_mul(f, m.action(h, i + eg), m.action(g, i));
                if (g == h) {
                    if ((eg % 2) && m.ring->characteristic() != 2 && !gh.entries.empty())
                        return false;  // odd generators square to zero
                    continue;
                }
                if (anti) hg = sp_scale(f, f.neg(f.one()), hg);
                if (!sp_eq(f, gh, hg)) return false;
            }
        }
    return true;
}

struct GeneratorRef {
    int degree;
    int index;  // basis index within that degree
};

// Minimal generators: a deterministic basis of m / (positive-degree part
// acting), one standard basis vector per degree (complement of the pivot
// coordinates of the image).
template <class F>
std::vector<GeneratorRef> min_generators(const F& f, const GradedModule<F>& m) {
    std::vector<GeneratorRef> out;
    const auto& gens = m.ring->generators();
    for (int i = 0; i <= m.D; ++i) {
        if (m.dim(i) == 0) continue;
        // transpose of [X_g1 | X_g2 | ...]; pivot columns of its echelon
        // form are the coordinates covered by the image
        MatBuilder<typename F::Elem> bt(0, m.dim(i));
        int rows = 0;
        std::vector<Triplet<typename F::Elem>> tr;
        for (size_t g = 0; g < gens.size(); ++g) {
            int e = gens[g].degree;
            if (i - e < 0) continue;
            const auto& a = m.action((int)g, i - e);
            for (const auto& en : a.entries) tr.push_back({rows + en.col, en.row, en.value});
            rows += a.cols;
        }
        SparseMat<typename F::Elem> wt{rows, m.dim(i), std::move(tr)};
        wt.sort_entries();
        auto ech = detail::echelon(f, wt, static_cast<const std::vector<typename F::Elem>*>(nullptr));
        for (int c = 0; c < m.dim(i); ++c)
            if (!ech.pivots.count(c)) out.push_back({i, c});
    }
    return out;
}

template <class F>
struct FreenessWitness {
    bool free = false;
    std::vector<GeneratorRef> basis;  // maps isomorphically onto m ⊗ K when free
    int first_failure_degree = -1;
};

// m is free iff the minimal generators span freely: the evaluation map
// from the free module on min_generators is bijective in every degree
// up to D.
template <class F>
FreenessWitness<F> is_free(const F& f, const GradedModule<F>& m) {
    FreenessWitness<F> w;
    w.basis = min_generators(f, m);
    for (int i = 0; i <= m.D; ++i) {
        // expected dimension and evaluation matrix at degree i
        std::vector<std::vector<typename F::Elem>> cols;
        for (const auto& gref : w.basis) {
            if (gref.degree > i) continue;
            int md = i - gref.degree;
            const auto& bas = m.ring->basis(md);
            for (int c = 0; c < (int)bas.size(); ++c) {
                auto a = act_monomial(f, m, bas[c], gref.degree);
                cols.push_back(sp_column(f, a, gref.index));
            }
        }
        if ((int)cols.size() != m.dim(i)) {
            w.first_failure_degree = i;
            return w;
        }
        auto eval = sp_from_columns(f, m.dim(i), cols);
        if (rank(f, eval) != m.dim(i)) {
            w.first_failure_degree = i;
            return w;
        }
    }
    w.free = true;
    return w;
}

}  // namespace ghl
