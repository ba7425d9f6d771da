#pragma once

// Chain maps between free complexes, their verification, composition,
// mapping cones, ghost detection, and the null-homotopy solver.
//
// The solver processes unknowns degree by degree from the bottom
// (homological degree ascending, internal degree ascending within it)
// and keeps every equation seen so far in one incremental elimination;
// the first stage whose equations contradict the accumulated system is
// the reported obstruction.  Consistency of the cumulative system does
// not depend on any solution choices, so the obstruction stage is an
// invariant of the map.

#include <map>
#include <optional>
#include <vector>

#include "ghl/complex.hpp"
#include "ghl/rng.hpp"

namespace ghl {

template <class F>
struct ChainMap {
    ComplexPtr<F> src;
    ComplexPtr<F> tgt;
    int hom_shift = 0;  // component at h lands in tgt degree h + hom_shift
    int int_shift = 0;  // internal degree shift
    std::vector<RMat<F>> comps;  // comps[h]: (tgt rank at h+hom_shift) x (src rank at h)
    bool verified = false;

    int total_degree() const { return int_shift - hom_shift; }

    const RMat<F>& comp(int h) const { return comps[h]; }
};

template <class F>
ChainMap<F> zero_map(ComplexPtr<F> src, ComplexPtr<F> tgt, int hom_shift, int int_shift) {
    ChainMap<F> m{src, tgt, hom_shift, int_shift, {}, true};
    for (int h = 0; h <= src->length(); ++h)
        m.comps.emplace_back(tgt->rank(h + hom_shift), src->rank(h));
    return m;
}

template <class F>
ChainMap<F> identity_map(const F& f, ComplexPtr<F> c) {
    ChainMap<F> m = zero_map<F>(c, c, 0, 0);
    for (int h = 0; h <= c->length(); ++h)
        for (int k = 0; k < c->rank(h); ++k)
            m.comps[h].at(k, k) = RElem<F>::monomial(f, c->ring->one(), f.one());
    return m;
}

// d∘f = (-1)^t f∘d, checked symbolically in every homological degree
template <class F>
bool verify_chain_map(const F& f, const ChainMap<F>& m) {
    const auto& S = *m.src;
    const auto& T = *m.tgt;
    int t = m.total_degree();
    auto sign = (t % 2 == 0) ? f.one() : f.neg(f.one());
    for (int h = 0; h <= S.length(); ++h) {
        // left side: d_T ∘ f_h  (target degree h+hs -> h+hs-1)
        RMat<F> lhs(T.rank(h + m.hom_shift - 1), S.rank(h));
        if (T.in_range(h + m.hom_shift) && h + m.hom_shift >= 1)
            lhs = rmat_mul(f, *S.ring, T.diffs[h + m.hom_shift], m.comps[h]);
        // right side: (-1)^t f_{h-1} ∘ d_S
        RMat<F> rhs(T.rank(h + m.hom_shift - 1), S.rank(h));
        if (h >= 1) rhs = rmat_scale(f, sign, rmat_mul(f, *S.ring, m.comps[h - 1], S.diffs[h]));
        if (!rmat_sub(f, lhs, rhs).is_zero()) return false;
    }
    return true;
}

// degree-i slice of the chain map component at homological degree h
template <class F>
SparseMat<typename F::Elem> chainmap_slice(const F& f, const ChainMap<F>& m, int h, int i) {
    const auto& S = *m.src;
    const auto& T = *m.tgt;
    int ht = h + m.hom_shift;
    if (!S.in_range(h) || !T.in_range(ht))
        return SparseMat<typename F::Elem>::zero(
            T.in_range(ht) ? slice_dim(T, ht, i + m.int_shift) : 0,
            S.in_range(h) ? slice_dim(S, h, i) : 0);
    return rmat_slice(f, *S.ring, T.modules[ht], S.modules[h], m.comps[h], i, m.int_shift);
}

namespace detail {

// image of a generator as a coordinate vector on the target slice
template <class F>
std::vector<typename F::Elem> column_as_vector(const F& f, const FreeGCAlgebra& ring,
                                               const FreeModule& tgt, const RMat<F>& m, int col,
                                               int internal) {
    auto off = [&] {
        std::vector<int> o;
        int acc = 0;
        for (int d : tgt.gen_degrees) {
            o.push_back(acc);
            int md = internal - d;
            if (md >= 0 && md <= ring.truncation()) acc += (int)ring.dim(md);
        }
        o.push_back(acc);
        return o;
    }();
    std::vector<typename F::Elem> v(off.back(), f.zero());
    for (int r = 0; r < m.rows; ++r) {
        for (const auto& [mon, c] : m.at(r, col).terms)
            v[off[r] + ring.index_of(mon)] = f.add(v[off[r] + ring.index_of(mon)], c);
    }
    return v;
}

template <class F>
void vector_into_column(const F& f, const FreeGCAlgebra& ring, const FreeModule& tgt,
                        const std::vector<typename F::Elem>& v, int internal, RMat<F>& out,
                        int col) {
    int acc = 0;
    for (int r = 0; r < tgt.rank(); ++r) {
        int md = internal - tgt.gen_degrees[r];
        if (md < 0 || md > ring.truncation()) continue;
        const auto& bas = ring.basis(md);
        for (int b = 0; b < (int)bas.size(); ++b) {
            if (!f.is_zero(v[acc + b]))
                out.at(r, col) = radd(f, out.at(r, col), RElem<F>::monomial(f, bas[b], v[acc + b]));
        }
        acc += (int)bas.size();
    }
}

}  // namespace detail

// g ∘ f.  Components are computed through slice evaluation (symbolic
// polynomial products never appear), which keeps long ghost chains cheap.
template <class F>
ChainMap<F> compose(const F& f, const ChainMap<F>& first, const ChainMap<F>& then) {
    if (first.tgt.get() != then.src.get()) throw malformed_input("compose: middle complex mismatch");
    ChainMap<F> out;
    out.src = first.src;
    out.tgt = then.tgt;
    out.hom_shift = first.hom_shift + then.hom_shift;
    out.int_shift = first.int_shift + then.int_shift;
    const auto& S = *first.src;
    const auto& T = *then.tgt;
    const auto& ring = *S.ring;
    for (int h = 0; h <= S.length(); ++h) {
        RMat<F> comp(T.rank(h + out.hom_shift), S.rank(h));
        int hm = h + first.hom_shift;
        if (first.tgt->in_range(hm) && T.in_range(h + out.hom_shift)) {
            for (int c = 0; c < S.rank(h); ++c) {
                int bi = S.modules[h].gen_degrees[c] + first.int_shift;
                auto v = detail::column_as_vector(f, ring, first.tgt->modules[hm], first.comps[h],
                                                  c, bi);
                auto g = chainmap_slice(f, then, hm, bi);
                auto w = g.apply(f, v);
                detail::vector_into_column(f, ring, T.modules[h + out.hom_shift], w,
                                           bi + then.int_shift, comp, c);
            }
        }
        out.comps.push_back(std::move(comp));
    }
    // a composite of verified chain maps commutes with the differentials
    out.verified = first.verified && then.verified;
    return out;
}

// mapping cone of a verified degree-0 chain map
template <class F>
FreeComplex<F> cone(const F& f, const ChainMap<F>& m) {
    if (m.hom_shift != 0 || m.int_shift != 0)
        throw malformed_input("cone: only degree-0 chain maps");
    if (!m.verified) throw malformed_input("cone: chain map not verified");
    const auto& S = *m.src;
    const auto& T = *m.tgt;
    FreeComplex<F> c;
    c.ring = T.ring;
    int L = std::max(T.length(), S.length() + 1);
    for (int h = 0; h <= L; ++h) {
        FreeModule mod;
        if (T.in_range(h)) mod = T.modules[h];
        if (S.in_range(h - 1)) {
            for (size_t k = 0; k < S.modules[h - 1].gen_degrees.size(); ++k) {
                mod.gen_degrees.push_back(S.modules[h - 1].gen_degrees[k]);
                if (!S.modules[h - 1].gen_names.empty())
                    mod.gen_names.push_back("s" + S.modules[h - 1].gen_names[k]);
            }
        }
        if (!mod.gen_names.empty() && mod.gen_names.size() != mod.gen_degrees.size()) {
            // mixed named/unnamed inputs: drop names
            mod.gen_names.clear();
        }
        c.modules.push_back(std::move(mod));
    }
    c.diffs.resize(L + 1);
    for (int h = 1; h <= L; ++h) {
        int tr = T.rank(h - 1) + S.rank(h - 2);
        int tc = T.rank(h) + S.rank(h - 1);
        RMat<F> d(tr, tc);
        if (T.in_range(h) && h >= 1 && T.in_range(h - 1))
            for (int r = 0; r < T.rank(h - 1); ++r)
                for (int cc = 0; cc < T.rank(h); ++cc) d.at(r, cc) = T.diffs[h].at(r, cc);
        if (S.in_range(h - 1) && T.in_range(h - 1))
            for (int r = 0; r < T.rank(h - 1); ++r)
                for (int cc = 0; cc < S.rank(h - 1); ++cc)
                    d.at(r, T.rank(h) + cc) = m.comps[h - 1].at(r, cc);
        if (S.in_range(h - 1) && h >= 2 && S.in_range(h - 2))
            for (int r = 0; r < S.rank(h - 2); ++r)
                for (int cc = 0; cc < S.rank(h - 1); ++cc)
                    d.at(T.rank(h - 1) + r, T.rank(h) + cc) =
                        rneg(f, S.diffs[h - 1].at(r, cc));
        c.diffs[h] = std::move(d);
    }
    validate_complex(f, c);
    return c;
}

// H(f) = 0: every cycle of the source maps into the boundaries of the
// target, in all internal degrees the truncation can decide.
template <class F>
bool is_ghost(const F& f, const ChainMap<F>& m) {
    const auto& S = *m.src;
    const auto& T = *m.tgt;
    int D = S.ring->truncation();
    int imax = std::min(D, D - m.int_shift);
    for (int h = 0; h <= S.length(); ++h) {
        int th = h + m.hom_shift;
        for (int i = 0; i <= imax; ++i) {
            if (slice_dim(S, h, i) == 0) continue;
            // nothing to check when the target slice is trivial
            if (!T.in_range(th) || i + m.int_shift < 0 ||
                slice_dim(T, th, i + m.int_shift) == 0)
                continue;
            auto z = kernel_basis(f, diff_slice(f, S, h, i));
            if (z.empty()) continue;
            auto fm = chainmap_slice(f, m, h, i);
            auto bnd = diff_slice(f, T, th + 1, i + m.int_shift);
            for (const auto& zc : z) {
                auto v = fm.apply(f, zc);
                auto r = solve(f, bnd, v);
                if (!r.consistent) return false;
            }
        }
    }
    return true;
}

// rank of the induced map on homology at one bidegree (used by the
// long-exact-sequence checks)
template <class F>
long long induced_rank(const F& f, const ChainMap<F>& m, int h, int i) {
    const auto& S = *m.src;
    auto z = kernel_basis(f, diff_slice(f, S, h, i));
    if (z.empty()) return 0;
    auto fm = chainmap_slice(f, m, h, i);
    auto bnd = diff_slice(f, *m.tgt, h + m.hom_shift + 1, i + m.int_shift);
    // rank of [B | f(Z)] minus rank of B
    MatBuilder<typename F::Elem> b(fm.rows, bnd.cols + (int)z.size());
    for (const auto& e : bnd.entries) b.add(f, e.row, e.col, e.value);
    for (int k = 0; k < (int)z.size(); ++k) {
        auto v = fm.apply(f, z[k]);
        for (int r = 0; r < (int)v.size(); ++r) b.add(f, r, bnd.cols + k, v[r]);
    }
    return rank(f, b.take(f)) - rank(f, bnd);
}

struct Obstruction {
    int hom_degree = -1;
    int src_internal = -1;
    int tgt_internal = -1;
};

template <class F>
struct HomotopyResult {
    bool null_homotopic = false;
    ChainMap<F> homotopy;  // valid iff null_homotopic
    std::optional<Obstruction> obstruction;
};

// Solve f = d∘H + (-1)^t H∘d for H, degree by degree from the bottom.
template <class F>
HomotopyResult<F> null_homotopy(const F& f, const ChainMap<F>& m) {
    const auto& S = *m.src;
    const auto& T = *m.tgt;
    const auto& ring = *S.ring;
    int D = ring.truncation();
    int t = m.total_degree();
    auto sign = (t % 2 == 0) ? f.one() : f.neg(f.one());

    struct Block {
        int offset = 0;
        int dim = 0;
        int tgt_h = 0;
        int tgt_i = 0;
    };
    std::vector<std::vector<Block>> blocks(S.length() + 1);
    int ncols = 0;
    for (int h = 0; h <= S.length(); ++h) {
        blocks[h].resize(S.rank(h));
        for (int g = 0; g < S.rank(h); ++g) {
            int bg = S.modules[h].gen_degrees[g];
            if (bg + m.int_shift > D &&
                (T.in_range(h + m.hom_shift) || T.in_range(h + m.hom_shift + 1)))
                throw truncation_error("null_homotopy: undecidable at D=" + std::to_string(D));
            Block b;
            b.tgt_h = h + m.hom_shift + 1;
            b.tgt_i = bg + m.int_shift;
            b.dim = T.in_range(b.tgt_h) && b.tgt_i >= 0 && b.tgt_i <= D
                        ? slice_dim(T, b.tgt_h, b.tgt_i)
                        : 0;
            b.offset = ncols;
            ncols += b.dim;
            blocks[h][g] = b;
        }
    }

    IncrementalSystem<F> sys(f, ncols);
    HomotopyResult<F> out;

    for (int h = 0; h <= S.length(); ++h) {
        // stages within a homological degree: internal degrees ascending
        std::map<int, std::vector<int>> by_degree;
        for (int g = 0; g < S.rank(h); ++g) by_degree[S.modules[h].gen_degrees[g]].push_back(g);
        for (const auto& [ideg, gens] : by_degree) {
            int ti = ideg + m.int_shift;
            int th = h + m.hom_shift;
            int eq_rows = T.in_range(th) && ti >= 0 && ti <= D ? slice_dim(T, th, ti) : 0;
            for (int g : gens) {
                if (eq_rows == 0) continue;
                // rows of the equation block for generator g
                std::vector<std::vector<std::pair<int, typename F::Elem>>> rows(eq_rows);
                // d_T ∘ H_h(g)
                if (blocks[h][g].dim > 0) {
                    auto dT = diff_slice(f, T, th + 1, ti);
                    for (const auto& e : dT.entries)
                        rows[e.row].push_back({blocks[h][g].offset + e.col, e.value});
                }
                // (-1)^t H_{h-1}(d_S g)
                if (h >= 1) {
                    for (int r = 0; r < S.rank(h - 1); ++r) {
                        const auto& p = S.diffs[h].at(r, g);
                        if (p.is_zero() || blocks[h - 1][r].dim == 0) continue;
                        auto mp = mult_slice(f, ring, T.modules[th], p, blocks[h - 1][r].tgt_i);
                        for (const auto& e : mp.entries)
                            rows[e.row].push_back(
                                {blocks[h - 1][r].offset + e.col, f.mul(sign, e.value)});
                    }
                }
                // right-hand side: f_h(g)
                std::vector<typename F::Elem> rhs(eq_rows, f.zero());
                if (T.in_range(th))
                    rhs = detail::column_as_vector(f, ring, T.modules[th], m.comps[h], g, ti);
                for (int r = 0; r < eq_rows; ++r) {
                    auto& row = rows[r];
                    std::sort(row.begin(), row.end(),
                              [](const auto& a, const auto& b) { return a.first < b.first; });
                    // merge duplicate columns
                    std::vector<std::pair<int, typename F::Elem>> merged;
                    for (auto& [cidx, v] : row) {
                        if (!merged.empty() && merged.back().first == cidx)
                            merged.back().second = f.add(merged.back().second, v);
                        else
                            merged.push_back({cidx, v});
                    }
                    std::vector<std::pair<int, typename F::Elem>> clean;
                    for (auto& e : merged)
                        if (!f.is_zero(e.second)) clean.push_back(std::move(e));
                    if (!sys.add(std::move(clean), rhs[r])) {
                        out.obstruction = Obstruction{h, ideg, ti};
                        return out;
                    }
                }
            }
        }
    }

    // assemble the homotopy from the solution
    auto x = sys.solution();
    ChainMap<F> H;
    H.src = m.src;
    H.tgt = m.tgt;
    H.hom_shift = m.hom_shift + 1;
    H.int_shift = m.int_shift;
    for (int h = 0; h <= S.length(); ++h) {
        RMat<F> comp(T.rank(h + H.hom_shift), S.rank(h));
        for (int g = 0; g < S.rank(h); ++g) {
            const auto& b = blocks[h][g];
            if (b.dim == 0) continue;
            std::vector<typename F::Elem> v(x.begin() + b.offset, x.begin() + b.offset + b.dim);
            detail::vector_into_column(f, ring, T.modules[b.tgt_h], v, b.tgt_i, comp, g);
        }
        H.comps.push_back(std::move(comp));
    }
    out.null_homotopic = true;
    out.homotopy = std::move(H);
    return out;
}

// symbolic check of f = d∘H + (-1)^t H∘d (used on certificates)
template <class F>
bool verify_homotopy(const F& f, const ChainMap<F>& m, const ChainMap<F>& H) {
    const auto& S = *m.src;
    const auto& T = *m.tgt;
    int t = m.total_degree();
    auto sign = (t % 2 == 0) ? f.one() : f.neg(f.one());
    for (int h = 0; h <= S.length(); ++h) {
        RMat<F> acc(T.rank(h + m.hom_shift), S.rank(h));
        int th = h + m.hom_shift;
        if (T.in_range(th + 1) && T.in_range(th))
            acc = rmat_mul(f, *S.ring, T.diffs[th + 1], H.comps[h]);
        if (h >= 1) {
            auto hd = rmat_mul(f, *S.ring, H.comps[h - 1], S.diffs[h]);
            acc = rmat_sub(f, acc, rmat_scale(f, f.neg(sign), hd));
        }
        if (!rmat_sub(f, acc, m.comps[h]).is_zero()) return false;
    }
    return true;
}

// ------------------------------------------------------ ghost sampling

// The chain maps src -> tgt of a fixed bidegree form a linear space; the
// ghosts are the subspace killing homology.  A deterministic kernel
// basis of the combined constraints is computed once, and trials draw
// random coordinates in it.
template <class F>
struct GhostSpace {
    ComplexPtr<F> src, tgt;
    int hom_shift = 0, int_shift = 0;
    struct Block {
        int h, g, offset, dim, tgt_h, tgt_i;
    };
    std::vector<Block> blocks;
    int ncols = 0;
    std::vector<std::vector<typename F::Elem>> basis;
};

template <class F>
GhostSpace<F> ghost_space(const F& f, ComplexPtr<F> src, ComplexPtr<F> tgt, int hom_shift,
                          int int_shift) {
    const auto& S = *src;
    const auto& T = *tgt;
    const auto& ring = *S.ring;
    int D = ring.truncation();
    GhostSpace<F> gs;
    gs.src = src;
    gs.tgt = tgt;
    gs.hom_shift = hom_shift;
    gs.int_shift = int_shift;
    for (int h = 0; h <= S.length(); ++h)
        for (int g = 0; g < S.rank(h); ++g) {
            int bg = S.modules[h].gen_degrees[g];
            if (bg + int_shift > D && (T.in_range(h + hom_shift) || T.in_range(h + hom_shift - 1)))
                throw truncation_error("ghost_space: undecidable at D=" + std::to_string(D));
            typename GhostSpace<F>::Block b{h, g, gs.ncols, 0, h + hom_shift, bg + int_shift};
            b.dim = T.in_range(b.tgt_h) && b.tgt_i >= 0 && b.tgt_i <= D
                        ? slice_dim(T, b.tgt_h, b.tgt_i)
                        : 0;
            gs.ncols += b.dim;
            gs.blocks.push_back(b);
        }
    auto block_of = [&](int h, int g) -> const typename GhostSpace<F>::Block& {
        for (const auto& b : gs.blocks)
            if (b.h == h && b.g == g) return b;
        throw error("ghost_space: block lookup");
    };

    int t = int_shift - hom_shift;
    auto sign = (t % 2 == 0) ? f.one() : f.neg(f.one());
    MatBuilder<typename F::Elem> cons(0, gs.ncols);
    std::vector<Triplet<typename F::Elem>> tr;
    int nrows = 0;

    // chain-map constraints: d_T F(g) - (-1)^t F(d_S g) = 0
    for (int h = 0; h <= S.length(); ++h)
        for (int g = 0; g < S.rank(h); ++g) {
            int bg = S.modules[h].gen_degrees[g];
            int th = h + hom_shift - 1;
            int ti = bg + int_shift;
            int rows = T.in_range(th) && ti >= 0 && ti <= D ? slice_dim(T, th, ti) : 0;
            if (rows == 0) continue;
            const auto& bF = block_of(h, g);
            if (bF.dim > 0) {
                auto dT = diff_slice(f, T, th + 1, ti);
                for (const auto& e : dT.entries)
                    tr.push_back({nrows + e.row, bF.offset + e.col, e.value});
            }
            if (h >= 1)
                for (int r = 0; r < S.rank(h - 1); ++r) {
                    const auto& p = S.diffs[h].at(r, g);
                    const auto& bR = block_of(h - 1, r);
                    if (p.is_zero() || bR.dim == 0) continue;
                    // F(g_r) lives at homological degree h-1+hom_shift = th
                    auto mp = mult_slice(f, ring, T.modules[th], p, bR.tgt_i);
                    for (const auto& e : mp.entries)
                        tr.push_back({nrows + e.row, bR.offset + e.col,
                                      f.neg(f.mul(sign, e.value))});
                }
            nrows += rows;
        }

    // ghost constraints: the class of F(z) vanishes for every cycle z
    for (int h = 0; h <= S.length(); ++h) {
        // cycles by internal degree
        for (int i = 0; i <= std::min(D, D - int_shift); ++i) {
            if (slice_dim(S, h, i) == 0) continue;
            auto z = kernel_basis(f, diff_slice(f, S, h, i));
            if (z.empty()) continue;
            int th = h + hom_shift;
            int ti = i + int_shift;
            int rows = T.in_range(th) && ti >= 0 && ti <= D ? slice_dim(T, th, ti) : 0;
            if (rows == 0) continue;
            auto bnd = diff_slice(f, T, th + 1, ti);
            auto annih = kernel_basis(f, bnd.transposed());  // left kernel rows
            if (annih.empty()) continue;
            auto offs = slice_offsets(S, h, i);
            for (const auto& zc : z) {
                // F(z) = sum over (g, mu) coords of z: mult-by-mu applied to F(g)
                // constraint rows: annih_k · F(z) = 0
                // assemble F(z) as a sparse linear form in the unknowns first
                std::vector<std::vector<std::pair<int, typename F::Elem>>> lin(rows);
                for (int g = 0; g < S.rank(h); ++g) {
                    int md = i - S.modules[h].gen_degrees[g];
                    if (md < 0) continue;
                    const auto& bas = ring.basis(md);
                    const auto& bF = block_of(h, g);
                    if (bF.dim == 0) continue;
                    for (int b = 0; b < (int)bas.size(); ++b) {
                        const auto& coeff = zc[offs[g] + b];
                        if (f.is_zero(coeff)) continue;
                        auto mm = mult_slice(f, ring, T.modules[th],
                                             RElem<F>::monomial(f, bas[b], f.one()), bF.tgt_i);
                        for (const auto& e : mm.entries)
                            lin[e.row].push_back({bF.offset + e.col, f.mul(coeff, e.value)});
                    }
                }
                for (const auto& a : annih) {
                    std::map<int, typename F::Elem> row;
                    for (int r = 0; r < rows; ++r) {
                        if (f.is_zero(a[r])) continue;
                        for (const auto& [cidx, v] : lin[r]) {
                            auto it = row.find(cidx);
                            if (it == row.end())
                                row[cidx] = f.mul(a[r], v);
                            else
                                it->second = f.add(it->second, f.mul(a[r], v));
                        }
                    }
                    for (const auto& [cidx, v] : row) tr.push_back({nrows, cidx, v});
                    ++nrows;
                }
            }
        }
    }

    SparseMat<typename F::Elem> cmat{nrows, gs.ncols, std::move(tr)};
    cmat.sort_entries();
    // squash duplicates through a builder pass
    MatBuilder<typename F::Elem> squash(nrows, gs.ncols);
    for (const auto& e : cmat.entries) squash.add(f, e.row, e.col, e.value);
    gs.basis = kernel_basis(f, squash.take(f));
    return gs;
}

template <class F>
ChainMap<F> sample_ghost(const F& f, const GhostSpace<F>& gs, Rng& rng) {
    std::vector<typename F::Elem> x(gs.ncols, f.zero());
    for (const auto& v : gs.basis) {
        auto c = f.from_int(rng.range(-9, 9));
        if (f.is_zero(c)) continue;
        for (int k = 0; k < gs.ncols; ++k) x[k] = f.add(x[k], f.mul(c, v[k]));
    }
    ChainMap<F> m;
    m.src = gs.src;
    m.tgt = gs.tgt;
    m.hom_shift = gs.hom_shift;
    m.int_shift = gs.int_shift;
    const auto& S = *gs.src;
    for (int h = 0; h <= S.length(); ++h)
        m.comps.emplace_back(gs.tgt->rank(h + gs.hom_shift), S.rank(h));
    for (const auto& b : gs.blocks) {
        if (b.dim == 0) continue;
        std::vector<typename F::Elem> v(x.begin() + b.offset, x.begin() + b.offset + b.dim);
        detail::vector_into_column(f, *S.ring, gs.tgt->modules[b.tgt_h], v, b.tgt_i, m.comps[b.h],
                                   b.g);
    }
    m.verified = true;  // membership in the solved subspace
    return m;
}

}  // namespace ghl
