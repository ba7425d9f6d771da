#pragma once

// Chain complexes of free graded modules with symbolic (ring-element)
// differentials, lowered on demand to exact matrices per internal degree.
//
// Grading and sign conventions, fixed once for the whole engine:
//   * differentials lower homological degree h and preserve internal
//     degree i;
//   * a map of total degree t satisfies  d∘f = (-1)^t f∘d,  where
//     t = (internal shift) - (homological shift);
//   * a null homotopy H of f has one more homological shift and obeys
//     f = d∘H + (-1)^t H∘d.

#include <map>
#include <memory>
#include <vector>

#include "ghl/linalg.hpp"
#include "ghl/module.hpp"
#include "ghl/poly.hpp"

namespace ghl {

struct FreeModule {
    std::vector<int> gen_degrees;
    std::vector<std::string> gen_names;  // optional, same length or empty

    int rank() const { return (int)gen_degrees.size(); }
};

template <class F>
struct FreeComplex {
    AlgebraPtr ring;
    std::vector<FreeModule> modules;  // homological degrees 0..length
    std::vector<RMat<F>> diffs;       // diffs[h]: modules[h] -> modules[h-1]; diffs[0] empty

    int length() const { return (int)modules.size() - 1; }
    const FreeModule& module(int h) const { return modules[h]; }
    bool in_range(int h) const { return h >= 0 && h <= length(); }
    int rank(int h) const { return in_range(h) ? modules[h].rank() : 0; }
};

template <class F>
using ComplexPtr = std::shared_ptr<const FreeComplex<F>>;

// ---------------------------------------------------------------- slices

// basis of the degree-i piece of a free module: generators in order,
// each contributing the monomial basis of R in degree i - (gen degree)
template <class F>
int slice_dim(const FreeComplex<F>& c, int h, int i) {
    if (!c.in_range(h)) return 0;
    long long n = 0;
    for (int d : c.modules[h].gen_degrees) {
        int md = i - d;
        if (md >= 0 && md <= c.ring->truncation()) n += c.ring->dim(md);
    }
    return (int)n;
}

template <class F>
std::vector<int> slice_offsets(const FreeComplex<F>& c, int h, int i) {
    std::vector<int> off;
    int acc = 0;
    for (int d : c.modules[h].gen_degrees) {
        off.push_back(acc);
        int md = i - d;
        if (md >= 0 && md <= c.ring->truncation()) acc += (int)c.ring->dim(md);
    }
    off.push_back(acc);
    return off;
}

// matrix of a symbolic map between free modules on the degree-i slices;
// `shift` is the internal-degree shift of the map (0 for differentials)
template <class F>
SparseMat<typename F::Elem> rmat_slice(const F& f, const FreeGCAlgebra& ring,
                                       const FreeModule& tgt, const FreeModule& src,
                                       const RMat<F>& m, int i, int shift = 0) {
    auto src_off = [&] {
        std::vector<int> off;
        int acc = 0;
        for (int d : src.gen_degrees) {
            off.push_back(acc);
            int md = i - d;
            if (md >= 0 && md <= ring.truncation()) acc += (int)ring.dim(md);
        }
        off.push_back(acc);
        return off;
    }();
    auto tgt_off = [&] {
        std::vector<int> off;
        int acc = 0;
        for (int d : tgt.gen_degrees) {
            off.push_back(acc);
            int md = i + shift - d;
            if (md >= 0 && md <= ring.truncation()) acc += (int)ring.dim(md);
        }
        off.push_back(acc);
        return off;
    }();
    MatBuilder<typename F::Elem> out(tgt_off.back(), src_off.back());
    Monomial prod;
    for (int c = 0; c < src.rank(); ++c) {
        int md = i - src.gen_degrees[c];
        if (md < 0 || md > ring.truncation()) continue;
        const auto& bas = ring.basis(md);
        for (int r = 0; r < tgt.rank(); ++r) {
            const RElem<F>& p = m.at(r, c);
            if (p.is_zero()) continue;
            for (const auto& [mon, coeff] : p.terms) {
                for (int b = 0; b < (int)bas.size(); ++b) {
                    int sg = ring.mul(bas[b], mon, prod);
                    if (sg == 0) continue;
                    auto v = sg < 0 ? f.neg(coeff) : coeff;
                    out.add(f, tgt_off[r] + ring.index_of(prod), src_off[c] + b, v);
                }
            }
        }
    }
    return out.take(f);
}

template <class F>
SparseMat<typename F::Elem> diff_slice(const F& f, const FreeComplex<F>& c, int h, int i) {
    if (h < 1 || h > c.length())
        return SparseMat<typename F::Elem>::zero(slice_dim(c, h - 1, i), slice_dim(c, h, i));
    return rmat_slice(f, *c.ring, c.modules[h - 1], c.modules[h], c.diffs[h], i);
}

// left multiplication by a homogeneous ring element on a free module,
// degree-i slice -> degree-(i+deg p) slice
template <class F>
SparseMat<typename F::Elem> mult_slice(const F& f, const FreeGCAlgebra& ring, const FreeModule& mod,
                                       const RElem<F>& p, int i) {
    int shift = p.is_zero() ? 0 : p.degree(ring);
    auto offs = [&](int deg) {
        std::vector<int> off;
        int acc = 0;
        for (int d : mod.gen_degrees) {
            off.push_back(acc);
            int md = deg - d;
            if (md >= 0 && md <= ring.truncation()) acc += (int)ring.dim(md);
        }
        off.push_back(acc);
        return off;
    };
    auto src_off = offs(i), tgt_off = offs(i + shift);
    MatBuilder<typename F::Elem> out(tgt_off.back(), src_off.back());
    Monomial prod;
    for (int k = 0; k < mod.rank(); ++k) {
        int md = i - mod.gen_degrees[k];
        if (md < 0 || md > ring.truncation()) continue;
        const auto& bas = ring.basis(md);
        for (int b = 0; b < (int)bas.size(); ++b)
            for (const auto& [mon, coeff] : p.terms) {
                int sg = ring.mul(mon, bas[b], prod);
                if (sg == 0) continue;
                out.add(f, tgt_off[k] + ring.index_of(prod), src_off[k] + b,
                        sg < 0 ? f.neg(coeff) : coeff);
            }
    }
    return out.take(f);
}

// -------------------------------------------------------------- checking

// entries of every differential must be homogeneous of the degree the
// generator degrees dictate, and d∘d must vanish identically
template <class F>
void validate_complex(const F& f, const FreeComplex<F>& c) {
    for (int h = 1; h <= c.length(); ++h) {
        const auto& m = c.diffs[h];
        if (m.rows != c.rank(h - 1) || m.cols != c.rank(h))
            throw malformed_input("differential shape mismatch at h=" + std::to_string(h));
        for (int r = 0; r < m.rows; ++r)
            for (int cc = 0; cc < m.cols; ++cc) {
                const auto& p = m.at(r, cc);
                if (p.is_zero()) continue;
                int want = c.modules[h].gen_degrees[cc] - c.modules[h - 1].gen_degrees[r];
                if (p.degree(*c.ring) != want)
                    throw malformed_input("inhomogeneous differential entry");
            }
    }
    for (int h = 2; h <= c.length(); ++h)
        if (!rmat_mul(f, *c.ring, c.diffs[h - 1], c.diffs[h]).is_zero())
            throw malformed_input("d∘d != 0 at h=" + std::to_string(h));
}

// ------------------------------------------------------- plain complexes

// complex of plain graded vector spaces (used for resolutions tensored
// against a module, where freeness is lost)
template <class F>
struct VectComplex {
    int D = 0;
    std::vector<std::vector<int>> dims;                       // [h][i]
    std::vector<std::vector<SparseMat<typename F::Elem>>> diffs;  // [h][i], h >= 1

    int length() const { return (int)dims.size() - 1; }
    int dim(int h, int i) const {
        return (h >= 0 && h < (int)dims.size() && i >= 0 && i <= D) ? dims[h][i] : 0;
    }
    const SparseMat<typename F::Elem>& diff(int h, int i) const { return diffs[h][i]; }
};

template <class F>
VectComplex<F> to_vect_complex(const F& f, const FreeComplex<F>& c) {
    VectComplex<F> v;
    v.D = c.ring->truncation();
    v.dims.assign(c.length() + 1, std::vector<int>(v.D + 1, 0));
    for (int h = 0; h <= c.length(); ++h)
        for (int i = 0; i <= v.D; ++i) v.dims[h][i] = slice_dim(c, h, i);
    v.diffs.resize(c.length() + 1);
    for (int h = 1; h <= c.length(); ++h) {
        v.diffs[h].resize(v.D + 1);
        for (int i = 0; i <= v.D; ++i) v.diffs[h][i] = diff_slice(f, c, h, i);
    }
    return v;
}

// P ⊗_R M for a free complex P and a graded module M over the same ring
template <class F>
VectComplex<F> tensor_with_module(const F& f, const FreeComplex<F>& c, const GradedModule<F>& m) {
    if (c.ring.get() != m.ring.get()) throw field_mismatch("tensor_with_module: ring mismatch");
    VectComplex<F> v;
    v.D = m.D;
    int L = c.length();
    v.dims.assign(L + 1, std::vector<int>(v.D + 1, 0));
    auto block_dims = [&](int h, int i) {
        std::vector<int> off;
        int acc = 0;
        for (int d : c.modules[h].gen_degrees) {
            off.push_back(acc);
            if (i - d >= 0) acc += m.dim(i - d);
        }
        off.push_back(acc);
        return off;
    };
    for (int h = 0; h <= L; ++h)
        for (int i = 0; i <= v.D; ++i) v.dims[h][i] = block_dims(h, i).back();
    v.diffs.resize(L + 1);
    for (int h = 1; h <= L; ++h) {
        v.diffs[h].resize(v.D + 1);
        for (int i = 0; i <= v.D; ++i) {
            auto src_off = block_dims(h, i);
            auto tgt_off = block_dims(h - 1, i);
            MatBuilder<typename F::Elem> b(tgt_off.back(), src_off.back());
            for (int cc = 0; cc < c.rank(h); ++cc) {
                int sd = i - c.modules[h].gen_degrees[cc];
                if (sd < 0 || m.dim(sd) == 0) continue;
                for (int r = 0; r < c.rank(h - 1); ++r) {
                    const auto& p = c.diffs[h].at(r, cc);
                    if (p.is_zero()) continue;
                    int pd = p.degree(*c.ring);
                    auto a = act_element(f, m, p, sd, pd);
                    for (const auto& e : a.entries)
                        b.add(f, tgt_off[r] + e.row, src_off[cc] + e.col, e.value);
                }
            }
            v.diffs[h][i] = b.take(f);
        }
    }
    return v;
}

// ------------------------------------------------------------- homology

struct BigradedDims {
    // by homological degree, then internal degree
    std::vector<std::map<int, long long>> hi;

    long long at(int h, int i) const {
        if (h < 0 || h >= (int)hi.size()) return 0;
        auto it = hi[h].find(i);
        return it == hi[h].end() ? 0 : it->second;
    }
    long long total() const {
        long long t = 0;
        for (const auto& m : hi)
            for (auto [_, v] : m) t += v;
        return t;
    }
    // total degree = internal - homological
    ShiftedDims total_degree_dims() const {
        ShiftedDims s;
        for (int h = 0; h < (int)hi.size(); ++h)
            for (auto [i, v] : hi[h])
                if (v) s.bump(i - h, v);
        return s;
    }
};

template <class F>
BigradedDims homology(const F& f, const VectComplex<F>& v) {
    BigradedDims out;
    int L = v.length();
    out.hi.resize(L + 1);
    std::vector<std::vector<int>> rk(L + 2, std::vector<int>(v.D + 1, 0));
    for (int h = 1; h <= L; ++h)
        for (int i = 0; i <= v.D; ++i) rk[h][i] = rank(f, v.diff(h, i));
    for (int h = 0; h <= L; ++h)
        for (int i = 0; i <= v.D; ++i) {
            long long z = v.dim(h, i) - rk[h][i];        // cycles
            long long b = h + 1 <= L ? rk[h + 1][i] : 0;  // boundaries
            long long dim = z - b;
            if (dim) out.hi[h][i] = dim;
        }
    return out;
}

template <class F>
BigradedDims homology(const F& f, const FreeComplex<F>& c) {
    return homology(f, to_vect_complex(f, c));
}

// single bigraded homology dimension, with an explicit refusal when the
// truncation cannot decide the request
template <class F>
long long homology_dim_at(const F& f, const FreeComplex<F>& c, int h, int i) {
    int D = c.ring->truncation();
    if (i < 0 || i > D)
        throw truncation_error("homology undecidable at D=" + std::to_string(D) +
                               " for internal degree " + std::to_string(i));
    long long z = slice_dim(c, h, i) - rank(f, diff_slice(f, c, h, i));
    long long b = rank(f, diff_slice(f, c, h + 1, i));
    return z - b;
}

// Euler characteristic in each internal degree: alternating sums of chain
// and homology dimensions agree.
template <class F>
bool euler_characteristic_ok(const F& f, const VectComplex<F>& v) {
    auto h = homology(f, v);
    for (int i = 0; i <= v.D; ++i) {
        long long chain = 0, hom = 0;
        for (int k = 0; k <= v.length(); ++k) {
            chain += (k % 2 ? -1 : 1) * (long long)v.dim(k, i);
            hom += (k % 2 ? -1 : 1) * h.at(k, i);
        }
        if (chain != hom) return false;
    }
    return true;
}

}  // namespace ghl
