#pragma once

// Minimal free resolutions of graded modules, built degreewise: take the
// minimal generators, map a free module onto them, compute the kernel as
// a new graded module, repeat.  Generator selection follows the fixed
// basis enumeration, so the resolution is reproducible.

#include <optional>
#include <vector>

#include "ghl/chainmap.hpp"
#include "ghl/complex.hpp"
#include "ghl/module.hpp"

namespace ghl {

template <class F>
struct FreeResolution {
    ComplexPtr<F> complex;
    bool minimal = false;
    int length = 0;    // resolution length, or the cap when capped
    bool capped = false;
    // augmentation: images of the degree-0 generators in the module
    std::vector<std::vector<typename F::Elem>> augmentation;
};

namespace detail {

// evaluation matrix of a free module onto module elements at one degree:
// generator k (degree d_k, value column w_k) contributes the columns
// mu * w_k over the monomial basis in degree i - d_k
template <class F>
SparseMat<typename F::Elem> eval_slice(const F& f, const GradedModule<F>& m,
                                       const std::vector<int>& gen_degrees,
                                       const std::vector<std::vector<typename F::Elem>>& gen_values,
                                       int i) {
    std::vector<std::vector<typename F::Elem>> cols;
    for (size_t k = 0; k < gen_degrees.size(); ++k) {
        int md = i - gen_degrees[k];
        if (md < 0 || md > m.D) continue;
        const auto& bas = m.ring->basis(md);
        for (const auto& mu : bas) {
            auto a = act_monomial(f, m, mu, gen_degrees[k]);
            std::vector<typename F::Elem> v(m.dim(i), f.zero());
            for (const auto& e : a.entries) {
                if (!f.is_zero(gen_values[k][e.col]))
                    v[e.row] = f.add(v[e.row], f.mul(e.value, gen_values[k][e.col]));
            }
            cols.push_back(std::move(v));
        }
    }
    return sp_from_columns(f, m.dim(i), cols);
}

}  // namespace detail

// Minimal free resolution by iterated kernel computation.  Stops when the
// kernel vanishes in all degrees up to D, or at the cap.
template <class F>
FreeResolution<F> minimal_resolution(const F& f, const GradedModule<F>& m, int cap) {
    const auto& ring = *m.ring;
    int D = m.D;
    FreeResolution<F> res;

    auto cx = std::make_shared<FreeComplex<F>>();
    cx->ring = m.ring;

    // current syzygy module, represented inside the previous free module:
    // dims per degree plus a basis matrix (columns = elements in the slice
    // coordinates of the previous free module)
    GradedModule<F> cur = m;
    // basis of `cur` inside the previous free module's slices (empty at step 0)
    std::vector<SparseMat<typename F::Elem>> embed;

    std::vector<int> prev_gen_degrees;

    for (int h = 0;; ++h) {
        if (h > cap) {
            res.capped = true;
            res.length = cap;
            break;
        }
        auto gens = min_generators(f, cur);
        if (gens.empty()) {
            res.length = h - 1;
            break;
        }
        FreeModule fm;
        std::vector<std::vector<typename F::Elem>> gen_values;
        for (const auto& g : gens) {
            fm.gen_degrees.push_back(g.degree);
            std::vector<typename F::Elem> v(cur.dim(g.degree), f.zero());
            v[g.index] = f.one();
            gen_values.push_back(std::move(v));
        }
        // differential entries: generator values expressed in the previous
        // free module (for h = 0 this is the augmentation instead)
        if (h == 0) {
            res.augmentation = gen_values;
        } else {
            RMat<F> d((int)prev_gen_degrees.size(), fm.rank());
            FreeModule prev_fm;
            prev_fm.gen_degrees = prev_gen_degrees;
            for (size_t k = 0; k < gens.size(); ++k) {
                const auto& emb = embed[gens[k].degree];
                auto col = sp_column(f, emb, gens[k].index);
                detail::vector_into_column(f, ring, prev_fm, col, gens[k].degree, d, (int)k);
            }
            cx->diffs.resize(h + 1);
            cx->diffs[h] = std::move(d);
        }
        cx->modules.push_back(fm);

        // kernel of the evaluation map, degree by degree
        GradedModule<F> ker;
        ker.ring = m.ring;
        ker.D = D;
        ker.dims.assign(D + 1, 0);
        std::vector<SparseMat<typename F::Elem>> kb(D + 1);
        bool any = false;
        for (int i = 0; i <= D; ++i) {
            auto ev = detail::eval_slice(f, cur, fm.gen_degrees, gen_values, i);
            auto kv = kernel_basis(f, ev);
            ker.dims[i] = (int)kv.size();
            kb[i] = sp_from_columns(f, ev.cols, kv);
            if (!kv.empty()) any = true;
        }
        if (!any) {
            res.length = h;
            break;
        }
        // actions on the kernel: multiply inside the free module, then
        // solve back into kernel coordinates
        detail::allocate_actions(ker);
        FreeModule cur_fm;
        cur_fm.gen_degrees = fm.gen_degrees;
        const auto& ring_gens = ring.generators();
        for (size_t g = 0; g < ring_gens.size(); ++g) {
            int e = ring_gens[g].degree;
            for (int i = 0; i + e <= D; ++i) {
                if (ker.dims[i] == 0 || ker.dims[i + e] == 0) continue;
                auto mm = mult_slice(f, ring, cur_fm,
                                     RElem<F>::monomial(f, ring.generator_monomial((int)g), f.one()),
                                     i);
                auto moved = sp_mul(f, mm, kb[i]);
                // express columns of `moved` in the kernel basis at i+e
                MatBuilder<typename F::Elem> act(ker.dims[i + e], ker.dims[i]);
                for (int c = 0; c < moved.cols; ++c) {
                    auto r = solve(f, kb[i + e], sp_column(f, moved, c));
                    if (!r.consistent) throw error("kernel not closed under the action (internal)");
                    for (int rr = 0; rr < (int)r.particular.size(); ++rr)
                        act.add(f, rr, c, r.particular[rr]);
                }
                ker.actions[g][i] = act.take(f);
            }
        }
        prev_gen_degrees = fm.gen_degrees;
        embed = std::move(kb);
        cur = std::move(ker);
    }

    if (res.length < 0) res.length = 0;  // zero module
    cx->diffs.resize(cx->modules.size());
    validate_complex(f, *cx);
    res.complex = cx;
    // minimality: every differential entry lies in the positive-degree part
    res.minimal = true;
    for (int h = 1; h <= cx->length(); ++h)
        for (const auto& p : cx->diffs[h].a)
            if (!p.is_zero() && p.degree(ring) == 0) res.minimal = false;
    return res;
}

struct ProjectiveDimension {
    int value = 0;
    bool lower_bound_only = false;  // true when the cap was hit: pd >= value
};

template <class F>
ProjectiveDimension projective_dimension(const F& f, const GradedModule<F>& m, int cap) {
    auto res = minimal_resolution(f, m, cap);
    return {res.length, res.capped};
}

}  // namespace ghl
