#pragma once

// Elements of a free graded-commutative algebra (sparse monomial
// combinations) and small matrices of them.  Complex differentials and
// chain maps are stored in this symbolic form; degreewise matrices over
// the field are expanded from it on demand.

#include <algorithm>
#include <string>
#include <vector>

#include "ghl/algebra.hpp"
#include "ghl/field.hpp"

namespace ghl {

template <class F>
struct RElem {
    using El = typename F::Elem;
    // sorted by exponent vector (plain lexicographic ascending), no zeros
    std::vector<std::pair<Monomial, El>> terms;

    bool is_zero() const { return terms.empty(); }

    static RElem zero() { return {}; }

    static RElem monomial(const F& f, const Monomial& m, const El& c) {
        RElem r;
        if (!f.is_zero(c)) r.terms.push_back({m, c});
        return r;
    }

    void normalize(const F& f) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first.e < b.first.e; });
        std::vector<std::pair<Monomial, El>> out;
        for (auto& t : terms) {
            if (!out.empty() && out.back().first == t.first)
                out.back().second = f.add(out.back().second, t.second);
            else
                out.push_back(std::move(t));
        }
        terms.clear();
        for (auto& t : out)
            if (!f.is_zero(t.second)) terms.push_back(std::move(t));
    }

    // degree of a homogeneous element (throws on mixed degrees)
    int degree(const FreeGCAlgebra& ring) const {
        if (terms.empty()) return 0;
        int d = ring.degree(terms[0].first);
        for (const auto& t : terms)
            if (ring.degree(t.first) != d) throw error("inhomogeneous ring element");
        return d;
    }

    std::string str(const F& f, const FreeGCAlgebra& ring) const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms) {
            if (!s.empty()) s += " + ";
            s += f.to_string(c) + "*" + ring.monomial_str(m);
        }
        return s;
    }
};

template <class F>
RElem<F> radd(const F& f, const RElem<F>& a, const RElem<F>& b) {
    RElem<F> r;
    r.terms = a.terms;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    r.normalize(f);
    return r;
}

template <class F>
RElem<F> rneg(const F& f, const RElem<F>& a) {
    RElem<F> r = a;
    for (auto& t : r.terms) t.second = f.neg(t.second);
    return r;
}

template <class F>
RElem<F> rsub(const F& f, const RElem<F>& a, const RElem<F>& b) {
    return radd(f, a, rneg(f, b));
}

template <class F>
RElem<F> rscale(const F& f, const typename F::Elem& c, const RElem<F>& a) {
    RElem<F> r;
    if (f.is_zero(c)) return r;
    r = a;
    for (auto& t : r.terms) t.second = f.mul(t.second, c);
    return r;
}

template <class F>
RElem<F> rmul(const F& f, const FreeGCAlgebra& ring, const RElem<F>& a, const RElem<F>& b) {
    RElem<F> r;
    Monomial prod;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            int s = ring.mul(ma, mb, prod);
            if (s == 0) continue;
            auto c = f.mul(ca, cb);
            if (s < 0) c = f.neg(c);
            r.terms.push_back({prod, c});
        }
    r.normalize(f);
    return r;
}

template <class F>
RElem<F> rhom(const F& f, const AlgebraHom& h, const RElem<F>& a) {
    RElem<F> r;
    Monomial img;
    for (const auto& [m, c] : a.terms) {
        int s = h.apply(m, img);
        if (s == 0) continue;
        r.terms.push_back({img, s < 0 ? f.neg(c) : c});
    }
    r.normalize(f);
    return r;
}

// dense (small) matrix of ring elements, row-major
template <class F>
struct RMat {
    int rows = 0, cols = 0;
    std::vector<RElem<F>> a;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}

    RElem<F>& at(int r, int c) { return a[size_t(r) * cols + c]; }
    const RElem<F>& at(int r, int c) const { return a[size_t(r) * cols + c]; }

    bool is_zero() const {
        return std::all_of(a.begin(), a.end(), [](const RElem<F>& e) { return e.is_zero(); });
    }
};

template <class F>
RMat<F> rmat_mul(const F& f, const FreeGCAlgebra& ring, const RMat<F>& x, const RMat<F>& y) {
    if (x.cols != y.rows) throw malformed_input("RMat product: shape mismatch");
    RMat<F> z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k).is_zero()) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.at(k, j).is_zero()) continue;
                z.at(i, j) = radd(f, z.at(i, j), rmul(f, ring, x.at(i, k), y.at(k, j)));
            }
        }
    return z;
}

template <class F>
RMat<F> rmat_scale(const F& f, const typename F::Elem& c, const RMat<F>& x) {
    RMat<F> z(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) z.a[i] = rscale(f, c, x.a[i]);
    return z;
}

template <class F>
RMat<F> rmat_sub(const F& f, const RMat<F>& x, const RMat<F>& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw malformed_input("RMat sub: shape mismatch");
    RMat<F> z(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i) z.a[i] = rsub(f, x.a[i], y.a[i]);
    return z;
}

}  // namespace ghl
