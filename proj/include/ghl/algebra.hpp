#pragma once

// Free graded-commutative algebras on weighted generators: polynomial on
// even generators, exterior on odd ones.  In characteristic 2 the odd
// generators keep their square-free monomial basis (the module of a
// 2-simple system of generators); products of two odd classes are not
// part of the modeled fragment there and are rejected.
//
// Monomial bases per degree are enumerated once, eagerly, up to the
// truncation degree, in a fixed deglex order (within a degree, exponent
// vectors decrease lexicographically).  All downstream determinism
// hangs on this enumeration being stable.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "ghl/field.hpp"
#include "ghl/series.hpp"

namespace ghl {

struct Monomial {
    std::vector<uint16_t> e;

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](uint16_t x) { return x == 0; });
    }
};

struct Generator {
    std::string name;
    int degree = 0;
};

class FreeGCAlgebra {
  public:
    FreeGCAlgebra(FieldSpec field, std::vector<Generator> gens, int truncation)
        : field_(field), gens_(std::move(gens)), D_(truncation) {
        if (D_ < 0) throw malformed_input("negative truncation degree");
        for (const auto& g : gens_)
            if (g.degree < 1) throw malformed_input("generator degree must be >= 1");
        build_bases();
    }

    const FieldSpec& field() const { return field_; }
    unsigned characteristic() const { return field_.characteristic(); }
    int truncation() const { return D_; }
    const std::vector<Generator>& generators() const { return gens_; }
    int num_generators() const { return (int)gens_.size(); }
    bool all_even() const {
        return std::all_of(gens_.begin(), gens_.end(),
                           [](const Generator& g) { return g.degree % 2 == 0; });
    }

    bool odd_generator(int i) const { return gens_[i].degree % 2 != 0; }

    int degree(const Monomial& m) const {
        int d = 0;
        for (size_t i = 0; i < m.e.size(); ++i) d += int(m.e[i]) * gens_[i].degree;
        return d;
    }

    Monomial one() const { return Monomial{std::vector<uint16_t>(gens_.size(), 0)}; }

    Monomial generator_monomial(int i) const {
        Monomial m = one();
        m.e[i] = 1;
        return m;
    }

    // Product of two monomials with the Koszul sign.  Returns the sign
    // (+1 or -1) or 0 when an odd generator squares to zero; in
    // characteristic 2 a square of an odd generator is outside the
    // modeled fragment and throws.
    int mul(const Monomial& a, const Monomial& b, Monomial& out) const {
        int sign = 1;
        // Koszul sign: each odd generator carried by b moves past every
        // odd generator of a with larger index
        for (size_t j = 0; j < gens_.size(); ++j) {
            if (!odd_generator((int)j) || !b.e[j]) continue;
            int above = 0;
            for (size_t i = j + 1; i < gens_.size(); ++i)
                if (odd_generator((int)i) && a.e[i]) ++above;
            if (above % 2) sign = -sign;
        }
        out = one();
        for (size_t i = 0; i < gens_.size(); ++i) {
            unsigned s = unsigned(a.e[i]) + b.e[i];
            if (odd_generator((int)i) && s > 1) {
                if (characteristic() == 2)
                    throw unsupported_input(
                        "square of an odd generator is not modeled in characteristic 2");
                return 0;
            }
            out.e[i] = uint16_t(s);
        }
        return sign;
    }

    long long dim(int d) const {
        if (d < 0) return 0;
        if (d > D_) throw truncation_error("degree " + std::to_string(d) +
                                           " beyond truncation D=" + std::to_string(D_));
        return (long long)basis_[d].size();
    }

    const std::vector<Monomial>& basis(int d) const {
        if (d < 0 || d > D_)
            throw truncation_error("basis request outside 0..D: " + std::to_string(d));
        return basis_[d];
    }

    // position of m within the basis of its degree (binary search in the
    // fixed enumeration order)
    int index_of(const Monomial& m) const {
        int d = degree(m);
        const auto& b = basis(d);
        auto it = std::lower_bound(b.begin(), b.end(), m, [](const Monomial& x, const Monomial& y) {
            return x.e > y.e;  // enumeration is lexicographically decreasing
        });
        if (it == b.end() || !(*it == m)) throw error("monomial not in basis (internal)");
        return (int)(it - b.begin());
    }

    GradedDims poincare_series() const {
        GradedDims s(D_);
        for (int d = 0; d <= D_; ++d) s.c[d] = (long long)basis_[d].size();
        return s;
    }

    std::string monomial_str(const Monomial& m) const {
        std::string s;
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (!m.e[i]) continue;
            if (!s.empty()) s += "*";
            s += gens_[i].name;
            if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
        }
        return s.empty() ? "1" : s;
    }

  private:
    void build_bases() {
        basis_.assign(D_ + 1, {});
        Monomial cur = one();
        enumerate(0, 0, cur);
        // enumeration above emits, per degree, exponent vectors in
        // lexicographically decreasing order already; assert in debug
    }

    void enumerate(size_t i, int deg, Monomial& cur) {
        if (i == gens_.size()) {
            basis_[deg].push_back(cur);
            return;
        }
        int gd = gens_[i].degree;
        int maxe = odd_generator((int)i) ? std::min(1, (D_ - deg) / gd) : (D_ - deg) / gd;
        for (int e = maxe; e >= 0; --e) {
            cur.e[i] = uint16_t(e);
            enumerate(i + 1, deg + e * gd, cur);
        }
        cur.e[i] = 0;
    }

    FieldSpec field_;
    std::vector<Generator> gens_;
    int D_;
    std::vector<std::vector<Monomial>> basis_;
};

using AlgebraPtr = std::shared_ptr<const FreeGCAlgebra>;

inline AlgebraPtr make_polynomial_algebra(FieldSpec field, const std::vector<int>& degrees, int D,
                                          const std::string& stem = "x") {
    std::vector<Generator> gens;
    std::vector<int> seen;
    for (int d : degrees) {
        int rep = (int)std::count(seen.begin(), seen.end(), d);
        seen.push_back(d);
        std::string name = stem + std::to_string(d);
        if (rep > 0) name += std::string(1, char('a' + rep));
        gens.push_back({name, d});
    }
    return std::make_shared<FreeGCAlgebra>(field, std::move(gens), D);
}

// A ⊗ B: generator list is the concatenation.  Same field, same
// truncation required.
inline AlgebraPtr tensor_product(const FreeGCAlgebra& a, const FreeGCAlgebra& b) {
    if (a.field().p != b.field().p)
        throw field_mismatch("tensor of algebras over different fields");
    if (a.truncation() != b.truncation())
        throw field_mismatch("tensor of algebras with different truncations");
    std::vector<Generator> gens = a.generators();
    for (const auto& g : b.generators()) {
        Generator h = g;
        for (const auto& g0 : a.generators())
            if (g0.name == h.name) {
                h.name += "'";
                break;
            }
        gens.push_back(h);
    }
    return std::make_shared<FreeGCAlgebra>(a.field(), std::move(gens), a.truncation());
}

// A^{⊗n}; generator (i, j) is named after generator j of A with a slot
// suffix, e.g. x4@2.
inline AlgebraPtr tensor_power(const FreeGCAlgebra& a, int n) {
    if (n < 1) throw malformed_input("tensor_power needs n >= 1");
    std::vector<Generator> gens;
    for (int slot = 1; slot <= n; ++slot)
        for (const auto& g : a.generators())
            gens.push_back({n == 1 ? g.name : g.name + "@" + std::to_string(slot), g.degree});
    return std::make_shared<FreeGCAlgebra>(a.field(), std::move(gens), a.truncation());
}

// Algebra map determined by monomial images of generators, extended
// multiplicatively.  apply() returns the sign (0 when the image dies).
struct AlgebraHom {
    AlgebraPtr src;
    AlgebraPtr tgt;
    std::vector<Monomial> images;  // one per source generator

    int apply(const Monomial& m, Monomial& out) const {
        out = tgt->one();
        int sign = 1;
        for (size_t i = 0; i < m.e.size(); ++i) {
            for (int k = 0; k < (int)m.e[i]; ++k) {
                Monomial next;
                int s = tgt->mul(out, images[i], next);
                if (s == 0) return 0;
                sign *= s;
                out = next;
            }
        }
        return sign;
    }
};

// slots of A^{⊗n} onto A (the multiplication map up to ordering): every
// copy of a generator goes to that generator
inline AlgebraHom diagonal_collapse(AlgebraPtr power, AlgebraPtr base, int n) {
    AlgebraHom h{power, base, {}};
    int s = base->num_generators();
    if (power->num_generators() != n * s) throw malformed_input("collapse: generator count");
    for (int slot = 0; slot < n; ++slot)
        for (int j = 0; j < s; ++j) h.images.push_back(base->generator_monomial(j));
    return h;
}

}  // namespace ghl
