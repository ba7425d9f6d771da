#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ghl/field.hpp"
#include "ghl/linalg.hpp"
#include "ghl/rng.hpp"

using namespace ghl;

namespace {

template <class F>
SparseMat<typename F::Elem> from_rows(const F& f,
                                      const std::vector<std::vector<long long>>& rows) {
    int r = (int)rows.size();
    int c = r ? (int)rows[0].size() : 0;
    MatBuilder<typename F::Elem> b(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) b.add(f, i, j, f.from_int(rows[i][j]));
    return b.take(f);
}

template <class F>
std::vector<typename F::Elem> vec(const F& f, const std::vector<long long>& v) {
    std::vector<typename F::Elem> out;
    for (auto x : v) out.push_back(f.from_int(x));
    return out;
}

// independent rank oracle: largest k with a nonzero k x k minor
template <class F>
typename F::Elem minor_det(const F& f, const std::vector<std::vector<typename F::Elem>>& a,
                           std::vector<int> rs, std::vector<int> cs) {
    if (rs.empty()) return f.one();
    typename F::Elem acc = f.zero();
    for (size_t i = 0; i < rs.size(); ++i) {
        auto sub_r = rs;
        sub_r.erase(sub_r.begin() + i);
        auto sub_c = std::vector<int>(cs.begin() + 1, cs.end());
        auto term = f.mul(a[rs[i]][cs[0]], minor_det(f, a, sub_r, sub_c));
        acc = (i % 2 == 0) ? f.add(acc, term) : f.sub(acc, term);
    }
    return acc;
}

template <class F>
int rank_by_minors(const F& f, const SparseMat<typename F::Elem>& m) {
    std::vector<std::vector<typename F::Elem>> a(m.rows,
                                                 std::vector<typename F::Elem>(m.cols, f.zero()));
    for (const auto& e : m.entries) a[e.row][e.col] = e.value;
    int best = 0;
    std::vector<int> ridx(m.rows), cidx(m.cols);
    for (int i = 0; i < m.rows; ++i) ridx[i] = i;
    for (int j = 0; j < m.cols; ++j) cidx[j] = j;
    for (int k = 1; k <= std::min(m.rows, m.cols); ++k) {
        bool found = false;
        std::vector<bool> rsel(m.rows, false), csel(m.cols, false);
        std::fill(rsel.begin(), rsel.begin() + k, true);
        do {
            std::vector<int> rs;
            for (int i = 0; i < m.rows; ++i)
                if (rsel[i]) rs.push_back(i);
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + k, true);
            do {
                std::vector<int> cs;
                for (int j = 0; j < m.cols; ++j)
                    if (csel[j]) cs.push_back(j);
                if (!f.is_zero(minor_det(f, a, rs, cs))) {
                    found = true;
                    break;
                }
            } while (std::prev_permutation(csel.begin(), csel.end()));
            if (found) break;
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
        if (found)
            best = k;
        else
            break;
    }
    return best;
}

template <class F>
SparseMat<typename F::Elem> random_matrix(const F& f, Rng& rng, int maxdim) {
    int r = 1 + (int)rng.below(maxdim);
    int c = 1 + (int)rng.below(maxdim);
    MatBuilder<typename F::Elem> b(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rng.below(3) == 0) b.add(f, i, j, f.from_int(rng.range(-4, 4)));
    return b.take(f);
}

}  // namespace

TEST_CASE("field basics") {
    PrimeField f5(5);
    CHECK(f5.add(3, 4) == 2);
    CHECK(f5.mul(3, 4) == 2);
    CHECK(f5.inv(3) == 2);
    CHECK(f5.from_int(-1) == 4);
    CHECK_THROWS_AS(PrimeField(6), malformed_input);
    CHECK_THROWS_AS(f5.parse("1/5"), malformed_input);
    CHECK(f5.parse("3/4") == f5.div(3, 4));

    Rationals q;
    CHECK(q.to_string(q.parse("4/6")) == "2/3");
    CHECK(q.eq(q.div(q.from_int(1), q.from_int(3)), q.parse("1/3")));
    CHECK_THROWS_AS(q.inv(q.zero()), malformed_input);

    CHECK(FieldSpec::parse("0").rational());
    CHECK(FieldSpec::parse("7").p == 7);
    CHECK_THROWS_AS(FieldSpec::parse("9"), malformed_input);
}

TEST_CASE("rank: pinned examples") {
    PrimeField f5(5), f2(2);
    Rationals q;
    CHECK(rank(f5, SparseMat<uint32_t>::identity(f5, 3)) == 3);
    CHECK(rank(q, from_rows(q, {{0, 0}, {0, 0}})) == 0);
    CHECK(rank(q, from_rows(q, {{1, 2}, {2, 4}})) == 1);
    CHECK(rank(f2, from_rows(f2, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel_basis: pinned examples") {
    Rationals q;
    CHECK(kernel_basis(q, SparseMat<mpq_class>::identity(q, 3)).empty());

    auto z = kernel_basis(q, from_rows(q, {{0, 0}, {0, 0}}));
    REQUIRE(z.size() == 2);
    CHECK(z[0] == vec(q, {1, 0}));
    CHECK(z[1] == vec(q, {0, 1}));

    auto k = kernel_basis(q, from_rows(q, {{1, 2}, {2, 4}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == vec(q, {2, -1}));
}

TEST_CASE("solve: pinned examples") {
    Rationals q;
    auto r1 = solve(q, SparseMat<mpq_class>::identity(q, 2), vec(q, {1, 0}));
    REQUIRE(r1.consistent);
    CHECK(r1.particular == vec(q, {1, 0}));
    CHECK(r1.kernel.empty());

    auto r2 = solve(q, from_rows(q, {{0, 0}, {0, 0}}), vec(q, {0, 0}));
    REQUIRE(r2.consistent);
    CHECK(r2.particular == vec(q, {0, 0}));
    CHECK(r2.kernel.size() == 2);

    PrimeField f2(2);
    auto r3 = solve(f2, from_rows(f2, {{1, 1}}), vec(f2, {1}));
    REQUIRE(r3.consistent);
    CHECK(r3.particular == vec(f2, {1, 0}));
    REQUIRE(r3.kernel.size() == 1);
    CHECK(r3.kernel[0] == vec(f2, {1, 1}));

    // enumeration oracle over F_2^2: solutions of [1 1] x = [1]
    {
        std::vector<std::vector<uint32_t>> sols;
        for (uint32_t a = 0; a < 2; ++a)
            for (uint32_t b = 0; b < 2; ++b)
                if (f2.add(a, b) == 1) sols.push_back({a, b});
        CHECK(sols.size() == 2);
        bool found = false;
        for (auto& s : sols) found = found || s == r3.particular;
        CHECK(found);
    }

    auto r4 = solve(q, from_rows(q, {{1, 1}}), vec(q, {1}));
    REQUIRE(r4.consistent);

    auto bad = solve(q, from_rows(q, {{1, 1}, {1, 1}}), vec(q, {1, 2}));
    CHECK(!bad.consistent);

    CHECK_THROWS_AS(solve(q, from_rows(q, {{1, 1}}), vec(q, {1, 2})), malformed_input);
}

TEST_CASE("rank agrees with the minor oracle") {
    PrimeField f7(7);
    Rationals q;
    Rng rng(1234);
    for (int t = 0; t < 60; ++t) {
        auto m = random_matrix(f7, rng, 4);
        CHECK(rank(f7, m) == rank_by_minors(f7, m));
    }
    for (int t = 0; t < 40; ++t) {
        auto m = random_matrix(q, rng, 4);
        CHECK(rank(q, m) == rank_by_minors(q, m));
    }
}

template <class F>
static void property_suite(const F& f, uint64_t seed, int iters) {
    Rng rng(seed);
    for (int t = 0; t < iters; ++t) {
        auto m = random_matrix(f, rng, 8);
        int rk = rank(f, m);
        // rank-nullity
        CHECK(rk + (int)kernel_basis(f, m).size() == m.cols);
        // rank of the transpose
        CHECK(rank(f, m.transposed()) == rk);
        // dense and sparse paths agree
        CHECK(detail::dense_rank(f, m) == rank_sparse(f, m));
        // kernel vectors are killed by m
        for (const auto& v : kernel_basis(f, m)) {
            auto y = m.apply(f, v);
            for (const auto& e : y) CHECK(f.is_zero(e));
        }
        // a consistent solve really solves
        std::vector<typename F::Elem> x0;
        for (int j = 0; j < m.cols; ++j) x0.push_back(f.from_int(rng.range(-3, 3)));
        auto b = m.apply(f, x0);
        auto r = solve(f, m, b);
        REQUIRE(r.consistent);
        auto y = m.apply(f, r.particular);
        for (int i = 0; i < m.rows; ++i) CHECK(f.eq(y[i], b[i]));
    }
}

TEST_CASE("property suite over F_5 and Q") {
    property_suite(PrimeField(5), 99, 120);
    property_suite(Rationals{}, 100, 60);
}

TEST_CASE("sparse matrix validation") {
    Rationals q;
    SparseMat<mpq_class> m{2, 2, {{0, 0, mpq_class(1)}, {0, 0, mpq_class(2)}}};
    CHECK_THROWS_AS(m.validate(q), malformed_input);
    SparseMat<mpq_class> z{1, 1, {{0, 0, mpq_class(0)}}};
    CHECK_THROWS_AS(z.validate(q), malformed_input);
    SparseMat<mpq_class> oob{1, 1, {{0, 3, mpq_class(1)}}};
    CHECK_THROWS_AS(oob.validate(q), malformed_input);
}
