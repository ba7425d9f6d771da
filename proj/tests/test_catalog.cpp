#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ghl/catalog.hpp"
#include "ghl/module.hpp"

using namespace ghl;

TEST_CASE("builtin catalog passes the consistency oracle") {
    const auto& c = Catalog::builtin();
    CHECK(c.entries().size() == 15);
    for (const auto& m : c.entries()) {
        int d = 0;
        for (int deg : m.degrees) d += deg - 1;
        CHECK(d == m.lie_dim);
    }
}

TEST_CASE("lookups: pinned examples") {
    const auto& c = Catalog::builtin();
    auto su2 = c.lookup("SU(2)", FieldSpec{0});
    CHECK(su2.degrees == std::vector<int>{4});
    CHECK(su2.lie_dim == 3);

    auto su3 = c.lookup("SU(3)", FieldSpec{5});
    CHECK(su3.degrees == std::vector<int>{4, 6});
    CHECK(su3.lie_dim == 8);

    auto sp2 = c.lookup("Sp(2)", FieldSpec{2});
    CHECK(sp2.degrees == std::vector<int>{4, 8});
    CHECK(sp2.lie_dim == 10);

    CHECK_THROWS_AS(c.lookup("SO(5)", FieldSpec{2}), catalog_error);
    CHECK_THROWS_AS(c.lookup("G2", FieldSpec{7}), catalog_error);
    CHECK_NOTHROW(c.lookup("G2", FieldSpec{0}));
    CHECK_THROWS_AS(c.lookup("E8", FieldSpec{0}), catalog_error);
}

TEST_CASE("user catalogs are validated") {
    CHECK_THROWS_AS(Catalog::parse("X 4,6 9 all\n"), catalog_error);   // wrong lie_dim
    CHECK_THROWS_AS(Catalog::parse("X 3 2 all\n"), catalog_error);     // odd degree
    auto ok = Catalog::parse("# comment\nX 4,6 8 exclude:2,3\n");
    CHECK(ok.entries().size() == 1);
    CHECK(!ok.entries()[0].chars.allows(3));
    CHECK(ok.entries()[0].chars.allows(5));
}

TEST_CASE("loop models of catalog entries are free with basis 2^s") {
    PrimeField f5(5);
    const auto& c = Catalog::builtin();
    for (const auto& name : {"SU(2)", "SU(3)", "Sp(2)"}) {
        auto m = c.lookup(name, FieldSpec{5});
        auto a = model_algebra(m, FieldSpec{5}, 24);
        auto L = loop_module(f5, a);
        auto w = is_free(f5, L.module);
        CHECK(w.free);
        CHECK((int)w.basis.size() == (1 << m.degrees.size()));
        // PS identity: PS(A) * prod(1 + t^{deg-1})
        auto expect = a->poincare_series();
        GradedDims factor = GradedDims::one(24);
        for (int d : m.degrees) factor.times_one_plus(d - 1);
        CHECK(L.module.poincare_series() == expect * factor);
    }
}
