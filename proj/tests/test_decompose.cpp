#include <doctest.h>

#include "qhom/algebra.hpp"
#include "qhom/decompose.hpp"
#include "qhom/parse.hpp"
#include "support/fixtures.hpp"

using namespace qhom;

namespace {
AlgebraPtr build(const char* src) { return build_based_algebra(parse_presentation(src)); }
} // namespace

TEST_CASE("S(1) + S(1) decomposes as one class with multiplicity 2") {
    auto A = build(fixtures::a2);
    auto S1 = standard_module(A, StandardKind::simple, 0);
    auto M = direct_sum(A, {S1, S1}).total;
    auto d = decompose(M, 17);
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].multiplicity == 2);
    CHECK(d.pieces[0].module->dim() == 1);
}

TEST_CASE("P(1) over 1->2 is indecomposable with 1-dimensional End") {
    auto A = build(fixtures::a2);
    auto P1 = standard_module(A, StandardKind::projective, 0);
    CHECK(hom_dim(*P1, *P1) == 1);
    auto d = decompose(P1, 19);
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].multiplicity == 1);
    CHECK(d.pieces[0].local_certified);
}

TEST_CASE("shuffled copy of P(1) + S(2) + S(2) finds pieces {(P(1),1), (S(2),2)}") {
    auto A = build(fixtures::a2);
    auto P1 = standard_module(A, StandardKind::projective, 0);
    auto S2 = standard_module(A, StandardKind::simple, 1);
    auto M = direct_sum(A, {P1, S2, S2}).total;
    Rng rng(23);
    auto shuffled = conjugated_copy(M, rng);
    auto d = decompose(shuffled, 29);
    REQUIRE(d.pieces.size() == 2);
    size_t mult_sum = 0;
    bool saw_p1 = false, saw_s2 = false;
    for (const auto& p : d.pieces) {
        mult_sum += p.multiplicity;
        if (p.module->dim() == 2) saw_p1 = (p.multiplicity == 1);
        if (p.module->dim() == 1) saw_s2 = (p.multiplicity == 2);
    }
    CHECK(saw_p1);
    CHECK(saw_s2);
    CHECK(mult_sum == 3);
}

TEST_CASE("Krull-Schmidt stability under random conjugation (100 random modules)") {
    for (const char* src : {fixtures::a3, fixtures::ext2}) {
        auto A = build(src);
        Rng rng(31);
        for (int t = 0; t < 50; ++t) {
            auto M = random_module(A, rng);
            if (M->dim() == 0) continue;
            auto copy = conjugated_copy(M, rng);
            auto dm = decompose(M, 100 + t);
            auto dc = decompose(copy, 200 + t);
            REQUIRE(dm.pieces.size() == dc.pieces.size());
            // Same multiset of (dim vector, multiplicity, fingerprint).
            for (size_t i = 0; i < dm.pieces.size(); ++i) {
                CHECK(dm.pieces[i].multiplicity == dc.pieces[i].multiplicity);
                CHECK(module_fingerprint(dm.pieces[i].module) == module_fingerprint(dc.pieces[i].module));
            }
        }
    }
}

TEST_CASE("reassembly: the decomposition witness is a verified isomorphism") {
    auto A = build(fixtures::ext2);
    Rng rng(37);
    for (int t = 0; t < 20; ++t) {
        auto M = random_module(A, rng);
        auto d = decompose(M, 300 + t);
        d.witness.validate();
        CHECK(d.witness.is_isomorphism());
        CHECK(d.sum->dim() == M->dim());
    }
}

TEST_CASE("is_isomorphic: self with shuffled basis, distinct simples, syzygy periodicity") {
    auto A = build(fixtures::a2);
    Rng rng(41);
    auto M = random_module(A, rng);
    auto copy = conjugated_copy(M, rng);
    auto [iso, wit] = modules_isomorphic(M, copy, 43);
    CHECK(iso);
    if (M->dim()) {
        REQUIRE(wit.has_value());
        wit->validate();
        CHECK(wit->is_isomorphism());
    }
    auto S1 = standard_module(A, StandardKind::simple, 0);
    auto S2 = standard_module(A, StandardKind::simple, 1);
    CHECK_FALSE(modules_isomorphic(S1, S2, 47).first);
}

TEST_CASE("add-closure membership") {
    auto A = build(fixtures::a2);
    auto P1 = standard_module(A, StandardKind::projective, 0);
    auto S2 = standard_module(A, StandardKind::simple, 1);
    auto M = direct_sum(A, {P1, S2}).total;
    CHECK(in_add_closure(M, {P1, S2}));
    auto S1 = standard_module(A, StandardKind::simple, 0);
    CHECK_FALSE(in_add_closure(S1, {P1, S2}));
}
