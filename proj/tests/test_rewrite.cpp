#include <doctest.h>

#include <set>

#include "qhom/parse.hpp"
#include "qhom/rewrite.hpp"
#include "support/fixtures.hpp"

using namespace qhom;

namespace {

// Independent oracle: enumerate all paths of length < N and close the span
// of the relations under one-sided concatenation, entirely without the
// completion machinery; the quotient dimension is dim kQ/I in degrees < N.
// Only usable when every length-N path already lies in the ideal.
size_t brute_force_dim(const AlgebraPresentation& pres) {
    const Quiver& Q = pres.quiver;
    Fp F = pres.field;
    std::vector<Path> words;
    for (VertexId v = 0; v < Q.num_vertices(); ++v) words.push_back(Path{v, {}});
    for (size_t i = 0; i < words.size(); ++i) {
        if (words[i].length() + 1 > pres.nilpotency) continue; // allow length N too
        for (ArrowId a = 0; a < Q.num_arrows(); ++a) {
            if (Q.arrows[a].src != words[i].target(Q)) continue;
            Path w = words[i];
            if (w.trivial()) w.base = Q.arrows[a].src;
            w.seq.push_back(a);
            words.push_back(w);
        }
    }
    std::map<std::vector<ArrowId>, size_t> index;
    std::map<VertexId, size_t> trivial_index;
    size_t n = 0;
    for (const auto& w : words) {
        if (w.trivial())
            trivial_index[w.base] = n++;
        else
            index[w.seq] = n++;
    }
    auto idx = [&](const Path& w) { return w.trivial() ? trivial_index[w.base] : index[w.seq]; };
    // Span of p * rel * q over all relations and all framing paths.
    FpMat span(F, n, 0);
    auto add_vec = [&](const PathPoly& poly) {
        FpMat v(F, n, 1);
        bool overflow = false;
        for (auto& [m, c] : poly) {
            if (m.length() > pres.nilpotency) overflow = true;
            else v.at(idx(m), 0) = c;
        }
        REQUIRE(!overflow);
        if (!v.is_zero() && !(span.cols() && subspace::contains(span, v))) span = FpMat::hstack(span, v);
    };
    std::vector<PathPoly> gens;
    for (const auto& r : pres.relations) gens.push_back(r.terms);
    if (pres.truncate)
        for (const auto& w : words)
            if (w.length() == *pres.truncate) {
                PathPoly p;
                p.emplace(w, 1);
                gens.push_back(p);
            }
    for (const auto& g : gens)
        for (const auto& pre : words) {
            for (const auto& post : words) {
                PathPoly framed;
                for (auto& [m, c] : g) {
                    if (pre.target(Q) != m.source() || m.target(Q) != post.source()) {
                        framed.clear();
                        break;
                    }
                    Path w = concat(concat(pre, m, Q), post, Q);
                    if (w.length() > pres.nilpotency) {
                        framed.clear();
                        break;
                    }
                    poly_add_term(framed, w, c, F);
                }
                if (!framed.empty()) add_vec(framed);
            }
        }
    // Every length-N path must lie in the ideal span, so the length-N layer
    // contributes nothing to the quotient and the count below is exactly the
    // dimension of the degree < N part, i.e. of the algebra.
    for (const auto& w : words)
        if (w.length() == pres.nilpotency) {
            FpMat v(F, n, 1);
            v.at(idx(w), 0) = 1;
            REQUIRE(subspace::contains(span, v));
        }
    return n - span.cols();
}

} // namespace

TEST_CASE("x^2 -> 0 over one loop: system and normal monomials") {
    auto pres = parse_presentation(fixtures::loop2);
    auto rs = ReductionSystem::complete(pres);
    CHECK(rs.rules().size() == 1);
    auto monos = rs.normal_monomials();
    CHECK(monos.size() == 2); // e, x
    Path x2{0, {0, 0}};
    CHECK(rs.normal_form(x2).empty());
}

TEST_CASE("exterior algebra on two generators: normal monomials {e, x, y, xy}") {
    auto pres = parse_presentation(fixtures::ext2);
    auto rs = ReductionSystem::complete(pres);
    auto monos = rs.normal_monomials();
    CHECK(monos.size() == 4);
    // Brute-force closure oracle: dimension of the span-quotient matches.
    // (count all words of length <= N, subtract ideal span restricted there,
    // subtract the length-N layer which lies in the ideal)
    // The helper asserts the length-N layer is contained in the ideal span.
    size_t dim = brute_force_dim(pres);
    CHECK(dim == 4);
    // y*x reduces to -x*y (stored travel order [x, y] with coefficient -1).
    Path yx{0, {1, 0}};
    auto nf = rs.normal_form(yx);
    REQUIRE(nf.size() == 1);
    CHECK(nf.begin()->first == Path{0, {0, 1}});
    CHECK(nf.begin()->second == 100); // -1 mod 101
}

TEST_CASE("normal form is a projection and linear (1000 random elements)") {
    auto pres = parse_presentation(fixtures::ext3);
    auto rs = ReductionSystem::complete(pres);
    Rng rng(21);
    const Quiver& Q = pres.quiver;
    auto random_poly = [&]() {
        PathPoly p;
        size_t terms = 1 + rng.below(4);
        for (size_t t = 0; t < terms; ++t) {
            Path w{0, {}};
            size_t len = rng.below(5);
            for (size_t i = 0; i < len; ++i) w.seq.push_back(rng.below((uint32_t)Q.num_arrows()));
            poly_add_term(p, w, rng.nonzero_field_elem(pres.field), pres.field);
        }
        return p;
    };
    for (int t = 0; t < 1000; ++t) {
        PathPoly p = random_poly();
        PathPoly n1 = rs.normal_form(p);
        CHECK(rs.normal_form(n1) == n1);
    }
}

TEST_CASE("confluence: two reduction strategies agree on 500 random paths") {
    for (const char* src : {fixtures::ext3, fixtures::nakayama2}) {
        auto pres = parse_presentation(src);
        auto rs = ReductionSystem::complete(pres);
        Rng rng(23);
        const Quiver& Q = pres.quiver;
        int done = 0;
        while (done < 500) {
            // random composable path
            Path w{rng.below((uint32_t)Q.num_vertices()), {}};
            size_t len = 1 + rng.below(4);
            bool ok = true;
            for (size_t i = 0; i < len && ok; ++i) {
                std::vector<ArrowId> outs;
                for (ArrowId a = 0; a < Q.num_arrows(); ++a)
                    if (Q.arrows[a].src == w.target(Q)) outs.push_back(a);
                if (outs.empty()) {
                    ok = false;
                    break;
                }
                ArrowId a = outs[rng.below((uint32_t)outs.size())];
                if (w.trivial()) w.base = Q.arrows[a].src;
                w.seq.push_back(a);
            }
            if (!ok) continue;
            ++done;
            PathPoly p;
            p.emplace(w, 1);
            CHECK(rs.normal_form(p, ReductionSystem::Strategy::largest_leftmost) ==
                  rs.normal_form(p, ReductionSystem::Strategy::smallest_rightmost));
        }
    }
}
