#include "qhom/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "qhom/error.hpp"

namespace qhom {

SparseElem BasedAlgebra::scale(const SparseElem& x, uint32_t c, Fp F) {
    SparseElem r;
    c %= F.p;
    if (!c) return r;
    r.reserve(x.size());
    for (auto [i, a] : x) r.emplace_back(i, F.mul(a, c));
    return r;
}

SparseElem BasedAlgebra::add(const SparseElem& x, const SparseElem& y, Fp F) {
    SparseElem r;
    r.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            r.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            r.push_back(y[j++]);
        } else {
            uint32_t c = F.add(x[i].second, y[j].second);
            if (c) r.emplace_back(x[i].first, c);
            ++i, ++j;
        }
    }
    return r;
}

SparseElem BasedAlgebra::mul(const SparseElem& x, const SparseElem& y) const {
    SparseElem acc;
    for (auto [i, a] : x)
        for (auto [j, b] : y) {
            if (!composable(i, j)) continue;
            acc = add(acc, scale(table[i][j], field.mul(a, b), field), field);
        }
    return acc;
}

std::vector<uint32_t> BasedAlgebra::peirce(VertexId tgt, VertexId src) const {
    std::vector<uint32_t> out;
    for (uint32_t b = 0; b < basis.size(); ++b)
        if (basis[b].tgt == tgt && basis[b].src == src) out.push_back(b);
    return out;
}

std::vector<size_t> BasedAlgebra::radical_layer_dims() const {
    std::vector<size_t> dims(loewy_length, 0);
    for (const auto& b : basis) {
        if (b.deg >= dims.size()) dims.resize(b.deg + 1, 0);
        ++dims[b.deg];
    }
    return dims;
}

std::string BasedAlgebra::elem_to_string(const SparseElem& x) const {
    if (x.empty()) return "0";
    std::string out;
    for (auto [i, c] : x) {
        if (!out.empty()) out += " + ";
        if (c != 1) out += std::to_string(c) + " ";
        out += basis[i].label;
    }
    return out;
}

void BasedAlgebra::verify(uint64_t seed) const {
    const size_t n = dim();
    if (vertex_names.empty()) throw InvariantError("algebra '" + name + "': no vertices");
    if (n < vertex_names.size()) throw InvariantError("algebra '" + name + "': missing idempotents");
    for (VertexId v = 0; v < vertex_names.size(); ++v) {
        if (basis[v].deg != 0 || basis[v].src != v || basis[v].tgt != v)
            throw InvariantError("algebra '" + name + "': basis element " + std::to_string(v) +
                                 " is not the trivial path at vertex " + vertex_names[v]);
    }
    // Orthogonal idempotents, and e acts as identity on the basis.
    for (VertexId u = 0; u < vertex_names.size(); ++u)
        for (VertexId v = 0; v < vertex_names.size(); ++v) {
            const SparseElem& prod = table[u][v];
            bool ok = (u == v) ? (prod.size() == 1 && prod[0] == std::make_pair(u, 1u)) : prod.empty();
            if (!ok) throw InvariantError("algebra '" + name + "': idempotents not orthogonal");
        }
    for (uint32_t b = 0; b < n; ++b) {
        const SparseElem& left = table[basis[b].tgt][b];
        const SparseElem& right = table[b][basis[b].src];
        SparseElem expect{{b, 1u}};
        if (left != expect || right != expect)
            throw InvariantError("algebra '" + name + "': trivial paths do not act as units on " + basis[b].label);
    }
    // Degree support and Peirce typing of products.
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            if (!composable(i, j)) {
                if (!table[i][j].empty())
                    throw InvariantError("algebra '" + name + "': non-composable product is nonzero");
                continue;
            }
            for (auto [k, c] : table[i][j]) {
                (void)c;
                if (basis[k].deg < basis[i].deg + basis[j].deg)
                    throw InvariantError("algebra '" + name + "': product drops below the radical degree sum");
                if (basis[k].src != basis[j].src || basis[k].tgt != basis[i].tgt)
                    throw InvariantError("algebra '" + name + "': product leaves its Peirce component");
            }
        }
    // Associativity.
    auto check_triple = [&](uint32_t i, uint32_t j, uint32_t k) {
        SparseElem ij_k = mul(table[i][j], SparseElem{{k, 1u}});
        SparseElem i_jk = mul(SparseElem{{i, 1u}}, table[j][k]);
        if (ij_k != i_jk)
            throw InvariantError("algebra '" + name + "': associativity fails on (" + basis[i].label + ", " +
                                 basis[j].label + ", " + basis[k].label + ")");
    };
    if (n <= 64) {
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j)
                for (uint32_t k = 0; k < n; ++k) check_triple(i, j, k);
    } else {
        Rng rng(seed);
        for (int t = 0; t < 20000; ++t)
            check_triple(rng.below(static_cast<uint32_t>(n)), rng.below(static_cast<uint32_t>(n)),
                         rng.below(static_cast<uint32_t>(n)));
    }
    // Loewy length matches the top nonzero layer.
    uint32_t maxdeg = 0;
    for (const auto& b : basis) maxdeg = std::max(maxdeg, b.deg);
    if (loewy_length != maxdeg + 1)
        throw InvariantError("algebra '" + name + "': Loewy length does not match the radical grading");
    // Factorization data really factors.
    for (uint32_t b = 0; b < n; ++b) {
        if (basis[b].deg < 2) continue;
        if (factorization[b].empty())
            throw InvariantError("algebra '" + name + "': missing generator factorization for " + basis[b].label);
        SparseElem acc;
        for (const auto& t : factorization[b]) {
            if (basis[t.rest].deg + 1 < basis[b].deg)
                throw InvariantError("algebra '" + name + "': factorization degree mismatch");
            acc = add(acc, scale(table[t.gen][t.rest], t.coeff, field), field);
        }
        if (acc != SparseElem{{b, 1u}})
            throw InvariantError("algebra '" + name + "': factorization of " + basis[b].label + " is wrong");
    }
}

std::shared_ptr<BasedAlgebra> build_based_algebra(const AlgebraPresentation& pres, size_t term_budget) {
    auto rs = std::make_shared<ReductionSystem>(ReductionSystem::complete(pres, term_budget));

    if (auto witness = rs->admissibility_witness()) {
        throw InvariantError("non-admissible ideal in '" + pres.name + "': the length-" +
                             std::to_string(pres.nilpotency) + " path " +
                             path_to_string(*witness, pres.quiver, pres.composition) +
                             " has nonzero normal form " +
                             poly_to_string(rs->normal_form(*witness), pres.quiver, pres.composition));
    }

    auto A = std::make_shared<BasedAlgebra>();
    A->field = pres.field;
    A->name = pres.name;
    A->vertex_names = pres.quiver.vertex_names;
    A->presentation = pres;
    A->reduction = rs;

    std::vector<Path> monos = rs->normal_monomials();
    // Trivial paths first (ascending vertex), then by monomial order; the
    // order from normal_monomials() already sorts by length then lex, with all
    // trivial paths first.
    std::map<Path, uint32_t, PathLess> index;
    for (const Path& m : monos) {
        uint32_t deg = static_cast<uint32_t>(m.length());
        A->basis.push_back({m.source(), m.target(pres.quiver), deg,
                            path_to_string(m, pres.quiver, pres.composition)});
        index.emplace(m, static_cast<uint32_t>(A->basis.size()) - 1);
    }
    const size_t n = A->basis.size();

    auto to_sparse = [&](const PathPoly& poly) {
        SparseElem out;
        for (const auto& [m, c] : poly) {
            auto it = index.find(m);
            if (it == index.end()) throw InvariantError("normal form produced a non-basis monomial");
            out.emplace_back(it->second, c);
        }
        std::sort(out.begin(), out.end());
        return out;
    };

    A->table.assign(n, std::vector<SparseElem>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Path& pi = monos[i];
            const Path& pj = monos[j];
            if (pi.source() != pj.target(pres.quiver)) continue; // non-composable
            // Function-style product: travel along j first, then i.
            Path w = concat(pj, pi, pres.quiver);
            A->table[i][j] = to_sparse(rs->normal_form(w));
        }

    uint32_t maxdeg = 0;
    for (const auto& b : A->basis) maxdeg = std::max(maxdeg, b.deg);
    A->loewy_length = maxdeg + 1;

    for (uint32_t b = 0; b < n; ++b)
        if (A->basis[b].deg == 1) A->generators.push_back(b);

    // A normal word factors as (last arrow) after (its normal prefix).
    A->factorization.assign(n, {});
    for (uint32_t b = 0; b < n; ++b) {
        if (A->basis[b].deg < 2) continue;
        const Path& m = monos[b];
        Path prefix = m;
        ArrowId last = prefix.seq.back();
        prefix.seq.pop_back();
        Path arrow_path;
        arrow_path.base = pres.quiver.arrows[last].src;
        arrow_path.seq = {last};
        auto pit = index.find(prefix);
        auto git = index.find(arrow_path);
        if (pit == index.end() || git == index.end())
            throw InvariantError("subword of a normal monomial is not normal");
        A->factorization[b].push_back({git->second, pit->second, 1});
    }

    A->verify();
    return A;
}

std::shared_ptr<BasedAlgebra> algebra_from_table(Fp field, std::string name, std::vector<std::string> vertex_names,
                                                 std::vector<BasisElem> basis,
                                                 std::vector<std::vector<SparseElem>> table) {
    auto A = std::make_shared<BasedAlgebra>();
    A->field = field;
    A->name = std::move(name);
    A->vertex_names = std::move(vertex_names);
    A->basis = std::move(basis);
    A->table = std::move(table);
    const size_t n = A->basis.size();

    uint32_t maxdeg = 0;
    for (const auto& b : A->basis) maxdeg = std::max(maxdeg, b.deg);
    A->loewy_length = maxdeg + 1;
    for (uint32_t b = 0; b < n; ++b)
        if (A->basis[b].deg == 1) A->generators.push_back(b);

    // Solve b = sum c * (g after rest) degreewise, with deg(rest) >= deg(b)-1.
    A->factorization.assign(n, {});
    for (uint32_t b = 0; b < n; ++b) {
        if (A->basis[b].deg < 2) continue;
        std::vector<std::pair<uint32_t, uint32_t>> pairs; // (gen, rest)
        std::vector<SparseElem> cols;
        for (uint32_t g : A->generators) {
            if (A->basis[g].tgt != A->basis[b].tgt) continue;
            for (uint32_t r = 0; r < n; ++r) {
                if (A->basis[r].deg + 1 < A->basis[b].deg) continue;
                if (A->basis[r].src != A->basis[b].src || A->basis[r].tgt != A->basis[g].src) continue;
                const SparseElem& prod = A->table[g][r];
                if (prod.empty()) continue;
                pairs.emplace_back(g, r);
                cols.push_back(prod);
            }
        }
        FpMat sys(field, n, cols.size());
        for (size_t j = 0; j < cols.size(); ++j)
            for (auto [i, c] : cols[j]) sys.at(i, j) = c;
        FpMat rhs(field, n, 1);
        rhs.at(b, 0) = 1;
        auto sol = sys.solve(rhs);
        if (!sol)
            throw InvariantError("algebra '" + A->name + "': radical element " + A->basis[b].label +
                                 " is not generated in degree 1 (basis not radical-adapted)");
        for (size_t j = 0; j < pairs.size(); ++j)
            if (uint32_t c = sol->at(j, 0))
                A->factorization[b].push_back({pairs[j].first, pairs[j].second, c});
    }

    A->verify();
    return A;
}

} // namespace qhom
