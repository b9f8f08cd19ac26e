#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhom/fp.hpp"
#include "qhom/quiver.hpp"
#include "qhom/rewrite.hpp"

namespace qhom {

// Sparse algebra element in basis coordinates: (basis index, coeff), sorted
// by index, coeffs nonzero.
using SparseElem = std::vector<std::pair<uint32_t, uint32_t>>;

struct BasisElem {
    VertexId src, tgt;
    uint32_t deg; // radical degree (path length for presentation algebras)
    std::string label;
};

// Finite-dimensional basic algebra with an exact multiplication table on a
// basis adapted to the radical filtration.  Multiplication is function-style:
// mul(i, j) applies basis j first, then basis i, and is nonzero only when
// src(i) == tgt(j).  Basis index v (v < num_vertices) is the idempotent e_v.
class BasedAlgebra {
  public:
    Fp field;
    std::string name;
    std::vector<std::string> vertex_names;
    std::vector<BasisElem> basis;
    std::vector<std::vector<SparseElem>> table;

    // Indices of the degree-1 basis elements; they generate the radical.
    std::vector<uint32_t> generators;
    // For deg >= 2: b = sum coeff * mul(gen, rest) with deg(rest) = deg(b)-1.
    struct FactorTerm {
        uint32_t gen, rest;
        uint32_t coeff;
    };
    std::vector<std::vector<FactorTerm>> factorization;

    uint32_t loewy_length = 1;

    // Provenance for presentation-built algebras (printing, module text I/O).
    std::optional<AlgebraPresentation> presentation;
    std::shared_ptr<const ReductionSystem> reduction;

    size_t dim() const { return basis.size(); }
    size_t num_vertices() const { return vertex_names.size(); }
    bool composable(uint32_t i, uint32_t j) const { return basis[i].src == basis[j].tgt; }

    const SparseElem& mul(uint32_t i, uint32_t j) const { return table[i][j]; }
    SparseElem mul(const SparseElem& x, const SparseElem& y) const;
    static SparseElem scale(const SparseElem& x, uint32_t c, Fp F);
    static SparseElem add(const SparseElem& x, const SparseElem& y, Fp F);

    // Basis indices in the Peirce component e_tgt A e_src.
    std::vector<uint32_t> peirce(VertexId tgt, VertexId src) const;
    // Cartan matrix entry dim e_u A e_v.
    size_t cartan(VertexId u, VertexId v) const { return peirce(u, v).size(); }
    // Dimensions of the radical layers rad^k / rad^(k+1), k = 0 .. ll-1.
    std::vector<size_t> radical_layer_dims() const;

    // Structural invariants: orthogonal idempotents summing to the identity,
    // degree-support of products, associativity (exhaustive when dim <= 64,
    // else seeded random triples), nonzero top radical layer.
    void verify(uint64_t seed = 1) const;

    std::string elem_to_string(const SparseElem& x) const;
};

// Build the exact based algebra of a presentation.  Completes the rewriting
// system, verifies admissibility (every length-N path rewrites to zero; a
// failing witness path is named), enumerates normal monomials and tabulates
// products.
std::shared_ptr<BasedAlgebra> build_based_algebra(const AlgebraPresentation& pres, size_t term_budget = 20000);

// Assemble a BasedAlgebra from raw parts (used by constructions).  Computes
// generator factorizations by linear algebra and verifies invariants.
std::shared_ptr<BasedAlgebra> algebra_from_table(Fp field, std::string name, std::vector<std::string> vertex_names,
                                                 std::vector<BasisElem> basis,
                                                 std::vector<std::vector<SparseElem>> table);

using AlgebraPtr = std::shared_ptr<const BasedAlgebra>;

} // namespace qhom
