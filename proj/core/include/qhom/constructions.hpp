#pragma once

#include <string>
#include <vector>

#include "qhom/algebra.hpp"
#include "qhom/fp.hpp"

namespace qhom {

class ModuleRep;
using ModulePtr = std::shared_ptr<const ModuleRep>;

// Opposite algebra: same basis, reversed multiplication and Peirce typing.
// opposite(opposite(A)) has an identical table.
AlgebraPtr opposite(AlgebraPtr A);

// The duality D = Hom_k(-, k): contravariant exact, swaps A-mod and A^op-mod,
// exchanges tops and socles, projectives over A^op and injectives over A.
// The context pins down one chosen opposite algebra so that D^2 returns
// modules over the original algebra on the nose.
class DualityContext {
  public:
    explicit DualityContext(AlgebraPtr A);
    DualityContext(AlgebraPtr A, AlgebraPtr Aop);

    AlgebraPtr original() const { return A_; }
    AlgebraPtr opposite() const { return Aop_; }

    ModulePtr to_op(ModulePtr M) const;  // D: A-mod -> A^op-mod
    ModulePtr to_A(ModulePtr N) const;   // D: A^op-mod -> A-mod

  private:
    AlgebraPtr A_, Aop_;
};

// B-C-bimodule on an explicit basis: one left-action matrix per basis element
// of B and one right-action matrix per basis element of C, commuting, unital.
struct Bimodule {
    AlgebraPtr left;   // B
    AlgebraPtr right;  // C
    size_t dim = 0;
    std::vector<FpMat> left_action;  // per basis element of B, dim x dim
    std::vector<FpMat> right_action; // per basis element of C, dim x dim

    void validate() const;
};

// Bimodule from a left B-module (trivial right action of the one-vertex
// algebra k), and from the dual of a left B-module (right B-action).
Bimodule bimodule_from_left_module(ModulePtr M, AlgebraPtr k_algebra);
Bimodule bimodule_from_dual(AlgebraPtr k_algebra, ModulePtr M);

// One-vertex, one-dimensional algebra over F (the scalar corner of one-point
// extensions).
AlgebraPtr scalar_algebra(Fp F, const std::string& vertex_name = "w");

// Triangular matrix algebra [[B, M], [0, C]] built directly on the basis
// bases(B) + bases(M) + bases(C), with vertices of B first, then of C.
AlgebraPtr triangular_matrix(AlgebraPtr B, AlgebraPtr C, const Bimodule& M, const std::string& name = "");

enum class OnePointSide { extension, coextension };

struct OnePointResult {
    AlgebraPtr algebra;
    VertexId new_vertex;
};

// One-point extension  [[B, M], [0, k]]  (new simple at the k-corner is the
// new vertex; rad P(new) is isomorphic to M), and one-point coextension
// [[k, D(M)], [0, B]]  (I(new)/soc isomorphic to M).
OnePointResult one_point(AlgebraPtr B, ModulePtr M, OnePointSide side, const std::string& name = "");

// Permutation-canonical structural invariant; equality is necessary but not
// sufficient for isomorphism ("structural match").
struct Fingerprint {
    size_t total_dim = 0;
    size_t num_simples = 0;
    uint32_t loewy = 0;
    std::vector<size_t> radical_layers;
    std::vector<std::vector<size_t>> cartan; // canonical form
    bool canonicalization_capped = false;

    bool operator==(const Fingerprint&) const = default;
    std::string to_string() const;
};

Fingerprint fingerprint(AlgebraPtr A);

// Best-effort quiver-with-relations extraction (arrows = basis of rad/rad^2,
// relations = kernel of the path algebra map up to degree ll(A)).
struct PresentedQuiver {
    Quiver quiver;
    std::vector<PathPoly> relations;
    uint32_t nilpotency = 0;
};
PresentedQuiver present(AlgebraPtr A);

} // namespace qhom
