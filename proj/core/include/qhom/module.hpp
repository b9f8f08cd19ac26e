#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qhom/algebra.hpp"
#include "qhom/fp.hpp"

namespace qhom {

class ModuleRep;
using ModulePtr = std::shared_ptr<const ModuleRep>;

// Finite-dimensional left module: a vertex-graded F_p-space with one matrix
// per degree-1 basis element of the algebra (the arrows, for a presentation
// algebra).  The action of a deeper basis element is composed on demand via
// the algebra's factorization data and memoized.
class ModuleRep {
  public:
    ModuleRep() = default;
    ModuleRep(AlgebraPtr A, std::vector<uint32_t> vdim, std::vector<FpMat> gen_mats);

    const BasedAlgebra& algebra() const { return *A_; }
    AlgebraPtr algebra_ptr() const { return A_; }
    Fp field() const { return A_->field; }

    const std::vector<uint32_t>& dim_vector() const { return vdim_; }
    uint32_t vdim(VertexId v) const { return vdim_[v]; }
    size_t dim() const { return total_; }
    size_t offset(VertexId v) const { return offsets_[v]; }
    bool is_zero_module() const { return total_ == 0; }

    // Action matrix of the k-th generator (index into algebra().generators).
    const FpMat& gen_action(size_t k) const { return gen_mats_[k]; }
    // Action of an arbitrary basis element b: vdim(tgt) x vdim(src).
    const FpMat& act(uint32_t b) const;
    // Action of a sparse element with matching Peirce type.
    FpMat act(const SparseElem& x, VertexId src, VertexId tgt) const;

    // Multiplicativity check: phi(g) phi(b) == phi(g b) for every generator g
    // and basis element b.  Throws InvariantError naming the offender.
    void validate() const;

    bool operator==(const ModuleRep& o) const;

  private:
    AlgebraPtr A_;
    std::vector<uint32_t> vdim_;
    std::vector<size_t> offsets_;
    size_t total_ = 0;
    std::vector<FpMat> gen_mats_;
    mutable std::vector<std::optional<FpMat>> memo_;
};

ModulePtr mk_module(ModuleRep&& m);

struct ModuleMap {
    ModulePtr dom, cod;
    std::vector<FpMat> comp; // per vertex, vdim_cod(v) x vdim_dom(v)

    void validate() const;       // intertwines all generator actions
    bool is_zero() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_isomorphism() const;
    FpMat total() const;         // block matrix on global coordinates
    static ModuleMap identity(ModulePtr M);
    static ModuleMap zero(ModulePtr dom, ModulePtr cod);
    ModuleMap then(const ModuleMap& next) const; // this followed by next
    ModuleMap operator+(const ModuleMap& o) const;
    ModuleMap scaled(uint32_t c) const;
};

enum class StandardKind { projective, simple, injective };

ModulePtr zero_module(AlgebraPtr A);
ModulePtr standard_module(AlgebraPtr A, StandardKind kind, VertexId v);
// The regular module A = sum of all P(v).
ModulePtr regular_module(AlgebraPtr A);

// Basis indices of the vertex-u component of P(v), ascending.
std::vector<uint32_t> proj_component_basis(const BasedAlgebra& A, VertexId v, VertexId u);

// Right multiplication by x in e_t A e_s, as a module map P(t) -> P(s).
ModuleMap right_mult_map(AlgebraPtr A, const SparseElem& x, VertexId s, VertexId t);

// Solution basis of the intertwiner equations.
std::vector<ModuleMap> hom_basis(const ModuleRep& M, const ModuleRep& N);
std::vector<ModuleMap> hom_basis(ModulePtr M, ModulePtr N);
size_t hom_dim(const ModuleRep& M, const ModuleRep& N);

struct MapSpaces {
    ModulePtr kernel;
    ModuleMap kernel_inclusion;
    ModulePtr image;
    ModuleMap image_inclusion;   // image -> codomain
    ModuleMap onto_image;        // domain -> image
    ModulePtr cokernel;
    ModuleMap cokernel_projection;
};
MapSpaces map_spaces(const ModuleMap& f);

// Submodule spanned by the given per-vertex column spaces, closed under the
// action; returns the module plus its inclusion.
std::pair<ModulePtr, ModuleMap> submodule_closure(ModulePtr M, const std::vector<FpMat>& seed_cols);
std::pair<ModulePtr, ModuleMap> quotient_module(ModulePtr M, const ModuleMap& inclusion);

struct Layers {
    ModulePtr rad;
    ModuleMap rad_inclusion;
    ModulePtr top;
    ModuleMap top_projection;
    ModulePtr socle;
    ModuleMap socle_inclusion;
    std::vector<size_t> radical_series; // dims of rad^k(M), k = 0, 1, ... down to 0
};
Layers layers(ModulePtr M);
std::vector<size_t> socle_series_dims(ModulePtr M);
size_t loewy_length(ModulePtr M);

struct DirectSum {
    ModulePtr total;
    std::vector<ModuleMap> injections;
    std::vector<ModuleMap> projections;
};
DirectSum direct_sum(AlgebraPtr A, const std::vector<ModulePtr>& parts);

// Conjugate by random per-vertex basis changes (same module, shuffled basis).
ModulePtr conjugated_copy(ModulePtr M, Rng& rng);

// Random module: a random quotient of a random finite sum of projectives.
ModulePtr random_module(AlgebraPtr A, Rng& rng, size_t max_proj_summands = 3, size_t max_cuts = 4);

// Necessary-condition fingerprint (never used to assert isomorphism):
// (dim vector, dim End, radical series, socle series).
struct ModuleFingerprint {
    std::vector<uint32_t> dim_vector;
    size_t end_dim;
    std::vector<size_t> radical_series;
    std::vector<size_t> socle_series;
    bool operator==(const ModuleFingerprint&) const = default;
    bool operator<(const ModuleFingerprint& o) const;
};
ModuleFingerprint module_fingerprint(ModulePtr M);

} // namespace qhom
