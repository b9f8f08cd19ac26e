#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhom/constructions.hpp"
#include "qhom/module.hpp"

namespace qhom {

// Multiset of indecomposable projectives, as a list of vertices.
using ProjList = std::vector<VertexId>;

ModulePtr projective_sum(AlgebraPtr A, const ProjList& projs);

// Matrix over the algebra describing a map  (+) Ae_{dom[j]} -> (+) Ae_{cod[i]}
// by right multiplication; entry(i, j) lies in e_{dom[j]} A e_{cod[i]}.
struct AlgElemMat {
    ProjList dom, cod;
    std::vector<std::vector<SparseElem>> entry;

    // All entries have zero coefficient on every trivial path.
    bool is_radical(const BasedAlgebra& A) const;
};

// Convert between an algebra matrix and the module map it induces.
ModuleMap alg_mat_to_map(AlgebraPtr A, const AlgElemMat& m);
AlgElemMat map_to_alg_mat(const ModuleMap& f, const ProjList& dom, const ProjList& cod);

struct CoverData {
    ModulePtr P;
    ProjList projs;
    ModuleMap f; // P -> M, surjective with kernel in rad P
};

// Minimal projective cover; the zero module returns the zero cover.
CoverData projective_cover(ModulePtr M);
bool is_projective(ModulePtr M);

// Exact n or an honest partial answer.  `bound` for kind unknown is the
// strict lower bound actually established (pd >= bound); kind infinite is
// only produced through a certificate (self-injective shortcut).
struct DimensionAnswer {
    enum class Kind { exact, unknown, infinite };
    Kind kind = Kind::unknown;
    uint32_t value = 0; // exact value, or the established lower bound

    static DimensionAnswer exact(uint32_t n) { return {Kind::exact, n}; }
    static DimensionAnswer unknown_at_least(uint32_t b) { return {Kind::unknown, b}; }
    static DimensionAnswer infinite() { return {Kind::infinite, 0}; }
    bool is_exact() const { return kind == Kind::exact; }
    bool operator==(const DimensionAnswer&) const = default;
    std::string to_string() const;
};

struct ResolutionSegment {
    ModulePtr target;
    std::vector<ProjList> projs;     // P_0 .. P_L
    ModuleMap cover;                 // P_0 -> M
    std::vector<AlgElemMat> diffs;   // diffs[k]: P_{k+1} -> P_k, radical
    std::vector<ModulePtr> syzygies; // Omega^1 .. Omega^{L+1}
    bool finished = false;           // the last syzygy is zero

    std::vector<std::vector<size_t>> betti(const BasedAlgebra& A) const; // per degree, per vertex
    std::string betti_table(const BasedAlgebra& A) const;
};

enum class GorKind { selfinjective, gorenstein, unknown };

struct GorensteinVerdict {
    DimensionAnswer id_left, id_right;
    GorKind kind = GorKind::unknown;
    uint32_t s = 0; // defined when kind != unknown
    std::string to_string() const;
};

// Shared per-algebra homological state: the chosen opposite/duality and a
// syzygy cache (exact content keys); single-threaded use.
class HomologyContext {
  public:
    explicit HomologyContext(AlgebraPtr A, size_t dim_budget = 4096)
        : A_(std::move(A)), dim_budget_(dim_budget) {}

    AlgebraPtr algebra() const { return A_; }
    // Built lazily; the opposite-algebra construction is only paid for when
    // duality is actually used.
    const DualityContext& duality() const {
        if (!dual_) dual_.emplace(A_);
        return *dual_;
    }
    size_t dim_budget() const { return dim_budget_; }
    void set_dim_budget(size_t b) { dim_budget_ = b; }

    ModulePtr syzygy_step(ModulePtr M); // Omega^1 via the cache
    bool selfinjective_certified(uint32_t probe_cutoff = 2);

    // Cached Gorenstein verdict with the cutoff it was computed at.
    std::optional<std::pair<GorensteinVerdict, uint32_t>> gorenstein_cache;

  private:
    AlgebraPtr A_;
    mutable std::optional<DualityContext> dual_;
    size_t dim_budget_;
    std::optional<bool> selfinj_;
    std::map<std::vector<uint32_t>, ModulePtr> syz_cache_;
};

// Omega^n(M); Omega^0(M) = M.  Stops with a ResourceError only if asked for
// an impossible budget; callers wanting budgeted scans use pd().
ModulePtr syzygy(HomologyContext& ctx, ModulePtr M, uint32_t n);

ResolutionSegment min_resolution(HomologyContext& ctx, ModulePtr M, uint32_t cutoff);

DimensionAnswer pd(HomologyContext& ctx, ModulePtr M, uint32_t cutoff, bool selfinj_shortcut = true);

// dim Ext^i(M, N) via Hom(P_*, N).
size_t ext_dim(HomologyContext& ctx, ModulePtr M, ModulePtr N, uint32_t i);

// id(_A A) computed as pd over A^op of D(_A A), and symmetrically (the dual
// engine; answers are up to isomorphism).
GorensteinVerdict selfinj_dims(HomologyContext& ctx, uint32_t cutoff);

// Hom_A(M, A) as a left A^op-module, with the chosen hom bases.
struct StarModule {
    ModulePtr star;                             // over A^op
    std::vector<std::vector<ModuleMap>> bases;  // per vertex v: basis of Hom(M, P(v))
};
StarModule star_module(HomologyContext& ctx, ModulePtr M);
// The canonical evaluation M -> M**; second component is the iso verdict.
std::pair<ModuleMap, bool> biduality(HomologyContext& ctx, ModulePtr M);

enum class GprojKind { certified_yes, certified_no, unknown };

struct GprojVerdict {
    GprojKind kind;
    std::string detail; // route or counterexample witness
};

GprojVerdict is_gproj(HomologyContext& ctx, ModulePtr M, uint32_t cutoff);

} // namespace qhom
