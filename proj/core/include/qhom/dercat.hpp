#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhom/homology.hpp"
#include "qhom/module.hpp"

namespace qhom {

// Bounded complex of projectives carried on an explicit degree window
// [lo, hi]; diffs[k] maps degree lo+k to degree lo+k+1.  The radical
// invariant (all differential entries in rad A) holds for minimal complexes;
// intermediate results of cones may violate it until minimized.
struct RadicalProjComplex {
    AlgebraPtr A;
    int lo = 0;
    int hi = -1; // empty when hi < lo
    std::vector<ProjList> objs;
    std::vector<AlgElemMat> diffs;

    bool empty() const { return hi < lo; }
    bool in_window(int d) const { return d >= lo && d <= hi; }
    const ProjList& obj(int d) const;
    size_t dim_at(int d) const;
    bool is_radical() const;
    // d*d = 0, Peirce typing, window consistency; radicality when required.
    void validate(bool require_radical = true) const;
    std::vector<size_t> cohomology_dims() const; // indexed lo..hi
    // Trim zero objects at both ends (keeps inner zeros).
    void trim();
};

struct ModuleComplex {
    AlgebraPtr A;
    int lo = 0;
    int hi = -1;
    std::vector<ModulePtr> objs;
    std::vector<ModuleMap> diffs;

    bool empty() const { return hi < lo; }
    ModulePtr obj(int d) const;
    void validate() const; // d*d = 0
    std::vector<size_t> cohomology_dims() const;
    // Cohomology window [s, t] (degrees with nonzero cohomology); nullopt if exact.
    std::optional<std::pair<int, int>> cohomology_window() const;
};

// Chain map between projective complexes; comp[d]: X^d -> Y^d.
struct ComplexChainMap {
    std::map<int, AlgElemMat> comp;
};

RadicalProjComplex zero_complex(AlgebraPtr A);
RadicalProjComplex proj_stalk(AlgebraPtr A, const ProjList& projs, int deg);
ModuleComplex module_stalk(ModulePtr M, int deg);
ModuleComplex to_module_complex(const RadicalProjComplex& X);

// Shift [k]: degree i of the result is degree i+k of X; differentials pick up
// the sign (-1)^k.
RadicalProjComplex shift_complex(const RadicalProjComplex& X, int k);
ModuleComplex shift_complex(const ModuleComplex& X, int k);
RadicalProjComplex direct_sum_complex(const RadicalProjComplex& X, const RadicalProjComplex& Y);
// Brutal truncation keeping degrees <= n.
RadicalProjComplex brutal_le(const RadicalProjComplex& X, int n);

// Mapping cone of a chain map f: X -> Y (degreewise Y^i + X^{i+1}); not
// minimized and generally not radical.
RadicalProjComplex cone_complex(const RadicalProjComplex& X, const RadicalProjComplex& Y,
                                const ComplexChainMap& f);

// Summands split off during minimization: for each lower degree j, the
// projectives of the removed identity blocks spanning (j, j+1).
using MinimizeLog = std::map<int, ProjList>;

// Strip contractible identity blocks until the complex is radical.
RadicalProjComplex minimize(RadicalProjComplex X, MinimizeLog* log = nullptr);

// Minimal projective resolution of a bounded complex of modules, computed to
// `window` extra degrees on the left, with the comparison quasi-isomorphism.
struct ResolvedComplex {
    RadicalProjComplex R;
    // Comparison chain map q: R -> X (per degree of X's window and below).
    std::map<int, ModuleMap> q;
    bool terminated_left = false; // resolution became zero before the window edge
    int valid_from = 0;           // degrees >= valid_from are exact/minimal
};

ResolvedComplex resolve_complex(const ModuleComplex& X, int window);

// n-th syzygy complex: brutal truncation at degrees <= -n of the minimal
// resolution, shifted by [-n].  Throws when the window does not cover -n.
RadicalProjComplex syzygy_complex(const ResolvedComplex& res, int n);
RadicalProjComplex syzygy_complex(const RadicalProjComplex& minimal, int n);
// Convenience: resolve a stalk module and take the syzygy complex.
RadicalProjComplex syzygy_complex(HomologyContext& ctx, ModulePtr M, int n, int window);

// Cosyzygy complex via the duality engine (up to isomorphism); the result is
// a bounded complex of injective A-modules, returned as a module complex.
ModuleComplex cosyzygy_complex(HomologyContext& ctx, const ModuleComplex& X, int n, int window);

// Basis of the space of chain maps X -> Y on the overlapping window.
std::vector<ComplexChainMap> chain_map_space(const RadicalProjComplex& X, const RadicalProjComplex& Y);

enum class ComplexIso { isomorphic, distinct, inconclusive };

struct ComplexIsoResult {
    ComplexIso verdict;
    std::string reason;
    std::optional<ComplexChainMap> witness;
};

// Three-valued verifier: distinct on structural disagreement (degreewise
// projective multisets or cohomology), isomorphic with a degreewise-invertible
// witness, otherwise inconclusive.  Both inputs must be radical.
ComplexIsoResult complex_iso_test(const RadicalProjComplex& X, const RadicalProjComplex& Y, uint64_t seed,
                                  size_t trials = 64);

// Random radical complex with d*d = 0 (summand counts kept small).
RadicalProjComplex random_radical_complex(AlgebraPtr A, Rng& rng, int lo, int hi, size_t max_summands = 2);
ComplexChainMap random_chain_map(const RadicalProjComplex& X, const RadicalProjComplex& Y, Rng& rng);

struct HarnessReport {
    bool ok = true;
    std::vector<std::string> lines;
    void check(bool cond, const std::string& what);
};

// Syzygy-calculus property harness on one seeded instance family over A:
// placement, shift compatibility, composition, additivity, the projective
// triangle, the syzygy triangle of a cone, perfectness transfer, module
// agreement and cosyzygy placement.
HarnessReport check_syzygy_axioms(AlgebraPtr A, uint64_t seed);

} // namespace qhom
