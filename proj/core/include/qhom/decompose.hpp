#pragma once

#include <optional>
#include <vector>

#include "qhom/module.hpp"

namespace qhom {

struct IndecPiece {
    ModulePtr module;
    size_t multiplicity;
    bool local_certified; // End piece certified local via the trace-form radical
};

struct Decomposition {
    std::vector<IndecPiece> pieces; // sorted by (dim vector, fingerprint)
    ModulePtr sum;                  // direct sum in the sorted order
    ModuleMap witness;              // isomorphism sum -> M, verified
};

// Split off direct summands by exact spectral projectors of seeded-random
// endomorphisms; deterministic for a fixed seed.
Decomposition decompose(ModulePtr M, uint64_t seed = 1, size_t trial_budget = 48);

// Indecomposable-to-indecomposable isomorphism search (randomized units of
// the local hom space); returns a verified witness on success.
std::optional<ModuleMap> indec_isomorphic(ModulePtr X, ModulePtr Y, Rng& rng, size_t trials = 50);

// Module isomorphism through Krull-Schmidt matching; the witness is verified.
std::pair<bool, std::optional<ModuleMap>> modules_isomorphic(ModulePtr M, ModulePtr N, uint64_t seed = 1);

// Is X isomorphic to a direct summand combination from `summands`
// (add-membership)?  Checks that every indecomposable piece of X matches one.
bool in_add_closure(ModulePtr X, const std::vector<ModulePtr>& summands, uint64_t seed = 1);

ModuleMap invert_iso(const ModuleMap& f);

} // namespace qhom
