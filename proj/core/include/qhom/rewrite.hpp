#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qhom/quiver.hpp"

namespace qhom {

// One oriented rule lhs -> rhs; every monomial of rhs is smaller than lhs in
// the length-then-lex order and lhs has length >= 2.
struct RewriteRule {
    Path lhs;
    PathPoly rhs;
};

struct CompletionStats {
    size_t overlaps_processed = 0;
    size_t rules_final = 0;
};

// Confluent rewriting system for kQ / (relations [+ J^truncate]), complete on
// words of length <= degree_cap (the declared nilpotency N).  Words of length
// >= truncate reduce to zero outright when truncation is part of the ideal.
class ReductionSystem {
  public:
    enum class Strategy { largest_leftmost, smallest_rightmost };

    static ReductionSystem complete(const AlgebraPresentation& pres, size_t term_budget = 20000);

    const Quiver& quiver() const { return quiver_; }
    Fp field() const { return field_; }
    uint32_t degree_cap() const { return cap_; }
    std::optional<uint32_t> truncation() const { return trunc_; }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const CompletionStats& stats() const { return stats_; }

    PathPoly normal_form(const PathPoly& poly) const { return normal_form(poly, Strategy::largest_leftmost); }
    PathPoly normal_form(const PathPoly& poly, Strategy strategy) const;
    PathPoly normal_form(const Path& mono) const;

    // A monomial is normal when it is not killed by the truncation and no rule
    // left-hand side occurs as a contiguous subword.
    bool is_normal(const Path& mono) const;
    // All normal monomials, shortest first (trivial paths included).
    std::vector<Path> normal_monomials(size_t count_budget = 1u << 20) const;

    // Every path of length N must reduce to zero; returns a witness path with
    // nonzero normal form otherwise.
    std::optional<Path> admissibility_witness(size_t count_budget = 1u << 20) const;

  private:
    ReductionSystem() = default;
    bool reduce_once(PathPoly& poly, Strategy strategy) const;
    std::optional<std::pair<size_t, size_t>> find_redex(const Path& mono, bool leftmost) const;

    Quiver quiver_;
    Fp field_;
    uint32_t cap_ = 0;
    std::optional<uint32_t> trunc_;
    std::vector<RewriteRule> rules_;
    CompletionStats stats_;
};

} // namespace qhom
