#include "qhom/rewrite.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

#include "qhom/error.hpp"

namespace qhom {

namespace {

// Does `word` contain `sub` starting at position pos?
bool occurs_at(const std::vector<ArrowId>& word, const std::vector<ArrowId>& sub, size_t pos) {
    if (pos + sub.size() > word.size()) return false;
    return std::equal(sub.begin(), sub.end(), word.begin() + pos);
}

Path subpath(const Path& p, const Quiver& Q, size_t pos, size_t len) {
    Path r;
    if (len == 0) {
        r.base = pos == 0 ? p.base : Q.arrows[p.seq[pos - 1]].tgt;
        return r;
    }
    r.base = Q.arrows[p.seq[pos]].src;
    r.seq.assign(p.seq.begin() + pos, p.seq.begin() + pos + len);
    return r;
}

} // namespace

std::optional<std::pair<size_t, size_t>> ReductionSystem::find_redex(const Path& mono, bool leftmost) const {
    if (leftmost) {
        for (size_t pos = 0; pos < mono.seq.size(); ++pos)
            for (size_t r = 0; r < rules_.size(); ++r)
                if (occurs_at(mono.seq, rules_[r].lhs.seq, pos)) return std::make_pair(r, pos);
    } else {
        for (size_t pos = mono.seq.size(); pos-- > 0;)
            for (size_t r = rules_.size(); r-- > 0;)
                if (occurs_at(mono.seq, rules_[r].lhs.seq, pos)) return std::make_pair(r, pos);
    }
    return std::nullopt;
}

bool ReductionSystem::is_normal(const Path& mono) const {
    if (trunc_ && mono.length() >= *trunc_) return false;
    return !find_redex(mono, true).has_value();
}

bool ReductionSystem::reduce_once(PathPoly& poly, Strategy strategy) const {
    const bool largest = (strategy == Strategy::largest_leftmost);
    // Select a redex first; mutating the map invalidates iterators.
    struct Redex {
        Path mono;
        uint32_t coeff;
        bool kill; // truncated monomial
        size_t rule, pos;
    };
    std::optional<Redex> hit;
    auto inspect = [&](const Path& mono, uint32_t coeff) -> bool {
        if (trunc_ && mono.length() >= *trunc_) {
            hit = Redex{mono, coeff, true, 0, 0};
            return true;
        }
        if (auto r = find_redex(mono, largest)) {
            hit = Redex{mono, coeff, false, r->first, r->second};
            return true;
        }
        return false;
    };
    if (largest) {
        for (auto it = poly.rbegin(); it != poly.rend(); ++it)
            if (inspect(it->first, it->second)) break;
    } else {
        for (auto it = poly.begin(); it != poly.end(); ++it)
            if (inspect(it->first, it->second)) break;
    }
    if (!hit) return false;
    poly_add_term(poly, hit->mono, field_.neg(hit->coeff), field_);
    if (hit->kill) return true;
    const RewriteRule& rule = rules_[hit->rule];
    Path pre = subpath(hit->mono, quiver_, 0, hit->pos);
    Path post = subpath(hit->mono, quiver_, hit->pos + rule.lhs.seq.size(),
                        hit->mono.seq.size() - hit->pos - rule.lhs.seq.size());
    for (const auto& [m, c] : rule.rhs) {
        Path repl = concat(concat(pre, m, quiver_), post, quiver_);
        if (trunc_ && repl.length() >= *trunc_) continue;
        poly_add_term(poly, repl, field_.mul(hit->coeff, c), field_);
    }
    return true;
}

PathPoly ReductionSystem::normal_form(const PathPoly& poly, Strategy strategy) const {
    PathPoly cur = poly;
    // Drop truncated monomials up front.
    if (trunc_) {
        for (auto it = cur.begin(); it != cur.end();)
            it = (it->first.length() >= *trunc_) ? cur.erase(it) : std::next(it);
    }
    while (reduce_once(cur, strategy)) {
    }
    return cur;
}

PathPoly ReductionSystem::normal_form(const Path& mono) const {
    PathPoly p;
    p.emplace(mono, 1);
    return normal_form(p);
}

std::vector<Path> ReductionSystem::normal_monomials(size_t count_budget) const {
    std::vector<Path> out;
    std::deque<Path> frontier;
    for (VertexId v = 0; v < quiver_.num_vertices(); ++v) {
        Path e;
        e.base = v;
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        Path p = std::move(frontier.front());
        frontier.pop_front();
        out.push_back(p);
        if (out.size() > count_budget)
            throw ResourceError("normal_monomials: monomial count budget exhausted");
        if (p.length() + 1 >= cap_) continue; // normal monomials live in length < N
        VertexId t = p.target(quiver_);
        for (ArrowId a = 0; a < quiver_.num_arrows(); ++a) {
            if (quiver_.arrows[a].src != t) continue;
            Path q = p;
            if (q.trivial()) q.base = quiver_.arrows[a].src;
            q.seq.push_back(a);
            if (is_normal(q)) frontier.push_back(q);
        }
    }
    std::sort(out.begin(), out.end(), [](const Path& a, const Path& b) { return PathLess{}(a, b); });
    return out;
}

std::optional<Path> ReductionSystem::admissibility_witness(size_t count_budget) const {
    // Enumerate all paths of length exactly N and reduce each.
    std::deque<Path> frontier;
    for (VertexId v = 0; v < quiver_.num_vertices(); ++v) {
        Path e;
        e.base = v;
        frontier.push_back(e);
    }
    size_t seen = 0;
    while (!frontier.empty()) {
        Path p = std::move(frontier.front());
        frontier.pop_front();
        if (++seen > count_budget) throw ResourceError("admissibility check: path count budget exhausted");
        if (p.length() == cap_) {
            if (!normal_form(p).empty()) return p;
            continue;
        }
        VertexId t = p.target(quiver_);
        for (ArrowId a = 0; a < quiver_.num_arrows(); ++a) {
            if (quiver_.arrows[a].src != t) continue;
            Path q = p;
            if (q.trivial()) q.base = quiver_.arrows[a].src;
            q.seq.push_back(a);
            frontier.push_back(q);
        }
    }
    return std::nullopt;
}

ReductionSystem ReductionSystem::complete(const AlgebraPresentation& pres, size_t term_budget) {
    pres.validate();
    ReductionSystem rs;
    rs.quiver_ = pres.quiver;
    rs.field_ = pres.field;
    rs.cap_ = pres.nilpotency;
    rs.trunc_ = pres.truncate;

    std::deque<PathPoly> queue;
    for (const auto& rel : pres.relations) queue.push_back(rel.terms);

    size_t processed = 0;
    auto push_rule = [&](PathPoly poly) {
        poly = rs.normal_form(std::move(poly));
        if (poly.empty()) return;
        // Leading monomial is the largest; orient and normalize.
        auto lead = std::prev(poly.end());
        Path lhs = lead->first;
        uint32_t inv = rs.field_.inv(lead->second);
        PathPoly rhs;
        for (auto it = poly.begin(); it != lead; ++it)
            rhs.emplace(it->first, rs.field_.mul(rs.field_.neg(it->second), inv));
        // Retire any existing rule whose lhs the new lhs divides; requeue it.
        std::vector<RewriteRule> kept;
        kept.reserve(rs.rules_.size());
        for (auto& rule : rs.rules_) {
            bool reducible = false;
            for (size_t pos = 0; pos + lhs.seq.size() <= rule.lhs.seq.size() && !reducible; ++pos)
                reducible = occurs_at(rule.lhs.seq, lhs.seq, pos);
            if (reducible) {
                PathPoly back;
                back.emplace(rule.lhs, 1);
                back = poly_sub(back, rule.rhs, rs.field_);
                queue.push_back(std::move(back));
            } else {
                kept.push_back(std::move(rule));
            }
        }
        rs.rules_ = std::move(kept);

        // Overlap superpositions with every surviving rule (both orders),
        // bounded by the degree cap.
        auto add_overlaps = [&](const RewriteRule& r1, const RewriteRule& r2) {
            const auto& u = r1.lhs.seq;
            const auto& v = r2.lhs.seq;
            for (size_t k = 1; k < std::min(u.size(), v.size()); ++k) {
                // suffix of u of length k == prefix of v of length k
                if (!std::equal(u.end() - k, u.end(), v.begin())) continue;
                size_t total = u.size() + v.size() - k;
                // Confluence is only needed on words of length <= N; longer
                // superpositions never influence those normal forms.
                if (total > rs.cap_) continue;
                Path w;
                w.base = r1.lhs.base;
                w.seq = u;
                w.seq.insert(w.seq.end(), v.begin() + k, v.end());
                // S-polynomial: rewrite w two ways and subtract.
                Path tail = subpath(w, rs.quiver_, u.size(), w.seq.size() - u.size());
                Path head = subpath(w, rs.quiver_, 0, w.seq.size() - v.size());
                PathPoly via1; // r1 applied at the front
                for (const auto& [m, c] : r1.rhs) via1.emplace(concat(m, tail, rs.quiver_), c);
                PathPoly via2; // r2 applied at the back
                for (const auto& [m, c] : r2.rhs) via2.emplace(concat(head, m, rs.quiver_), c);
                queue.push_back(poly_sub(via1, via2, rs.field_));
                ++rs.stats_.overlaps_processed;
            }
        };
        RewriteRule fresh{lhs, std::move(rhs)};
        for (const auto& rule : rs.rules_) {
            add_overlaps(fresh, rule);
            add_overlaps(rule, fresh);
        }
        add_overlaps(fresh, fresh);
        rs.rules_.push_back(std::move(fresh));
    };

    while (!queue.empty()) {
        if (++processed > term_budget)
            throw ResourceError("complete_rewriting: overlap completion exceeds configured term budget (" +
                                std::to_string(term_budget) + ")");
        PathPoly next = std::move(queue.front());
        queue.pop_front();
        push_rule(std::move(next));
    }
    rs.stats_.rules_final = rs.rules_.size();
    return rs;
}

} // namespace qhom
