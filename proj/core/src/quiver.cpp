#include "qhom/quiver.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "qhom/error.hpp"

namespace qhom {

std::optional<VertexId> Quiver::vertex(const std::string& name) const {
    for (size_t i = 0; i < vertex_names.size(); ++i)
        if (vertex_names[i] == name) return static_cast<VertexId>(i);
    return std::nullopt;
}

std::optional<ArrowId> Quiver::arrow(const std::string& label) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].label == label) return static_cast<ArrowId>(i);
    return std::nullopt;
}

std::string to_string(Composition c) {
    return c == Composition::function ? "function" : "diagrammatic";
}

void poly_add_term(PathPoly& poly, const Path& mono, uint32_t coeff, Fp F) {
    if (coeff % F.p == 0) return;
    auto it = poly.find(mono);
    if (it == poly.end()) {
        poly.emplace(mono, coeff % F.p);
    } else {
        it->second = F.add(it->second, coeff % F.p);
        if (it->second == 0) poly.erase(it);
    }
}

PathPoly poly_scale(const PathPoly& poly, uint32_t c, Fp F) {
    PathPoly out;
    if (c % F.p == 0) return out;
    for (const auto& [m, x] : poly) out.emplace(m, F.mul(x, c));
    return out;
}

PathPoly poly_sub(const PathPoly& a, const PathPoly& b, Fp F) {
    PathPoly out = a;
    for (const auto& [m, x] : b) poly_add_term(out, m, F.neg(x), F);
    return out;
}

Path concat(const Path& p, const Path& q, const Quiver& Q) {
    assert(p.target(Q) == q.source());
    Path r;
    r.base = p.base;
    r.seq = p.seq;
    r.seq.insert(r.seq.end(), q.seq.begin(), q.seq.end());
    return r;
}

std::string path_to_string(const Path& p, const Quiver& Q, Composition c) {
    if (p.trivial()) return "e_" + Q.vertex_names[p.base];
    std::vector<std::string> labels;
    for (ArrowId a : p.seq) labels.push_back(Q.arrows[a].label);
    if (c == Composition::function) std::reverse(labels.begin(), labels.end());
    std::string out = labels[0];
    for (size_t i = 1; i < labels.size(); ++i) out += "*" + labels[i];
    return out;
}

std::string poly_to_string(const PathPoly& poly, const Quiver& Q, Composition c) {
    if (poly.empty()) return "0";
    std::string out;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        if (!out.empty()) out += " + ";
        if (it->second != 1) out += std::to_string(it->second) + " ";
        out += path_to_string(it->first, Q, c);
    }
    return out;
}

void AlgebraPresentation::validate() const {
    if (quiver.num_vertices() == 0) throw InvariantError("presentation '" + name + "': quiver has no vertices");
    std::set<std::string> seen;
    for (const auto& a : quiver.arrows) {
        if (!seen.insert(a.label).second)
            throw InvariantError("presentation '" + name + "': duplicate arrow label '" + a.label + "'");
        if (a.src >= quiver.num_vertices() || a.tgt >= quiver.num_vertices())
            throw InvariantError("presentation '" + name + "': arrow '" + a.label + "' references unknown vertex");
    }
    {
        std::set<std::string> vnames(quiver.vertex_names.begin(), quiver.vertex_names.end());
        if (vnames.size() != quiver.vertex_names.size())
            throw InvariantError("presentation '" + name + "': duplicate vertex name");
    }
    if (nilpotency < 2) throw InvariantError("presentation '" + name + "': nilpotency degree must be >= 2");
    if (truncate && *truncate < 2) throw InvariantError("presentation '" + name + "': truncate degree must be >= 2");
    for (const auto& rel : relations) {
        if (rel.terms.empty()) throw InvariantError("presentation '" + name + "': empty relation");
        const Path& first = rel.terms.begin()->first;
        for (const auto& [m, c] : rel.terms) {
            if (c == 0 || c >= field.p)
                throw InvariantError("presentation '" + name + "': relation coefficient out of range");
            if (m.length() < 2)
                throw InvariantError("presentation '" + name + "': relation term of length < 2 (ideal must lie in J^2)");
            if (m.source() != first.source() || m.target(quiver) != first.target(quiver))
                throw InvariantError("presentation '" + name + "': non-parallel terms in relation " +
                                     poly_to_string(rel.terms, quiver, composition));
            for (ArrowId a : m.seq)
                if (a >= quiver.num_arrows())
                    throw InvariantError("presentation '" + name + "': relation references unknown arrow");
            // Composability of consecutive arrows.
            for (size_t i = 0; i + 1 < m.seq.size(); ++i)
                if (quiver.arrows[m.seq[i]].tgt != quiver.arrows[m.seq[i + 1]].src)
                    throw InvariantError("presentation '" + name + "': non-composable path in relation");
        }
    }
}

} // namespace qhom
