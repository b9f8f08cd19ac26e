#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhom/fp.hpp"

namespace qhom {

using VertexId = uint32_t;
using ArrowId = uint32_t;

struct Arrow {
    std::string label;
    VertexId src, tgt;
};

struct Quiver {
    std::vector<std::string> vertex_names;
    std::vector<Arrow> arrows;

    std::optional<VertexId> vertex(const std::string& name) const;
    std::optional<ArrowId> arrow(const std::string& label) const;
    size_t num_vertices() const { return vertex_names.size(); }
    size_t num_arrows() const { return arrows.size(); }
};

// How relation text composes paths.  Under `function`, the word "g*a" means
// apply a first, then g (so a: u -> v and g: v -> w compose to u -> w).
// Under `diagrammatic` the word reads left to right along the quiver.
enum class Composition { function, diagrammatic };

std::string to_string(Composition c);

// A path, stored as the arrow sequence in travel (diagrammatic) order:
// arrows[i].tgt == arrows[i+1].src.  Trivial paths carry only the vertex.
struct Path {
    VertexId base = 0; // source vertex, also the vertex of a trivial path
    std::vector<ArrowId> seq;

    size_t length() const { return seq.size(); }
    bool trivial() const { return seq.empty(); }
    VertexId source() const { return base; }
    VertexId target(const Quiver& Q) const { return seq.empty() ? base : Q.arrows[seq.back()].tgt; }

    bool operator==(const Path& o) const { return base == o.base && seq == o.seq; }
};

// Monomial order: length first, then lexicographic on arrow ids in travel
// order, then source vertex (for trivial paths).
struct PathLess {
    bool operator()(const Path& a, const Path& b) const {
        if (a.seq.size() != b.seq.size()) return a.seq.size() < b.seq.size();
        if (a.seq != b.seq) return a.seq < b.seq;
        return a.base < b.base;
    }
};

// Formal F_p-linear combination of paths.
using PathPoly = std::map<Path, uint32_t, PathLess>;

void poly_add_term(PathPoly& poly, const Path& mono, uint32_t coeff, Fp F);
PathPoly poly_scale(const PathPoly& poly, uint32_t c, Fp F);
PathPoly poly_sub(const PathPoly& a, const PathPoly& b, Fp F);

// A relation: parallel paths (same source, same target), all of length >= 2,
// with nonzero coefficients.
struct Relation {
    PathPoly terms;
};

struct AlgebraPresentation {
    std::string name; // usually the file stem
    Quiver quiver;
    std::vector<Relation> relations;
    uint32_t nilpotency = 0;            // declared N with J^N contained in the ideal
    std::optional<uint32_t> truncate;   // when set, J^truncate is added to the ideal
    Fp field;
    Composition composition = Composition::function;

    // Structural validation (vertex/arrow references, parallelism, term
    // lengths, N >= 2, p prime).  Throws InvariantError on failure.
    void validate() const;
};

// Concatenation p then q (travel order); the caller checks composability.
Path concat(const Path& p, const Path& q, const Quiver& Q);

std::string path_to_string(const Path& p, const Quiver& Q, Composition c);
std::string poly_to_string(const PathPoly& poly, const Quiver& Q, Composition c);

} // namespace qhom
