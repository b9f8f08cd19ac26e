#include "qhom/parse.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "qhom/error.hpp"

namespace qhom {

namespace {

struct LineCursor {
    const std::string& s;
    int line;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    int col() const { return static_cast<int>(pos) + 1; }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string& what) {
        if (!accept(c)) throw ParseError(line, col(), "expected '" + std::string(1, c) + "' " + what);
    }
    // Identifiers: alphanumerics plus _ and '.
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\''))
            ++pos;
        if (pos == start) throw ParseError(line, col(), "expected identifier");
        return s.substr(start, pos - start);
    }
    long integer() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError(line, col(), "expected integer");
        return std::stol(s.substr(start, pos - start));
    }
    bool at_integer() {
        skip_ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
};

Path make_path_from_labels(const std::vector<std::string>& labels, const Quiver& Q, Composition comp, int line,
                           int col) {
    std::vector<ArrowId> seq;
    for (const auto& lab : labels) {
        auto a = Q.arrow(lab);
        if (!a) throw ParseError(line, col, "unknown arrow '" + lab + "'");
        seq.push_back(*a);
    }
    if (comp == Composition::function) std::reverse(seq.begin(), seq.end());
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        if (Q.arrows[seq[i]].tgt != Q.arrows[seq[i + 1]].src)
            throw ParseError(line, col,
                             "non-composable word (under " + to_string(comp) + " composition): arrow '" +
                                 Q.arrows[seq[i]].label + "' does not reach '" + Q.arrows[seq[i + 1]].label + "'");
    Path p;
    p.base = seq.empty() ? 0 : Q.arrows[seq.front()].src;
    p.seq = std::move(seq);
    return p;
}

} // namespace

AlgebraPresentation parse_presentation(const std::string& text, Composition default_comp, const std::string& name) {
    AlgebraPresentation pres;
    pres.name = name;
    pres.composition = default_comp;
    bool field_seen = false, nilp_seen = false, vertices_seen = false;
    struct PendingRel {
        std::string body;
        int line;
    };
    std::vector<PendingRel> pending;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        LineCursor cur{raw, lineno};
        if (cur.done()) continue;
        std::string kw = cur.ident();
        if (kw == "field") {
            std::string pname = cur.ident();
            if (pname != "p") throw ParseError(lineno, cur.col(), "expected 'p=<prime>'");
            cur.expect('=', "after p");
            long p = cur.integer();
            if (p < 2 || !is_prime(static_cast<uint32_t>(p)))
                throw ParseError(lineno, cur.col(), "field characteristic must be a prime");
            pres.field = Fp(static_cast<uint32_t>(p));
            field_seen = true;
        } else if (kw == "composition") {
            std::string mode = cur.ident();
            if (mode == "function")
                pres.composition = Composition::function;
            else if (mode == "diagrammatic")
                pres.composition = Composition::diagrammatic;
            else
                throw ParseError(lineno, cur.col(), "composition must be 'function' or 'diagrammatic'");
        } else if (kw == "vertices") {
            while (!cur.done()) {
                std::string v = cur.ident();
                if (pres.quiver.vertex(v)) throw ParseError(lineno, cur.col(), "duplicate vertex '" + v + "'");
                pres.quiver.vertex_names.push_back(v);
            }
            vertices_seen = true;
        } else if (kw == "arrow") {
            std::string label = cur.ident();
            cur.expect(':', "after arrow label");
            std::string sv = cur.ident();
            cur.expect('-', "in '->'");
            cur.expect('>', "in '->'");
            std::string tv = cur.ident();
            auto s = pres.quiver.vertex(sv);
            if (!s) throw ParseError(lineno, cur.col(), "unknown vertex '" + sv + "'");
            auto t = pres.quiver.vertex(tv);
            if (!t) throw ParseError(lineno, cur.col(), "unknown vertex '" + tv + "'");
            if (pres.quiver.arrow(label)) throw ParseError(lineno, cur.col(), "duplicate arrow label '" + label + "'");
            pres.quiver.arrows.push_back({label, *s, *t});
        } else if (kw == "relation") {
            cur.skip_ws();
            pending.push_back({raw.substr(cur.pos), lineno});
        } else if (kw == "nilpotency") {
            long n = cur.integer();
            if (n < 2) throw ParseError(lineno, cur.col(), "nilpotency degree must be >= 2");
            pres.nilpotency = static_cast<uint32_t>(n);
            nilp_seen = true;
        } else if (kw == "truncate") {
            long n = cur.integer();
            if (n < 2) throw ParseError(lineno, cur.col(), "truncate degree must be >= 2");
            pres.truncate = static_cast<uint32_t>(n);
        } else {
            throw ParseError(lineno, 1, "unknown directive '" + kw + "'");
        }
        if (!cur.done() && kw != "relation")
            throw ParseError(lineno, cur.col(), "trailing text");
    }

    if (!field_seen) pres.field = Fp(101);
    if (!vertices_seen) throw ParseError(lineno, 1, "missing 'vertices' line");
    if (!nilp_seen) throw ParseError(lineno, 1, "missing 'nilpotency' line");

    // Relations are parsed after the whole header so arrows declared below a
    // relation line still resolve.
    for (const auto& pr : pending) {
        LineCursor cur{pr.body, pr.line};
        PathPoly poly;
        uint32_t sign = 1;
        bool first_term = true;
        while (true) {
            if (cur.done()) {
                if (first_term) throw ParseError(pr.line, cur.col(), "empty relation");
                break;
            }
            if (!first_term) {
                if (cur.accept('+'))
                    sign = 1;
                else if (cur.accept('-'))
                    sign = pres.field.p - 1;
                else
                    throw ParseError(pr.line, cur.col(), "expected '+' or '-' between relation terms");
            } else if (cur.accept('-')) {
                sign = pres.field.p - 1;
            }
            uint32_t coeff = 1;
            if (cur.at_integer()) {
                long c = cur.integer();
                coeff = pres.field.reduce(c);
                cur.accept('*');
            }
            std::vector<std::string> labels;
            labels.push_back(cur.ident());
            while (cur.accept('*')) labels.push_back(cur.ident());
            Path mono = make_path_from_labels(labels, pres.quiver, pres.composition, pr.line, cur.col());
            poly_add_term(poly, mono, pres.field.mul(sign, coeff), pres.field);
            first_term = false;
            sign = 1;
        }
        if (!poly.empty()) {
            // Parallelism and length checks happen here so the error carries
            // the source line.
            const Path& lead = poly.begin()->first;
            for (const auto& [m, c] : poly) {
                (void)c;
                if (m.length() < 2)
                    throw ParseError(pr.line, 1, "relation term of length < 2 (admissibility requires I within J^2)");
                if (m.source() != lead.source() || m.target(pres.quiver) != lead.target(pres.quiver))
                    throw ParseError(pr.line, 1, "non-parallel terms in relation");
            }
            pres.relations.push_back({std::move(poly)});
        }
    }

    pres.validate();
    return pres;
}

AlgebraPresentation parse_presentation_file(const std::string& path, Composition default_comp) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::parse, "cannot open presentation file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    return parse_presentation(ss.str(), default_comp, stem);
}

} // namespace qhom
