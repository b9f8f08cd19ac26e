#include "qhom/polyfp.hpp"

#include <algorithm>
#include <cassert>

namespace qhom {

void PolyFp::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
    std::vector<uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F_.add(coeff(i), o.coeff(i));
    return PolyFp(F_, std::move(r));
}

PolyFp PolyFp::operator-(const PolyFp& o) const {
    std::vector<uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = F_.sub(coeff(i), o.coeff(i));
    return PolyFp(F_, std::move(r));
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
    if (is_zero() || o.is_zero()) return zero(F_);
    std::vector<uint32_t> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = static_cast<uint32_t>((r[i + j] + (uint64_t)c_[i] * o.c_[j]) % F_.p);
    }
    return PolyFp(F_, std::move(r));
}

PolyFp PolyFp::scaled(uint32_t s) const {
    std::vector<uint32_t> r = c_;
    for (auto& x : r) x = F_.mul(x, s);
    return PolyFp(F_, std::move(r));
}

PolyFp PolyFp::monic() const {
    if (is_zero()) return *this;
    return scaled(F_.inv(lead()));
}

PolyFp PolyFp::derivative() const {
    if (c_.size() <= 1) return zero(F_);
    std::vector<uint32_t> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = F_.mul(c_[i], static_cast<uint32_t>(i % F_.p));
    return PolyFp(F_, std::move(r));
}

std::pair<PolyFp, PolyFp> PolyFp::divmod(const PolyFp& d) const {
    assert(!d.is_zero());
    PolyFp r = *this;
    if (r.degree() < d.degree()) return {zero(F_), r};
    std::vector<uint32_t> q(r.degree() - d.degree() + 1, 0);
    uint32_t lead_inv = F_.inv(d.lead());
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        uint32_t f = F_.mul(r.lead(), lead_inv);
        q[shift] = f;
        std::vector<uint32_t> rc = r.c_;
        for (size_t i = 0; i < d.c_.size(); ++i)
            rc[i + shift] = F_.sub(rc[i + shift], F_.mul(f, d.c_[i]));
        r = PolyFp(F_, std::move(rc));
    }
    return {PolyFp(F_, std::move(q)), r};
}

PolyFp PolyFp::gcd(PolyFp a, PolyFp b) {
    while (!b.is_zero()) {
        PolyFp r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyFp PolyFp::powmod(const PolyFp& base, uint64_t e, const PolyFp& modulus) {
    PolyFp result = constant(base.F_, 1);
    PolyFp b = base.mod(modulus);
    while (e) {
        if (e & 1) result = (result * b).mod(modulus);
        b = (b * b).mod(modulus);
        e >>= 1;
    }
    return result;
}

namespace {

// Equal-degree splitting (Cantor-Zassenhaus) of a squarefree product of
// irreducibles all of degree d.
void equal_degree_split(const PolyFp& f, int d, Rng& rng, std::vector<PolyFp>& out) {
    Fp F = f.field();
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    for (int tries = 0; tries < 400; ++tries) {
        std::vector<uint32_t> rc(f.degree(), 0);
        for (auto& x : rc) x = rng.field_elem(F);
        PolyFp a(F, std::move(rc));
        if (a.is_zero()) continue;
        PolyFp g = PolyFp::gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f.divmod(g).first, d, rng, out);
            return;
        }
        // b = a^((p^d - 1)/2) - 1 splits with probability about 1/2 (p odd).
        uint64_t e = 1;
        for (int i = 0; i < d; ++i) e *= F.p;
        e = (e - 1) / 2;
        PolyFp b = PolyFp::powmod(a, e, f) - PolyFp::constant(F, 1);
        g = PolyFp::gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f.divmod(g).first, d, rng, out);
            return;
        }
    }
    throw ResourceError("equal_degree_split: factorization trial budget exhausted");
}

void squarefree_factor(const PolyFp& f, int mult, Rng& rng, std::vector<std::pair<PolyFp, int>>& out);

// Distinct-degree factorization of a monic squarefree f, then equal-degree.
void factor_squarefree(const PolyFp& f, int mult, Rng& rng, std::vector<std::pair<PolyFp, int>>& out) {
    Fp F = f.field();
    PolyFp rest = f;
    PolyFp h = PolyFp::x(F);
    int d = 0;
    while (rest.degree() > 0) {
        ++d;
        if (2 * d > rest.degree()) {
            out.emplace_back(rest.monic(), mult);
            break;
        }
        h = PolyFp::powmod(h, F.p, rest); // h = x^(p^d) mod rest
        PolyFp g = PolyFp::gcd(h - PolyFp::x(F), rest);
        if (g.degree() > 0) {
            std::vector<PolyFp> eq;
            equal_degree_split(g, d, rng, eq);
            for (auto& q : eq) out.emplace_back(q, mult);
            rest = rest.divmod(g).first;
            h = h.mod(rest);
        }
    }
}

void squarefree_factor(const PolyFp& f, int mult, Rng& rng, std::vector<std::pair<PolyFp, int>>& out) {
    Fp F = f.field();
    PolyFp fm = f.monic();
    if (fm.degree() <= 0) return;
    PolyFp d = fm.derivative();
    if (d.is_zero()) {
        // f = g(x^p) = g(x)^p over F_p.
        std::vector<uint32_t> g((fm.degree() / F.p) + 1, 0);
        for (size_t i = 0; i < g.size(); ++i) g[i] = fm.coeff(i * F.p);
        squarefree_factor(PolyFp(F, std::move(g)), mult * static_cast<int>(F.p), rng, out);
        return;
    }
    PolyFp c = PolyFp::gcd(fm, d);
    PolyFp w = fm.divmod(c).first; // squarefree part
    int i = 1;
    while (w.degree() > 0) {
        PolyFp y = PolyFp::gcd(w, c);
        PolyFp fac = w.divmod(y).first; // product of factors with multiplicity exactly i
        if (fac.degree() > 0) factor_squarefree(fac, mult * i, rng, out);
        w = y;
        c = c.divmod(y).first;
        ++i;
    }
    if (c.degree() > 0) squarefree_factor(c, mult, rng, out);
}

} // namespace

std::vector<std::pair<PolyFp, int>> factor_poly(const PolyFp& f, Rng& rng) {
    std::vector<std::pair<PolyFp, int>> out;
    if (f.degree() <= 0) return out;
    squarefree_factor(f, 1, rng, out);
    // Merge duplicates and sort deterministically.
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    std::vector<std::pair<PolyFp, int>> merged;
    for (auto& [q, m] : out) {
        if (!merged.empty() && merged.back().first == q)
            merged.back().second += m;
        else
            merged.emplace_back(q, m);
    }
    return merged;
}

PolyFp crt_idempotent(const PolyFp& f, const PolyFp& fa, int ma) {
    Fp F = f.field();
    PolyFp a = PolyFp::constant(F, 1);
    for (int i = 0; i < ma; ++i) a = a * fa;
    PolyFp b = f.divmod(a).first; // complementary factor
    // Extended Euclid: u a + v b = 1.
    PolyFp r0 = a, r1 = b;
    PolyFp s0 = PolyFp::constant(F, 1), s1 = PolyFp::zero(F);
    PolyFp t0 = PolyFp::zero(F), t1 = PolyFp::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = r1; r1 = r;
        PolyFp s = s0 - q * s1; s0 = s1; s1 = s;
        PolyFp t = t0 - q * t1; t0 = t1; t1 = t;
    }
    if (r0.degree() != 0) throw InvariantError("crt_idempotent: factors not coprime");
    uint32_t inv = F.inv(r0.coeff(0));
    // h = v b (scaled) is 1 mod a, 0 mod b.
    PolyFp h = (t0.scaled(inv) * b).mod(f);
    return h;
}

} // namespace qhom
