#pragma once

#include <vector>

#include "qhom/fp.hpp"

namespace qhom {

// Univariate polynomials over F_p, coefficients stored low degree first.
class PolyFp {
  public:
    PolyFp() = default;
    PolyFp(Fp F, std::vector<uint32_t> coeffs) : F_(F), c_(std::move(coeffs)) { trim(); }
    static PolyFp zero(Fp F) { return PolyFp(F, {}); }
    static PolyFp constant(Fp F, uint32_t c) { return PolyFp(F, {c}); }
    static PolyFp x(Fp F) { return PolyFp(F, {0, 1}); }

    Fp field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    uint32_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<uint32_t>& coeffs() const { return c_; }

    bool operator==(const PolyFp& o) const { return c_ == o.c_; }

    PolyFp operator+(const PolyFp& o) const;
    PolyFp operator-(const PolyFp& o) const;
    PolyFp operator*(const PolyFp& o) const;
    PolyFp scaled(uint32_t s) const;
    PolyFp monic() const;
    PolyFp derivative() const;

    // Division with remainder: *this = q * d + r.
    std::pair<PolyFp, PolyFp> divmod(const PolyFp& d) const;
    PolyFp mod(const PolyFp& d) const { return divmod(d).second; }

    static PolyFp gcd(PolyFp a, PolyFp b);
    static PolyFp powmod(const PolyFp& base, uint64_t e, const PolyFp& modulus);

  private:
    void trim();
    Fp F_;
    std::vector<uint32_t> c_;
};

// Monic irreducible factors with multiplicities; deterministic given the seed.
std::vector<std::pair<PolyFp, int>> factor_poly(const PolyFp& f, Rng& rng);

// Partial-fraction style idempotent: h with h = 1 mod fa^ma and h = 0 mod the
// complementary factor, where f = fa^ma * rest and gcd(fa^ma, rest) = 1.
PolyFp crt_idempotent(const PolyFp& f, const PolyFp& fa, int ma);

} // namespace qhom
