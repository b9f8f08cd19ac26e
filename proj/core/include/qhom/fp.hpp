#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qhom/error.hpp"

namespace qhom {

// Prime field F_p, p < 2^16 so products fit comfortably in 64-bit accumulators.
struct Fp {
    uint32_t p = 101;

    Fp() = default;
    explicit Fp(uint32_t prime);

    uint32_t reduce(int64_t x) const {
        int64_t r = x % static_cast<int64_t>(p);
        return static_cast<uint32_t>(r < 0 ? r + p : r);
    }
    uint32_t add(uint32_t a, uint32_t b) const { uint32_t s = a + b; return s >= p ? s - p : s; }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return static_cast<uint32_t>((uint64_t)a * b % p); }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t inv(uint32_t a) const; // a != 0

    bool operator==(const Fp&) const = default;
};

bool is_prime(uint32_t n);

// Dense matrix over F_p.  Vectors are columns: an r x c matrix represents a
// linear map F^c -> F^r.  Subspace bases are returned as matrices whose
// columns are the basis vectors.
class FpMat {
  public:
    FpMat() = default;
    FpMat(Fp F, size_t rows, size_t cols) : F_(F), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FpMat identity(Fp F, size_t n);
    static FpMat zero(Fp F, size_t rows, size_t cols) { return FpMat(F, rows, cols); }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Fp field() const { return F_; }

    uint32_t& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    uint32_t at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const FpMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    FpMat operator+(const FpMat& o) const;
    FpMat operator-(const FpMat& o) const;
    FpMat operator*(const FpMat& o) const;
    FpMat scaled(uint32_t c) const;
    FpMat transposed() const;

    void add_in_place(const FpMat& o, uint32_t scalar = 1);

    // Stacks/concatenations.
    static FpMat vstack(const FpMat& top, const FpMat& bottom);
    static FpMat hstack(const FpMat& left, const FpMat& right);
    FpMat sub_block(size_t r0, size_t c0, size_t nr, size_t nc) const;

    // Column vector helpers.
    std::vector<uint32_t> col(size_t j) const;
    void set_col(size_t j, const std::vector<uint32_t>& v);
    FpMat apply(const FpMat& colvec) const { return (*this) * colvec; }

    // Row echelon machinery.  rref() returns pivot column indices.
    std::vector<size_t> rref();
    size_t rank() const;
    // Basis of the kernel of x -> Ax; columns are basis vectors (c x k).
    FpMat kernel_basis() const;
    // Basis of the column space (r x rank), columns chosen from this matrix.
    FpMat col_space_basis() const;
    // Solve A X = B; returns one solution (c x B.cols) or nullopt.
    std::optional<FpMat> solve(const FpMat& B) const;
    std::optional<FpMat> inverse() const;
    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  private:
    Fp F_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> a_;
};

// Subspaces of F^n, stored with basis vectors as columns (n x k, full column
// rank maintained by the constructors below).
namespace subspace {

// Reduce the columns of M to an independent spanning set.
FpMat column_reduce(const FpMat& M);
// Sum of two subspaces of the same ambient space.
FpMat sum(const FpMat& U, const FpMat& V);
// Does v lie in the column span of U?
bool contains(const FpMat& U, const FpMat& v);
// Coordinates of the columns of V in the basis U (must be contained).
FpMat coordinates(const FpMat& U, const FpMat& V);
// Extend the independent columns of U to a basis of F^n using unit vectors;
// returns the n x (n - k) complement.
FpMat complement(const FpMat& U, size_t n);

} // namespace subspace

// Deterministic RNG for seeded randomized procedures (xorshift-star).
class Rng {
  public:
    explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next();
    uint32_t below(uint32_t bound); // uniform in [0, bound)
    uint32_t field_elem(Fp F) { return below(F.p); }
    uint32_t nonzero_field_elem(Fp F) { return 1 + below(F.p - 1); }
    uint64_t fork(); // derive an independent seed

  private:
    uint64_t s_;
};

FpMat random_matrix(Fp F, size_t rows, size_t cols, Rng& rng);
FpMat random_invertible(Fp F, size_t n, Rng& rng);

} // namespace qhom
