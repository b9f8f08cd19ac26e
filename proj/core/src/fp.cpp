#include "qhom/fp.hpp"

#include <algorithm>
#include <cassert>

namespace qhom {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Fp::Fp(uint32_t prime) : p(prime) {
    if (!is_prime(prime)) throw InvariantError("field characteristic must be prime, got " + std::to_string(prime));
    if (prime >= (1u << 16)) throw InvariantError("characteristic too large (need p < 65536)");
}

uint32_t Fp::pow(uint32_t a, uint64_t e) const {
    uint64_t r = 1, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}

uint32_t Fp::inv(uint32_t a) const {
    assert(a % p != 0);
    return pow(a % p, p - 2);
}

FpMat FpMat::identity(Fp F, size_t n) {
    FpMat m(F, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool FpMat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](uint32_t x) { return x == 0; });
}

FpMat FpMat::operator+(const FpMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    FpMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_.add(r.a_[i], o.a_[i]);
    return r;
}

FpMat FpMat::operator-(const FpMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    FpMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_.sub(r.a_[i], o.a_[i]);
    return r;
}

void FpMat::add_in_place(const FpMat& o, uint32_t scalar) {
    assert(rows_ == o.rows_ && cols_ == o.cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        a_[i] = F_.add(a_[i], F_.mul(scalar, o.a_[i]));
}

FpMat FpMat::operator*(const FpMat& o) const {
    assert(cols_ == o.rows_);
    FpMat r(F_, rows_, o.cols_);
    const uint64_t p = F_.p;
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t aik = a_[i * cols_ + k];
            if (!aik) continue;
            const uint32_t* orow = &o.a_[k * o.cols_];
            uint32_t* rrow = &r.a_[i * o.cols_];
            for (size_t j = 0; j < o.cols_; ++j)
                rrow[j] = static_cast<uint32_t>((rrow[j] + aik * orow[j]) % p);
        }
    }
    return r;
}

FpMat FpMat::scaled(uint32_t c) const {
    FpMat r = *this;
    for (auto& x : r.a_) x = F_.mul(x, c);
    return r;
}

FpMat FpMat::transposed() const {
    FpMat r(F_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

FpMat FpMat::vstack(const FpMat& top, const FpMat& bottom) {
    assert(top.cols_ == bottom.cols_);
    FpMat r(top.F_, top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.a_.begin(), top.a_.end(), r.a_.begin());
    std::copy(bottom.a_.begin(), bottom.a_.end(), r.a_.begin() + top.a_.size());
    return r;
}

FpMat FpMat::hstack(const FpMat& left, const FpMat& right) {
    assert(left.rows_ == right.rows_);
    FpMat r(left.F_, left.rows_, left.cols_ + right.cols_);
    for (size_t i = 0; i < left.rows_; ++i) {
        std::copy(&left.a_[i * left.cols_], &left.a_[i * left.cols_] + left.cols_, &r.a_[i * r.cols_]);
        std::copy(&right.a_[i * right.cols_], &right.a_[i * right.cols_] + right.cols_,
                  &r.a_[i * r.cols_ + left.cols_]);
    }
    return r;
}

FpMat FpMat::sub_block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    assert(r0 + nr <= rows_ && c0 + nc <= cols_);
    FpMat r(F_, nr, nc);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
    return r;
}

std::vector<uint32_t> FpMat::col(size_t j) const {
    std::vector<uint32_t> v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

void FpMat::set_col(size_t j, const std::vector<uint32_t>& v) {
    assert(v.size() == rows_);
    for (size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

std::vector<size_t> FpMat::rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
        size_t sel = row;
        while (sel < rows_ && at(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != row)
            for (size_t j = col; j < cols_; ++j) std::swap(at(row, j), at(sel, j));
        uint32_t piv_inv = F_.inv(at(row, col));
        for (size_t j = col; j < cols_; ++j) at(row, j) = F_.mul(at(row, j), piv_inv);
        for (size_t i = 0; i < rows_; ++i) {
            if (i == row) continue;
            uint32_t f = at(i, col);
            if (!f) continue;
            for (size_t j = col; j < cols_; ++j) at(i, j) = F_.sub(at(i, j), F_.mul(f, at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t FpMat::rank() const {
    FpMat tmp = *this;
    return tmp.rref().size();
}

FpMat FpMat::kernel_basis() const {
    FpMat tmp = *this;
    std::vector<size_t> pivots = tmp.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    size_t k = cols_ - pivots.size();
    FpMat ker(F_, cols_, k);
    size_t out = 0;
    for (size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        ker.at(free_col, out) = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            ker.at(pivots[pi], out) = F_.neg(tmp.at(pi, free_col));
        ++out;
    }
    return ker;
}

FpMat FpMat::col_space_basis() const {
    FpMat tmp = *this;
    std::vector<size_t> pivots = tmp.rref();
    FpMat basis(F_, rows_, pivots.size());
    for (size_t j = 0; j < pivots.size(); ++j)
        for (size_t i = 0; i < rows_; ++i) basis.at(i, j) = at(i, pivots[j]);
    return basis;
}

std::optional<FpMat> FpMat::solve(const FpMat& B) const {
    assert(B.rows_ == rows_);
    FpMat aug = hstack(*this, B);
    std::vector<size_t> pivots = aug.rref();
    // Any pivot inside the B-block means inconsistency.
    for (size_t c : pivots)
        if (c >= cols_) return std::nullopt;
    FpMat X(F_, cols_, B.cols_);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        for (size_t j = 0; j < B.cols_; ++j) X.at(pivots[pi], j) = aug.at(pi, cols_ + j);
    return X;
}

std::optional<FpMat> FpMat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    auto X = solve(identity(F_, rows_));
    if (!X) return std::nullopt;
    // solve() only guarantees A X = I; for square full-rank that is the inverse.
    if (((*this) * (*X)) == identity(F_, rows_)) return X;
    return std::nullopt;
}

namespace subspace {

FpMat column_reduce(const FpMat& M) { return M.col_space_basis(); }

FpMat sum(const FpMat& U, const FpMat& V) { return FpMat::hstack(U, V).col_space_basis(); }

bool contains(const FpMat& U, const FpMat& v) {
    return U.solve(v).has_value();
}

FpMat coordinates(const FpMat& U, const FpMat& V) {
    auto X = U.solve(V);
    if (!X) throw InvariantError("subspace::coordinates: vectors not contained in span");
    return *X;
}

FpMat complement(const FpMat& U, size_t n) {
    Fp F = U.field();
    FpMat cur = U;
    std::vector<size_t> chosen;
    size_t have = U.cols();
    for (size_t i = 0; i < n && have + chosen.size() < n; ++i) {
        FpMat e(F, n, 1);
        e.at(i, 0) = 1;
        FpMat cand = FpMat::hstack(cur, e);
        if (cand.rank() > cur.cols()) {
            cur = cand;
            chosen.push_back(i);
        }
    }
    FpMat comp(F, n, chosen.size());
    for (size_t j = 0; j < chosen.size(); ++j) comp.at(chosen[j], j) = 1;
    return comp;
}

} // namespace subspace

uint64_t Rng::next() {
    s_ ^= s_ >> 12;
    s_ ^= s_ << 25;
    s_ ^= s_ >> 27;
    return s_ * 0x2545F4914F6CDD1Dull;
}

uint32_t Rng::below(uint32_t bound) {
    assert(bound > 0);
    return static_cast<uint32_t>(next() % bound);
}

uint64_t Rng::fork() { return next() ^ 0xD6E8FEB86659FD93ull; }

FpMat random_matrix(Fp F, size_t rows, size_t cols, Rng& rng) {
    FpMat m(F, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rng.field_elem(F);
    return m;
}

FpMat random_invertible(Fp F, size_t n, Rng& rng) {
    if (n == 0) return FpMat(F, 0, 0);
    for (int tries = 0; tries < 1000; ++tries) {
        FpMat m = random_matrix(F, n, n, rng);
        if (m.is_invertible()) return m;
    }
    throw ResourceError("random_invertible: failed to sample an invertible matrix");
}

} // namespace qhom
