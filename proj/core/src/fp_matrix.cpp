#include "cohomoforge/fp_matrix.hpp"

#include <algorithm>

namespace cohomoforge {

bool is_prime(std::uint32_t n) {
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

residue_t fp_pow(residue_t a, std::uint64_t e, residue_t p) {
    std::uint64_t base = a % p, acc = 1 % p;
    while (e) {
        if (e & 1)
            acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<residue_t>(acc);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, residue_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    if (p < 2)
        throw std::invalid_argument("modulus must be at least 2");
}

FpMatrix FpMatrix::identity(std::size_t n, residue_t p) {
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i * n + i] = 1 % p;
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<FpVector>& rows, std::size_t cols, residue_t p) {
    FpMatrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw dimension_mismatch("row length differs from column count");
        for (std::size_t c = 0; c < cols; ++c)
            m.data_[r * cols + c] = rows[r][c] % p;
    }
    return m;
}

FpMatrix FpMatrix::from_triplets(std::size_t rows, std::size_t cols, residue_t p,
    const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& entries) {
    FpMatrix m(rows, cols, p);
    for (auto [r, c, v] : entries) {
        if (r >= rows || c >= cols)
            throw dimension_mismatch("triplet outside matrix bounds");
        auto& cell = m.data_[r * cols + c];
        cell = fp_add(cell, fp_reduce(v, p), p);
    }
    return m;
}

StorageHint FpMatrix::storage_hint() const {
    if (data_.empty())
        return StorageHint::sparse;
    return nonzeros() * 20 < data_.size() ? StorageHint::sparse : StorageHint::dense;
}

FpVector FpMatrix::row(std::size_t r) const {
    return FpVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

std::size_t FpMatrix::nonzeros() const {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](residue_t v) { return v != 0; }));
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (o.p_ != p_)
        throw modulus_mismatch("matrix product over different fields");
    if (cols_ != o.rows_)
        throw dimension_mismatch("matrix product shape mismatch");
    FpMatrix out(rows_, o.cols_, p_);
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < cols_; ++k) {
            residue_t a = data_[i * cols_ + k];
            if (!a)
                continue;
            const residue_t* b = o.row_data(k);
            for (std::size_t j = 0; j < o.cols_; ++j)
                acc[j] += std::uint64_t{a} * b[j];
        }
        for (std::size_t j = 0; j < o.cols_; ++j)
            out.data_[i * o.cols_ + j] = static_cast<residue_t>(acc[j] % p_);
    }
    return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    if (o.p_ != p_)
        throw modulus_mismatch("matrix sum over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw dimension_mismatch("matrix sum shape mismatch");
    FpMatrix out(rows_, cols_, p_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = fp_add(data_[i], o.data_[i], p_);
    return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    if (o.p_ != p_)
        throw modulus_mismatch("matrix difference over different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw dimension_mismatch("matrix difference shape mismatch");
    FpMatrix out(rows_, cols_, p_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        out.data_[i] = fp_sub(data_[i], o.data_[i], p_);
    return out;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix out(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.data_[j * rows_ + i] = data_[i * cols_ + j];
    return out;
}

FpMatrix FpMatrix::power(std::uint64_t e) const {
    if (rows_ != cols_)
        throw dimension_mismatch("power of a non-square matrix");
    FpMatrix acc = identity(rows_, p_), base = *this;
    while (e) {
        if (e & 1)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool FpMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](residue_t v) { return v == 0; });
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

FpVector FpMatrix::left_apply(const FpVector& v) const {
    if (v.size() != rows_)
        throw dimension_mismatch("vector length differs from row count");
    std::vector<std::uint64_t> acc(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (!v[i])
            continue;
        const residue_t* r = row_data(i);
        for (std::size_t j = 0; j < cols_; ++j)
            acc[j] += std::uint64_t{v[i]} * r[j];
    }
    FpVector out(cols_);
    for (std::size_t j = 0; j < cols_; ++j)
        out[j] = static_cast<residue_t>(acc[j] % p_);
    return out;
}

FpVector FpMatrix::apply(const FpVector& v) const {
    if (v.size() != cols_)
        throw dimension_mismatch("vector length differs from column count");
    FpVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        const residue_t* r = row_data(i);
        for (std::size_t j = 0; j < cols_; ++j)
            acc += std::uint64_t{r[j]} * v[j];
        out[i] = static_cast<residue_t>(acc % p_);
    }
    return out;
}

RrefResult rref_rank(const FpMatrix& m) {
    const residue_t p = m.modulus();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<FpVector> a(rows);
    for (std::size_t r = 0; r < rows; ++r)
        a[r] = m.row(r);

    RrefResult res;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t pivot = lead;
        while (pivot < rows && a[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(a[lead], a[pivot]);
        residue_t inv = fp_inv(a[lead][c], p);
        for (auto& x : a[lead])
            x = fp_mul(x, inv, p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || a[r][c] == 0)
                continue;
            residue_t f = fp_neg(a[r][c], p);
            for (std::size_t j = c; j < cols; ++j)
                a[r][j] = fp_add(a[r][j], fp_mul(f, a[lead][j], p), p);
        }
        res.pivot_cols.push_back(c);
        ++lead;
    }
    res.rank = lead;
    res.reduced = FpMatrix::from_rows(a, cols, p);
    return res;
}

std::optional<FpVector> solve_linear(const FpMatrix& m, const FpVector& rhs) {
    if (rhs.size() != m.rows())
        throw dimension_mismatch("right-hand side length differs from row count");
    const residue_t p = m.modulus();
    FpMatrix aug(m.rows(), m.cols() + 1, p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            aug.set(r, c, m.at(r, c));
        aug.set(r, m.cols(), rhs[r]);
    }
    RrefResult red = rref_rank(aug);
    FpVector x(m.cols(), 0);
    for (std::size_t i = 0; i < red.rank; ++i) {
        std::size_t c = red.pivot_cols[i];
        if (c == m.cols())
            return std::nullopt;
        x[c] = red.reduced.at(i, m.cols());
    }
    return x;
}

std::vector<FpVector> kernel_basis(const FpMatrix& m) {
    const residue_t p = m.modulus();
    RrefResult red = rref_rank(m);
    std::vector<long> pivot_row(m.cols(), -1);
    for (std::size_t i = 0; i < red.rank; ++i)
        pivot_row[red.pivot_cols[i]] = static_cast<long>(i);
    std::vector<FpVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (pivot_row[f] >= 0)
            continue;
        FpVector v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t i = 0; i < red.rank; ++i)
            v[red.pivot_cols[i]] = fp_neg(red.reduced.at(i, f), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<FpVector> row_space_basis(const std::vector<FpVector>& rows, std::size_t cols, residue_t p) {
    RrefResult red = rref_rank(FpMatrix::from_rows(rows, cols, p));
    std::vector<FpVector> out;
    for (std::size_t i = 0; i < red.rank; ++i)
        out.push_back(red.reduced.row(i));
    return out;
}

FpMatrix block_diagonal(const FpMatrix& a, const FpMatrix& b) {
    if (a.modulus() != b.modulus())
        throw modulus_mismatch("block diagonal over different fields");
    FpMatrix out(a.rows() + b.rows(), a.cols() + b.cols(), a.modulus());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out.set(i, j, a.at(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            out.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return out;
}

} // namespace cohomoforge
