#pragma once

#include "cohomoforge/fp.hpp"

#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

namespace cohomoforge {

using FpVector = std::vector<residue_t>;

enum class StorageHint { dense, sparse };

// Row-major dense storage. The hint only records the density of the data the
// matrix was built from.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, residue_t p);

    [[nodiscard]] static FpMatrix identity(std::size_t n, residue_t p);
    [[nodiscard]] static FpMatrix from_rows(const std::vector<FpVector>& rows, std::size_t cols, residue_t p);
    [[nodiscard]] static FpMatrix from_triplets(std::size_t rows, std::size_t cols, residue_t p,
        const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& entries);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] residue_t modulus() const { return p_; }
    [[nodiscard]] StorageHint storage_hint() const;

    [[nodiscard]] residue_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = fp_reduce(v, p_); }
    [[nodiscard]] FpVector row(std::size_t r) const;
    [[nodiscard]] const residue_t* row_data(std::size_t r) const { return data_.data() + r * cols_; }
    [[nodiscard]] std::size_t nonzeros() const;

    [[nodiscard]] FpMatrix operator*(const FpMatrix& o) const;
    [[nodiscard]] FpMatrix operator+(const FpMatrix& o) const;
    [[nodiscard]] FpMatrix operator-(const FpMatrix& o) const;
    [[nodiscard]] FpMatrix transpose() const;
    [[nodiscard]] FpMatrix power(std::uint64_t e) const;
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool operator==(const FpMatrix& o) const;

    // row vector times matrix
    [[nodiscard]] FpVector left_apply(const FpVector& v) const;
    [[nodiscard]] FpVector apply(const FpVector& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    residue_t p_ = 2;
    std::vector<residue_t> data_;
};

struct RrefResult {
    FpMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

[[nodiscard]] RrefResult rref_rank(const FpMatrix& m);

// Free variables are pinned to zero.
[[nodiscard]] std::optional<FpVector> solve_linear(const FpMatrix& m, const FpVector& rhs);

[[nodiscard]] std::vector<FpVector> kernel_basis(const FpMatrix& m);

// Basis of the row space, reduced.
[[nodiscard]] std::vector<FpVector> row_space_basis(const std::vector<FpVector>& rows, std::size_t cols, residue_t p);

[[nodiscard]] FpMatrix block_diagonal(const FpMatrix& a, const FpMatrix& b);

} // namespace cohomoforge
