#pragma once

#include "cohomoforge/fp.hpp"
#include "cohomoforge/fp_matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace cohomoforge {

using SparseRow = std::vector<std::pair<std::size_t, residue_t>>;

// Eagerly reduced row echelon basis. Memory is O(cols^2) no matter how many
// rows are streamed through it.
class StreamingRowSpace {
public:
    StreamingRowSpace(std::size_t cols, residue_t p);

    // true when the row was already in the span; otherwise the reduced row is
    // inserted
    bool insert(const FpVector& row);
    bool insert_sparse(const SparseRow& row);

    [[nodiscard]] bool contains(const FpVector& row) const;

    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] residue_t modulus() const { return p_; }
    [[nodiscard]] std::size_t rank() const { return basis_.size(); }
    [[nodiscard]] bool is_pivot(std::size_t col) const { return pivot_index_[col] >= 0; }
    [[nodiscard]] const std::vector<FpVector>& basis() const { return basis_; }
    [[nodiscard]] std::vector<std::size_t> pivot_cols() const;
    [[nodiscard]] const FpVector& pivot_row(std::size_t col) const { return basis_[static_cast<std::size_t>(pivot_index_[col])]; }
    [[nodiscard]] std::size_t rows_seen() const { return rows_seen_; }

    // basis rows sorted by pivot column
    [[nodiscard]] std::vector<FpVector> sorted_basis() const;

private:
    bool absorb(std::vector<std::uint64_t>& acc);
    void reduce_into(std::vector<std::uint64_t>& acc, std::size_t col, residue_t coeff) const;

    std::size_t cols_;
    residue_t p_;
    std::vector<FpVector> basis_;
    std::vector<long> pivot_index_;
    std::size_t rows_seen_ = 0;
};

} // namespace cohomoforge
