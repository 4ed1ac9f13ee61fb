#include "cohomoforge/row_space.hpp"

#include <algorithm>

namespace cohomoforge {

StreamingRowSpace::StreamingRowSpace(std::size_t cols, residue_t p)
    : cols_(cols), p_(p), pivot_index_(cols, -1) {}

void StreamingRowSpace::reduce_into(std::vector<std::uint64_t>& acc, std::size_t col, residue_t coeff) const {
    // subtract coeff * basis row; the pivot entry of every other basis row is
    // zero, so the original coefficient is the right multiplier
    const FpVector& b = pivot_row(col);
    const std::uint64_t f = p_ - coeff;
    for (std::size_t j = col; j < cols_; ++j)
        acc[j] += f * b[j];
}

bool StreamingRowSpace::absorb(std::vector<std::uint64_t>& acc) {
    FpVector row(cols_);
    std::size_t lead = cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
        row[j] = static_cast<residue_t>(acc[j] % p_);
        if (row[j] && lead == cols_)
            lead = j;
    }
    if (lead == cols_)
        return true;
    residue_t inv = fp_inv(row[lead], p_);
    for (std::size_t j = lead; j < cols_; ++j)
        row[j] = fp_mul(row[j], inv, p_);
    for (auto& b : basis_) {
        residue_t f = b[lead];
        if (!f)
            continue;
        residue_t g = p_ - f;
        for (std::size_t j = lead; j < cols_; ++j)
            if (row[j])
                b[j] = static_cast<residue_t>((b[j] + std::uint64_t{g} * row[j]) % p_);
    }
    pivot_index_[lead] = static_cast<long>(basis_.size());
    basis_.push_back(std::move(row));
    return false;
}

bool StreamingRowSpace::insert(const FpVector& row) {
    if (row.size() != cols_)
        throw dimension_mismatch("row length differs from row-space width");
    ++rows_seen_;
    std::vector<std::uint64_t> acc(row.begin(), row.end());
    for (std::size_t j = 0; j < cols_; ++j) {
        residue_t v = row[j] % p_;
        if (v && pivot_index_[j] >= 0)
            reduce_into(acc, j, v);
    }
    return absorb(acc);
}

bool StreamingRowSpace::insert_sparse(const SparseRow& row) {
    ++rows_seen_;
    std::vector<std::uint64_t> acc(cols_, 0);
    for (auto [c, v] : row) {
        if (c >= cols_)
            throw dimension_mismatch("sparse entry beyond row-space width");
        acc[c] += v % p_;
    }
    for (auto [c, v] : row) {
        residue_t coeff = static_cast<residue_t>(v % p_);
        if (coeff && pivot_index_[c] >= 0)
            reduce_into(acc, c, coeff);
    }
    return absorb(acc);
}

bool StreamingRowSpace::contains(const FpVector& row) const {
    if (row.size() != cols_)
        throw dimension_mismatch("row length differs from row-space width");
    std::vector<std::uint64_t> acc(row.begin(), row.end());
    for (std::size_t j = 0; j < cols_; ++j) {
        residue_t v = row[j] % p_;
        if (v && pivot_index_[j] >= 0)
            reduce_into(acc, j, v);
    }
    return std::all_of(acc.begin(), acc.end(), [this](std::uint64_t v) { return v % p_ == 0; });
}

std::vector<std::size_t> StreamingRowSpace::pivot_cols() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < cols_; ++j)
        if (pivot_index_[j] >= 0)
            out.push_back(j);
    return out;
}

std::vector<FpVector> StreamingRowSpace::sorted_basis() const {
    std::vector<FpVector> out;
    for (std::size_t j = 0; j < cols_; ++j)
        if (pivot_index_[j] >= 0)
            out.push_back(pivot_row(j));
    return out;
}

} // namespace cohomoforge
