#include "cohomoforge/fp_matrix.hpp"
#include "cohomoforge/row_space.hpp"
#include "cohomoforge/cochain.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace cohomoforge;

namespace {

FpMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, residue_t p, int density = 100) {
    FpMatrix m(rows, cols, p);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (static_cast<int>(rng() % 100) < density)
                m.set(r, c, static_cast<std::int64_t>(rng() % p));
    return m;
}

// rank by a separate naive elimination over int64
std::size_t naive_rank(const FpMatrix& m) {
    const std::int64_t p = m.modulus();
    std::vector<std::vector<std::int64_t>> a(m.rows(), std::vector<std::int64_t>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            a[r][c] = m.at(r, c);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t piv = rank;
        while (piv < m.rows() && a[piv][c] == 0)
            ++piv;
        if (piv == m.rows())
            continue;
        std::swap(a[piv], a[rank]);
        std::int64_t inv = 1;
        for (std::int64_t e = p - 2, b = a[rank][c]; e; e >>= 1, b = b * b % p)
            if (e & 1)
                inv = inv * b % p;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != rank && a[r][c]) {
                std::int64_t f = a[r][c] * inv % p;
                for (std::size_t k = 0; k < m.cols(); ++k)
                    a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
            }
        ++rank;
    }
    return rank;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("scalar arithmetic in F_p") {
    FpScalar a(3, 7), b(-2, 7);
    CHECK(b.value == 5);
    CHECK((a + b).value == 1);
    CHECK((a * b).value == 1);
    CHECK((a - b).value == 5);
    CHECK((a * a.inverse()).value == 1);
    CHECK_THROWS_AS((void)(a + FpScalar(1, 5)), modulus_mismatch);
    CHECK_THROWS_AS((void)fp_inv(0, 5), std::domain_error);
    CHECK(is_prime(65521));
    CHECK_FALSE(is_prime(65535));
}

TEST_CASE("rank agrees with naive elimination") {
    std::mt19937_64 rng(11);
    for (residue_t p : {2u, 3u, 5u, 7u, 65521u})
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
            FpMatrix m = random_matrix(rng, rows, cols, p, 40 + static_cast<int>(rng() % 60));
            CHECK(rref_rank(m).rank == naive_rank(m));
        }
}

TEST_CASE("solve and kernel") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const residue_t p = 5;
        FpMatrix m = random_matrix(rng, 6, 4, p);
        FpVector x(4);
        for (auto& v : x)
            v = static_cast<residue_t>(rng() % p);
        FpVector rhs = m.apply(x);
        auto sol = solve_linear(m, rhs);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == rhs);
        const auto ker = kernel_basis(m);
        CHECK(ker.size() + rref_rank(m).rank == m.cols());
        for (const auto& k : ker)
            CHECK(std::all_of(m.apply(k).begin(), m.apply(k).end(), [](residue_t v) { return v == 0; }));
    }
    FpMatrix z(2, 2, 3);
    z.set(0, 0, 1);
    CHECK_FALSE(solve_linear(z, FpVector{0, 1}).has_value());
}

TEST_CASE("matrix algebra") {
    std::mt19937_64 rng(3);
    FpMatrix a = random_matrix(rng, 4, 4, 7), b = random_matrix(rng, 4, 4, 7), c = random_matrix(rng, 4, 4, 7);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a.power(3) == a * a * a);
    CHECK(a.power(0) == FpMatrix::identity(4, 7));
    CHECK((a - a).is_zero());
    CHECK_THROWS_AS((void)(a * FpMatrix(3, 3, 7)), dimension_mismatch);
    CHECK_THROWS_AS((void)(a + FpMatrix(4, 4, 5)), modulus_mismatch);
    FpMatrix s = FpMatrix::from_triplets(3, 40, 5, {{0, 1, 6}, {2, 39, -1}});
    CHECK(s.at(0, 1) == 1);
    CHECK(s.at(2, 39) == 4);
    CHECK(s.storage_hint() == StorageHint::sparse);
    CHECK(block_diagonal(a, b).rows() == 8);
    CHECK_THROWS((void)block_diagonal(a, s));
}

TEST_CASE("streaming row space matches batch reduction") {
    std::mt19937_64 rng(17);
    const residue_t p = 5;
    for (int trial = 0; trial < 20; ++trial) {
        FpMatrix m = random_matrix(rng, 30, 12, p, 25);
        StreamingRowSpace rs(12, p);
        for (std::size_t r = 0; r < m.rows(); ++r)
            rs.insert(m.row(r));
        CHECK(rs.rank() == rref_rank(m).rank);
        CHECK(rs.rows_seen() == 30);
        std::vector<FpVector> rows;
        for (std::size_t r = 0; r < m.rows(); ++r)
            rows.push_back(m.row(r));
        CHECK(rs.sorted_basis() == row_space_basis(rows, 12, p));
        for (const auto& row : rows)
            CHECK(rs.contains(row));
    }
    StreamingRowSpace sp(10, 3);
    CHECK_FALSE(sp.insert_sparse({{2, 1}, {7, 2}}));
    CHECK(sp.insert(FpVector{0, 0, 2, 0, 0, 0, 0, 1, 0, 0}));
    CHECK(sp.is_pivot(2));
}

TEST_CASE("bar differentials of C_5 against the oracle") {
    const auto& o = test::oracle()["linalg"];
    GroupPtr c5 = make_group(PcPresentation(5, 1));
    // d^0 is zero for trivial coefficients, and Z^1 = Hom(C_5, F_5)
    CHECK(o["C5_rank_d0"].get<std::size_t>() == 0);
    CHECK(cocycle_dim(c5, 1) == o["C5_ker_d1"].get<std::size_t>());
}

}
