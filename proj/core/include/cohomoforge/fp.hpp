#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cohomoforge {

using residue_t = std::uint32_t;

class modulus_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class dimension_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[nodiscard]] bool is_prime(std::uint32_t n);

// p < 2^16, so products of two residues fit comfortably in 64 bits
[[nodiscard]] inline residue_t fp_add(residue_t a, residue_t b, residue_t p) {
    residue_t s = a + b;
    return s >= p ? s - p : s;
}

[[nodiscard]] inline residue_t fp_sub(residue_t a, residue_t b, residue_t p) {
    return a >= b ? a - b : a + p - b;
}

[[nodiscard]] inline residue_t fp_neg(residue_t a, residue_t p) {
    return a == 0 ? 0 : p - a;
}

[[nodiscard]] inline residue_t fp_mul(residue_t a, residue_t b, residue_t p) {
    return static_cast<residue_t>((std::uint64_t{a} * b) % p);
}

[[nodiscard]] residue_t fp_pow(residue_t a, std::uint64_t e, residue_t p);

[[nodiscard]] inline residue_t fp_inv(residue_t a, residue_t p) {
    if (a % p == 0)
        throw std::domain_error("inverse of zero in F_" + std::to_string(p));
    return fp_pow(a, p - 2, p);
}

[[nodiscard]] inline residue_t fp_reduce(std::int64_t v, residue_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<residue_t>(r < 0 ? r + p : r);
}

struct FpScalar {
    residue_t value = 0;
    residue_t modulus = 2;

    FpScalar() = default;
    FpScalar(std::int64_t v, residue_t p) : value(fp_reduce(v, p)), modulus(p) {}

    [[nodiscard]] FpScalar operator+(FpScalar o) const { check(o); return {fp_add(value, o.value, modulus), modulus, raw_tag{}}; }
    [[nodiscard]] FpScalar operator-(FpScalar o) const { check(o); return {fp_sub(value, o.value, modulus), modulus, raw_tag{}}; }
    [[nodiscard]] FpScalar operator*(FpScalar o) const { check(o); return {fp_mul(value, o.value, modulus), modulus, raw_tag{}}; }
    [[nodiscard]] FpScalar operator-() const { return {fp_neg(value, modulus), modulus, raw_tag{}}; }
    [[nodiscard]] FpScalar inverse() const { return {fp_inv(value, modulus), modulus, raw_tag{}}; }
    [[nodiscard]] bool operator==(const FpScalar&) const = default;

private:
    struct raw_tag {};
    FpScalar(residue_t v, residue_t p, raw_tag) : value(v), modulus(p) {}
    void check(FpScalar o) const {
        if (o.modulus != modulus)
            throw modulus_mismatch("scalars over F_" + std::to_string(modulus) + " and F_" + std::to_string(o.modulus));
    }
};

} // namespace cohomoforge
