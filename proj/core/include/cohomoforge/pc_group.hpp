#pragma once

#include "cohomoforge/fp.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohomoforge {

using Elem = std::uint32_t;
using Exponents = std::vector<residue_t>;

inline constexpr std::size_t max_pc_gens = 24;

class presentation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class consistency_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Power tails g_i^p and commutator tails [g_i, g_j] (i > j) as normal words,
// i.e. exponent vectors. Absent commutator tails are the identity.
struct PcPresentation {
    residue_t prime = 2;
    std::size_t n_gens = 0;
    std::vector<std::string> names;
    std::vector<Exponents> power_tails;
    std::map<std::pair<std::size_t, std::size_t>, Exponents> commutator_tails;

    PcPresentation() = default;
    PcPresentation(residue_t p, std::size_t n);

    void set_power(std::size_t i, Exponents word);
    void set_commutator(std::size_t i, std::size_t j, Exponents word);
    [[nodiscard]] Exponents commutator(std::size_t i, std::size_t j) const;
    [[nodiscard]] Exponents unit(std::size_t i, residue_t e = 1) const;
    [[nodiscard]] std::string name(std::size_t i) const;
    [[nodiscard]] bool operator==(const PcPresentation&) const = default;
};

struct GroupOptions {
    std::size_t cache_ceiling = 5000;
};

// one associativity test of collection: both bracketings as normal words
struct OverlapCheck {
    std::string name;
    Exponents lhs;
    Exponents rhs;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    using Word = std::array<std::uint16_t, max_pc_gens>;

    [[nodiscard]] residue_t prime() const { return pcp_.prime; }
    [[nodiscard]] std::size_t n_gens() const { return pcp_.n_gens; }
    [[nodiscard]] std::uint64_t order() const { return order_; }
    [[nodiscard]] const PcPresentation& presentation() const { return pcp_; }
    [[nodiscard]] bool has_cache() const { return !table_.empty(); }

    [[nodiscard]] Elem identity() const { return 0; }
    [[nodiscard]] Elem generator(std::size_t i) const;
    [[nodiscard]] Elem multiply(Elem a, Elem b) const;
    [[nodiscard]] Elem inverse(Elem a) const;
    [[nodiscard]] Elem power(Elem a, std::uint64_t e) const;
    [[nodiscard]] Elem commutator(Elem a, Elem b) const;
    [[nodiscard]] Elem conjugate(Elem a, Elem by) const;
    [[nodiscard]] Elem right_gen(Elem a, std::size_t k) const { return right_[static_cast<std::size_t>(a) * pcp_.n_gens + k]; }

    [[nodiscard]] Exponents exponents(Elem a) const;
    [[nodiscard]] residue_t exponent_at(Elem a, std::size_t i) const;
    [[nodiscard]] Elem index_of(const Exponents& e) const;
    [[nodiscard]] std::string format(Elem a) const;

    // collection on normal words, no cache involved
    [[nodiscard]] Exponents collect(const Exponents& a, const Exponents& b) const;

    [[nodiscard]] const std::string& label() const { return label_; }

    friend GroupPtr make_group(PcPresentation pcp, GroupOptions opts, std::string label);
    friend std::vector<OverlapCheck> overlap_words(const PcPresentation& pcp);

private:
    FiniteGroup() = default;
    void mul_gen(Word& u, std::size_t j) const;
    void mul_word(Word& u, const Word& w) const;
    [[nodiscard]] Word to_word(const Exponents& e) const;
    [[nodiscard]] Exponents from_word(const Word& w) const;
    [[nodiscard]] Elem word_index(const Word& w) const;
    void init_rules();
    [[nodiscard]] std::vector<OverlapCheck> overlaps() const;

    PcPresentation pcp_;
    std::uint64_t order_ = 1;
    std::string label_;
    std::vector<Word> power_words_;
    std::vector<std::vector<Word>> comm_words_;
    std::vector<bool> trivial_conj_;
    std::vector<std::uint64_t> radix_;
    std::vector<Elem> right_;
    std::vector<Elem> table_;
    std::vector<Elem> inverse_;
};

[[nodiscard]] GroupPtr make_group(PcPresentation pcp, GroupOptions opts = {}, std::string label = {});

// collects every overlap without requiring consistency; tails must be well formed
[[nodiscard]] std::vector<OverlapCheck> overlap_words(const PcPresentation& pcp);

// Text form: one relation per line, see docs/presentation_format.md
[[nodiscard]] PcPresentation parse_presentation(const std::string& text);
[[nodiscard]] std::string format_presentation(const PcPresentation& pcp);

} // namespace cohomoforge
