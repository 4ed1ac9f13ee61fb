#pragma once

#include "cohomoforge/pc_group.hpp"

#include <functional>
#include <optional>

namespace cohomoforge {

class parent_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class not_normal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Subgroup {
    GroupPtr parent;
    std::vector<Elem> elements;   // sorted
    std::vector<Elem> generators; // induced pcgs of the element set

    [[nodiscard]] std::size_t order() const { return elements.size(); }
    [[nodiscard]] bool contains(Elem x) const;
    [[nodiscard]] bool is_trivial() const { return elements.size() <= 1; }
    [[nodiscard]] bool operator==(const Subgroup& o) const { return parent == o.parent && elements == o.elements; }
    [[nodiscard]] bool operator<(const Subgroup& o) const { return elements < o.elements; }
};

[[nodiscard]] Subgroup make_subgroup(GroupPtr g, std::vector<Elem> elements);
[[nodiscard]] Subgroup subgroup_generated(GroupPtr g, const std::vector<Elem>& gens);
[[nodiscard]] Subgroup trivial_subgroup(GroupPtr g);
[[nodiscard]] Subgroup whole_group(GroupPtr g);
[[nodiscard]] bool is_subgroup_of(const Subgroup& a, const Subgroup& b);
[[nodiscard]] bool is_normal(const Subgroup& s);
[[nodiscard]] bool is_abelian(const Subgroup& s);
[[nodiscard]] bool is_elementary_abelian(const Subgroup& s);
[[nodiscard]] std::size_t log_p(std::uint64_t order, residue_t p);

[[nodiscard]] Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b);
[[nodiscard]] std::vector<Subgroup> lower_central_series(GroupPtr g);
[[nodiscard]] Subgroup center(GroupPtr g);
[[nodiscard]] Subgroup centralizer(GroupPtr g, const Subgroup& s);
[[nodiscard]] std::uint64_t element_order(const FiniteGroup& g, Elem x);
[[nodiscard]] std::uint64_t exponent_of(GroupPtr g);
[[nodiscard]] std::uint64_t exponent_of(const Subgroup& s);

// rank s elementary abelian subgroups, sorted by element list
[[nodiscard]] std::vector<Subgroup> enumerate_elementary_abelian(GroupPtr g, std::size_t s);
[[nodiscard]] std::size_t p_rank(const Subgroup& s);

// greedy generating set taken from the pcgs, skipping redundant generators
[[nodiscard]] std::vector<Elem> small_generating_set(const Subgroup& s);

[[nodiscard]] std::optional<Subgroup> has_complement(GroupPtr total, const Subgroup& kernel);

// a subgroup as a group in its own right, on its induced pcgs
struct SubgroupGroup {
    GroupPtr group;
    std::vector<Elem> to_parent;
    std::vector<std::pair<Elem, Elem>> from_parent; // sorted (parent, local)

    [[nodiscard]] Elem local(Elem parent_elem) const;
};

[[nodiscard]] SubgroupGroup as_group(const Subgroup& s, GroupOptions opts = {}, std::string label = {});

// A group given concretely: elements are residue vectors, multiplication is
// any associative law, and pcgs lists a polycyclic sequence of the model.
struct GroupModel {
    residue_t prime = 2;
    std::vector<Exponents> pcgs;
    Exponents identity;
    std::function<Exponents(const Exponents&, const Exponents&)> mul;
    std::vector<std::string> names;
};

struct ModelGroup {
    GroupPtr group;
    std::vector<Exponents> elements; // model element at each index
    std::map<Exponents, Elem> index;

    [[nodiscard]] Elem at(const Exponents& model_elem) const;
};

// Builds the pc presentation and checks it reproduces the model product
// (exhaustively up to exhaustive_limit elements, sampled above).
[[nodiscard]] ModelGroup group_from_model(const GroupModel& m, GroupOptions opts = {}, std::string label = {},
    std::uint64_t exhaustive_limit = 3125);

class model_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cohomoforge
