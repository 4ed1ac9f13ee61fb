#pragma once

#include "cohomoforge/group_ops.hpp"

#include <functional>
#include <optional>

namespace cohomoforge {

class cochain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Normalized inhomogeneous cochain with F_p values. Values live on tuples of
// non-identity elements, index sum (g_i - 1) (|G|-1)^(deg-1-i).
class Cochain {
public:
    Cochain() = default;
    Cochain(GroupPtr g, std::size_t degree);

    [[nodiscard]] const GroupPtr& group() const { return g_; }
    [[nodiscard]] std::size_t degree() const { return deg_; }
    [[nodiscard]] residue_t prime() const { return g_->prime(); }
    [[nodiscard]] std::size_t size() const { return v_.size(); }

    [[nodiscard]] residue_t at(const Elem* args) const;
    [[nodiscard]] residue_t operator()(std::initializer_list<Elem> args) const;
    void set(const Elem* args, residue_t v);
    void set(std::initializer_list<Elem> args, residue_t v);

    [[nodiscard]] residue_t value(std::size_t idx) const { return v_[idx]; }
    void set_value(std::size_t idx, residue_t v) { v_[idx] = static_cast<std::uint16_t>(v); }
    [[nodiscard]] std::size_t index(const Elem* args) const;
    void tuple_of(std::size_t idx, Elem* out) const;

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool operator==(const Cochain& o) const { return g_ == o.g_ && deg_ == o.deg_ && v_ == o.v_; }
    [[nodiscard]] const std::vector<std::uint16_t>& raw() const { return v_; }

    [[nodiscard]] Cochain operator+(const Cochain& o) const;
    [[nodiscard]] Cochain operator-(const Cochain& o) const;
    [[nodiscard]] Cochain scaled(residue_t c) const;

private:
    GroupPtr g_;
    std::size_t deg_ = 0;
    std::vector<std::uint16_t> v_;
};

// A cochain evaluated on demand, for targets too large to store.
struct CochainView {
    GroupPtr group;
    std::size_t degree = 0;
    std::function<residue_t(const Elem*)> eval; // only called on non-identity tuples

    [[nodiscard]] residue_t at(const Elem* args) const;
};

[[nodiscard]] CochainView view(const Cochain& c);
[[nodiscard]] Cochain materialize(const CochainView& v);
[[nodiscard]] Cochain cochain_from(GroupPtr g, std::size_t degree, const std::function<residue_t(const Elem*)>& f);

[[nodiscard]] Cochain differential(const Cochain& c);
[[nodiscard]] residue_t differential_at(const CochainView& c, const Elem* args);
[[nodiscard]] Cochain cup(const Cochain& u, const Cochain& v);
[[nodiscard]] CochainView cup_view(const CochainView& u, const CochainView& v);
[[nodiscard]] Cochain restrict(const Cochain& c, const SubgroupGroup& sub);
[[nodiscard]] Cochain restrict(const CochainView& c, const SubgroupGroup& sub);
[[nodiscard]] Cochain restrict(const Cochain& c, const Subgroup& sub);
[[nodiscard]] Cochain pull_back(const Cochain& c, GroupPtr source, const std::vector<Elem>& hom);

// exponent of the k-th pc generator as a 1-cochain
[[nodiscard]] Cochain coordinate_cochain(GroupPtr g, std::size_t k);

struct ClosureCheck {
    bool closed = true;
    bool exhaustive = true;
    std::uint64_t tuples_checked = 0;
};

[[nodiscard]] ClosureCheck check_closed(const CochainView& c, std::uint64_t exhaustive_limit = 300'000'000,
    std::uint64_t samples = 1u << 20);
[[nodiscard]] ClosureCheck check_closed(const Cochain& c, std::uint64_t exhaustive_limit = 300'000'000,
    std::uint64_t samples = 1u << 20);

struct ExtensionCocycle {
    GroupPtr quotient;
    std::vector<Elem> quotient_map; // total -> quotient
    std::vector<Elem> section;      // quotient -> total, normalized
    Cochain cocycle;
};

// kernel must be central of order p; base, when given, must carry the same
// presentation as the computed quotient and is then used as its group object
[[nodiscard]] ExtensionCocycle extension_to_cocycle(GroupPtr total, const Subgroup& kernel, Elem generator_choice,
    GroupPtr base = nullptr);

struct CentralExtension {
    GroupPtr total;
    Subgroup kernel;
    Elem kernel_generator = 0;
    std::vector<Elem> quotient_map;
    std::vector<Elem> section;
};

[[nodiscard]] CentralExtension cocycle_to_extension(const Cochain& z, GroupOptions opts = {});

enum class CoboundaryStatus { is_coboundary, not_coboundary, inconclusive };

[[nodiscard]] std::string to_string(CoboundaryStatus s);

struct CoboundaryCertificate {
    CoboundaryStatus status = CoboundaryStatus::inconclusive;
    std::optional<Cochain> witness;
    std::size_t unknowns = 0;
    std::size_t columns = 0;
    std::size_t basis_size = 0;
    std::size_t rows_streamed = 0;
    std::string failing_residual;
    std::string closure_check;
    std::string reason;
    double seconds = 0;
};

struct SolveBudget {
    std::size_t max_unknowns = 20000;
    double max_seconds = 900;
    std::uint64_t max_order_degree3 = 125;
    std::uint64_t max_order_degree2 = 625;
    bool full = false; // lifts the group-order caps
    std::uint64_t closure_exhaustive_limit = 300'000'000;
    std::uint64_t closure_samples = 1u << 20;
};

class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// throws precondition_error when z is not closed
[[nodiscard]] CoboundaryCertificate is_coboundary(const CochainView& z, const SolveBudget& budget = {});
[[nodiscard]] CoboundaryCertificate is_coboundary(const Cochain& z, const SolveBudget& budget = {});

[[nodiscard]] std::vector<Cochain> h1_basis(GroupPtr g);

struct DimBudget {
    std::size_t max_unknowns = 5000;
};

[[nodiscard]] std::size_t cocycle_dim(GroupPtr g, std::size_t degree, const DimBudget& budget = {});
[[nodiscard]] std::size_t cohomology_dim(GroupPtr g, std::size_t degree, const DimBudget& budget = {});

} // namespace cohomoforge
