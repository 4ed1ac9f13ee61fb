#pragma once

#include "cohomoforge/cochain.hpp"
#include "cohomoforge/fp_matrix.hpp"

namespace cohomoforge {

class parameter_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class classification_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FamilyParams {
    residue_t prime = 5;
    std::size_t r = 2;
    bool experimental_range = false;
};

// throws parameter_error
void validate_params(const FamilyParams& params);
[[nodiscard]] bool in_verified_range(const FamilyParams& params);

// generators s, a1..ar with [a_j, s] = a_{j+1}
[[nodiscard]] GroupPtr build_gr(const FamilyParams& params, GroupOptions opts = {});

struct RelationCheck {
    std::string relation;
    bool holds = false;
};

// evaluates every defining relator of G_r in g
[[nodiscard]] std::vector<RelationCheck> check_family_relations(const FiniteGroup& g, const FamilyParams& params);

// a_i -> a_i a_{i+1} on row vectors, dim r or r+1
[[nodiscard]] FpMatrix sigma_matrix(const FamilyParams& params, std::size_t dim);

struct LambdaForm {
    residue_t prime = 5;
    FpMatrix pairing; // (r+1) x (r+1), alternating

    [[nodiscard]] residue_t operator()(const FpVector& x, const FpVector& y) const;
};

[[nodiscard]] LambdaForm build_lambda_literal(const FamilyParams& params);

struct Predicate {
    std::string name;
    bool holds = false;
    std::string detail;
};

struct PullbackResult {
    Subgroup sub;
    std::string label;
    bool extraspecial = false;
    std::uint64_t order = 0;
    std::uint64_t exponent = 0;
    std::uint64_t center_order = 0;
};

struct EtaCertificate {
    FamilyParams params;
    GroupPtr base;
    GroupPtr ghat;
    Subgroup kernel;
    Elem kernel_generator = 0;
    std::vector<Elem> quotient_map; // ghat -> base
    std::vector<Elem> section;      // base -> ghat
    Cochain cocycle;
    std::string construction;      // "literal" or "tails"
    std::vector<std::pair<std::size_t, std::size_t>> tail_relations;
    std::vector<residue_t> tails;  // kernel exponent of each commutator relation
    residue_t ar_sigma_tail = 0;   // [a_r, s] = a_{r+1}^t in the cover
    std::vector<Predicate> predicates; // C1..C5
    std::vector<PullbackResult> type_b_pullbacks;
    std::vector<std::string> trace;
    std::size_t candidates_examined = 0;
    bool relaxed_c4 = false; // chosen without C4 because no cover satisfies it

    [[nodiscard]] bool accepted() const;  // C1..C4
    [[nodiscard]] bool base_hold() const; // C1..C3
    [[nodiscard]] bool all_hold() const;  // C1..C5
    [[nodiscard]] const Predicate& predicate(const std::string& name) const;
};

class certification_failure : public std::runtime_error {
public:
    certification_failure(const std::string& what, std::vector<std::string> trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    [[nodiscard]] const std::vector<std::string>& trace() const { return trace_; }

private:
    std::vector<std::string> trace_;
};

struct EtaOptions {
    bool strict = false;        // demand C5 as well
    bool force_tails = false;   // skip the literal attempt
    bool allow_relaxed = true;  // without strict: fall back to C1..C3 when C4 is infeasible
    std::size_t max_candidates = 4096;
    GroupOptions group;
};

[[nodiscard]] EtaCertificate construct_eta(const FamilyParams& params, const EtaOptions& opts = {});

// every cover of G_r with central kernel a_{r+1} and tails on the commutator
// relations, as the solution space of the consistency conditions
struct TailSpace {
    std::vector<std::pair<std::size_t, std::size_t>> relations;
    FpMatrix constraints; // rows: overlaps, cols: relations
};

[[nodiscard]] TailSpace tail_space(const FamilyParams& params);
[[nodiscard]] PcPresentation cover_presentation(const FamilyParams& params, const std::vector<residue_t>& tails);

// C1..C5 on a cover given by its pc group with kernel generator last
[[nodiscard]] EtaCertificate certify_cover(const FamilyParams& params, GroupPtr base, GroupPtr ghat,
    std::string construction);

struct PulledBack {
    SubgroupGroup total;
    Subgroup preimage; // in the cover
    Subgroup kernel;   // in total.group
    Elem kernel_generator = 0;
};

[[nodiscard]] PulledBack pullback_extension(const EtaCertificate& cert, const Subgroup& sub);

struct Rank2Classification {
    Subgroup a_sub; // <a1..ar>
    std::vector<Subgroup> type_a;
    std::vector<Subgroup> type_b;
};

[[nodiscard]] Rank2Classification classify_rank2(GroupPtr gr, const FamilyParams& params);
[[nodiscard]] Rank2Classification classify_rank2(const FamilyParams& params);

// <s x, a_r> for x in <a1..a_{r-1}>, built directly
[[nodiscard]] std::vector<Subgroup> type_b_subgroups(GroupPtr gr, const FamilyParams& params);

[[nodiscard]] bool is_extraspecial(const Subgroup& s);

} // namespace cohomoforge
