#pragma once

#include "cohomoforge/family.hpp"

#include <optional>

namespace cohomoforge {

[[nodiscard]] std::size_t duflot_lower(GroupPtr g);

// Taken as an axiom: H* of an elementary abelian group of rank s has depth s.
struct NotbohmBound {
    std::size_t upper = 0;
    Subgroup witness;    // E
    Subgroup centralizer;
    bool cohen_macaulay = false; // centralizer elementary abelian, bound is its rank
};

[[nodiscard]] NotbohmBound notbohm_bound(GroupPtr g);
[[nodiscard]] std::size_t notbohm_upper(GroupPtr g);

// the family H_s(G) = { C_G(E) : E elementary abelian of rank s }, without repeats
[[nodiscard]] std::vector<Subgroup> centralizer_family(GroupPtr g, std::size_t s);

struct RestrictionResult {
    Subgroup centralizer;
    bool exact_zero = false;
    std::optional<CoboundaryCertificate> certificate; // absent when exact_zero
    [[nodiscard]] CoboundaryStatus status() const;
};

enum class DetectionStatus { detected, undetected, vacuous, inconclusive };

[[nodiscard]] std::string to_string(DetectionStatus s);

struct DetectionOutcome {
    std::string class_name;
    std::size_t rank = 0;
    CoboundaryStatus global = CoboundaryStatus::inconclusive;
    std::vector<RestrictionResult> results;
    DetectionStatus status = DetectionStatus::inconclusive;

    // undetected only with the class proved nonzero and every restriction zero
    [[nodiscard]] bool detected() const { return status == DetectionStatus::detected; }
};

struct DetectionOptions {
    SolveBudget budget;
    std::optional<CoboundaryStatus> known_global; // skips the solve in g
    std::string class_name = "z";
};

// throws precondition_error when z is not closed
[[nodiscard]] DetectionOutcome detection_test(GroupPtr g, const CochainView& z, std::size_t s,
    const DetectionOptions& opts = {});
[[nodiscard]] DetectionOutcome detection_test(GroupPtr g, const Cochain& z, std::size_t s,
    const DetectionOptions& opts = {});

enum class StageStatus { ok, failed, inconclusive, skipped };

[[nodiscard]] std::string to_string(StageStatus s);

struct Stage {
    std::string name;
    StageStatus status = StageStatus::skipped;
    std::string detail;
    std::string hash; // sha256 of the stage certificate, if any
    double seconds = 0;
};

struct DepthOptions {
    SolveBudget budget;
    EtaOptions eta;
    bool global_solve = true; // attempt the degree-3 solve in G_r (budget permitting)
};

struct DepthReport {
    FamilyParams params;
    bool experimental = false;
    std::uint64_t group_order = 0;
    std::size_t duflot_lower = 0;
    NotbohmBound notbohm;
    std::optional<EtaCertificate> eta;
    std::optional<CoboundaryCertificate> theta;
    std::optional<DetectionOutcome> detection;
    std::vector<Stage> stages;
    std::optional<std::size_t> depth; // point verdict
    std::size_t interval_low = 0;
    std::size_t interval_high = 0;
    std::vector<std::string> notes;

    [[nodiscard]] bool verified() const { return depth.has_value(); }
};

// throws parameter_error for parameters outside the accepted range
[[nodiscard]] DepthReport verify_depth_one(const FamilyParams& params, const DepthOptions& opts = {});

} // namespace cohomoforge
