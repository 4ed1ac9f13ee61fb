#include "cohomoforge/depth.hpp"

#include "cohomoforge/digest.hpp"
#include "cohomoforge/serialize.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace cohomoforge {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 2^24 tuples: small enough to materialize for faster evaluation
constexpr std::uint64_t materialize_limit = 1u << 24;

std::uint64_t tuple_count(std::uint64_t order, std::size_t degree) {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < degree; ++i)
        n *= order - 1;
    return n;
}

} // namespace

std::size_t duflot_lower(GroupPtr g) {
    return p_rank(center(std::move(g)));
}

NotbohmBound notbohm_bound(GroupPtr g) {
    const std::size_t rank = p_rank(whole_group(g));
    NotbohmBound best;
    best.upper = rank + 1;
    std::size_t best_rank = 0;
    // highest rank first; within a rank the last subgroup enumerated wins ties
    for (std::size_t s = rank; s >= 1; --s) {
        for (const Subgroup& e : enumerate_elementary_abelian(g, s)) {
            Subgroup c = centralizer(g, e);
            const bool ea = is_elementary_abelian(c);
            const std::size_t bound = ea ? log_p(c.order(), g->prime()) : p_rank(c);
            if (bound < best.upper || (bound == best.upper && s == best_rank)) {
                best_rank = s;
                best.upper = bound;
                best.witness = e;
                best.centralizer = c;
                best.cohen_macaulay = ea;
            }
        }
    }
    if (best.upper > rank) {
        // trivial group: no elementary abelian subgroups
        best.upper = 0;
        best.witness = trivial_subgroup(g);
        best.centralizer = whole_group(g);
    }
    return best;
}

std::size_t notbohm_upper(GroupPtr g) {
    return notbohm_bound(std::move(g)).upper;
}

std::vector<Subgroup> centralizer_family(GroupPtr g, std::size_t s) {
    std::set<Subgroup> seen;
    std::vector<Subgroup> out;
    for (const Subgroup& e : enumerate_elementary_abelian(g, s)) {
        Subgroup c = centralizer(g, e);
        if (seen.insert(c).second)
            out.push_back(std::move(c));
    }
    return out;
}

CoboundaryStatus RestrictionResult::status() const {
    if (exact_zero)
        return CoboundaryStatus::is_coboundary;
    return certificate ? certificate->status : CoboundaryStatus::inconclusive;
}

std::string to_string(DetectionStatus s) {
    switch (s) {
    case DetectionStatus::detected:
        return "DETECTED";
    case DetectionStatus::undetected:
        return "UNDETECTED";
    case DetectionStatus::vacuous:
        return "VACUOUS";
    case DetectionStatus::inconclusive:
        return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

std::string to_string(StageStatus s) {
    switch (s) {
    case StageStatus::ok:
        return "ok";
    case StageStatus::failed:
        return "failed";
    case StageStatus::inconclusive:
        return "inconclusive";
    case StageStatus::skipped:
        return "skipped";
    }
    return "skipped";
}

DetectionOutcome detection_test(GroupPtr g, const CochainView& z, std::size_t s, const DetectionOptions& opts) {
    if (z.group != g)
        throw cochain_error("detection test: class lives on another group");
    DetectionOutcome out;
    out.class_name = opts.class_name;
    out.rank = s;
    if (opts.known_global) {
        out.global = *opts.known_global;
    } else {
        auto cl = check_closed(z, opts.budget.closure_exhaustive_limit, opts.budget.closure_samples);
        if (!cl.closed)
            throw precondition_error("detection test on a cochain that is not closed");
        out.global = is_coboundary(z, opts.budget).status;
    }
    if (out.global == CoboundaryStatus::is_coboundary) {
        out.status = DetectionStatus::vacuous;
        return out;
    }
    bool any_nonzero = false, any_open = false;
    for (Subgroup& c : centralizer_family(g, s)) {
        RestrictionResult rr;
        rr.centralizer = c;
        SubgroupGroup sub = as_group(c);
        Cochain res = restrict(z, sub);
        if (res.is_zero()) {
            rr.exact_zero = true;
        } else {
            rr.certificate = is_coboundary(res, opts.budget);
            any_nonzero = any_nonzero || rr.certificate->status == CoboundaryStatus::not_coboundary;
            any_open = any_open || rr.certificate->status == CoboundaryStatus::inconclusive;
        }
        out.results.push_back(std::move(rr));
    }
    if (any_nonzero)
        out.status = DetectionStatus::detected;
    else if (any_open || out.global != CoboundaryStatus::not_coboundary)
        out.status = DetectionStatus::inconclusive;
    else
        out.status = DetectionStatus::undetected;
    return out;
}

DetectionOutcome detection_test(GroupPtr g, const Cochain& z, std::size_t s, const DetectionOptions& opts) {
    return detection_test(std::move(g), view(z), s, opts);
}

DepthReport verify_depth_one(const FamilyParams& params, const DepthOptions& opts) {
    validate_params(params);
    DepthReport rep;
    rep.params = params;
    rep.experimental = !in_verified_range(params);
    auto stage = [&](std::string name, StageStatus st, std::string detail, double secs, std::string hash = {}) {
        rep.stages.push_back({std::move(name), st, std::move(detail), std::move(hash), secs});
    };

    auto t0 = Clock::now();
    GroupPtr g = build_gr(params, opts.eta.group);
    rep.group_order = g->order();
    {
        bool ok = true;
        for (const auto& rc : check_family_relations(*g, params))
            ok = ok && rc.holds;
        const std::uint64_t ex = exponent_of(g);
        ok = ok && ex == params.prime;
        stage("build_gr", ok ? StageStatus::ok : StageStatus::failed,
            "order " + std::to_string(g->order()) + ", exponent " + std::to_string(ex)
                + (ok ? ", relations hold" : ", a relation fails"),
            since(t0));
    }

    t0 = Clock::now();
    rep.duflot_lower = duflot_lower(g);
    stage("duflot_lower", StageStatus::ok, "rk_p Z(G) = " + std::to_string(rep.duflot_lower), since(t0));

    t0 = Clock::now();
    rep.notbohm = notbohm_bound(g);
    stage("notbohm_upper", StageStatus::ok,
        "depth <= " + std::to_string(rep.notbohm.upper) + " via E = " + describe_subgroup(rep.notbohm.witness)
            + (rep.notbohm.cohen_macaulay ? " (elementary abelian centralizer)" : " (p-rank of the centralizer)"),
        since(t0));
    rep.interval_low = rep.duflot_lower;
    rep.interval_high = rep.notbohm.upper;

    t0 = Clock::now();
    try {
        rep.eta = construct_eta(params, opts.eta);
    } catch (const certification_failure& e) {
        stage("construct_eta", StageStatus::failed, e.what(), since(t0));
        rep.notes.push_back("no cover satisfies the required predicates");
        return rep;
    }
    {
        const auto& c = *rep.eta;
        std::string detail = "construction " + c.construction + ", |cover| = " + std::to_string(c.ghat->order());
        if (c.relaxed_c4)
            detail += ", C4 unsatisfiable and reported";
        if (!c.all_hold())
            for (const auto& pr : c.predicates)
                if (!pr.holds && !(c.relaxed_c4 && pr.name == "C4"))
                    detail += ", " + pr.name + " fails";
        stage("construct_eta", c.base_hold() ? StageStatus::ok : StageStatus::failed, detail, since(t0),
            certificate_hash(c));
        if (!c.base_hold())
            return rep;
    }

    g = rep.eta->base; // the cocycle lives on the certificate's copy of G_r
    t0 = Clock::now();
    Cochain sigma = coordinate_cochain(g, 0);
    {
        auto cl = check_closed(sigma);
        stage("sigma_star", cl.closed ? StageStatus::ok : StageStatus::failed, "sigma* closed, sigma*(s) = 1",
            since(t0), cochain_hash(sigma));
    }

    CochainView theta = cup_view(view(sigma), view(rep.eta->cocycle));
    std::optional<Cochain> theta_stored;
    if (tuple_count(g->order(), 3) <= materialize_limit) {
        theta_stored = materialize(theta);
        theta = view(*theta_stored);
    }

    t0 = Clock::now();
    std::optional<CoboundaryStatus> global;
    if (opts.global_solve) {
        rep.theta = theta_stored ? is_coboundary(*theta_stored, opts.budget) : is_coboundary(theta, opts.budget);
        global = rep.theta->status;
        StageStatus st = StageStatus::inconclusive;
        std::string detail = to_string(rep.theta->status);
        if (rep.theta->status == CoboundaryStatus::not_coboundary) {
            st = StageStatus::ok;
        } else if (rep.theta->status == CoboundaryStatus::is_coboundary) {
            st = StageStatus::failed;
            detail += ": theta is zero in cohomology for this cover";
        } else {
            detail += ": " + rep.theta->reason;
        }
        stage("theta_global", st, detail, since(t0), certificate_hash(*rep.theta));
    } else {
        stage("theta_global", StageStatus::skipped, "degree-3 solve in G not requested", 0);
    }

    t0 = Clock::now();
    {
        DetectionOptions dopt;
        dopt.budget = opts.budget;
        dopt.class_name = "theta";
        dopt.known_global = global ? *global : CoboundaryStatus::inconclusive;
        rep.detection = detection_test(g, theta, 2, dopt);
        const auto& d = *rep.detection;
        std::size_t zero = 0, cob = 0, other = 0;
        for (const auto& rr : d.results) {
            if (rr.exact_zero)
                ++zero;
            else if (rr.status() == CoboundaryStatus::is_coboundary)
                ++cob;
            else
                ++other;
        }
        StageStatus st = StageStatus::inconclusive;
        if (d.status == DetectionStatus::detected || d.status == DetectionStatus::vacuous)
            st = StageStatus::failed;
        else if (other == 0)
            st = StageStatus::ok;
        stage("detection", st,
            std::to_string(d.results.size()) + " centralizers: " + std::to_string(zero) + " exact zero, "
                + std::to_string(cob) + " coboundary, " + std::to_string(other) + " other; " + to_string(d.status),
            since(t0), certificate_hash(d));
    }

    const bool restrictions_vanish =
        std::all_of(rep.detection->results.begin(), rep.detection->results.end(),
            [](const RestrictionResult& r) { return r.status() == CoboundaryStatus::is_coboundary; });
    if (rep.experimental) {
        rep.notes.push_back("experimental parameters: bounds only, no depth conclusion");
        if (!restrictions_vanish)
            rep.notes.push_back("some restriction of theta to H_2(G) does not vanish");
    } else if (global == CoboundaryStatus::not_coboundary && restrictions_vanish
               && rep.detection->status == DetectionStatus::undetected && rep.duflot_lower == 1) {
        rep.depth = 1;
        rep.interval_low = rep.interval_high = 1;
    } else if (global == CoboundaryStatus::is_coboundary) {
        rep.notes.push_back("theta is a coboundary for the constructed cover; the witness class gives no bound");
    } else if (!global || global == CoboundaryStatus::inconclusive) {
        rep.notes.push_back("degree-3 global solve not completed; interval from the bound chain");
    }
    return rep;
}

} // namespace cohomoforge
