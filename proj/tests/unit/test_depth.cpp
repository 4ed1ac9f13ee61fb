#include "cohomoforge/depth.hpp"
#include "cohomoforge/serialize.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace cohomoforge;

namespace {

const DepthReport& report_5_2() {
    static const DepthReport r = verify_depth_one({5, 2, false});
    return r;
}

} // namespace

TEST_SUITE("depth") {

TEST_CASE("bounds match the oracle") {
    const auto& b = test::oracle()["bounds"];
    GroupPtr g2 = build_gr({5, 2, false});
    CHECK(duflot_lower(g2) == b["G_2"]["duflot"].get<std::size_t>());
    CHECK(notbohm_upper(g2) == b["G_2"]["notbohm"].get<std::size_t>());
    CHECK(p_rank(whole_group(g2)) == b["G_2"]["p_rank"].get<std::size_t>());
    CHECK(centralizer_family(g2, 2).size() == b["G_2"]["rank2_centralizers"].get<std::size_t>());

    GroupPtr g3 = build_gr({5, 3, false});
    CHECK(duflot_lower(g3) == b["G_3"]["duflot"].get<std::size_t>());
    NotbohmBound nb = notbohm_bound(g3);
    CHECK(nb.upper == b["G_3"]["notbohm"].get<std::size_t>());
    CHECK(nb.witness.order() == 25);
    CHECK(p_rank(whole_group(g3)) == b["G_3"]["p_rank"].get<std::size_t>());
    CHECK(centralizer_family(g3, 2).size() == b["G_3"]["rank2_centralizers"].get<std::size_t>());

    GroupPtr e3 = make_group(PcPresentation(5, 3));
    CHECK(notbohm_upper(e3) == b["C5^3"]["notbohm"].get<std::size_t>());
    GroupPtr e2 = make_group(PcPresentation(5, 2));
    CHECK(duflot_lower(e2) == b["C5^2"]["duflot"].get<std::size_t>());
    CHECK(notbohm_upper(e2) == b["C5^2"]["notbohm"].get<std::size_t>());
}

TEST_CASE("sigma* is detected on rank-2 centralizers") {
    GroupPtr g = build_gr({5, 2, false});
    DetectionOutcome d = detection_test(g, coordinate_cochain(g, 0), 2);
    CHECK(d.global == CoboundaryStatus::not_coboundary);
    CHECK(d.detected());
    CHECK(d.status == DetectionStatus::detected);
}

TEST_CASE("a coboundary gives a vacuous detection test") {
    GroupPtr g = build_gr({5, 2, false});
    Cochain phi = coordinate_cochain(g, 1);
    DetectionOutcome d = detection_test(g, differential(phi), 2);
    CHECK(d.status == DetectionStatus::vacuous);
    CHECK_FALSE(d.detected());
}

TEST_CASE("depth one at (5,2)") {
    const DepthReport& r = report_5_2();
    REQUIRE(r.depth.has_value());
    CHECK(*r.depth == 1);
    CHECK(r.duflot_lower == 1);
    CHECK(r.notbohm.upper == 2);
    CHECK(r.theta->status == CoboundaryStatus::not_coboundary);
    CHECK(r.detection->status == DetectionStatus::undetected);
    CHECK(r.detection->results.size() == 6);
    std::size_t zero = 0;
    for (const auto& rr : r.detection->results) {
        CHECK(rr.status() == CoboundaryStatus::is_coboundary);
        if (rr.certificate) {
            REQUIRE(rr.certificate->witness.has_value());
            const Cochain res = restrict(materialize(cup_view(view(coordinate_cochain(r.eta->base, 0)),
                                             view(r.eta->cocycle))),
                rr.centralizer);
            CHECK(differential(*rr.certificate->witness).raw() == res.raw());
        }
        zero += rr.exact_zero ? 1 : 0;
    }
    CHECK(zero == 1);
    for (const auto& s : r.stages)
        CHECK_MESSAGE(s.status == StageStatus::ok, s.name << ": " << s.detail);
}

TEST_CASE("reports are deterministic apart from timing") {
    const DepthReport& a = report_5_2();
    DepthReport b = verify_depth_one({5, 2, false});
    CHECK(report_json(a, -1, false) == report_json(b, -1, false));
    CHECK(certificate_hash(*a.eta) == certificate_hash(*b.eta));
    CHECK(certificate_hash(*a.theta) == certificate_hash(*b.theta));
    const auto doc = nlohmann::json::parse(report_json(a));
    CHECK(doc["schema"] == std::string(report_schema));
    CHECK(doc.contains("timing"));
    CHECK(doc["verdict"]["depth"] == 1);
}

TEST_CASE("(5,3) stays an interval under the default budget") {
    DepthOptions o;
    o.global_solve = false;
    DepthReport r = verify_depth_one({5, 3, false}, o);
    CHECK_FALSE(r.depth.has_value());
    CHECK(r.interval_low == 1);
    CHECK(r.interval_high == 2);
    CHECK(r.eta->relaxed_c4);
    CHECK(r.detection->status == DetectionStatus::inconclusive);
    for (const auto& rr : r.detection->results)
        CHECK(rr.status() == CoboundaryStatus::is_coboundary);
}

TEST_CASE("experimental parameters give no verdict") {
    DepthOptions o;
    o.global_solve = false;
    DepthReport r = verify_depth_one({3, 2, true}, o);
    CHECK(r.experimental);
    CHECK_FALSE(r.depth.has_value());
    CHECK_THROWS_AS((void)verify_depth_one({5, 4, false}), parameter_error);
}

}
