#include "cohomoforge/serialize.hpp"

#include "cohomoforge/digest.hpp"

#include <json.hpp>

namespace cohomoforge {

using nlohmann::json;

namespace {

std::string dump(const json& j, int indent) {
    return j.dump(indent < 0 ? -1 : indent);
}

json params_json(const FamilyParams& p) {
    return {{"p", p.prime}, {"r", p.r}, {"experimental", p.experimental_range}};
}

json subgroup_json(const Subgroup& s) {
    json gens = json::array();
    for (Elem x : s.generators)
        gens.push_back(s.parent->format(x));
    return {{"order", s.order()}, {"generators", gens}};
}

json eta_json(const EtaCertificate& c) {
    json preds = json::array();
    for (const auto& pr : c.predicates)
        preds.push_back({{"name", pr.name}, {"holds", pr.holds}, {"detail", pr.detail}});
    json pbs = json::array();
    for (const auto& pb : c.type_b_pullbacks)
        pbs.push_back({{"subgroup", pb.label},
            {"order", pb.order},
            {"exponent", pb.exponent},
            {"center_order", pb.center_order},
            {"extraspecial", pb.extraspecial}});
    json rels = json::array();
    for (auto [i, j] : c.tail_relations)
        rels.push_back({i, j});
    return {{"schema", certificate_schema},
        {"kind", "eta"},
        {"params", params_json(c.params)},
        {"construction", c.construction},
        {"relaxed_c4", c.relaxed_c4},
        {"cover",
            {{"order", c.ghat->order()},
                {"presentation", format_presentation(c.ghat->presentation())},
                {"kernel_generator", c.ghat->format(c.kernel_generator)}}},
        {"tail_relations", rels},
        {"tails", c.tails},
        {"ar_sigma_tail", c.ar_sigma_tail},
        {"predicates", preds},
        {"accepted", c.accepted()},
        {"all_hold", c.all_hold()},
        {"type_b_pullbacks", pbs},
        {"cocycle_sha256", cochain_hash(c.cocycle)},
        {"candidates_examined", c.candidates_examined},
        {"trace", c.trace}};
}

json cob_json(const CoboundaryCertificate& c) {
    json j = {{"schema", certificate_schema},
        {"kind", "coboundary"},
        {"status", to_string(c.status)},
        {"unknowns", c.unknowns},
        {"columns", c.columns},
        {"basis_size", c.basis_size},
        {"rows_streamed", c.rows_streamed},
        {"closure_check", c.closure_check},
        {"failing_residual", c.failing_residual},
        {"reason", c.reason}};
    j["witness_sha256"] = c.witness ? json(cochain_hash(*c.witness)) : json(nullptr);
    return j;
}

json det_json(const DetectionOutcome& d) {
    json res = json::array();
    for (const auto& rr : d.results) {
        json r = {{"centralizer", subgroup_json(rr.centralizer)},
            {"exact_zero", rr.exact_zero},
            {"status", to_string(rr.status())}};
        r["certificate"] = rr.certificate ? cob_json(*rr.certificate) : json(nullptr);
        res.push_back(r);
    }
    return {{"class", d.class_name},
        {"rank", d.rank},
        {"global", to_string(d.global)},
        {"status", to_string(d.status)},
        {"detected", d.detected()},
        {"restrictions", res}};
}

} // namespace

std::string describe_subgroup(const Subgroup& s) {
    std::string out = "<";
    for (std::size_t i = 0; i < s.generators.size(); ++i)
        out += (i ? ", " : "") + s.parent->format(s.generators[i]);
    return out + ">";
}

std::string eta_certificate_json(const EtaCertificate& c, int indent) {
    return dump(eta_json(c), indent);
}

std::string coboundary_json(const CoboundaryCertificate& c, int indent) {
    return dump(cob_json(c), indent);
}

std::string detection_json(const DetectionOutcome& d, int indent) {
    return dump(det_json(d), indent);
}

std::string report_json(const DepthReport& r, int indent, bool with_timing) {
    json stages = json::array();
    json timing = json::object();
    double total = 0;
    for (const auto& s : r.stages) {
        json j = {{"name", s.name}, {"status", to_string(s.status)}, {"detail", s.detail}};
        j["sha256"] = s.hash.empty() ? json(nullptr) : json(s.hash);
        stages.push_back(j);
        timing[s.name] = s.seconds;
        total += s.seconds;
    }
    timing["total"] = total;
    json verdict = {{"interval", {r.interval_low, r.interval_high}}};
    verdict["depth"] = r.depth ? json(*r.depth) : json(nullptr);
    verdict["status"] = r.depth ? "VERIFIED" : "INCONCLUSIVE";
    json bounds = {{"duflot_lower", r.duflot_lower},
        {"notbohm_upper", r.notbohm.upper},
        {"notbohm_witness", subgroup_json(r.notbohm.witness)},
        {"notbohm_centralizer", subgroup_json(r.notbohm.centralizer)},
        {"notbohm_elementary_abelian_axiom", r.notbohm.cohen_macaulay}};
    json j = {{"schema", report_schema},
        {"params", params_json(r.params)},
        {"experimental", r.experimental},
        {"group_order", r.group_order},
        {"bounds", bounds},
        {"stages", stages},
        {"verdict", verdict},
        {"notes", r.notes}};
    j["eta"] = r.eta ? eta_json(*r.eta) : json(nullptr);
    j["theta"] = r.theta ? cob_json(*r.theta) : json(nullptr);
    j["detection"] = r.detection ? det_json(*r.detection) : json(nullptr);
    if (with_timing)
        j["timing"] = timing;
    return dump(j, indent);
}

std::string certificate_hash(const EtaCertificate& c) {
    return sha256_hex(eta_certificate_json(c, -1));
}

std::string certificate_hash(const CoboundaryCertificate& c) {
    return sha256_hex(coboundary_json(c, -1));
}

std::string certificate_hash(const DetectionOutcome& d) {
    return sha256_hex(detection_json(d, -1));
}

} // namespace cohomoforge
