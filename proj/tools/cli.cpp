#include "cli.hpp"

#include "cohomoforge/cache.hpp"
#include "cohomoforge/digest.hpp"
#include "cohomoforge/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace cohomoforge::cli {

using nlohmann::json;

namespace {

struct Options {
    unsigned p = 5;
    std::size_t r = 2;
    bool experimental = false;
    std::string presentation;
    std::string emit;
    std::string format = "json";
    std::string cache_dir;
    bool no_cache = false;
    std::size_t cache_ceiling = 5000;
    std::size_t max_unknowns = 20000;
    double max_seconds = 900;
    bool full_budget = false;
    bool strict = false;
    std::size_t max_degree = 3;
    std::size_t dim_unknowns = 5000;
};

// a finished command: the cacheable document and its exit code
struct Outcome {
    json doc;
    int code = exit_ok;
};

FamilyParams family(const Options& o) {
    return {static_cast<residue_t>(o.p), o.r, o.experimental};
}

GroupOptions group_options(const Options& o) {
    GroupOptions g;
    g.cache_ceiling = o.cache_ceiling;
    return g;
}

SolveBudget budget(const Options& o) {
    SolveBudget b;
    b.max_unknowns = o.max_unknowns;
    b.max_seconds = o.max_seconds;
    b.full = o.full_budget;
    return b;
}

json params_json(const Options& o) {
    return {{"p", o.p}, {"r", o.r}, {"experimental", o.experimental}};
}

std::string params_key(const Options& o) {
    std::ostringstream s;
    s << "p=" << o.p << ";r=" << o.r << ";experimental=" << o.experimental << ";strict=" << o.strict
      << ";max_unknowns=" << o.max_unknowns << ";max_seconds=" << o.max_seconds << ";full=" << o.full_budget;
    return s.str();
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GroupPtr target_group(const Options& o, json& doc) {
    if (!o.presentation.empty()) {
        doc["presentation_file"] = o.presentation;
        return make_group(parse_presentation(read_text(o.presentation)), group_options(o));
    }
    doc["params"] = params_json(o);
    return build_gr(family(o), group_options(o));
}

Outcome group_info(const Options& o) {
    Outcome out;
    json& d = out.doc;
    d["schema"] = report_schema;
    d["kind"] = "group_info";
    GroupPtr g = target_group(o, d);
    d["order"] = g->order();
    d["prime"] = g->prime();
    d["exponent"] = exponent_of(g);
    d["center_rank"] = p_rank(center(g));
    d["p_rank"] = p_rank(whole_group(g));
    json lcs = json::array(), idx = json::array();
    auto series = lower_central_series(g);
    for (std::size_t i = 0; i < series.size(); ++i) {
        lcs.push_back(series[i].order());
        if (i + 1 < series.size())
            idx.push_back(series[i].order() / series[i + 1].order());
    }
    d["lower_central_series"] = lcs;
    d["gamma_indices"] = idx;
    d["presentation"] = format_presentation(g->presentation());
    if (o.presentation.empty()) {
        json rel = json::array();
        for (const auto& rc : check_family_relations(*g, family(o))) {
            rel.push_back({{"relation", rc.relation}, {"holds", rc.holds}});
            if (!rc.holds)
                out.code = exit_error;
        }
        d["relations"] = rel;
    }
    return out;
}

Outcome cohomology_dims(const Options& o) {
    Outcome out;
    json& d = out.doc;
    d["schema"] = report_schema;
    d["kind"] = "cohomology_dims";
    GroupPtr g = target_group(o, d);
    d["order"] = g->order();
    DimBudget b;
    b.max_unknowns = o.dim_unknowns;
    json dims = json::array();
    for (std::size_t k = 0; k <= o.max_degree; ++k) {
        try {
            dims.push_back(cohomology_dim(g, k, b));
        } catch (const resource_error& e) {
            dims.push_back(nullptr);
            d["inconclusive"] = e.what();
            out.code = exit_inconclusive;
            break;
        }
    }
    d["dims"] = dims;
    return out;
}

EtaCertificate certify_eta(const Options& o) {
    EtaOptions eo;
    eo.strict = o.strict;
    eo.group = group_options(o);
    return construct_eta(family(o), eo);
}

Outcome eta_certify(const Options& o) {
    return {json::parse(eta_certificate_json(certify_eta(o), -1)), exit_ok};
}

Outcome theta_certify(const Options& o) {
    EtaCertificate eta = certify_eta(o);
    GroupPtr g = eta.base;
    Cochain sigma = coordinate_cochain(g, 0);
    CochainView theta = cup_view(view(sigma), view(eta.cocycle));
    CoboundaryCertificate c;
    if (g->order() <= 125)
        c = is_coboundary(materialize(theta), budget(o));
    else
        c = is_coboundary(theta, budget(o));
    Outcome out;
    out.doc = {{"schema", certificate_schema},
        {"kind", "theta"},
        {"params", params_json(o)},
        {"eta_sha256", certificate_hash(eta)},
        {"sigma_sha256", cochain_hash(sigma)},
        {"eta_relaxed_c4", eta.relaxed_c4},
        {"certificate", json::parse(coboundary_json(c, -1))},
        {"status", to_string(c.status)}};
    switch (c.status) {
    case CoboundaryStatus::not_coboundary:
        out.code = exit_ok;
        break;
    case CoboundaryStatus::is_coboundary:
        out.code = exit_error;
        break;
    case CoboundaryStatus::inconclusive:
        out.code = exit_inconclusive;
        break;
    }
    return out;
}

Outcome verify_depth(const Options& o) {
    DepthOptions d;
    d.budget = budget(o);
    d.eta.group = group_options(o);
    DepthReport rep = verify_depth_one(family(o), d);
    return {json::parse(report_json(rep, -1, false)), rep.verified() ? exit_ok : exit_inconclusive};
}

int code_from_doc(const json& doc) {
    const std::string kind = doc.value("kind", "");
    if (kind == "theta") {
        const std::string st = doc.value("status", "");
        return st == "NOT_COBOUNDARY" ? exit_ok : st == "IS_COBOUNDARY" ? exit_error : exit_inconclusive;
    }
    if (doc.value("schema", "") == report_schema && doc.contains("verdict"))
        return doc["verdict"].value("status", "") == "VERIFIED" ? exit_ok : exit_inconclusive;
    return exit_ok;
}

std::string scalar_text(const json& v) {
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

void print_table(const json& doc, std::ostream& out) {
    std::size_t width = 0;
    for (auto it = doc.begin(); it != doc.end(); ++it)
        width = std::max(width, it.key().size());
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const json& v = it.value();
        if (it.key() == "stages") {
            out << "stages:\n";
            for (const auto& s : v)
                out << "  " << std::left << std::setw(16) << s.value("name", "") << std::setw(14)
                    << s.value("status", "") << s.value("detail", "") << "\n";
        } else if (it.key() == "predicates") {
            out << "predicates:\n";
            for (const auto& s : v)
                out << "  " << std::left << std::setw(4) << s.value("name", "") << std::setw(7)
                    << (s.value("holds", false) ? "holds" : "fails") << s.value("detail", "") << "\n";
        } else if (v.is_primitive() || (v.is_array() && v.size() <= 16 && std::all_of(v.begin(), v.end(),
                                           [](const json& x) { return x.is_primitive(); }))) {
            std::string text = scalar_text(v);
            if (text.find('\n') != std::string::npos) {
                out << it.key() << ":\n" << text;
                if (text.back() != '\n')
                    out << "\n";
            } else {
                out << std::left << std::setw(static_cast<int>(width) + 2) << (it.key() + ":") << text << "\n";
            }
        } else if (v.is_object() && it.key() == "verdict") {
            out << std::left << std::setw(static_cast<int>(width) + 2) << "verdict:" << v.value("status", "");
            if (!v["depth"].is_null())
                out << ", depth " << v["depth"].dump();
            out << ", interval " << v["interval"].dump() << "\n";
        }
    }
}

int emit(const Options& o, json doc, double seconds, bool cache_hit, int code, std::ostream& out, std::ostream& err) {
    doc["timing"] = {{"seconds", cache_hit ? 0.0 : seconds}, {"cache", cache_hit ? "hit" : "miss"}};
    const std::string text = doc.dump(2) + "\n";
    if (!o.emit.empty()) {
        std::ofstream f(o.emit, std::ios::binary | std::ios::trunc);
        if (!f) {
            err << "error: cannot write " << o.emit << "\n";
            return exit_error;
        }
        f << text;
    }
    if (o.format == "table")
        print_table(doc, out);
    else if (o.emit.empty())
        out << text;
    return code;
}

int execute(const Options& o, const std::string& stage, Outcome (*fn)(const Options&), bool cacheable,
    std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    auto seconds = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
    if (!cacheable || o.no_cache) {
        Outcome r = fn(o);
        return emit(o, std::move(r.doc), seconds(), false, r.code, out, err);
    }
    Cache cache(o.cache_dir.empty() ? Cache::default_root() : std::filesystem::path(o.cache_dir));
    const std::string schema = stage == "eta" || stage == "theta" ? std::string(certificate_schema)
                                                                  : std::string(report_schema);
    const std::string key = Cache::make_key(schema, params_key(o), stage);
    std::vector<std::string> warnings;
    if (auto hit = cache.load(key, &warnings)) {
        for (const auto& w : warnings)
            err << "warning: " << w << "\n";
        json doc = json::parse(*hit);
        return emit(o, std::move(doc), 0, true, code_from_doc(doc), out, err);
    }
    for (const auto& w : warnings)
        err << "warning: " << w << "\n";
    Outcome r = fn(o);
    // budget-bound outcomes depend on the machine, so only settled ones are stored
    if (r.code != exit_inconclusive)
        cache.store(key, r.doc.dump());
    return emit(o, std::move(r.doc), seconds(), false, r.code, out, err);
}

void add_family_options(CLI::App* app, Options& o) {
    app->add_option("--p", o.p, "prime p")->capture_default_str();
    app->add_option("--r", o.r, "family index r")->capture_default_str();
    app->add_flag("--experimental", o.experimental, "accept p = 3 and r = p-1 (no correctness claims)");
}

void add_output_options(CLI::App* app, Options& o) {
    app->add_option("--emit", o.emit, "write the JSON document to this path");
    app->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    app->add_option("--cache-ceiling", o.cache_ceiling, "largest group given a full multiplication table")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_cache_options(CLI::App* app, Options& o) {
    app->add_option("--cache-dir", o.cache_dir, "certificate cache (default $COHOMOFORGE_CACHE or .cohomoforge-cache)");
    app->add_flag("--no-cache", o.no_cache, "neither read nor write the cache");
}

void add_budget_options(CLI::App* app, Options& o) {
    app->add_option("--max-unknowns", o.max_unknowns, "reduced unknowns allowed per solve")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--max-seconds", o.max_seconds, "wall time allowed per solve")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_flag("--full-budget", o.full_budget, "lift the group-order caps on degree-2/3 solves");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Constructs the groups G_r and certifies cohomology classes over F_p", "cohomoforge"};
    app.require_subcommand(1);

    auto* group = app.add_subcommand("group", "group constructions")->require_subcommand(1);
    auto* group_info_cmd = group->add_subcommand("info", "order, exponent, centre and lower central series");
    add_family_options(group_info_cmd, o);
    add_output_options(group_info_cmd, o);
    group_info_cmd->add_option("--presentation", o.presentation, "pc presentation file instead of G_r")
        ->check(CLI::ExistingFile);

    auto* coh = app.add_subcommand("cohomology", "bar-complex cohomology")->require_subcommand(1);
    auto* dims_cmd = coh->add_subcommand("dims", "dim H^k(G; F_p) for k = 0..max-degree");
    add_family_options(dims_cmd, o);
    add_output_options(dims_cmd, o);
    dims_cmd->add_option("--presentation", o.presentation, "pc presentation file instead of G_r")
        ->check(CLI::ExistingFile);
    dims_cmd->add_option("--max-degree", o.max_degree, "highest degree")->capture_default_str();
    dims_cmd->add_option("--max-unknowns", o.dim_unknowns, "reduced unknowns allowed per degree")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* eta = app.add_subcommand("eta", "central extensions of G_r")->require_subcommand(1);
    auto* eta_cmd = eta->add_subcommand("certify", "construct and certify the cover");
    add_family_options(eta_cmd, o);
    add_output_options(eta_cmd, o);
    add_cache_options(eta_cmd, o);
    eta_cmd->add_flag("--strict", o.strict, "require every predicate including C5");

    auto* theta = app.add_subcommand("theta", "the degree-3 class sigma* cup eta")->require_subcommand(1);
    auto* theta_cmd = theta->add_subcommand("certify", "decide whether theta is a coboundary");
    add_family_options(theta_cmd, o);
    add_output_options(theta_cmd, o);
    add_cache_options(theta_cmd, o);
    add_budget_options(theta_cmd, o);

    auto* verify = app.add_subcommand("verify", "verifiers")->require_subcommand(1);
    auto* depth_cmd = verify->add_subcommand("depth", "bound chain, detection and depth verdict");
    add_family_options(depth_cmd, o);
    add_output_options(depth_cmd, o);
    add_cache_options(depth_cmd, o);
    add_budget_options(depth_cmd, o);

    auto* cache = app.add_subcommand("cache", "certificate cache")->require_subcommand(1);
    auto* gc_cmd = cache->add_subcommand("gc", "drop corrupt, stale and abandoned entries");
    gc_cmd->add_option("--cache-dir", o.cache_dir, "certificate cache (default $COHOMOFORGE_CACHE or .cohomoforge-cache)");
    add_output_options(gc_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        if (*group_info_cmd)
            return execute(o, "group_info", group_info, false, out, err);
        if (*dims_cmd)
            return execute(o, "cohomology_dims", cohomology_dims, false, out, err);
        if (*eta_cmd)
            return execute(o, "eta", eta_certify, true, out, err);
        if (*theta_cmd)
            return execute(o, "theta", theta_certify, true, out, err);
        if (*depth_cmd)
            return execute(o, "verify_depth", verify_depth, true, out, err);
        if (*gc_cmd) {
            Cache c(o.cache_dir.empty() ? Cache::default_root() : std::filesystem::path(o.cache_dir));
            CacheGcResult g = c.gc();
            json doc = {{"kind", "cache_gc"},
                {"root", c.root().string()},
                {"kept", g.kept},
                {"removed_corrupt", g.removed_corrupt},
                {"removed_stale", g.removed_stale},
                {"removed_temp", g.removed_temp}};
            return emit(o, std::move(doc), 0, false, exit_ok, out, err);
        }
    } catch (const parameter_error& e) {
        err << "parameter error: " << e.what() << "\n";
        return exit_error;
    } catch (const certification_failure& e) {
        err << "certification failed: " << e.what() << "\n";
        for (const auto& line : e.trace())
            err << "  " << line << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_usage;
}

} // namespace cohomoforge::cli
