// fifam: verify, analyze, construct, bound and search hierarchically closed
// fractional intersecting set families.
//
// Exit codes: 0 success, 1 property violation, 2 incomplete search,
// 64 malformed input.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fifam/bounds.hpp"
#include "fifam/canonical.hpp"
#include "fifam/constructions.hpp"
#include "fifam/family_io.hpp"
#include "fifam/search.hpp"
#include "fifam/structure.hpp"
#include "fifam/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitViolation = 1;
constexpr int kExitIncomplete = 2;
constexpr int kExitInput = 64;

using nlohmann::json;

json family_json(const fifam::Family& family) {
    json doc;
    doc["n"] = family.n();
    doc["r"] = family.r();
    doc["theta"] = {{"a", family.theta().num()}, {"b", family.theta().den()}};
    auto& sets = doc["sets"] = json::array();
    for (const fifam::ElementSet& s : family.sets()) sets.push_back(s.elements());
    return doc;
}

json verdict_json(const fifam::Verdict& verdict, const fifam::Family& family) {
    json doc;
    doc["ok"] = verdict.ok;
    if (verdict.violation) {
        json v;
        v["indices"] = verdict.violation->indices;
        v["intersection_size"] = verdict.violation->intersection_size;
        auto& sets = v["sets"] = json::array();
        for (int idx : verdict.violation->indices)
            sets.push_back(family.set(static_cast<std::size_t>(idx)).elements());
        doc["violation"] = std::move(v);
    }
    return doc;
}

std::string set_text(const fifam::ElementSet& s) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (int e : s.elements()) {
        if (!first) out << ',';
        out << e;
        first = false;
    }
    out << '}';
    return out.str();
}

struct Emitter {
    bool structured = false;
    std::string out_path;
    json report;
    std::ostringstream text;

    Emitter(const std::string& subcommand, bool structured_, std::string out_path_)
        : structured(structured_), out_path(std::move(out_path_)) {
        report["version"] = kVersion;
        report["subcommand"] = subcommand;
        report["inputs"] = json::object();
    }

    void input(const std::string& key, const json& value) { report["inputs"][key] = value; }

    void finish(const std::chrono::steady_clock::time_point& start) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        report["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count() / 1000.0;
        std::ostream* out = &std::cout;
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path);
            if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
            out = &file;
        }
        if (structured)
            *out << report.dump(2) << "\n";
        else
            *out << text.str();
    }
};

fifam::Family override_family(const fifam::Family& loaded, std::optional<int> r,
                              const std::optional<std::string>& theta) {
    const int new_r = r.value_or(loaded.r());
    const fifam::Fraction new_theta =
        theta ? fifam::Fraction::parse(*theta) : loaded.theta();
    return fifam::Family(loaded.n(), new_r, new_theta, loaded.sets());
}

json structure_json(const fifam::Family& family, const fifam::StructureReport& report) {
    json doc;
    doc["sizes"] = report.sizes;
    doc["normal_sizes"] = report.normal_sizes;
    doc["exceptional_sizes"] = report.exceptional_sizes;
    doc["i_min"] = report.i_min;
    if (report.i_max) doc["i_max"] = *report.i_max;
    auto& cores = doc["core_by_size"] = json::object();
    for (const auto& [size, core] : report.core_by_size)
        cores[std::to_string(size)] = core.elements();
    auto member = [&](std::optional<int> idx) -> json {
        if (!idx) return nullptr;
        return json{{"index", *idx},
                    {"set", family.set(static_cast<std::size_t>(*idx)).elements()}};
    };
    doc["e_nor"] = member(report.e_nor);
    doc["e_exc"] = member(report.e_exc);
    doc["e_theta"] = member(report.e_theta);
    doc["f_star"] = report.f_star;
    doc["f_star_size"] = report.f_star.size();
    return doc;
}

json levels_json(const fifam::LevelPartition& partition) {
    json doc;
    doc["top_core"] = partition.top_core.elements();
    auto& levels = doc["levels"] = json::array();
    for (const auto& level : partition.levels) {
        json l;
        l["k"] = level.k;
        l["lower_exclusive"] = level.lower;
        l["upper_inclusive"] = level.upper;
        l["sizes"] = level.sizes;
        l["y"] = level.y.elements();
        levels.push_back(std::move(l));
    }
    return doc;
}

json audit_json(const fifam::AuditReport& report) {
    json doc = json::array();
    for (const auto& check : report.checks)
        doc.push_back({{"name", check.name}, {"pass", check.pass}, {"details", check.details}});
    return doc;
}

int cmd_verify(Emitter& em, const std::string& path, std::optional<int> r,
               const std::optional<std::string>& theta, int min_set_size) {
    const fifam::Family family = override_family(fifam::load_family(path), r, theta);
    em.input("path", path);
    em.input("r", family.r());
    em.input("theta", family.theta().str());
    em.input("min_set_size", min_set_size);

    bool sizes_ok = true;
    for (const fifam::ElementSet& s : family.sets()) sizes_ok &= s.size() >= min_set_size;
    const fifam::Verdict verdict = fifam::is_r_closed(family);

    em.report["outputs"]["family_size"] = family.size();
    em.report["outputs"]["verdict"] = verdict_json(verdict, family);
    em.report["outputs"]["min_set_size_ok"] = sizes_ok;

    em.text << "family: " << family.size() << " sets over [" << family.n() << "], theta="
            << family.theta().str() << ", r=" << family.r() << "\n";
    if (!sizes_ok)
        em.text << "FAIL: a member is smaller than min-set-size " << min_set_size << "\n";
    if (verdict.ok) {
        em.text << (sizes_ok ? "OK: family is r-closed theta-intersecting\n"
                             : "family is r-closed, but the size floor fails\n");
    } else {
        em.text << "FAIL: tuple of " << verdict.violation->indices.size()
                << " sets has intersection size " << verdict.violation->intersection_size << ":\n";
        for (int idx : verdict.violation->indices)
            em.text << "  [" << idx << "] " << set_text(family.set(static_cast<std::size_t>(idx)))
                    << "\n";
    }
    return verdict.ok && sizes_ok ? 0 : kExitViolation;
}

int cmd_analyze(Emitter& em, const std::string& path, std::optional<int> r) {
    fifam::Family family = override_family(fifam::load_family(path), r, std::nullopt);
    if (family.r() < 3)
        family = fifam::Family(family.n(), 3, family.theta(), family.sets());
    em.input("path", path);
    em.input("r", family.r());

    fifam::StructureReport report;
    try {
        report = fifam::classify(family);
    } catch (const fifam::PreconditionError& e) {
        em.report["outputs"]["refused"] = e.what();
        if (e.verdict())
            em.report["outputs"]["verdict"] = verdict_json(*e.verdict(), family);
        em.text << "REFUSED: " << e.what() << "\n";
        if (e.verdict() && e.verdict()->violation) {
            em.text << "violating tuple (intersection size "
                    << e.verdict()->violation->intersection_size << "):\n";
            for (int idx : e.verdict()->violation->indices)
                em.text << "  [" << idx << "] "
                        << set_text(family.set(static_cast<std::size_t>(idx))) << "\n";
        }
        return kExitViolation;
    }
    const fifam::LevelPartition partition = fifam::partition_levels(family, report);
    const fifam::AuditReport checks = fifam::audit(family);

    em.report["outputs"]["structure"] = structure_json(family, report);
    em.report["outputs"]["levels"] = levels_json(partition);
    em.report["outputs"]["audit"] = audit_json(checks);

    em.text << "sizes: ";
    for (int s : report.sizes) em.text << s << ' ';
    em.text << "\n  normal:";
    for (int s : report.normal_sizes) em.text << ' ' << s;
    em.text << "\n  exceptional:";
    for (int s : report.exceptional_sizes) em.text << ' ' << s;
    em.text << "\ni_min=" << report.i_min;
    if (report.i_max) em.text << "  i_max=" << *report.i_max;
    em.text << "\ncores:\n";
    for (const auto& [size, core] : report.core_by_size)
        em.text << "  size " << size << " -> " << set_text(core) << "\n";
    auto show_e = [&](const char* name, std::optional<int> idx) {
        if (idx)
            em.text << name << " = " << set_text(family.set(static_cast<std::size_t>(*idx)))
                    << "\n";
    };
    show_e("E_nor", report.e_nor);
    show_e("E_exc", report.e_exc);
    show_e("E_theta", report.e_theta);
    em.text << "|F| = " << family.size() << ", |F*| = " << report.f_star.size() << "\n";
    em.text << "levels (top core " << set_text(partition.top_core) << "):\n";
    for (const auto& level : partition.levels) {
        em.text << "  k=" << level.k << "  ";
        if (level.lower.empty())
            em.text << "{" << level.upper << "}";
        else
            em.text << "(" << level.lower << ", " << level.upper << "]";
        em.text << "  sizes:";
        for (int s : level.sizes) em.text << ' ' << s;
        em.text << "  Y=" << set_text(level.y) << "\n";
    }
    em.text << "audit:\n";
    for (const auto& check : checks.checks)
        em.text << "  " << (check.pass ? "pass" : "FAIL") << "  " << check.name
                << (check.details.empty() ? "" : "  (" + check.details + ")") << "\n";
    return checks.all_pass() ? 0 : kExitViolation;
}

int cmd_construct(Emitter& em, const std::string& generator, int n, const std::string& theta_text,
                  int m, int k, const std::string& layers_text, const std::string& family_out,
                  bool structured) {
    em.input("generator", generator);
    const fifam::Fraction theta = fifam::Fraction::parse(theta_text);

    std::optional<fifam::Family> family;
    if (generator == "bisection-max") {
        family = fifam::bisection_max(n);
    } else if (generator == "hadamard") {
        family = fifam::hadamard_family(m);
        em.input("m", m);
    } else if (generator == "layered") {
        std::vector<fifam::LayerSpec> layers;
        std::istringstream in(layers_text);
        std::string item;
        while (std::getline(in, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("layer spec must be size:count or size:max");
            const int size = std::stoi(item.substr(0, colon));
            const std::string count = item.substr(colon + 1);
            layers.push_back(count == "max" ? fifam::LayerSpec::max_fill(size)
                                            : fifam::LayerSpec::exactly(size, std::stoi(count)));
        }
        em.input("layers", layers_text);
        family = fifam::layered_sunflower(n, theta, layers);
    } else if (generator == "two-layer") {
        family = fifam::two_layer_shared(n, theta);
    } else if (generator == "imin") {
        em.input("k", k);
        family = fifam::imin_constrained(n, k);
    } else if (generator == "chain") {
        family = fifam::chain_family(n, theta);
    } else {
        throw std::invalid_argument("unknown generator '" + generator + "'");
    }
    if (generator != "hadamard") {
        em.input("n", n);
        em.input("theta", theta.str());
    }

    // Generators promise verifier-clean output; check before anything is written.
    const fifam::Verdict verdict = fifam::is_r_closed(*family);
    if (!verdict.ok) throw std::logic_error("generator produced a non-closed family");

    em.report["outputs"]["family"] = family_json(*family);
    em.report["outputs"]["size"] = family->size();
    em.report["outputs"]["verified"] = true;

    if (!family_out.empty()) {
        fifam::save_family(*family, family_out, structured);
        em.text << "wrote " << family->size() << " sets over [" << family->n() << "] to "
                << family_out << "\n";
        em.report["outputs"]["path"] = family_out;
    } else {
        em.text << fifam::family_to_text(*family);
    }
    return 0;
}

int cmd_bound(Emitter& em, int n, const std::string& theta_text, const std::string& has_pair,
              std::optional<int> refined_core) {
    const fifam::Fraction theta = fifam::Fraction::parse(theta_text);
    em.input("n", n);
    em.input("theta", theta.str());
    em.input("has_size_two_set", has_pair);

    auto& reports = em.report["outputs"]["bounds"] = json::array();
    auto render = [&](const fifam::BoundReport& b) {
        reports.push_back({{"case", b.case_label},
                           {"expression", b.expression},
                           {"value", b.value},
                           {"floored", b.floored},
                           {"integral", b.integral}});
        em.text << b.case_label << ": " << b.expression << " = " << b.value
                << "  (floor " << b.floored << ")\n";
    };

    if (has_pair == "unknown" && theta.num() == 1 && theta.den() == 2) {
        // Membership of a pair set decides the case; report both readings.
        render(fifam::main_upper_bound(n, theta, true, refined_core));
        render(fifam::main_upper_bound(n, theta, false, refined_core));
    } else {
        render(fifam::main_upper_bound(n, theta, has_pair == "yes", refined_core));
    }
    if (theta.num() == 1 && theta.den() == 2 && n >= 2) {
        const auto tight = fifam::bisection_bound(n);
        em.report["outputs"]["bisection_bound"] = tight;
        em.text << "tight half-intersecting bound: floor(3n/2) - 2 = " << tight << "\n";
    }
    if (n >= theta.num()) {
        const auto tor_full = fifam::tor_full_bound(n, theta);
        em.report["outputs"]["tor_full_bound"] = tor_full;
        em.text << "fully-intersecting layered bound: floor((n-a)/(b-a)) = " << tor_full << "\n";
    }
    return 0;
}

int cmd_search(Emitter& em, int n, const std::string& theta_text, int r, int min_set_size,
               bool enumerate, std::optional<std::uint64_t> budget, bool assume_bounds,
               bool isomorph_reduction, int parallel, bool chain) {
    const fifam::Fraction theta = fifam::Fraction::parse(theta_text);
    em.input("n", n);
    em.input("theta", theta.str());
    em.input("r", r);
    em.input("min_set_size", min_set_size);
    em.input("enumerate", enumerate);
    em.input("chain", chain);
    if (budget) em.input("budget", *budget);

    fifam::SearchOptions opts;
    opts.min_set_size = min_set_size;
    opts.node_budget = budget;
    opts.assume_paper_bounds = assume_bounds;
    opts.isomorph_reduction = isomorph_reduction;
    opts.parallel_width = parallel;
    if (const char* env = std::getenv("FIFAM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) opts.parallel_width = std::min(opts.parallel_width, cap);
    }

    fifam::SearchResult result;
    if (chain)
        result = fifam::chain_search(n, theta, r, opts);
    else if (enumerate)
        result = fifam::enumerate_maximum_families(n, theta, r, opts);
    else
        result = fifam::max_family_search(n, theta, r, opts);

    em.report["outputs"]["max_size"] = result.max_size;
    em.report["outputs"]["complete"] = result.complete;
    em.report["outputs"]["nodes_explored"] = result.nodes_explored;
    em.report["outputs"]["class_count"] = result.witnesses.size();
    auto& wits = em.report["outputs"]["witnesses"] = json::array();
    for (const fifam::Family& w : result.witnesses) wits.push_back(family_json(w));

    em.text << (chain ? "chain search" : "search") << ": max_size=" << result.max_size
            << "  complete=" << (result.complete ? "yes" : "no")
            << "  nodes=" << result.nodes_explored << "\n";
    for (const fifam::Family& w : result.witnesses) {
        em.text << "witness:";
        for (int idx : w.sorted_indices())
            em.text << ' ' << set_text(w.set(static_cast<std::size_t>(idx)));
        em.text << "\n";
    }
    return result.complete ? 0 : kExitIncomplete;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchically closed fractional intersecting family toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string format = "text";
    std::string out_path;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--out", out_path, "write the report (or family) to this path");
    app.fallthrough();  // global flags may follow the subcommand

    // verify
    auto* verify = app.add_subcommand("verify", "check a family file for closure");
    std::string verify_path;
    std::optional<int> verify_r;
    std::optional<std::string> verify_theta;
    int verify_mss = 1;
    verify->add_option("path", verify_path, "family file")->required();
    verify->add_option("--r", verify_r, "override the closure order");
    verify->add_option("--theta", verify_theta, "override theta (a/b)");
    verify->add_option("--min-set-size", verify_mss, "smallest admissible member size");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "decompose and audit a family file");
    std::string analyze_path;
    std::optional<int> analyze_r;
    analyze->add_option("path", analyze_path, "family file")->required();
    analyze->add_option("--r", analyze_r, "override the closure order (min 3)");

    // construct
    auto* construct = app.add_subcommand("construct", "generate a family");
    std::string gen, layers_text, construct_theta = "1/2";
    int construct_n = 0, construct_m = 0, construct_k = 0;
    construct->add_option("generator", gen,
                          "bisection-max | hadamard | layered | two-layer | imin | chain")
        ->required();
    construct->add_option("--n", construct_n, "ground-set size");
    construct->add_option("--theta", construct_theta, "fraction a/b");
    construct->add_option("--m", construct_m, "Hadamard order (power of two)");
    construct->add_option("--k", construct_k, "smallest layer size for imin");
    construct->add_option("--layers", layers_text, "layered spec, e.g. 2:2,4:max");

    // bound
    auto* bound = app.add_subcommand("bound", "evaluate the size bounds");
    int bound_n = 0;
    std::string bound_theta = "1/2", has_pair = "unknown";
    std::optional<int> bound_r, refined_core;
    bound->add_option("--n", bound_n, "ground-set size")->required();
    bound->add_option("--theta", bound_theta, "fraction a/b");
    bound->add_option("--r", bound_r, "closure order (informational; bounds need r >= 3)");
    bound->add_option("--has-size-two", has_pair, "does the family contain a 2-element member")
        ->check(CLI::IsMember({"yes", "no", "unknown"}));
    bound->add_option("--refined-core-size", refined_core,
                      "use n-|C| instead of n-a in the non-integral cases");

    // search
    auto* search = app.add_subcommand("search", "exhaustive maximum-family search");
    int search_n = 0, search_r = 3, search_mss = 1, parallel = 1;
    std::string search_theta = "1/2";
    bool enumerate = false, assume_bounds = false, isomorph_reduction = false, chain = false;
    std::optional<std::uint64_t> budget;
    search->add_option("--n", search_n, "ground-set size")->required();
    search->add_option("--theta", search_theta, "fraction a/b");
    search->add_option("--r", search_r, "closure order");
    search->add_option("--min-set-size", search_mss, "smallest admissible member size");
    search->add_flag("--enumerate", enumerate, "collect every maximum family up to isomorphism");
    search->add_option("--budget", budget, "node budget (required beyond the exhaustive range)");
    search->add_flag("--assume-paper-bounds", assume_bounds,
                     "stop once the proven bound is attained");
    search->add_flag("--isomorph-reduction", isomorph_reduction,
                     "orderly pruning to one labeling per orbit");
    search->add_option("--parallel", parallel, "worker threads over root branches");
    search->add_flag("--chain", chain, "restrict to strictly increasing member sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const std::string sub = app.get_subcommands().front()->get_name();
        Emitter em(sub, format == "structured", out_path);
        int code = 0;
        if (sub == "verify")
            code = cmd_verify(em, verify_path, verify_r, verify_theta, verify_mss);
        else if (sub == "analyze")
            code = cmd_analyze(em, analyze_path, analyze_r);
        else if (sub == "construct")
            code = cmd_construct(em, gen, construct_n, construct_theta, construct_m, construct_k,
                                 layers_text, out_path, format == "structured");
        else if (sub == "bound")
            code = cmd_bound(em, bound_n, bound_theta, has_pair, refined_core);
        else if (sub == "search")
            code = cmd_search(em, search_n, search_theta, search_r, search_mss, enumerate, budget,
                              assume_bounds, isomorph_reduction, parallel, chain);
        // construct writes the family through --out itself; reports go to stdout.
        if (sub == "construct") {
            Emitter report_only = std::move(em);
            report_only.out_path.clear();
            report_only.finish(start);
        } else {
            em.finish(start);
        }
        return code;
    } catch (const fifam::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
