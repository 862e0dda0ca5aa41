#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperprox/hyperspace.hpp"
#include "hyperprox/model_file.hpp"
#include "hyperprox/model_ops.hpp"
#include "hyperprox/search.hpp"
#include "hyperprox/strong.hpp"

namespace hyperprox::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxRelationRows = 4096;
constexpr std::uint64_t kValidateSamples = 20000;

struct Options {
    bool json = false;
    bool no_timestamp = false;
    std::optional<int> cap_n;
    std::optional<std::size_t> cap_hyper;

    Caps caps() const {
        Caps c;
        if (cap_n) {
            c.pair_points = *cap_n;
            c.triple_points = *cap_n;
        }
        if (cap_hyper) c.max_hyperpoints = *cap_hyper;
        return c;
    }
};

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string digest(const ModelFile& file) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : serialize_model(file)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return "fnv1a64:" + hex64(h);
}

Json sets(const PointSet& points, const std::vector<Subset>& list) {
    Json out = Json::array();
    for (Subset s : list) out.push_back(points.format(s));
    return out;
}

// ---------------------------------------------------------------------------
// Text rendering: nested "key: value" lines, two-space indentation.

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool inline_array(const Json& j) {
    for (const auto& e : j) {
        if (!is_scalar(e)) return false;
    }
    return true;
}

std::string inline_list(const Json& j) {
    std::string out = "[";
    bool first = true;
    for (const auto& e : j) {
        out += (first ? "" : ", ") + scalar(e);
        first = false;
    }
    return out + "]";
}

void render(const Json& j, std::ostream& out, int indent);

void render_value(const std::string& prefix, const Json& v, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (v.is_string() && v.get<std::string>().find('\n') != std::string::npos) {
        // Multi-line text (an embedded model file) as an indented block.
        out << pad << prefix << " |\n";
        std::istringstream lines(v.get<std::string>());
        for (std::string line; std::getline(lines, line);) out << pad << "  " << line << '\n';
    } else if (is_scalar(v)) {
        out << pad << prefix << ' ' << scalar(v) << '\n';
    } else if (v.is_array() && inline_array(v)) {
        out << pad << prefix << ' ' << inline_list(v) << '\n';
    } else if (v.empty()) {
        out << pad << prefix << (v.is_array() ? " []" : " {}") << '\n';
    } else if (prefix == "-" && v.is_object()) {
        // "- first: x" with the remaining keys aligned under it.
        std::ostringstream nested;
        render(v, nested, indent + 2);
        std::string text = nested.str();
        text.replace(0, static_cast<std::size_t>(indent + 2), pad + "- ");
        out << text;
    } else {
        out << pad << prefix << '\n';
        render(v, out, indent + 2);
    }
}

void render(const Json& j, std::ostream& out, int indent) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_value(k + ":", v, out, indent);
    } else {
        for (const auto& v : j) render_value("-", v, out, indent);
    }
}

void emit(Json report, const Options& opts, std::ostream& out) {
    if (!opts.no_timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        report["generated_at"] = buf;
    }
    if (opts.json) {
        out << report.dump(2) << '\n';
    } else {
        render(report, out, 0);
    }
}

// The path is left out so reports do not depend on where the file lives.
Json model_header(const ModelFile& file) {
    Json m;
    m["digest"] = digest(file);
    m["points"] = file.n;
    Json labels = Json::array();
    const PointSet points = file.point_set();
    for (int i = 0; i < file.n; ++i) labels.push_back(points.label(i));
    m["labels"] = labels;
    m["proximity"] = to_string(file.proximity.kind);
    return m;
}

Json check_json(const PointSet& points, const AxiomCheck& c) {
    Json j;
    j["check"] = c.name;
    j["passed"] = c.passed;
    if (!c.passed) {
        j["witness"] = sets(points, c.witness);
        if (!c.detail.empty()) j["detail"] = c.detail;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_validate(const std::string& path, const Options& opts, std::ostream& out) {
    const ModelFile file = load_model(path);
    const PointSet points = file.point_set();
    Json report;
    report["command"] = "validate";
    report["model"] = model_header(file);

    const AxiomReport topo = validate_topology(points, file.open_family());
    Json topology;
    topology["valid"] = topo.ok();
    Json checks = Json::array();
    for (const auto& c : topo.checks) checks.push_back(check_json(points, c));
    topology["checks"] = checks;
    report["topology"] = topology;
    if (!topo.ok()) {
        report["proximity"] = Json{{"skipped", "topology invalid"}};
        emit(report, opts, out);
        return kOk;
    }

    std::optional<Model> model;
    try {
        model = build_model(file, opts.caps());
    } catch (const ValidationError& e) {
        Json bad;
        bad["valid"] = false;
        bad["error"] = e.what();
        Json failed = Json::array();
        for (const auto& c : e.report().checks) failed.push_back(check_json(points, c));
        bad["checks"] = failed;
        report["components"] = bad;
        emit(report, opts, out);
        return kOk;
    }
    report["topology"]["opens"] = model->space.opens().size();
    report["topology"]["t1"] = model->space.is_t1();
    report["topology"]["discrete"] = model->space.is_discrete();

    AxiomOptions ax_opts;
    if (model->space.size() > model->space.caps().triple_points) ax_opts.samples = kValidateSamples;
    const ProximityAxiomReport ax = check_axioms(model->prox, ax_opts);
    Json prox;
    prox["kind"] = to_string(model->prox.kind());
    prox["description"] = model->prox.description();
    prox["classification"] = to_string(ax.classification);
    prox["exhaustive"] = ax.exhaustive;
    if (!ax.exhaustive) prox["samples_per_axiom"] = ax.samples;
    Json verdicts = Json::array();
    for (const auto& v : ax.verdicts) {
        Json j;
        j["axiom"] = to_string(v.axiom);
        j["passed"] = v.passed;
        if (!v.passed) j["witness"] = sets(points, v.witness);
        verdicts.push_back(j);
    }
    prox["axioms"] = verdicts;
    report["proximity"] = prox;

    const Compatibility compat = is_compatible(model->prox);
    Json cj;
    cj["compatible"] = compat.compatible;
    if (!compat.compatible) {
        cj["witness"] = points.format(*compat.witness);
        cj["induced_closure"] = points.format(compat.induced);
        cj["topological_closure"] = points.format(compat.topological);
    }
    report["compatibility"] = cj;

    // Witness files from `search` carry their own replay script.
    int code = kOk;
    if (file.replay) {
        Json rj;
        if (!file.replay->target.empty()) rj["target"] = file.replay->target;
        Json calls = Json::array();
        bool all = !file.replay->calls.empty();
        for (const auto& call : file.replay->calls) {
            Json c;
            c["op"] = call.op;
            c["args"] = call.args;
            c["expect"] = call.expect;
            try {
                const std::string got = execute_call(*model, call);
                c["got"] = got;
                all = all && got == call.expect;
            } catch (const Error& e) {
                c["error"] = e.what();
                all = false;
            }
            calls.push_back(c);
        }
        rj["calls"] = calls;
        rj["passed"] = all;
        report["replay"] = rj;
        if (!all) code = kParse;
    }
    emit(report, opts, out);
    return code;
}

std::pair<std::string, std::string> split_pair(const std::string& text) {
    // The separator is the first ':' outside braces.
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        if (text[i] == '}') --depth;
        if (text[i] == ':' && depth == 0) return {text.substr(0, i), text.substr(i + 1)};
    }
    throw Error(ErrorKind::invalid_argument, "pair '" + text + "' must look like A:B");
}

int cmd_relations(const std::string& path, const std::vector<std::string>& pair_args, const Options& opts,
                  std::ostream& out) {
    const ModelFile file = load_model(path);
    const Model model = build_model(file, opts.caps());
    const PointSet& points = model.space.points();

    std::vector<std::pair<std::string, std::string>> refs;
    std::vector<SubsetPair> pairs;
    const bool all = pair_args.size() == 1 && pair_args.front() == "all";
    if (all) {
        const std::size_t total = std::size_t{1} << (2 * model.space.size());
        if (total > kMaxRelationRows) throw CapExceeded("relations --pairs all", total, kMaxRelationRows);
        const Mask full = model.space.full().bits();
        for (Mask a = 0; a <= full; ++a) {
            for (Mask b = 0; b <= full; ++b) {
                pairs.emplace_back(Subset(a), Subset(b));
                refs.emplace_back(points.format(Subset(a)), points.format(Subset(b)));
            }
        }
    } else if (!pair_args.empty()) {
        for (const auto& arg : pair_args) {
            auto [l, r] = split_pair(arg);
            pairs.emplace_back(model.resolve(l), model.resolve(r));
            refs.emplace_back(l, r);
        }
    } else {
        const auto& named = file.subsets;
        for (std::size_t i = 0; i < named.size(); ++i) {
            for (std::size_t j = i; j < named.size(); ++j) {
                pairs.emplace_back(named[i].second, named[j].second);
                refs.emplace_back(named[i].first, named[j].first);
            }
        }
    }
    if (pairs.size() > kMaxRelationRows) throw CapExceeded("relations", pairs.size(), kMaxRelationRows);

    Json rows = Json::array();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [a, b] = pairs[k];
        Json row;
        row["left"] = refs[k].first;
        row["right"] = refs[k].second;
        row["left_set"] = points.format(a);
        row["right_set"] = points.format(b);
        const bool near = model.prox.near(a, b);
        row["near"] = near;
        row["far"] = !near;
        const WitnessResult sf = strongly_far(model.prox, a, b);
        const WitnessResult hat = hat_strongly_far(model.space, a, b);
        row["degenerate"] = sf.degenerate;
        row["strongly_far"] = sf.holds;
        if (sf.holds) row["strongly_far_witness"] = sets(points, sf.witness);
        row["hat_strongly_far"] = hat.holds;
        if (hat.holds) {
            row["hat_witness"] = sets(points, hat.witness);
            row["hat_regions"] = sets(points, hat.regions);
        }
        row["left_strongly_included_in_right"] = strongly_included(model.prox, a, b);
        row["right_strongly_included_in_left"] = strongly_included(model.prox, b, a);
        rows.push_back(row);
    }

    Json report;
    report["command"] = "relations";
    report["model"] = model_header(file);
    report["pairs"] = rows.size();
    report["rows"] = rows;
    emit(report, opts, out);
    return kOk;
}

Json refinement_json(const Hyperspace& hyper, const HyperTopologyBase& coarse, const Refinement& r) {
    const PointSet& points = hyper.space().points();
    Json j;
    j["holds"] = r.holds;
    if (!r.holds) {
        Json members = Json::array();
        for (std::size_t i : coarse.base[*r.base_index].indices()) members.push_back(points.format(hyper[i]));
        j["open_set"] = members;
        j["hyperpoint"] = points.format(hyper[*r.hyperpoint]);
    }
    return j;
}

int cmd_compare(const std::string& path, const std::string& left_name, const std::string& right_name,
                const Options& opts, std::ostream& out) {
    const ModelFile file = load_model(path);
    const Model model = build_model(file, opts.caps());
    const TopologySpec left_spec = resolve_topology_spec(model, left_name);
    const TopologySpec right_spec = resolve_topology_spec(model, right_name);
    auto hyper = Hyperspace::enumerate(model.space);
    const HyperTopologyBase left = build_topology(hyper, left_spec);
    const HyperTopologyBase right = build_topology(hyper, right_spec);
    const Comparison cmp = compare(left, right);

    auto side = [&](const std::string& name, const HyperTopologyBase& t) {
        Json j;
        j["spec"] = name;
        j["subbase_size"] = t.subbase.size();
        j["base_size"] = t.base.size();
        return j;
    };
    Json report;
    report["command"] = "compare";
    report["model"] = model_header(file);
    report["hyperspace_size"] = hyper->size();
    report["left"] = side(left_name, left);
    report["right"] = side(right_name, right);
    report["verdict"] = to_string(cmp.verdict);
    // A failed "left refines right" is witnessed by an open of the right side.
    report["left_refines_right"] = refinement_json(*hyper, right, cmp.left_refines_right);
    report["right_refines_left"] = refinement_json(*hyper, left, cmp.right_refines_left);
    emit(report, opts, out);
    return kOk;
}

int cmd_search(const std::string& target_name, int max_n, std::uint64_t budget, std::uint64_t seed,
               const std::string& witness_out, const Options& opts, std::ostream& out) {
    const SearchTarget target = SearchTarget::defaults(parse_target_name(target_name), max_n);
    const SearchOutcome outcome = search(target, budget, seed);

    Json report;
    report["command"] = "search";
    report["target"] = to_string(target.name);
    report["max_n"] = max_n;
    report["budget"] = budget;
    report["seed"] = seed;
    Json constraints;
    constraints["lodato"] = target.require_lodato;
    constraints["compatible"] = target.require_compatible;
    constraints["t1"] = target.require_t1;
    report["constraints"] = constraints;
    Json kinds = Json::array();
    for (CandidateKind k : target.kinds) {
        Json kj;
        kj["kind"] = to_string(k);
        kj["exhaustive_up_to"] = std::min(max_n, exhaustive_cap(k));
        kinds.push_back(kj);
    }
    report["candidate_kinds"] = kinds;
    report["status"] = to_string(outcome.status);
    report["candidates"] = outcome.candidates;
    report["evaluations"] = outcome.evaluations;
    report["exhaustive_per_n"] = outcome.exhaustive_per_n;
    report["randomized"] = outcome.randomized;
    report["summary"] = outcome.summary;
    if (outcome.witness) {
        const std::string text = serialize_model(*outcome.witness);
        report["replay"] = replay(outcome);
        report["witness_digest"] = digest(*outcome.witness);
        if (!witness_out.empty()) {
            std::ofstream f(witness_out);
            if (!f) throw Error(ErrorKind::invalid_argument, "cannot write witness file '" + witness_out + "'");
            f << text;
            report["witness_file"] = witness_out;
        } else {
            report["witness_model"] = text;
        }
    }
    emit(report, opts, out);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite proximity spaces and their hyperspace topologies", "hyperprox"};
    app.require_subcommand(1);
    Options opts;
    app.add_flag("--json", opts.json, "Machine-readable JSON report");
    app.add_flag("--no-timestamp", opts.no_timestamp, "Omit the generated_at field");
    app.add_option("--cap-n", opts.cap_n, "Largest n for pair/triple enumeration")->check(CLI::Range(1, 16));
    app.add_option("--cap-hyper", opts.cap_hyper, "Largest hyperspace size")->check(CLI::PositiveNumber);

    std::string file;
    auto* validate = app.add_subcommand("validate", "Topology, proximity axioms and compatibility");
    validate->add_option("file", file, "Model file")->required();

    std::vector<std::string> pairs;
    auto* relations = app.add_subcommand("relations", "Near / far / strongly-far table for subset pairs");
    relations->add_option("file", file, "Model file")->required();
    relations->add_option("--pairs", pairs, "A:B pairs of subset names or literals, or 'all'");

    std::string left;
    std::string right;
    auto* cmp = app.add_subcommand("compare", "Compare two hypertopologies on CL(X)");
    cmp->add_option("file", file, "Model file")->required();
    cmp->add_option("--left", left, "Left hypertopology")->required();
    cmp->add_option("--right", right, "Right hypertopology")->required();

    std::string target;
    int max_n = 3;
    std::uint64_t budget = 50'000'000;
    std::uint64_t seed = 0;
    std::string witness_out;
    auto* srch = app.add_subcommand("search", "Search finite models for a target property");
    srch->add_option("--target", target, "Target name")->required();
    srch->add_option("--max-n", max_n, "Largest ground set size")->check(CLI::Range(1, kRandomizedMaxPoints));
    srch->add_option("--budget", budget, "Relation evaluations before giving up")->check(CLI::PositiveNumber);
    srch->add_option("--seed", seed, "Seed for randomized candidates");
    srch->add_option("--witness-out", witness_out, "Write the witness model here");

    // Global flags are accepted anywhere on the line.
    for (auto* sub : {validate, relations, cmp, srch}) sub->fallthrough();

    std::vector<const char*> argv{"hyperprox"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return cmd_validate(file, opts, out);
        if (*relations) return cmd_relations(file, pairs, opts, out);
        if (*cmp) return cmd_compare(file, left, right, opts, out);
        return cmd_search(target, max_n, budget, seed, witness_out, opts, out);
    } catch (const CapExceeded& e) {
        err << "error: cap exceeded: " << e.what() << '\n';
        return kCap;
    } catch (const ParseError& e) {
        err << "error: parse: " << e.what() << '\n';
        return kParse;
    } catch (const Error& e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
        switch (e.kind()) {
        case ErrorKind::validation_failed:
        case ErrorKind::parse_error: return kParse;
        case ErrorKind::cap_exceeded: return kCap;
        default: return kUsage;
        }
    }
}

}  // namespace hyperprox::cli
