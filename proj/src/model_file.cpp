#include "hyperprox/model_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace hyperprox {

namespace {

int line_of(const YAML::Node& node) {
    const auto mark = node.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
}

[[noreturn]] void fail(const std::string& field, const YAML::Node& node, const std::string& message) {
    throw ParseError(field, line_of(node), message);
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    });
}

void check_keys(const YAML::Node& map, const std::string& field, std::initializer_list<std::string_view> allowed) {
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(field.empty() ? key : field + "." + key, kv.first, "unknown field '" + key + "'");
        }
    }
}

std::string scalar(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) fail(field, node, "expected a scalar");
    return node.as<std::string>();
}

class Parser {
public:
    explicit Parser(const YAML::Node& root) : root_(root) {}

    ModelFile run() {
        if (!root_.IsMap()) fail("", root_, "model file must be a mapping");
        check_keys(root_, "", {"points", "topology", "metric", "metric_kind", "ideal", "proximity", "subsets", "replay"});
        parse_points();
        parse_topology();
        parse_metric();
        parse_subsets();
        parse_ideal();
        parse_proximity();
        parse_replay();
        return std::move(model_);
    }

private:
    int point(const YAML::Node& node, const std::string& field) const {
        const std::string ref = scalar(node, field);
        if (auto idx = points_->index_of(ref)) return *idx;
        fail(field, node, "unknown point '" + ref + "'");
    }

    Subset subset(const YAML::Node& node, const std::string& field, bool allow_names) const {
        if (node.IsSequence()) {
            Subset s;
            for (std::size_t i = 0; i < node.size(); ++i) {
                s = s | Subset::singleton(point(node[i], field));
            }
            return s;
        }
        if (node.IsScalar()) {
            const auto text = node.as<std::string>();
            if (!text.empty() && text.front() == '{') {
                try {
                    return parse_subset_literal(*points_, text);
                } catch (const Error& e) {
                    fail(field, node, e.what());
                }
            }
            if (allow_names) {
                for (const auto& [name, s] : model_.subsets) {
                    if (name == text) return s;
                }
                fail(field, node, "unknown subset name '" + text + "'");
            }
        }
        fail(field, node, "expected a list of points");
    }

    std::vector<Subset> subset_list(const YAML::Node& node, const std::string& field) const {
        if (!node.IsSequence()) fail(field, node, "expected a list of subsets");
        std::vector<Subset> out;
        for (std::size_t i = 0; i < node.size(); ++i) out.push_back(subset(node[i], field, true));
        return out;
    }

    void parse_points() {
        const YAML::Node node = root_["points"];
        if (!node) fail("points", root_, "missing required field");
        if (node.IsScalar()) {
            try {
                model_.n = node.as<int>();
            } catch (const YAML::Exception&) {
                fail("points", node, "expected a point count or a list of names");
            }
        } else if (node.IsSequence()) {
            model_.n = static_cast<int>(node.size());
            for (std::size_t i = 0; i < node.size(); ++i) {
                const auto name = scalar(node[i], "points");
                if (!is_identifier(name)) fail("points", node[i], "point names must be identifiers, got '" + name + "'");
                model_.labels.push_back(name);
            }
        } else {
            fail("points", node, "expected a point count or a list of names");
        }
        try {
            points_.emplace(model_.n, model_.labels);
        } catch (const Error& e) {
            fail("points", node, e.what());
        }
    }

    void parse_topology() {
        const YAML::Node node = root_["topology"];
        if (!node) return;
        if (node.IsScalar()) {
            const auto word = node.as<std::string>();
            if (word == "discrete") model_.topology = TopologyForm::discrete;
            else if (word == "indiscrete") model_.topology = TopologyForm::indiscrete;
            else fail("topology", node, "expected 'discrete', 'indiscrete' or a list of open sets");
            return;
        }
        model_.topology = TopologyForm::explicit_opens;
        model_.opens = subset_list(node, "topology");
    }

    void parse_metric() {
        if (const YAML::Node kind = root_["metric_kind"]) {
            const auto word = scalar(kind, "metric_kind");
            if (word == "metric") model_.metric_kind = MetricKind::metric;
            else if (word == "semimetric") model_.metric_kind = MetricKind::semimetric;
            else fail("metric_kind", kind, "expected 'metric' or 'semimetric'");
        }
        const YAML::Node node = root_["metric"];
        if (!node) return;
        if (!node.IsSequence() || static_cast<int>(node.size()) != model_.n) {
            fail("metric", node, "expected " + std::to_string(model_.n) + " rows");
        }
        std::vector<std::vector<Rational>> rows;
        for (std::size_t i = 0; i < node.size(); ++i) {
            const YAML::Node row = node[i];
            if (!row.IsSequence() || static_cast<int>(row.size()) != model_.n) {
                fail("metric", row, "row " + std::to_string(i) + " must have " + std::to_string(model_.n) + " entries");
            }
            std::vector<Rational> values;
            for (std::size_t j = 0; j < row.size(); ++j) {
                try {
                    values.push_back(Rational::parse(scalar(row[j], "metric")));
                } catch (const Error& e) {
                    fail("metric", row[j], e.what());
                }
            }
            rows.push_back(std::move(values));
        }
        model_.metric = std::move(rows);
    }

    void parse_subsets() {
        const YAML::Node node = root_["subsets"];
        if (!node) return;
        if (!node.IsMap()) fail("subsets", node, "expected a mapping of names to point lists");
        for (const auto& kv : node) {
            const auto name = kv.first.as<std::string>();
            if (!is_identifier(name)) fail("subsets", kv.first, "subset names must be identifiers");
            for (const auto& [existing, s] : model_.subsets) {
                if (existing == name) fail("subsets." + name, kv.first, "duplicate subset name");
            }
            model_.subsets.emplace_back(name, subset(kv.second, "subsets." + name, false));
        }
    }

    void parse_ideal() {
        const YAML::Node node = root_["ideal"];
        if (!node) return;
        if (node.IsMap()) {
            check_keys(node, "ideal", {"bound"});
            if (!node["bound"]) fail("ideal.bound", node, "missing required field");
            model_.ideal_bound = subset(node["bound"], "ideal.bound", true);
            return;
        }
        model_.ideal_members = subset_list(node, "ideal");
    }

    void parse_proximity() {
        const YAML::Node node = root_["proximity"];
        if (!node) return;
        if (!node.IsMap()) fail("proximity", node, "expected a mapping");
        check_keys(node, "proximity", {"kind", "epsilon", "near", "pairs"});
        const YAML::Node kind = node["kind"];
        if (!kind) fail("proximity.kind", node, "missing required field");
        const auto word = scalar(kind, "proximity.kind");
        auto& spec = model_.proximity;
        if (word == "overlap") spec.kind = ProximityKind::overlap;
        else if (word == "gap") spec.kind = ProximityKind::gap;
        else if (word == "alexandroff") spec.kind = ProximityKind::alexandroff;
        else if (word == "table") spec.kind = ProximityKind::table;
        else if (word == "point_relation") spec.kind = ProximityKind::point_generated;
        else fail("proximity.kind", kind, "unknown proximity kind '" + word + "'");

        if (spec.kind == ProximityKind::gap) {
            const YAML::Node eps = node["epsilon"];
            if (!eps) fail("proximity.epsilon", node, "gap proximity needs epsilon");
            try {
                spec.epsilon = Rational::parse(scalar(eps, "proximity.epsilon"));
            } catch (const Error& e) {
                fail("proximity.epsilon", eps, e.what());
            }
            if (*spec.epsilon < Rational{}) fail("proximity.epsilon", eps, "epsilon must be non-negative");
            if (!model_.metric) fail("metric", node, "gap proximity needs a metric");
        } else if (node["epsilon"]) {
            fail("proximity.epsilon", node["epsilon"], "only gap proximities take epsilon");
        }
        if (spec.kind == ProximityKind::alexandroff && !model_.ideal_members && !model_.ideal_bound) {
            fail("ideal", node, "alexandroff proximity needs an ideal");
        }
        if (const YAML::Node near = node["near"]) {
            if (spec.kind != ProximityKind::table) fail("proximity.near", near, "only table proximities list near pairs");
            if (!near.IsSequence()) fail("proximity.near", near, "expected a list of subset pairs");
            for (std::size_t i = 0; i < near.size(); ++i) {
                if (!near[i].IsSequence() || near[i].size() != 2) {
                    fail("proximity.near", near[i], "each entry must be a pair of subsets");
                }
                spec.near_pairs.emplace_back(subset(near[i][0], "proximity.near", true),
                                             subset(near[i][1], "proximity.near", true));
            }
        }
        if (const YAML::Node pairs = node["pairs"]) {
            if (spec.kind != ProximityKind::point_generated) {
                fail("proximity.pairs", pairs, "only point_relation proximities list point pairs");
            }
            if (!pairs.IsSequence()) fail("proximity.pairs", pairs, "expected a list of point pairs");
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (!pairs[i].IsSequence() || pairs[i].size() != 2) {
                    fail("proximity.pairs", pairs[i], "each entry must be a pair of points");
                }
                spec.point_pairs.emplace_back(point(pairs[i][0], "proximity.pairs"), point(pairs[i][1], "proximity.pairs"));
            }
        }
    }

    void parse_replay() {
        const YAML::Node node = root_["replay"];
        if (!node) return;
        if (!node.IsMap()) fail("replay", node, "expected a mapping");
        check_keys(node, "replay", {"target", "calls"});
        ReplaySection section;
        if (node["target"]) section.target = scalar(node["target"], "replay.target");
        const YAML::Node calls = node["calls"];
        if (calls) {
            if (!calls.IsSequence()) fail("replay.calls", calls, "expected a list of calls");
            for (std::size_t i = 0; i < calls.size(); ++i) {
                const YAML::Node c = calls[i];
                if (!c.IsMap()) fail("replay.calls", c, "each call must be a mapping");
                check_keys(c, "replay.calls", {"op", "args", "expect"});
                ReplayCall call;
                if (!c["op"]) fail("replay.calls.op", c, "missing required field");
                call.op = scalar(c["op"], "replay.calls.op");
                if (const YAML::Node args = c["args"]) {
                    if (!args.IsSequence()) fail("replay.calls.args", args, "expected a list");
                    for (std::size_t j = 0; j < args.size(); ++j) {
                        call.args.push_back(scalar(args[j], "replay.calls.args"));
                    }
                }
                if (!c["expect"]) fail("replay.calls.expect", c, "missing required field");
                call.expect = scalar(c["expect"], "replay.calls.expect");
                section.calls.push_back(std::move(call));
            }
        }
        model_.replay = std::move(section);
    }

    const YAML::Node& root_;
    ModelFile model_;
    std::optional<PointSet> points_;
};

std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::vector<Subset> ModelFile::open_family() const {
    switch (topology) {
    case TopologyForm::discrete: {
        std::vector<Subset> out;
        for (Mask m = 0; m <= Subset::full(n).bits(); ++m) out.emplace_back(m);
        return out;
    }
    case TopologyForm::indiscrete: return {Subset{}, Subset::full(n)};
    case TopologyForm::explicit_opens: return opens;
    }
    return {};
}

Subset parse_subset_literal(const PointSet& points, std::string_view text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
        throw Error(ErrorKind::invalid_argument, "subset literal must look like {a,b}: '" + std::string(text) + "'");
    }
    std::string_view body = text.substr(1, text.size() - 2);
    Subset s;
    while (!body.empty()) {
        const auto comma = body.find(',');
        std::string_view item = body.substr(0, comma);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) {
            auto idx = points.index_of(item);
            if (!idx) throw Error(ErrorKind::invalid_argument, "unknown point '" + std::string(item) + "'");
            s = s | Subset::singleton(*idx);
        }
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return s;
}

ModelFile parse_model(std::string_view text) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError("", e.mark.line >= 0 ? e.mark.line + 1 : 0, "malformed YAML: " + e.msg);
    }
    try {
        return Parser(root).run();
    } catch (const YAML::Exception& e) {
        throw ParseError("", e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
    }
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("", 0, "cannot read model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string serialize_model(const ModelFile& model) {
    const PointSet points = model.point_set();
    auto list = [&](Subset s) {
        std::string out = "[";
        bool first = true;
        for (int p : s.points()) {
            out += (first ? "" : ", ") + points.label(p);
            first = false;
        }
        return out + "]";
    };

    std::ostringstream out;
    if (model.labels.empty()) {
        out << "points: " << model.n << "\n";
    } else {
        out << "points: [";
        for (std::size_t i = 0; i < model.labels.size(); ++i) out << (i ? ", " : "") << model.labels[i];
        out << "]\n";
    }
    switch (model.topology) {
    case TopologyForm::discrete: out << "topology: discrete\n"; break;
    case TopologyForm::indiscrete: out << "topology: indiscrete\n"; break;
    case TopologyForm::explicit_opens:
        out << "topology:\n";
        for (Subset s : model.opens) out << "  - " << list(s) << "\n";
        break;
    }
    if (model.metric) {
        if (model.metric_kind == MetricKind::semimetric) out << "metric_kind: semimetric\n";
        out << "metric:\n";
        for (const auto& row : *model.metric) {
            out << "  - [";
            for (std::size_t j = 0; j < row.size(); ++j) out << (j ? ", " : "") << row[j].str();
            out << "]\n";
        }
    }
    if (!model.subsets.empty()) {
        out << "subsets:\n";
        for (const auto& [name, s] : model.subsets) out << "  " << name << ": " << list(s) << "\n";
    }
    if (model.ideal_bound) {
        out << "ideal:\n  bound: " << list(*model.ideal_bound) << "\n";
    } else if (model.ideal_members) {
        out << "ideal:\n";
        for (Subset s : *model.ideal_members) out << "  - " << list(s) << "\n";
    }
    out << "proximity:\n  kind: " << to_string(model.proximity.kind) << "\n";
    if (model.proximity.epsilon) out << "  epsilon: " << model.proximity.epsilon->str() << "\n";
    if (model.proximity.kind == ProximityKind::table) {
        out << "  near:" << (model.proximity.near_pairs.empty() ? " []" : "") << "\n";
        for (auto [a, b] : model.proximity.near_pairs) out << "    - [" << list(a) << ", " << list(b) << "]\n";
    }
    if (model.proximity.kind == ProximityKind::point_generated) {
        out << "  pairs:" << (model.proximity.point_pairs.empty() ? " []" : "") << "\n";
        for (auto [a, b] : model.proximity.point_pairs) {
            out << "    - [" << points.label(a) << ", " << points.label(b) << "]\n";
        }
    }
    if (model.replay) {
        out << "replay:\n";
        if (!model.replay->target.empty()) out << "  target: " << model.replay->target << "\n";
        out << "  calls:\n";
        for (const auto& call : model.replay->calls) {
            out << "    - op: " << call.op << "\n";
            if (!call.args.empty()) {
                out << "      args: [";
                for (std::size_t i = 0; i < call.args.size(); ++i) out << (i ? ", " : "") << quoted(call.args[i]);
                out << "]\n";
            }
            out << "      expect: " << quoted(call.expect) << "\n";
        }
    }
    return out.str();
}

std::optional<Subset> Model::named(std::string_view name) const {
    for (const auto& [n, s] : file.subsets) {
        if (n == name) return s;
    }
    return std::nullopt;
}

Subset Model::resolve(std::string_view ref) const {
    if (!ref.empty() && ref.front() == '{') return parse_subset_literal(space.points(), ref);
    if (auto s = named(ref)) return *s;
    throw Error(ErrorKind::invalid_argument, "unknown subset '" + std::string(ref) + "'");
}

Model build_model(const ModelFile& file, const Caps& caps) {
    PointSet points = file.point_set();
    GroundSpace space = [&] {
        switch (file.topology) {
        case TopologyForm::discrete: return GroundSpace::discrete(points, caps);
        case TopologyForm::indiscrete: return GroundSpace::indiscrete(points, caps);
        case TopologyForm::explicit_opens: break;
        }
        return GroundSpace::create(points, file.opens, caps);
    }();

    std::optional<Metric> metric;
    if (file.metric) metric = Metric::create(*file.metric, file.metric_kind);

    std::optional<CompactnessIdeal> ideal;
    if (file.ideal_bound) ideal = CompactnessIdeal::principal(space, *file.ideal_bound);
    else if (file.ideal_members) ideal = CompactnessIdeal::create(space, *file.ideal_members);

    auto prox = [&]() -> ProximityRelation {
        const auto& spec = file.proximity;
        switch (spec.kind) {
        case ProximityKind::overlap: return overlap_proximity(space);
        case ProximityKind::gap:
            if (!metric || !spec.epsilon) throw Error(ErrorKind::invalid_argument, "gap proximity needs metric and epsilon");
            return gap_proximity(space, *metric, *spec.epsilon);
        case ProximityKind::alexandroff:
            if (!ideal) throw Error(ErrorKind::invalid_argument, "alexandroff proximity needs an ideal");
            return alexandroff_proximity(space, *ideal);
        case ProximityKind::table: return table_proximity(space, spec.near_pairs);
        case ProximityKind::point_generated:
            return point_generated_proximity(space, PointRelation::from_pairs(file.n, spec.point_pairs));
        case ProximityKind::derived_strongly_far: break;
        }
        throw Error(ErrorKind::invalid_argument, "unsupported proximity kind in model file");
    }();

    return Model{file, std::move(space), std::move(metric), std::move(ideal), std::move(prox)};
}

}  // namespace hyperprox
