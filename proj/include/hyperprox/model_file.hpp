#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperprox/metric.hpp"
#include "hyperprox/proximity.hpp"
#include "hyperprox/space.hpp"

namespace hyperprox {

/// Parse failure anchored to a line (1-based, 0 when unknown) and field path.
class ParseError : public Error {
public:
    ParseError(std::string field, int line, const std::string& message)
        : Error(ErrorKind::parse_error, format(field, line, message)), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    static std::string format(const std::string& field, int line, const std::string& message) {
        std::string out = line > 0 ? "line " + std::to_string(line) + ": " : std::string();
        if (!field.empty()) out += "field '" + field + "': ";
        return out + message;
    }

    std::string field_;
    int line_;
};

struct ProximitySpec {
    ProximityKind kind = ProximityKind::overlap;
    std::optional<Rational> epsilon;
    std::vector<std::pair<Subset, Subset>> near_pairs;
    std::vector<std::pair<int, int>> point_pairs;
};

/// One recorded operation call of a witness replay script.
struct ReplayCall {
    std::string op;
    std::vector<std::string> args;
    std::string expect;

    friend bool operator==(const ReplayCall&, const ReplayCall&) = default;
};

struct ReplaySection {
    std::string target;
    std::vector<ReplayCall> calls;
};

enum class TopologyForm { discrete, indiscrete, explicit_opens };

/// The unvalidated contents of a model file.
struct ModelFile {
    int n = 1;
    std::vector<std::string> labels;
    TopologyForm topology = TopologyForm::discrete;
    std::vector<Subset> opens;
    std::optional<std::vector<std::vector<Rational>>> metric;
    MetricKind metric_kind = MetricKind::metric;
    /// Either explicit members or a principal bound.
    std::optional<std::vector<Subset>> ideal_members;
    std::optional<Subset> ideal_bound;
    ProximitySpec proximity;
    std::vector<std::pair<std::string, Subset>> subsets;
    std::optional<ReplaySection> replay;

    PointSet point_set() const { return PointSet(n, labels); }
    /// The open family as written (expanded for discrete/indiscrete).
    std::vector<Subset> open_family() const;
};

ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::string& path);
/// Canonical text; parse_model(serialize_model(m)) reproduces m.
std::string serialize_model(const ModelFile& model);

/// A model file turned into validated objects.
struct Model {
    ModelFile file;
    GroundSpace space;
    std::optional<Metric> metric;
    std::optional<CompactnessIdeal> ideal;
    ProximityRelation prox;

    std::optional<Subset> named(std::string_view name) const;
    /// A subset name, or a literal such as "{a,b}" / "{}".
    Subset resolve(std::string_view ref) const;
};

/// Throws ValidationError for a bad topology or ideal, Error for bad metric.
Model build_model(const ModelFile& file, const Caps& caps = {});

/// Parses "{a,b}" style literals against a point set.
Subset parse_subset_literal(const PointSet& points, std::string_view text);

}  // namespace hyperprox
