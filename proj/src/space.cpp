#include "hyperprox/space.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <unordered_set>

namespace hyperprox {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::validation_failed: return "validation-failed";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::not_open: return "not-open";
    case ErrorKind::spec_invalid: return "spec-invalid";
    case ErrorKind::mismatched_hyperspace: return "mismatched-hyperspace";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::invalid_target: return "invalid-target";
    case ErrorKind::malformed_witness: return "malformed-witness";
    }
    return "unknown";
}

std::vector<int> Subset::points() const {
    std::vector<int> out;
    out.reserve(size());
    for (Mask m = bits_; m != 0; m &= m - 1) {
        out.push_back(std::countr_zero(m));
    }
    return out;
}

PointSet::PointSet(int n, std::vector<std::string> labels) : n_(n), labels_(std::move(labels)) {
    if (n < 1 || n > kMaxRepresentablePoints) {
        throw Error(ErrorKind::invalid_argument, "point count must be in [1, 30], got " + std::to_string(n));
    }
    if (!labels_.empty()) {
        if (static_cast<int>(labels_.size()) != n) {
            throw Error(ErrorKind::invalid_argument, "label count does not match point count");
        }
        std::unordered_set<std::string> seen;
        for (const auto& l : labels_) {
            if (l.empty()) {
                throw Error(ErrorKind::invalid_argument, "point labels must be non-empty");
            }
            if (!seen.insert(l).second) {
                throw Error(ErrorKind::invalid_argument, "duplicate point label '" + l + "'");
            }
        }
    }
}

std::string PointSet::label(int point) const {
    return labels_.empty() ? std::to_string(point) : labels_[static_cast<std::size_t>(point)];
}

std::optional<int> PointSet::index_of(std::string_view name) const {
    for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
        if (labels_[static_cast<std::size_t>(i)] == name) {
            return i;
        }
    }
    int value = -1;
    auto [ptr, ec] = std::from_chars(name.data(), name.data() + name.size(), value);
    if (ec == std::errc{} && ptr == name.data() + name.size() && value >= 0 && value < n_) {
        return value;
    }
    return std::nullopt;
}

std::string PointSet::format(Subset s) const {
    std::string out = "{";
    bool first = true;
    for (int p : s.points()) {
        if (!first) out += ",";
        out += label(p);
        first = false;
    }
    out += "}";
    return out;
}

bool AxiomReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

AxiomReport validate_topology(const PointSet& points, std::span<const Subset> opens) {
    std::vector<Subset> family(opens.begin(), opens.end());
    std::sort(family.begin(), family.end());
    family.erase(std::unique(family.begin(), family.end()), family.end());
    auto member = [&](Subset s) { return std::binary_search(family.begin(), family.end(), s); };

    AxiomReport report;

    AxiomCheck range{"in-range", true, {}, {}};
    for (Subset s : family) {
        if (!points.contains(s)) {
            range.passed = false;
            range.witness = {s};
            range.detail = "open set uses points outside the ground set";
            break;
        }
    }
    report.checks.push_back(range);

    AxiomCheck bounds{"contains-empty-and-full", true, {}, {}};
    if (!member(Subset{})) {
        bounds.passed = false;
        bounds.witness = {Subset{}};
        bounds.detail = "empty set missing";
    } else if (!member(points.full())) {
        bounds.passed = false;
        bounds.witness = {points.full()};
        bounds.detail = "full set missing";
    }
    report.checks.push_back(bounds);

    AxiomCheck unions{"union-closed", true, {}, {}};
    AxiomCheck meets{"intersection-closed", true, {}, {}};
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            if (unions.passed && !member(family[i] | family[j])) {
                unions.passed = false;
                unions.witness = {family[i], family[j]};
                unions.detail = "union " + points.format(family[i] | family[j]) + " missing";
            }
            if (meets.passed && !member(family[i] & family[j])) {
                meets.passed = false;
                meets.witness = {family[i], family[j]};
                meets.detail = "intersection " + points.format(family[i] & family[j]) + " missing";
            }
        }
        if (!unions.passed && !meets.passed) break;
    }
    report.checks.push_back(unions);
    report.checks.push_back(meets);
    return report;
}

namespace {
constexpr int kClosureTablePoints = 16;
}

struct GroundSpace::Data {
    PointSet points;
    Caps caps;
    std::vector<Subset> opens;
    std::vector<Subset> closed;
    std::vector<Mask> point_closure;
    std::vector<Mask> closure_table;

    mutable std::once_flag regular_once;
    mutable std::vector<Mask> regular_table;
    mutable std::vector<RegularOpen> regulars;

    Data(PointSet p, Caps c) : points(std::move(p)), caps(c) {}

    Mask closure_of(Mask m) const {
        if (!closure_table.empty()) return closure_table[m];
        Mask out = 0;
        for (; m != 0; m &= m - 1) out |= point_closure[static_cast<std::size_t>(std::countr_zero(m))];
        return out;
    }

    void compute_regulars() const {
        const int n = points.size();
        const Mask full = points.full().bits();
        const std::size_t count = std::size_t{1} << n;
        regular_table.resize(count);
        std::vector<Mask> seen;
        for (std::size_t e = 0; e < count; ++e) {
            const Mask cl = closure_of(static_cast<Mask>(e));
            const Mask ri = full & ~closure_of(full & ~cl);
            regular_table[e] = ri;
            seen.push_back(ri);
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        regulars.reserve(seen.size());
        for (Mask r : seen) regulars.push_back({Subset(r), Subset(full)});
        for (std::size_t e = count; e-- > 0;) {
            auto it = std::lower_bound(seen.begin(), seen.end(), regular_table[e]);
            regulars[static_cast<std::size_t>(it - seen.begin())].generator = Subset(static_cast<Mask>(e));
        }
    }
};

GroundSpace GroundSpace::build(PointSet points, std::vector<Subset> opens, Caps caps) {
    const int n = points.size();
    if (n > caps.max_points) {
        throw CapExceeded("ground space", n, caps.max_points);
    }
    auto data = std::make_shared<Data>(std::move(points), caps);
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    const Subset full = data->points.full();
    data->closed.reserve(opens.size());
    for (Subset o : opens) data->closed.push_back(full - o);
    std::sort(data->closed.begin(), data->closed.end());
    data->opens = std::move(opens);

    data->point_closure.assign(static_cast<std::size_t>(n), full.bits());
    for (Subset c : data->closed) {
        for (int p : c.points()) {
            data->point_closure[static_cast<std::size_t>(p)] &= c.bits();
        }
    }
    if (n <= kClosureTablePoints) {
        const std::size_t count = std::size_t{1} << n;
        data->closure_table.assign(count, 0);
        for (std::size_t m = 1; m < count; ++m) {
            const int low = std::countr_zero(static_cast<Mask>(m));
            data->closure_table[m] = data->closure_table[m & (m - 1)] | data->point_closure[static_cast<std::size_t>(low)];
        }
    }
    return GroundSpace(std::move(data));
}

GroundSpace GroundSpace::create(PointSet points, std::vector<Subset> opens, Caps caps) {
    AxiomReport report = validate_topology(points, opens);
    if (!report.ok()) {
        std::string what = "not a topology:";
        for (const auto& c : report.checks) {
            if (!c.passed) what += " " + c.name + " (" + c.detail + ")";
        }
        throw ValidationError(what, std::move(report));
    }
    return build(std::move(points), std::move(opens), caps);
}

GroundSpace GroundSpace::discrete(PointSet points, Caps caps) {
    const int n = points.size();
    if (n > caps.max_points) {
        throw CapExceeded("ground space", n, caps.max_points);
    }
    std::vector<Subset> opens;
    opens.reserve(std::size_t{1} << n);
    for (Mask m = 0; m <= points.full().bits(); ++m) opens.emplace_back(m);
    return build(std::move(points), std::move(opens), caps);
}

GroundSpace GroundSpace::indiscrete(PointSet points, Caps caps) {
    const Subset full = points.full();
    return build(std::move(points), {Subset{}, full}, caps);
}

const PointSet& GroundSpace::points() const { return data_->points; }
int GroundSpace::size() const { return data_->points.size(); }
Subset GroundSpace::full() const { return data_->points.full(); }
const Caps& GroundSpace::caps() const { return data_->caps; }
std::span<const Subset> GroundSpace::opens() const { return data_->opens; }
std::span<const Subset> GroundSpace::closed_sets() const { return data_->closed; }

Subset GroundSpace::closure(Subset s) const { return Subset(data_->closure_of(s.bits())); }

Subset GroundSpace::interior(Subset s) const {
    return complement(Subset(data_->closure_of(complement(s).bits())));
}

Subset GroundSpace::regular_interior(Subset s) const {
    if (size() <= kClosureTablePoints) {
        std::call_once(data_->regular_once, [this] { data_->compute_regulars(); });
        return Subset(data_->regular_table[s.bits()]);
    }
    return interior(closure(s));
}

const std::vector<GroundSpace::RegularOpen>& GroundSpace::regular_opens() const {
    if (size() > kClosureTablePoints) {
        throw CapExceeded("regular open enumeration", size(), kClosureTablePoints);
    }
    std::call_once(data_->regular_once, [this] { data_->compute_regulars(); });
    return data_->regulars;
}

bool GroundSpace::is_t1() const {
    for (int p = 0; p < size(); ++p) {
        if (data_->point_closure[static_cast<std::size_t>(p)] != Subset::singleton(p).bits()) return false;
    }
    return true;
}

bool GroundSpace::is_discrete() const {
    return data_->opens.size() == (std::size_t{1} << size());
}

bool operator==(const GroundSpace& a, const GroundSpace& b) {
    return a.size() == b.size() && a.data_->opens == b.data_->opens;
}

}  // namespace hyperprox
