#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hyperprox {

/// Exact non-negative-capable rational with a positive, reduced denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Accepts "7", "3/2", "0.25".
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

enum class MetricKind { metric, semimetric };

/// Symmetric distance matrix with zero diagonal and positive off-diagonal
/// entries; the triangle inequality is enforced only for MetricKind::metric.
class Metric {
public:
    static Metric create(std::vector<std::vector<Rational>> d, MetricKind kind = MetricKind::metric);
    static Metric line(int n);

    int size() const { return static_cast<int>(d_.size()); }
    MetricKind kind() const { return kind_; }
    const Rational& operator()(int i, int j) const {
        return d_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    const std::vector<std::vector<Rational>>& rows() const { return d_; }
    /// Sorted distinct off-diagonal distances.
    std::vector<Rational> distances() const;

private:
    Metric(std::vector<std::vector<Rational>> d, MetricKind kind) : d_(std::move(d)), kind_(kind) {}

    std::vector<std::vector<Rational>> d_;
    MetricKind kind_;
};

}  // namespace hyperprox
