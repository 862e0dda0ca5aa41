#include "hyperprox/metric.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "hyperprox/error.hpp"

namespace hyperprox {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::invalid_argument, "not a rational number: '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw Error(ErrorKind::invalid_argument, "rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.size() > 15 || frac.empty()) {
            throw Error(ErrorKind::invalid_argument, "not a rational number: '" + std::string(text) + "'");
        }
        const bool negative = !whole.empty() && whole.front() == '-';
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t ip = whole.empty() || whole == "-" ? 0 : parse_int(whole, text);
        const std::int64_t fp = parse_int(frac, text);
        if (fp < 0) {
            throw Error(ErrorKind::invalid_argument, "not a rational number: '" + std::string(text) + "'");
        }
        const std::int64_t mag = (ip < 0 ? -ip : ip) * den + fp;
        return Rational(negative ? -mag : mag, den);
    }
    return Rational(parse_int(text, text));
}

std::string Rational::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __extension__ using Wide = __int128;
    const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    return lhs <=> rhs;
}

Metric Metric::create(std::vector<std::vector<Rational>> d, MetricKind kind) {
    const std::size_t n = d.size();
    if (n == 0) {
        throw Error(ErrorKind::invalid_argument, "metric matrix is empty");
    }
    auto where = [](std::size_t i, std::size_t j) {
        return " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n) {
            throw Error(ErrorKind::invalid_argument, "metric matrix is not square (row " + std::to_string(i) + ")");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i][i] != Rational{}) {
            throw Error(ErrorKind::invalid_argument, "metric diagonal must be zero" + where(i, i));
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] != d[j][i]) {
                throw Error(ErrorKind::invalid_argument, "metric is not symmetric" + where(i, j));
            }
            if (i != j && d[i][j] <= Rational{}) {
                throw Error(ErrorKind::invalid_argument, "distinct points need positive distance" + where(i, j));
            }
        }
    }
    if (kind == MetricKind::metric) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    const Rational via(d[i][k].num() * d[k][j].den() + d[k][j].num() * d[i][k].den(),
                                       d[i][k].den() * d[k][j].den());
                    if (d[i][j] > via) {
                        throw Error(ErrorKind::invalid_argument,
                                    "triangle inequality fails" + where(i, j) + " via " + std::to_string(k));
                    }
                }
            }
        }
    }
    return Metric(std::move(d), kind);
}

Metric Metric::line(int n) {
    std::vector<std::vector<Rational>> d(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(i > j ? i - j : j - i);
        }
    }
    return create(std::move(d));
}

std::vector<Rational> Metric::distances() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < d_.size(); ++i) {
        for (std::size_t j = i + 1; j < d_.size(); ++j) out.push_back(d_[i][j]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace hyperprox
