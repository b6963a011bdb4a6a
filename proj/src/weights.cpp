#include "bohrkit/weights.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bohrkit/errors.hpp"

namespace bohr::weights {

namespace {

constexpr double kProfileBudget = 1e-20;

// C sum_{n >= first} x^n
double geometric_tail(double bound, double x, double first)
{
    return bound * std::pow(x, first) / (1.0 - x);
}

// C sum_{n >= first} (n+1) x^n
double geometric_weighted_tail(double bound, double x, double first)
{
    return bound * std::pow(x, first) * ((first + 1.0) - first * x) / ((1.0 - x) * (1.0 - x));
}

}  // namespace

WeightSequence::WeightSequence(Kind kind, std::vector<double> coeffs, double rho, double bound)
    : kind_(kind), coeffs_(std::move(coeffs)), rho_(rho), bound_(bound)
{
}

WeightSequence WeightSequence::power()
{
    return WeightSequence(Kind::power, {}, 1.0, 1.0);
}

WeightSequence WeightSequence::scaled_power(std::vector<double> coeffs, double rho, double bound)
{
    if (coeffs.empty() || coeffs.size() > kMaxCoefficients) {
        throw DomainError("scaled_power: coefficient list length must lie in 1..4096");
    }
    if (!(rho > 0.0 && rho <= 1.0)) {
        throw DomainError("scaled_power: rho must lie in (0, 1]");
    }
    if (!(bound >= 0.0 && std::isfinite(bound))) {
        throw DomainError("scaled_power: C must be a nonnegative finite number");
    }
    double envelope = bound;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double c = coeffs[n];
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw DomainError("scaled_power: coefficient " + std::to_string(n) +
                              " is negative or not finite");
        }
        if (c > envelope * (1.0 + 1e-12)) {
            throw DomainError("scaled_power: coefficient " + std::to_string(n) +
                              " exceeds the declared dominator C rho^n");
        }
        envelope *= rho;
    }
    return WeightSequence(Kind::scaled_power, std::move(coeffs), rho, bound);
}

WeightSequence WeightSequence::from_json(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("weights: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string()) {
        throw DomainError("weights: document needs a string field \"kind\"");
    }
    const auto kind = doc["kind"].get<std::string>();
    if (kind == "power") {
        return power();
    }
    if (kind != "scaled_power") {
        throw DomainError("weights: unknown kind \"" + kind + "\"");
    }
    for (const char* key : {"coeffs", "rho", "C"}) {
        if (!doc.contains(key)) {
            throw DomainError(std::string("weights: missing field \"") + key + "\"");
        }
    }
    if (!doc["coeffs"].is_array() || !doc["rho"].is_number() || !doc["C"].is_number()) {
        throw DomainError("weights: coeffs must be an array, rho and C numbers");
    }
    std::vector<double> coeffs;
    coeffs.reserve(doc["coeffs"].size());
    for (const auto& v : doc["coeffs"]) {
        if (!v.is_number()) {
            throw DomainError("weights: coefficients must be numbers");
        }
        coeffs.push_back(v.get<double>());
    }
    return scaled_power(std::move(coeffs), doc["rho"].get<double>(), doc["C"].get<double>());
}

WeightSequence WeightSequence::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DomainError("weights: cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

double WeightSequence::coefficient(std::size_t n) const
{
    if (kind_ == Kind::power) {
        return 1.0;
    }
    if (n < coeffs_.size()) {
        return coeffs_[n];
    }
    return bound_ * std::pow(rho_, static_cast<double>(n));
}

std::string WeightSequence::describe() const
{
    if (kind_ == Kind::power) {
        return "power";
    }
    std::ostringstream os;
    os << "scaled_power(L=" << coeffs_.size() << ", rho=" << rho_ << ", C=" << bound_ << ")";
    return os.str();
}

std::string WeightSequence::to_json() const
{
    nlohmann::json doc;
    if (kind_ == Kind::power) {
        doc["kind"] = "power";
    } else {
        doc["kind"] = "scaled_power";
        doc["coeffs"] = coeffs_;
        doc["rho"] = rho_;
        doc["C"] = bound_;
    }
    return doc.dump();
}

double weight_at(const WeightSequence& w, std::size_t n, double r)
{
    require_radius(r, "weight_at");
    return w.coefficient(n) * std::pow(r, static_cast<double>(n));
}

double tail(const WeightSequence& w, std::size_t first, double r)
{
    require_radius(r, "tail");
    if (w.kind() == WeightSequence::Kind::power) {
        return std::pow(r, static_cast<double>(first)) / (1.0 - r);
    }
    const auto coeffs = w.coefficients();
    double partial = 0.0;
    for (std::size_t n = first; n < coeffs.size(); ++n) {
        partial += coeffs[n] * std::pow(r, static_cast<double>(n));
    }
    const double from = static_cast<double>(std::max(first, coeffs.size()));
    return partial + geometric_tail(w.dominator_constant(), w.rho() * r, from);
}

double weighted_tail(const WeightSequence& w, std::size_t first, double r)
{
    require_radius(r, "weighted_tail");
    if (w.kind() == WeightSequence::Kind::power) {
        return geometric_weighted_tail(1.0, r, static_cast<double>(first));
    }
    const auto coeffs = w.coefficients();
    double partial = 0.0;
    for (std::size_t n = first; n < coeffs.size(); ++n) {
        partial += static_cast<double>(n + 1) * coeffs[n] * std::pow(r, static_cast<double>(n));
    }
    const double from = static_cast<double>(std::max(first, coeffs.size()));
    return partial + geometric_weighted_tail(w.dominator_constant(), w.rho() * r, from);
}

double dominating_weighted_tail(const WeightSequence& w, std::size_t first, double r)
{
    require_radius(r, "dominating_weighted_tail");
    return geometric_weighted_tail(w.dominator_constant(), w.rho() * r,
                                   static_cast<double>(first));
}

Profile::Profile(const WeightSequence& w, double r) : w_(w), r_(r)
{
    require_radius(r, "Profile");
    // dominating_weighted_tail is decreasing in the start index, so bisect for
    // the first half-depth below budget.
    std::size_t hi = 1;
    while (hi < kMaxDepth / 2 && dominating_weighted_tail(w, hi, r) > kProfileBudget) {
        hi *= 2;
    }
    std::size_t lo = hi / 2;
    while (lo + 1 < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (dominating_weighted_tail(w, mid, r) > kProfileBudget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const std::size_t depth = std::max<std::size_t>(2, 2 * hi);

    phi_.resize(depth + 1);
    double power = 1.0;
    for (std::size_t n = 0; n <= depth; ++n) {
        phi_[n] = w.coefficient(n) * power;
        power *= r;
    }
    // one entry past depth + 1 so that the remainder at 2 (depth/2 + 1) in
    // the refinement term stays in the table
    const std::size_t last = depth + 2;
    tail_.resize(last + 1);
    wtail_.resize(last + 1);
    if (w.kind() == WeightSequence::Kind::power) {
        for (std::size_t n = 0; n <= last; ++n) {
            tail_[n] = weights::tail(w, n, r);
        }
    } else {
        tail_[last] = weights::tail(w, last, r);
        for (std::size_t n = last; n-- > 0;) {
            tail_[n] = weight_at(w, n, r) + tail_[n + 1];
        }
    }
    wtail_[last] = weights::weighted_tail(w, last, r);
    for (std::size_t n = last; n-- > 0;) {
        wtail_[n] = static_cast<double>(n + 1) * weight_at(w, n, r) + wtail_[n + 1];
    }
}

double Profile::phi(std::size_t n) const
{
    return n < phi_.size() ? phi_[n] : weight_at(w_, n, r_);
}

double Profile::tail(std::size_t n) const
{
    return n < tail_.size() ? tail_[n] : weights::tail(w_, n, r_);
}

double Profile::weighted_tail(std::size_t n) const
{
    return n < wtail_.size() ? wtail_[n] : weights::weighted_tail(w_, n, r_);
}

}  // namespace bohr::weights
