#include "bohrkit/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bohrkit/errors.hpp"

namespace bohr::series {

namespace {

constexpr double kMembershipSlack = 1e-12;
// Stored terms are skipped once their certified total drops below this.
constexpr double kSkipBudget = 1e-18;

void require_moebius_parameter(double a, const char* what)
{
    if (!(a >= 0.0 && a < 1.0)) {
        throw DomainError(std::string(what) + ": parameter a must lie in [0, 1)");
    }
}

void require_disk(Complex z, const char* what)
{
    if (!(std::abs(z) <= kMaxRadius)) {
        throw DomainError(std::string(what) + ": |z| exceeds 1 - 1e-6");
    }
}

// Smallest K such that sum_{n > K} x^n <= budget, i.e. x^(K+1)/(1-x) <= budget.
std::size_t value_cutoff(double x)
{
    if (x == 0.0) {
        return 0;
    }
    const double needed = std::log(kSkipBudget * (1.0 - x)) / std::log(x);
    return static_cast<std::size_t>(std::max(0.0, std::ceil(needed)));
}

// Bound on sum_{n > K} n x^(n-1).
double derivative_skip_bound(double x, std::size_t k)
{
    const double kd = static_cast<double>(k);
    return std::pow(x, kd) * ((kd + 1.0) - kd * x) / ((1.0 - x) * (1.0 - x));
}

}  // namespace

std::string describe(const FamilyTag& tag)
{
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&os](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, MoebiusPlus>) {
                os << "moebius_plus(" << t.a << ")";
            } else if constexpr (std::is_same_v<T, MoebiusMinus>) {
                os << "moebius_minus(" << t.a << ")";
            } else if constexpr (std::is_same_v<T, SchwarzMoebius>) {
                os << "schwarz_moebius(" << t.a << ")";
            } else if constexpr (std::is_same_v<T, Monomial>) {
                os << "monomial(" << t.m << ")";
            } else if constexpr (std::is_same_v<T, Blaschke>) {
                os << "blaschke(degree=" << t.zeros.size() << ")";
            } else {
                os << "custom";
            }
        },
        tag);
    return os.str();
}

BoundedFunction::BoundedFunction(std::vector<Complex> coeffs, double tail_bound, FamilyTag tag)
    : coeffs_(std::move(coeffs)), tail_bound_(tail_bound), family_(std::move(tag))
{
}

BoundedFunction BoundedFunction::from_coefficients(std::vector<Complex> coeffs, double tail_bound,
                                                   FamilyTag tag)
{
    if (coeffs.size() < 2) {
        throw DomainError("BoundedFunction: truncation order must be at least 1");
    }
    if (!(tail_bound >= 0.0 && tail_bound <= 1.0)) {
        throw DomainError("BoundedFunction: tail bound must lie in [0, 1]");
    }
    const double a0 = std::abs(coeffs.front());
    if (!(a0 <= 1.0 + kMembershipSlack)) {
        throw DomainError("BoundedFunction: |a_0| exceeds 1");
    }
    const double pick = 1.0 - a0 * a0 + kMembershipSlack;
    for (std::size_t n = 1; n < coeffs.size(); ++n) {
        const double an = std::abs(coeffs[n]);
        if (!(an <= 1.0 + kMembershipSlack) || !(an <= pick)) {
            throw DomainError("BoundedFunction: coefficient " + std::to_string(n) +
                              " violates the Schwarz-Pick bound 1 - |a_0|^2");
        }
    }
    return BoundedFunction(std::move(coeffs), tail_bound, std::move(tag));
}

InnerMap::InnerMap(int m) : m_(m)
{
    if (m < 1) {
        throw DomainError("InnerMap: exponent must be a positive integer");
    }
}

Complex InnerMap::operator()(Complex z) const
{
    Complex out = 1.0;
    for (int i = 0; i < m_; ++i) {
        out *= z;
    }
    return out;
}

std::size_t moebius_order(double a)
{
    require_moebius_parameter(a, "moebius_order");
    if (a == 0.0) {
        return kMinMoebiusOrder;
    }
    const double needed = std::ceil(std::log(1e-15 / ((1.0 - a) * (1.0 + a))) / std::log(a));
    if (!(needed < static_cast<double>(kMaxOrder))) {
        return kMaxOrder;
    }
    return std::max(kMinMoebiusOrder, static_cast<std::size_t>(std::max(needed, 0.0)));
}

BoundedFunction moebius_plus(double a)
{
    require_moebius_parameter(a, "moebius_plus");
    const std::size_t order = moebius_order(a);
    const double scale = (1.0 - a) * (1.0 + a);
    std::vector<Complex> c(order + 1);
    c[0] = a;
    double term = scale;
    for (std::size_t n = 1; n <= order; ++n) {
        c[n] = term;
        term *= -a;
    }
    return BoundedFunction::from_coefficients(std::move(c), scale * std::pow(a, order),
                                              MoebiusPlus{a});
}

BoundedFunction moebius_minus(double a)
{
    require_moebius_parameter(a, "moebius_minus");
    const std::size_t order = moebius_order(a);
    const double scale = (1.0 - a) * (1.0 + a);
    std::vector<Complex> c(order + 1);
    c[0] = a;
    double term = -scale;
    for (std::size_t n = 1; n <= order; ++n) {
        c[n] = term;
        term *= a;
    }
    return BoundedFunction::from_coefficients(std::move(c), scale * std::pow(a, order),
                                              MoebiusMinus{a});
}

BoundedFunction schwarz_moebius(double a)
{
    require_moebius_parameter(a, "schwarz_moebius");
    const std::size_t order = moebius_order(a) + 1;
    const double scale = (1.0 - a) * (1.0 + a);
    std::vector<Complex> c(order + 1);
    c[0] = 0.0;
    c[1] = a;
    double term = -scale;
    for (std::size_t n = 2; n <= order; ++n) {
        c[n] = term;
        term *= a;
    }
    // |a_{n+1}| = (1-a^2) a^(n-1), so every index past `order` is bounded by
    // the next term (1-a^2) a^(order-1).
    return BoundedFunction::from_coefficients(std::move(c), scale * std::pow(a, order - 1),
                                              SchwarzMoebius{a});
}

BoundedFunction monomial(int m)
{
    if (m < 0) {
        throw DomainError("monomial: exponent must be nonnegative");
    }
    std::vector<Complex> c(static_cast<std::size_t>(std::max(m, 1)) + 1, 0.0);
    c[static_cast<std::size_t>(m)] = 1.0;
    return BoundedFunction::from_coefficients(std::move(c), 0.0, Monomial{m});
}

BoundedFunction blaschke_product(std::span<const Complex> zeros, Complex rotation,
                                 std::size_t order)
{
    if (zeros.empty() || zeros.size() > static_cast<std::size_t>(kMaxBlaschkeDegree)) {
        throw PreconditionError("blaschke_product: degree must lie in 1..16");
    }
    if (std::abs(std::abs(rotation) - 1.0) > 1e-12) {
        throw DomainError("blaschke_product: rotation must be unimodular");
    }
    if (order < 1) {
        throw PreconditionError("blaschke_product: order must be positive");
    }
    std::vector<Complex> f(order + 1, 0.0);
    f[0] = rotation;
    std::vector<Complex> g(order + 1);
    for (const Complex& alpha : zeros) {
        if (!(std::abs(alpha) < 1.0)) {
            throw DomainError("blaschke_product: zeros must lie in the open unit disk");
        }
        // g (1 - conj(alpha) z) = f (z - alpha)
        const Complex alpha_bar = std::conj(alpha);
        g[0] = -alpha * f[0];
        for (std::size_t n = 1; n <= order; ++n) {
            g[n] = alpha_bar * g[n - 1] + f[n - 1] - alpha * f[n];
        }
        f.swap(g);
    }
    return BoundedFunction::from_coefficients(
        std::move(f), 1.0, Blaschke{std::vector<Complex>(zeros.begin(), zeros.end()), rotation});
}

BoundedFunction random_blaschke(int degree, std::uint64_t seed)
{
    if (degree < 1 || degree > kMaxBlaschkeDegree) {
        throw PreconditionError("random_blaschke: degree must lie in 1..16");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<Complex> zeros;
    zeros.reserve(static_cast<std::size_t>(degree));
    for (int k = 0; k < degree; ++k) {
        const double rho = kBlaschkeZeroRadius * std::sqrt(unit(rng));
        zeros.push_back(std::polar(rho, two_pi * unit(rng)));
    }
    const Complex rotation = std::polar(1.0, two_pi * unit(rng));
    return blaschke_product(zeros, rotation);
}

BoundedFunction times_z(const BoundedFunction& f)
{
    std::vector<Complex> c;
    c.reserve(f.order() + 2);
    c.push_back(0.0);
    c.insert(c.end(), f.coeffs().begin(), f.coeffs().end());
    return BoundedFunction::from_coefficients(std::move(c), f.tail_bound());
}

BoundedFunction compose_inner(const BoundedFunction& f, InnerMap w)
{
    const auto m = static_cast<std::size_t>(w.exponent());
    if (m == 1) {
        return f;
    }
    std::vector<Complex> c(f.order() * m + 1, 0.0);
    for (std::size_t n = 0; n <= f.order(); ++n) {
        c[n * m] = f[n];
    }
    return BoundedFunction::from_coefficients(std::move(c), f.tail_bound());
}

Complex eval(const BoundedFunction& f, Complex z)
{
    require_disk(z, "eval");
    const std::size_t last = std::min(f.order(), value_cutoff(std::abs(z)));
    Complex acc = f[last];
    for (std::size_t n = last; n-- > 0;) {
        acc = acc * z + f[n];
    }
    return acc;
}

Complex eval_derivative(const BoundedFunction& f, Complex z)
{
    require_disk(z, "eval_derivative");
    const double x = std::abs(z);
    std::size_t last = std::min(f.order(), value_cutoff(x));
    while (last < f.order() && derivative_skip_bound(x, last) > kSkipBudget) {
        ++last;
    }
    if (last == 0) {
        return 0.0;
    }
    Complex acc = static_cast<double>(last) * f[last];
    for (std::size_t n = last - 1; n >= 1; --n) {
        acc = acc * z + static_cast<double>(n) * f[n];
    }
    return acc;
}

double eval_error_bound(const BoundedFunction& f, double abs_z)
{
    const double order = static_cast<double>(f.order());
    return f.tail_bound() * std::pow(abs_z, order + 1.0) / (1.0 - abs_z) + kSkipBudget;
}

}  // namespace bohr::series
