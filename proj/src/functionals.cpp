#include "bohrkit/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bohrkit/errors.hpp"

namespace bohr::functionals {

namespace {

constexpr double kSchwarzTolerance = 1e-15;
// Plain power sums stop once r^j/(1-r) falls below this.
constexpr double kPowerCutoff = 1e-20;

void certify(double remainder, const char* what)
{
    if (!(remainder <= kRemainderBudget)) {
        throw AccuracyError(std::string(what) + ": certified truncation remainder " +
                            std::to_string(remainder) + " exceeds 1e-12");
    }
}

// Bound on |a_n| for every n >= start.
double coefficient_bound(const BoundedFunction& f, std::size_t start)
{
    return start > f.order() ? f.tail_bound() : 1.0;
}

std::size_t power_cutoff(double r)
{
    if (r == 0.0) {
        return 0;
    }
    return static_cast<std::size_t>(
        std::max(0.0, std::ceil(std::log(kPowerCutoff * (1.0 - r)) / std::log(r))));
}

double ipow(double x, int n)
{
    return std::pow(x, static_cast<double>(n));
}

void require_schwarz(const BoundedFunction& f, const char* what)
{
    if (f.abs_a0() > kSchwarzTolerance) {
        throw PreconditionError(std::string(what) + ": requires a Schwarz function (a_0 = 0)");
    }
}

double leading_modulus(const BoundedFunction& f, int m, double r, Mode mode)
{
    const double s = ipow(r, m);
    if (mode == Mode::envelope) {
        return modulus_envelope(f.abs_a0(), s);
    }
    return std::abs(series::eval(f, s));
}

double lacunary_functional(const BoundedFunction& f, double p, int m, double lambda, int period,
                           int offset, double r, Mode mode)
{
    require_radius(r, "lacunary functional");
    return std::pow(leading_modulus(f, m, r, mode), p) +
           lambda * lacunary_sum(f, period, offset, r);
}

}  // namespace

void validate(const Params& pr)
{
    if (pr.m < 1) {
        throw DomainError("params: m must be a positive integer");
    }
    if (!(pr.p > 0.0 && pr.p <= 2.0)) {
        throw DomainError("params: p must lie in (0, 2]");
    }
    if (!(pr.lambda > 0.0 && std::isfinite(pr.lambda))) {
        throw DomainError("params: lambda must be positive and finite");
    }
    if (pr.q < 2) {
        throw DomainError("params: q must be at least 2");
    }
    if (pr.n_lacunary < 1) {
        throw DomainError("params: n must be a positive integer");
    }
}

void validate_lacunary(const Params& pr)
{
    validate(pr);
    if (!(pr.m < pr.q)) {
        throw DomainError("params: lacunary family requires 0 < m < q");
    }
}

double modulus_envelope(double a, double s)
{
    return (s + a) / (1.0 + a * s);
}

double bohr_sum(const BoundedFunction& f, const WeightSequence& w, std::size_t first, double r)
{
    return bohr_sum(f, Profile(w, r), first);
}

double bohr_sum(const BoundedFunction& f, const Profile& prof, std::size_t first)
{
    const std::size_t last = std::min(f.order(), prof.depth());
    double sum = 0.0;
    for (std::size_t n = first; n <= last; ++n) {
        sum += f.abs_coeff(n) * prof.phi(n);
    }
    const std::size_t rest = std::max(first, last + 1);
    certify(coefficient_bound(f, rest) * prof.tail(rest), "bohr_sum");
    return sum;
}

double a_refinement(const BoundedFunction& f, const WeightSequence& w, double r)
{
    return a_refinement(f, Profile(w, r));
}

double a_refinement(const BoundedFunction& f, const Profile& prof)
{
    const double inv = 1.0 / (1.0 + f.abs_a0());
    const std::size_t last = std::min(f.order(), prof.depth() / 2);
    double sum = 0.0;
    for (std::size_t n = 1; n <= last; ++n) {
        const double an = f.abs_coeff(n);
        sum += an * an * (prof.phi(2 * n) * inv + prof.tail(2 * n + 1));
    }
    // sum_{n >= s} Phi_{2n} <= sum_{j >= 2s} (j+1) phi_j
    const std::size_t rest = last + 1;
    const double bound = coefficient_bound(f, rest);
    certify(bound * bound * prof.weighted_tail(2 * rest), "a_refinement");
    return sum;
}

double norm_squared(const BoundedFunction& f, double r)
{
    require_radius(r, "norm_squared");
    const double r2 = r * r;
    const std::size_t last = std::min(f.order(), power_cutoff(r2));
    double sum = 0.0;
    double power = r2;
    for (std::size_t n = 1; n <= last; ++n) {
        const double an = f.abs_coeff(n);
        sum += an * an * power;
        power *= r2;
    }
    const double bound = coefficient_bound(f, last + 1);
    certify(bound * bound * power / (1.0 - r2), "norm_squared");
    return sum;
}

double derivative_sum(const BoundedFunction& f, const Profile& prof)
{
    const std::size_t last = std::min(f.order() - 1, prof.depth());
    double sum = 0.0;
    for (std::size_t n = 1; n <= last; ++n) {
        sum += static_cast<double>(n + 1) * f.abs_coeff(n + 1) * prof.phi(n);
    }
    const std::size_t rest = std::max<std::size_t>(1, last + 1);
    certify(coefficient_bound(f, rest + 1) * prof.weighted_tail(rest), "derivative_sum");
    return sum;
}

double lacunary_sum(const BoundedFunction& f, int period, int offset, double r)
{
    require_radius(r, "lacunary_sum");
    if (period < 1 || offset < 0) {
        throw DomainError("lacunary_sum: period must be positive and offset nonnegative");
    }
    const std::size_t last = std::min(f.order(), power_cutoff(r));
    const auto step = static_cast<std::size_t>(period);
    std::size_t j = step + static_cast<std::size_t>(offset);
    double sum = 0.0;
    for (; j <= last; j += step) {
        sum += f.abs_coeff(j) * ipow(r, static_cast<int>(j));
    }
    const std::size_t rest = std::max(j, last + 1);
    certify(coefficient_bound(f, rest) * ipow(r, static_cast<int>(rest)) / (1.0 - r),
            "lacunary_sum");
    return sum;
}

double functional_t1(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode)
{
    return functional_t1(f, Profile(w, r), pr, mode);
}

double functional_t1(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode)
{
    validate(pr);
    const double lead = std::pow(leading_modulus(f, pr.m, prof.radius(), mode), pr.p);
    return lead * prof.phi(0) + bohr_sum(f, prof, 1) + a_refinement(f, prof);
}

double functional_t2(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode)
{
    return functional_t2(f, Profile(w, r), pr, mode);
}

double functional_t2(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode)
{
    validate(pr);
    const double a = f.abs_a0();
    const double s = ipow(prof.radius(), pr.m);
    double shift = 0.0;
    if (mode == Mode::envelope) {
        // sup |f(u) - a_0| over |u| <= s, attained by (a - z)/(1 - a z)
        shift = (1.0 - a) * (1.0 + a) * s / (1.0 - a * s);
    } else {
        shift = std::abs(series::eval(f, s) - f[0]);
    }
    return std::pow(a, pr.p) * prof.phi(0) + bohr_sum(f, prof, 1) + a_refinement(f, prof) + shift;
}

double functional_t3(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode)
{
    return functional_t3(f, Profile(w, r), pr, mode);
}

double functional_t3(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode)
{
    validate(pr);
    require_schwarz(f, "functional_t3");
    return std::pow(f.abs_coeff(1), pr.p) * prof.phi(0) + derivative_sum(f, prof);
}

double functional_t4(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode)
{
    return functional_t4(f, Profile(w, r), pr, mode);
}

double functional_t4(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode)
{
    validate(pr);
    require_schwarz(f, "functional_t4");
    const double a1 = f.abs_coeff(1);
    const double s = ipow(prof.radius(), pr.m);
    double shift = 0.0;
    if (mode == Mode::envelope) {
        shift = (1.0 - a1) * (1.0 + a1) * s * (2.0 - s) / ((1.0 - s) * (1.0 - s));
    } else {
        shift = std::abs(series::eval_derivative(f, s) - f[1]);
    }
    return std::pow(a1, pr.p) * prof.phi(0) + derivative_sum(f, prof) + shift;
}

double functional_t5(const BoundedFunction& f, const Params& pr, double r, Mode mode)
{
    return functional_t5(f, Profile(WeightSequence::power(), r), pr, mode);
}

double functional_t5(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode)
{
    validate(pr);
    const double lead = std::pow(leading_modulus(f, pr.m, prof.radius(), mode), pr.p);
    return lead + pr.lambda * (bohr_sum(f, prof, 1) + a_refinement(f, prof));
}

double functional_t6(const BoundedFunction& f, const Params& pr, double r, Mode mode)
{
    validate_lacunary(pr);
    return lacunary_functional(f, pr.p, pr.m, pr.lambda, pr.q, pr.m, r, mode);
}

double functional_classical_d(const BoundedFunction& f, const Params& pr, double r, Mode mode)
{
    validate(pr);
    return lacunary_functional(f, 1.0, 1, pr.lambda, pr.n_lacunary, 0, r, mode);
}

}  // namespace bohr::functionals
