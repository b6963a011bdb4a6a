#include "bohrkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bohrkit/errors.hpp"

namespace bohr::verify {

namespace {

constexpr double kLemmaTolerance = 1e-10;
constexpr std::size_t kLemmaAPoints = 512;
constexpr std::size_t kCoeffRPoints = 46;
constexpr double kCoeffRMax = 0.9;
constexpr std::size_t kPairsPerTrial = 8;
constexpr double kSampleRadius = 0.9;
constexpr double kStrictGap = 1e-6;

using series::Complex;

Params with_p(Params pr, double p)
{
    pr.p = p;
    return pr;
}

Complex random_point(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double rho = kSampleRadius * std::sqrt(unit(rng));
    return std::polar(rho, 2.0 * std::numbers::pi * unit(rng));
}

}  // namespace

bool requires_schwarz(Family family)
{
    return family == Family::psi3 || family == Family::psi4 || family == Family::classical_c;
}

WeightSequence effective_weights(const RadiusProblem& prob)
{
    return radii::uses_weights(prob.family) ? prob.weights : WeightSequence::power();
}

double functional_value(const RadiusProblem& prob, const BoundedFunction& f, const Profile& prof,
                        Mode mode)
{
    const Params& pr = prob.params;
    const double r = prof.radius();
    switch (prob.family) {
    case Family::psi1: return functionals::functional_t1(f, prof, pr, mode);
    case Family::psi2: return functionals::functional_t2(f, prof, pr, mode);
    case Family::psi3: return functionals::functional_t3(f, prof, pr, mode);
    case Family::psi4: return functionals::functional_t4(f, prof, pr, mode);
    case Family::psi5_t5: return functionals::functional_t5(f, prof, pr, mode);
    case Family::psi5_t6: return functionals::functional_t6(f, pr, r, mode);
    case Family::classical_alpha: return functionals::functional_t1(f, prof, with_p(pr, 1.0), mode);
    case Family::classical_beta: return functionals::functional_t1(f, prof, with_p(pr, 2.0), mode);
    case Family::classical_zeta: return functionals::functional_t2(f, prof, with_p(pr, 1.0), mode);
    case Family::classical_eta: return functionals::functional_t2(f, prof, with_p(pr, 2.0), mode);
    case Family::classical_c: return functionals::functional_t3(f, prof, with_p(pr, 1.0), mode);
    case Family::classical_d: return functionals::functional_classical_d(f, pr, r, mode);
    }
    throw DomainError("functional_value: unknown family");
}

double bound_value(const RadiusProblem& prob, const Profile& prof)
{
    switch (prob.family) {
    case Family::psi5_t5:
    case Family::psi5_t6:
    case Family::classical_d: return 1.0;
    default: return prof.phi(0);
    }
}

BoundedFunction extremal_function(const RadiusProblem& prob, double a)
{
    switch (prob.family) {
    case Family::psi2:
    case Family::classical_zeta:
    case Family::classical_eta: return series::moebius_minus(a);
    case Family::psi3:
    case Family::psi4:
    case Family::classical_c: return series::schwarz_moebius(a);
    default: return series::moebius_plus(a);
    }
}

std::vector<double> moebius_a_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 19; ++i) {
        grid.push_back(0.05 * i);
    }
    grid.push_back(0.99);
    grid.push_back(0.999);
    return grid;
}

std::vector<BoundedFunction> random_blaschke_set(std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 master(seed);
    std::vector<BoundedFunction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const int degree = 1 + static_cast<int>(master() % series::kMaxBlaschkeDegree);
        out.push_back(series::random_blaschke(degree, master()));
    }
    return out;
}

std::vector<BoundedFunction> default_test_functions(const RadiusProblem& prob,
                                                    std::size_t blaschke_count,
                                                    std::uint64_t seed)
{
    const bool schwarz = requires_schwarz(prob.family);
    std::vector<BoundedFunction> out;
    for (double a : moebius_a_grid()) {
        if (schwarz) {
            out.push_back(series::schwarz_moebius(a));
            out.push_back(series::times_z(series::moebius_plus(a)));
        } else {
            out.push_back(series::moebius_plus(a));
            out.push_back(series::moebius_minus(a));
        }
    }
    for (auto& b : random_blaschke_set(blaschke_count, seed)) {
        out.push_back(schwarz ? series::times_z(b) : std::move(b));
    }
    return out;
}

VerificationReport verify_below_radius(const RadiusProblem& prob,
                                       std::span<const BoundedFunction> functions,
                                       std::size_t r_points, double margin)
{
    if (r_points == 0) {
        throw PreconditionError("verify_below_radius: need at least one radius");
    }
    if (!(margin >= 0.0)) {
        throw PreconditionError("verify_below_radius: margin must be nonnegative");
    }
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.problem = prob;
    rep.certificate = radii::solve_radius(prob);
    rep.mode = Mode::envelope;
    rep.a_grid = moebius_a_grid();
    rep.r_points = r_points;
    rep.r_max = rep.certificate.bracket_lo - margin;
    if (rep.r_max < 0.0) {
        throw PreconditionError("verify_below_radius: margin exceeds the radius");
    }
    rep.function_count = functions.size();
    rep.max_violation = -std::numeric_limits<double>::infinity();
    rep.max_chain_gap = -std::numeric_limits<double>::infinity();

    const WeightSequence w = effective_weights(prob);
    for (std::size_t i = 0; i < r_points; ++i) {
        const double r = r_points == 1
                             ? 0.0
                             : rep.r_max * static_cast<double>(i) / static_cast<double>(r_points - 1);
        const Profile prof(w, r);
        const double bound = bound_value(prob, prof);
        for (const auto& f : functions) {
            const double envelope = functional_value(prob, f, prof, Mode::envelope);
            const double pointwise = functional_value(prob, f, prof, Mode::pointwise);
            ++rep.trials;
            if (envelope - bound > rep.max_violation) {
                rep.max_violation = envelope - bound;
                rep.worst_r = r;
                rep.worst_function = series::describe(f.family());
            }
            rep.max_chain_gap = std::max(rep.max_chain_gap, pointwise - envelope);
        }
    }
    rep.verified = rep.max_violation <= kValidityTolerance;
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

VerificationReport verify_below_radius(const RadiusProblem& prob, std::size_t r_points,
                                       double margin, std::size_t blaschke_count,
                                       std::uint64_t seed)
{
    const auto functions = default_test_functions(prob, blaschke_count, seed);
    return verify_below_radius(prob, functions, r_points, margin);
}

std::optional<double> negative_psi_point(const RadiusProblem& prob, const RootCertificate& cert,
                                         double delta)
{
    constexpr int samples = 64;
    const double end = std::min(cert.radius + delta, kMaxRadius);
    if (radii::psi_eval(prob, end) < 0.0) {
        return end;
    }
    for (int j = 1; j <= samples; ++j) {
        const double r = cert.radius + (end - cert.radius) * j / samples;
        if (r > cert.radius && radii::psi_eval(prob, r) < 0.0) {
            return r;
        }
    }
    return std::nullopt;
}

Witness sharpness_witness(const RadiusProblem& prob, double delta)
{
    if (!(delta > 0.0 && delta <= kMaxDelta)) {
        throw PreconditionError("sharpness_witness: delta must lie in (0, 0.05]");
    }
    const RootCertificate cert = radii::solve_radius(prob);
    const auto r = negative_psi_point(prob, cert, delta);
    if (!r) {
        throw NotFalsifiableError("sharpness_witness: psi is nonnegative on (R, R + delta]");
    }
    const Profile prof(effective_weights(prob), *r);
    const double bound = bound_value(prob, prof);
    for (int k = 1; k <= kWitnessSteps; ++k) {
        const double a = 1.0 - std::ldexp(1.0, -k);
        const BoundedFunction f = extremal_function(prob, a);
        const double excess = functional_value(prob, f, prof, Mode::pointwise) - bound;
        if (excess > kWitnessMargin) {
            return Witness{a, *r, excess, k};
        }
    }
    throw NoWitnessError("sharpness_witness: no a = 1 - 2^-k (k <= 40) exceeds the bound");
}

CoeffLemmaReport check_lemma_coeff(std::size_t trials, std::uint64_t seed, const WeightSequence& w)
{
    if (trials == 0) {
        throw PreconditionError("check_lemma_coeff: trials must be positive");
    }
    std::vector<Profile> profiles;
    profiles.reserve(kCoeffRPoints);
    for (std::size_t i = 0; i < kCoeffRPoints; ++i) {
        profiles.emplace_back(w, kCoeffRMax * static_cast<double>(i) / (kCoeffRPoints - 1));
    }
    CoeffLemmaReport rep;
    rep.max_slack = -std::numeric_limits<double>::infinity();
    auto check = [&](const BoundedFunction& f) {
        const double a0 = f.abs_a0();
        for (const auto& prof : profiles) {
            const double lhs = functionals::bohr_sum(f, prof, 1) + functionals::a_refinement(f, prof);
            const double rhs = (1.0 - a0) * (1.0 + a0) * prof.tail(1);
            ++rep.evaluations;
            if (lhs - rhs > rep.max_slack) {
                rep.max_slack = lhs - rhs;
                rep.worst_function = series::describe(f.family());
                rep.worst_r = prof.radius();
            }
        }
    };
    for (double a : moebius_a_grid()) {
        check(series::moebius_plus(a));
        check(series::moebius_minus(a));
    }
    std::mt19937_64 master(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const int degree = 1 + static_cast<int>(master() % series::kMaxBlaschkeDegree);
        check(series::random_blaschke(degree, master()));
    }
    rep.passed = rep.max_slack <= kValidityTolerance;
    return rep;
}

std::string_view to_string(LemmaInstance instance)
{
    switch (instance) {
    case LemmaInstance::tail_sum: return "tail_sum";
    case LemmaInstance::lambda_geometric: return "lambda_geometric";
    case LemmaInstance::lambda_lacunary: return "lambda_lacunary";
    }
    return "unknown";
}

double lemma_d(double a, double s, double p, double phi0, double n_value)
{
    return (std::pow((a + s) / (1.0 + a * s), p) - 1.0) * phi0 + (1.0 - a) * (1.0 + a) * n_value;
}

LemmaDReport check_lemma_D(LemmaInstance instance, const Params& params, std::size_t r_grid,
                           const WeightSequence& w)
{
    if (r_grid < 2) {
        throw PreconditionError("check_lemma_D: need at least two radii");
    }
    RadiusProblem prob;
    prob.params = params;
    prob.weights = w;
    switch (instance) {
    case LemmaInstance::tail_sum: prob.family = Family::psi1; break;
    case LemmaInstance::lambda_geometric: prob.family = Family::psi5_t5; break;
    case LemmaInstance::lambda_lacunary: prob.family = Family::psi5_t6; break;
    }
    const RootCertificate cert = radii::solve_radius(prob);

    LemmaDReport rep;
    rep.instance = instance;
    rep.params = params;
    rep.radius = cert.radius;
    rep.r_points = r_grid;
    rep.a_points = kLemmaAPoints;
    rep.max_d = -std::numeric_limits<double>::infinity();
    rep.min_increment = std::numeric_limits<double>::infinity();
    rep.min_aux_slack = std::numeric_limits<double>::infinity();
    rep.monotonicity_checked = params.p <= 1.0;
    rep.aux_checked = params.p > 1.0;

    const double p = params.p;
    const int m = params.m;
    for (std::size_t i = 0; i < r_grid; ++i) {
        const double r = cert.bracket_lo * static_cast<double>(i) / static_cast<double>(r_grid - 1);
        const double s = std::pow(r, m);
        double phi0 = 1.0;
        double n_value = 0.0;
        switch (instance) {
        case LemmaInstance::tail_sum:
            phi0 = weights::weight_at(w, 0, r);
            n_value = weights::tail(w, 1, r);
            break;
        case LemmaInstance::lambda_geometric: n_value = params.lambda * r / (1.0 - r); break;
        case LemmaInstance::lambda_lacunary:
            n_value = params.lambda * std::pow(r, params.q + m) / (1.0 - std::pow(r, params.q));
            break;
        }
        double previous = 0.0;
        for (std::size_t j = 0; j < kLemmaAPoints; ++j) {
            const double a = static_cast<double>(j) / static_cast<double>(kLemmaAPoints - 1);
            const double d = lemma_d(a, s, p, phi0, n_value);
            rep.max_d = std::max(rep.max_d, d);
            if (j > 0) {
                rep.min_increment = std::min(rep.min_increment, d - previous);
            }
            previous = d;
        }
        rep.max_abs_d_at_one = std::max(rep.max_abs_d_at_one, std::abs(lemma_d(1.0, s, p, phi0, n_value)));
    }
    if (rep.aux_checked) {
        // (1+s)^2 (s+a)^(p-1) / (1+a s)^(p+1) >= a^(p-1) for s in [0,1)
        for (std::size_t i = 0; i < r_grid; ++i) {
            const double s = 0.999 * static_cast<double>(i) / static_cast<double>(r_grid - 1);
            for (std::size_t j = 0; j < kLemmaAPoints; ++j) {
                const double a = static_cast<double>(j) / static_cast<double>(kLemmaAPoints - 1);
                const double aux = (1.0 + s) * (1.0 + s) * std::pow(s + a, p - 1.0) /
                                   std::pow(1.0 + a * s, p + 1.0);
                rep.min_aux_slack = std::min(rep.min_aux_slack, aux - std::pow(a, p - 1.0));
            }
        }
    }
    rep.passed = rep.max_d <= kLemmaTolerance && rep.max_abs_d_at_one == 0.0 &&
                 (!rep.monotonicity_checked || rep.min_increment >= -kLemmaTolerance) &&
                 (!rep.aux_checked || rep.min_aux_slack >= -1e-12);
    return rep;
}

double pseudo_distance(Complex z1, Complex z2)
{
    const Complex den = 1.0 - std::conj(z1) * z2;
    return std::abs(z1 - z2) / std::abs(den);
}

SchwarzPickReport check_schwarz_pick(std::size_t trials, std::uint64_t seed)
{
    if (trials == 0) {
        throw PreconditionError("check_schwarz_pick: trials must be positive");
    }
    SchwarzPickReport rep;
    rep.max_slack = -std::numeric_limits<double>::infinity();
    rep.max_derivative_slack = -std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);

    auto contraction = [](const BoundedFunction& f, Complex z1, Complex z2) {
        return pseudo_distance(series::eval(f, z1), series::eval(f, z2)) - pseudo_distance(z1, z2);
    };
    auto derivative_gap = [](const BoundedFunction& f, Complex z) {
        const double fz = std::abs(series::eval(f, z));
        const double az = std::abs(z);
        return std::abs(series::eval_derivative(f, z)) - (1.0 - fz * fz) / (1.0 - az * az);
    };

    std::vector<BoundedFunction> automorphisms;
    for (double a : moebius_a_grid()) {
        if (a > 0.99) {
            continue;  // |f| within 1e-3 of the circle: the gap loses digits to cancellation
        }
        automorphisms.push_back(series::moebius_plus(a));
        automorphisms.push_back(series::moebius_minus(a));
    }
    for (const auto& f : automorphisms) {
        for (std::size_t k = 0; k < kPairsPerTrial; ++k) {
            const Complex z1 = random_point(rng);
            const Complex z2 = random_point(rng);
            rep.moebius_max_gap = std::max(rep.moebius_max_gap, std::abs(contraction(f, z1, z2)));
            rep.moebius_max_gap = std::max(rep.moebius_max_gap, std::abs(derivative_gap(f, z1)));
            ++rep.pairs;
        }
    }

    for (std::size_t t = 0; t < trials; ++t) {
        const int degree = 1 + static_cast<int>(rng() % series::kMaxBlaschkeDegree);
        const BoundedFunction f = series::random_blaschke(degree, rng());
        for (std::size_t k = 0; k < kPairsPerTrial; ++k) {
            const Complex z1 = random_point(rng);
            const Complex z2 = random_point(rng);
            const double slack = contraction(f, z1, z2);
            rep.max_slack = std::max(rep.max_slack, slack);
            rep.max_derivative_slack = std::max(rep.max_derivative_slack, derivative_gap(f, z1));
            if (degree >= 2 && slack < -kStrictGap) {
                rep.strict_found = true;
            }
            ++rep.pairs;
        }
        const Complex z = random_point(rng);
        rep.degenerate_ok = (t == 0 || rep.degenerate_ok) &&
                            pseudo_distance(series::eval(f, z), series::eval(f, z)) == 0.0 &&
                            pseudo_distance(z, z) == 0.0;
    }
    rep.passed = rep.max_slack <= 1e-8 && rep.max_derivative_slack <= 1e-8 &&
                 rep.moebius_max_gap <= 1e-10 && rep.strict_found && rep.degenerate_ok;
    return rep;
}

}  // namespace bohr::verify
