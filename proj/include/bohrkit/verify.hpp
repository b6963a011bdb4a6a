#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bohrkit/functionals.hpp"
#include "bohrkit/radii.hpp"
#include "bohrkit/series.hpp"
#include "bohrkit/weights.hpp"

namespace bohr::verify {

using functionals::Mode;
using functionals::Params;
using radii::Family;
using radii::RadiusProblem;
using radii::RootCertificate;
using series::BoundedFunction;
using weights::Profile;
using weights::WeightSequence;

inline constexpr double kValidityTolerance = 1e-9;
inline constexpr double kChainTolerance = 1e-12;
inline constexpr double kWitnessMargin = 1e-12;
inline constexpr int kWitnessSteps = 40;
inline constexpr double kMaxDelta = 0.05;

/// Families whose functional needs a_0 = 0.
bool requires_schwarz(Family family);

/// Weight sequence the family's functional is evaluated with: the problem's
/// weights for psi1..psi4, power weights otherwise.
WeightSequence effective_weights(const RadiusProblem& prob);

/// The family's functional for `f`, with `prof` built on effective_weights.
double functional_value(const RadiusProblem& prob, const BoundedFunction& f, const Profile& prof,
                        Mode mode);
/// Right-hand side: phi_0(r) for psi1..psi4 and the classical alpha..c
/// families, 1 for the rest.
double bound_value(const RadiusProblem& prob, const Profile& prof);

/// Member of the extremal family used for sharpness at parameter a.
BoundedFunction extremal_function(const RadiusProblem& prob, double a);

/// {0, 0.05, ..., 0.95, 0.99, 0.999}
std::vector<double> moebius_a_grid();

/// `count` random Blaschke products with degrees in 1..16, all seeded from
/// one master seed.
std::vector<BoundedFunction> random_blaschke_set(std::size_t count, std::uint64_t seed);

/// Moebius members on the a-grid plus random Blaschke products, made into
/// Schwarz functions (multiplied by z, or the z(a-z)/(1-az) family) when the
/// family requires it.
std::vector<BoundedFunction> default_test_functions(const RadiusProblem& prob,
                                                    std::size_t blaschke_count,
                                                    std::uint64_t seed);

struct Witness {
    double a = 0.0;
    double r = 0.0;
    double excess = 0.0;
    int step = 0;  // a = 1 - 2^-step
};

struct VerificationReport {
    RadiusProblem problem;
    RootCertificate certificate;
    Mode mode = Mode::envelope;
    std::vector<double> a_grid;
    std::size_t r_points = 0;
    double r_max = 0.0;
    std::size_t function_count = 0;
    std::size_t trials = 0;
    double max_violation = 0.0;   // max of functional - bound, envelope mode
    double worst_r = 0.0;
    std::string worst_function;
    double max_chain_gap = 0.0;   // max of pointwise - envelope
    std::optional<Witness> witness;
    bool verified = false;
    std::optional<double> elapsed_seconds;
};

/// Evaluates the envelope functional for every function on `r_points`
/// equispaced radii in [0, R - margin] and records the largest excess over
/// the bound. Verified iff that excess is at most 1e-9. The pointwise value
/// is evaluated alongside and its excess over the envelope is recorded.
VerificationReport verify_below_radius(const RadiusProblem& prob,
                                       std::span<const BoundedFunction> functions,
                                       std::size_t r_points, double margin);

/// Same, over default_test_functions(prob, blaschke_count, seed).
VerificationReport verify_below_radius(const RadiusProblem& prob, std::size_t r_points = 256,
                                       double margin = 0.0, std::size_t blaschke_count = 100,
                                       std::uint64_t seed = 42);

/// First radius in (R, R + delta] sampled on 64 points where psi < 0, or
/// nullopt when psi stays nonnegative there.
std::optional<double> negative_psi_point(const RadiusProblem& prob, const RootCertificate& cert,
                                         double delta);

/// Evaluates the extremal configuration in pointwise mode at r = R + delta
/// for a = 1 - 2^-k, k = 1..40, and returns the first a whose functional
/// exceeds the bound by more than 1e-12. If psi(R + delta) >= 0 the first
/// sampled point with psi < 0 is used instead.
Witness sharpness_witness(const RadiusProblem& prob, double delta);

struct CoeffLemmaReport {
    double max_slack = 0.0;  // max of B_1 + A - (1 - |a_0|^2) Phi_1
    std::string worst_function;
    double worst_r = 0.0;
    std::size_t evaluations = 0;
    bool passed = false;
};

/// B_1(f, phi, r) + A(f_0, phi, r) <= (1 - |a_0|^2) Phi_1(r) over `trials`
/// random Blaschke products and the Moebius a-grid, on 46 radii in [0, 0.9].
CoeffLemmaReport check_lemma_coeff(std::size_t trials, std::uint64_t seed,
                                   const WeightSequence& w = WeightSequence::power());

/// Choice of N(r) in D(a) = [((a+r^m)/(1+a r^m))^p - 1] phi_0 + (1-a^2) N.
enum class LemmaInstance {
    tail_sum,          // N = Phi_1(r), phi_0 from the weights
    lambda_geometric,  // N = lambda r/(1-r), phi_0 = 1
    lambda_lacunary,   // N = lambda r^(q+m)/(1-r^q), phi_0 = 1
};

std::string_view to_string(LemmaInstance instance);

double lemma_d(double a, double s, double p, double phi0, double n_value);

struct LemmaDReport {
    LemmaInstance instance = LemmaInstance::tail_sum;
    Params params;
    double radius = 0.0;
    std::size_t r_points = 0;
    std::size_t a_points = 0;
    double max_d = 0.0;            // max of D over r <= R and the a-grid
    double max_abs_d_at_one = 0.0; // must be exactly 0
    double min_increment = 0.0;    // min D(a_{i+1}) - D(a_i)
    bool monotonicity_checked = false;  // only for p <= 1
    double min_aux_slack = 0.0;    // min of Phi - a^(p-1), only for 1 < p <= 2
    bool aux_checked = false;
    bool passed = false;
};

LemmaDReport check_lemma_D(LemmaInstance instance, const Params& params, std::size_t r_grid,
                           const WeightSequence& w = WeightSequence::power());

struct SchwarzPickReport {
    double max_slack = 0.0;             // pseudo-hyperbolic distance contraction
    double max_derivative_slack = 0.0;  // |f'| - (1-|f|^2)/(1-|z|^2)
    double moebius_max_gap = 0.0;       // |lhs - rhs| on automorphisms
    bool strict_found = false;          // degree >= 2 with a strictly contracted pair
    bool degenerate_ok = false;         // z1 = z2 gives 0 = 0
    std::size_t pairs = 0;
    bool passed = false;
};

double pseudo_distance(series::Complex z1, series::Complex z2);

SchwarzPickReport check_schwarz_pick(std::size_t trials, std::uint64_t seed);

}  // namespace bohr::verify
