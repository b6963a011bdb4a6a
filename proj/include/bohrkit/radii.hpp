#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bohrkit/functionals.hpp"
#include "bohrkit/weights.hpp"

namespace bohr::radii {

using functionals::Params;
using weights::WeightSequence;

enum class Family {
    psi1,             // |f(omega)|^p phi_0 + B_1 + A <= phi_0
    psi2,             // |a_0|^p phi_0 + B_1 + A + |f(omega) - a_0| <= phi_0
    psi3,             // |a_1|^p phi_0 + sum (n+1)|a_{n+1}| phi_n <= phi_0
    psi4,             // psi3 functional + |f'(omega) - a_1| <= phi_0
    psi5_t5,          // |f(omega)|^p + lambda [B_1 + A] <= 1, power weights
    psi5_t6,          // |f(omega)|^p + lambda sum |a_{qk+m}| r^(qk+m) <= 1
    classical_alpha,  // (1-r)(1-r^m) - 2r(1+r^m) = 0
    classical_beta,   // 1 - 2r - r^m = 0
    classical_zeta,   // r^m(3-5r) + 3r - 1 = 0
    classical_eta,    // r^m(2-3r) + 2r - 1 = 0
    classical_c,      // phi_0 = 2 sum (n+1) phi_n with power weights
    classical_d,      // (2 lambda - 1) r^(n+1) + (2 lambda + 1) r^n + r - 1 = 0
};

inline constexpr Family kAllFamilies[] = {
    Family::psi1,          Family::psi2,           Family::psi3,           Family::psi4,
    Family::psi5_t5,       Family::psi5_t6,        Family::classical_alpha, Family::classical_beta,
    Family::classical_zeta, Family::classical_eta, Family::classical_c,    Family::classical_d,
};

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view name);

/// True when the family's radius function depends on the weight sequence.
bool uses_weights(Family family);

struct RadiusProblem {
    Family family = Family::psi1;
    Params params{};
    WeightSequence weights = WeightSequence::power();
};

/// Throws DomainError for parameters outside the family's admissible range.
void validate(const RadiusProblem& prob);

inline constexpr double kScanStep = 1e-3;
inline constexpr double kBracketWidth = 1e-13;

/// Bracket [lo, hi] around the first sign change of a radius function, with
/// psi(lo) > 0 >= psi(hi).
struct RootCertificate {
    double radius = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double psi_lo = 0.0;
    double psi_hi = 0.0;
    double scan_step = kScanStep;
};

/// Radius function of the family, normalized so that psi(0) > 0 and psi >= 0
/// marks the regime where the inequality holds. For psi5_t6 this is the
/// negative of the function written with 2 lambda r^(q+m)/(1-r^q) first.
double psi_eval(const RadiusProblem& prob, double r);

/// Minimal positive root of psi_eval: scan from 0 in steps of 1e-3 up to
/// 1 - 1e-6 for the first point where psi <= 0, then bisect to width 1e-13.
/// Throws NoRootError when psi(0) <= 0 or no sign change exists.
RootCertificate solve_radius(const RadiusProblem& prob);

/// Same procedure for an arbitrary continuous function positive at 0.
RootCertificate solve_first_root(const std::function<double(double)>& psi,
                                 double scan_step = kScanStep);

/// p (1-r^m)/(1+r^m) - 2 lambda r^(q+offset) / (1 - r^q). With offset = m this
/// is the psi5_t6 function; with offset = 0, p = m = 1 and q = n it is the
/// rational form of the classical lacunary equation.
double psi_lacunary(double p, int m, double lambda, int q, int offset, double r);

/// 1 - 3 r^m - 2 sum_{k=1}^m r^k, the polynomial form equivalent to the
/// classical zeta equation.
double zeta_sum_form(int m, double r);
/// 1 - 2 r^m - sum_{k=1}^m r^k, equivalent to the classical eta equation.
double eta_sum_form(int m, double r);

struct CrosscheckPair {
    std::string label;
    double classical = 0.0;
    double psi = 0.0;

    double difference() const;
};

/// Roots of the classical equations next to the roots of the matching
/// general radius functions under power weights.
///
/// p_case 1: alpha_m vs psi1(p=1), zeta_m vs psi2(p=1), alpha_m vs
///           psi5_t5(lambda=1, p=1), zeta_m vs its sum form, classical_c vs
///           psi3(p=1), and the classical lacunary radius (lambda=1, n=m)
///           vs its rational form.
/// p_case 2: beta_m vs psi1(p=2), eta_m vs psi2(p=2), beta_m vs
///           psi5_t5(lambda=1, p=2), eta_m vs its sum form.
std::vector<CrosscheckPair> classical_crosscheck(int m, int p_case);

}  // namespace bohr::radii
