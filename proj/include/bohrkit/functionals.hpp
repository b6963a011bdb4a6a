#pragma once

#include <cstddef>

#include "bohrkit/series.hpp"
#include "bohrkit/weights.hpp"

namespace bohr::functionals {

using series::BoundedFunction;
using weights::Profile;
using weights::WeightSequence;

/// Remainder budget every truncated sum must certify.
inline constexpr double kRemainderBudget = 1e-12;

/// Parameters shared by the functionals and radius problems. Each functional
/// reads only the fields it needs.
struct Params {
    int m = 1;             // order of the inner map omega(z) = z^m
    double p = 1.0;        // exponent on the leading modulus, in (0, 2]
    double lambda = 1.0;   // positive scale on the coefficient block
    int q = 2;             // lacunary period for the generalized lacunary family
    int n_lacunary = 1;    // period n of the classical lacunary family
};

/// Throws DomainError when a field is outside its admissible range.
void validate(const Params& pr);
/// Additionally requires q >= 2 and 0 < m < q.
void validate_lacunary(const Params& pr);

/// How the terms involving omega(z) are evaluated.
///   envelope:  replaced by the sharp upper bound over all f in B with the
///              given leading coefficient(s) and all omega in B_m.
///   pointwise: evaluated for omega(z) = z^m at z = r.
enum class Mode { envelope, pointwise };

/// B_N(f, phi, r) = sum_{n >= N} |a_n| phi_n(r)
double bohr_sum(const BoundedFunction& f, const WeightSequence& w, std::size_t first, double r);
double bohr_sum(const BoundedFunction& f, const Profile& prof, std::size_t first);

/// A(f_0, phi, r) = sum_{n >= 1} |a_n|^2 [phi_{2n}(r)/(1+|a_0|) + Phi_{2n+1}(r)]
double a_refinement(const BoundedFunction& f, const WeightSequence& w, double r);
double a_refinement(const BoundedFunction& f, const Profile& prof);

/// ||f_0||_r^2 = sum_{n >= 1} |a_n|^2 r^(2n)
double norm_squared(const BoundedFunction& f, double r);

/// sum_{n >= 1} (n+1) |a_{n+1}| phi_n(r), the tail of B_0(f', phi, r).
double derivative_sum(const BoundedFunction& f, const Profile& prof);

/// sum_{k >= 1} |a_{qk+offset}| r^(qk+offset)
double lacunary_sum(const BoundedFunction& f, int period, int offset, double r);

/// (s + a) / (1 + a s): sup of |f(u)| over f in B with |f(0)| = a and |u| <= s.
double modulus_envelope(double a, double s);

// Top-level functionals. The bound each is compared against is phi_0(r)
// for T1..T4 and 1 for T5, T6 and the classical lacunary family.

/// |f(omega)|^p phi_0 + B_1(f, phi, r) + A(f_0, phi, r)
double functional_t1(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode);
double functional_t1(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode);

/// |a_0|^p phi_0 + B_1 + A + |f(omega) - a_0|
double functional_t2(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode);
double functional_t2(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode);

/// |a_1|^p phi_0 + sum_{n >= 1} (n+1)|a_{n+1}| phi_n. Requires a_0 = 0.
double functional_t3(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode);
double functional_t3(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode);

/// functional_t3 + |f'(omega) - a_1|. Requires a_0 = 0. The middle sum carries
/// the factor |a_{n+1}|.
double functional_t4(const BoundedFunction& f, const WeightSequence& w, const Params& pr, double r,
                     Mode mode);
double functional_t4(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode);

/// |f(omega)|^p + lambda [B_1(f, r) + A(f_0, r)] with power weights.
double functional_t5(const BoundedFunction& f, const Params& pr, double r, Mode mode);
/// Same with a precomputed profile, which must come from power weights.
double functional_t5(const BoundedFunction& f, const Profile& prof, const Params& pr, Mode mode);

/// |f(omega)|^p + lambda sum_{k >= 1} |a_{qk+m}| r^(qk+m)
double functional_t6(const BoundedFunction& f, const Params& pr, double r, Mode mode);

/// |f(z)| + lambda sum_{k >= 1} |a_{nk}| r^(nk), the classical lacunary family.
double functional_classical_d(const BoundedFunction& f, const Params& pr, double r, Mode mode);

}  // namespace bohr::functionals
