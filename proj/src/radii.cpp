#include "bohrkit/radii.hpp"

#include <cmath>
#include <string>

#include "bohrkit/errors.hpp"

namespace bohr::radii {

namespace {

double ipow(double x, int n)
{
    return std::pow(x, static_cast<double>(n));
}

// p (1 - s)/(1 + s) with s = r^m
double contracted_modulus(double p, int m, double r)
{
    const double s = ipow(r, m);
    return p * (1.0 - s) / (1.0 + s);
}

// sum_{n >= 1} (n+1) s^n
double derivative_envelope(double s)
{
    return s * (2.0 - s) / ((1.0 - s) * (1.0 - s));
}

}  // namespace

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::psi1: return "psi1";
    case Family::psi2: return "psi2";
    case Family::psi3: return "psi3";
    case Family::psi4: return "psi4";
    case Family::psi5_t5: return "psi5_t5";
    case Family::psi5_t6: return "psi5_t6";
    case Family::classical_alpha: return "classical_alpha";
    case Family::classical_beta: return "classical_beta";
    case Family::classical_zeta: return "classical_zeta";
    case Family::classical_eta: return "classical_eta";
    case Family::classical_c: return "classical_c";
    case Family::classical_d: return "classical_d";
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view name)
{
    for (Family f : kAllFamilies) {
        if (to_string(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

bool uses_weights(Family family)
{
    switch (family) {
    case Family::psi1:
    case Family::psi2:
    case Family::psi3:
    case Family::psi4: return true;
    default: return false;
    }
}

void validate(const RadiusProblem& prob)
{
    if (prob.family == Family::psi5_t6) {
        functionals::validate_lacunary(prob.params);
    } else {
        functionals::validate(prob.params);
    }
}

double psi_eval(const RadiusProblem& prob, double r)
{
    require_radius(r, "psi_eval");
    const Params& pr = prob.params;
    const WeightSequence& w = prob.weights;
    const double s = ipow(r, pr.m);
    switch (prob.family) {
    case Family::psi1:
        return contracted_modulus(pr.p, pr.m, r) * weights::weight_at(w, 0, r) -
               2.0 * weights::tail(w, 1, r);
    case Family::psi2:
        return 0.5 * pr.p * weights::weight_at(w, 0, r) - weights::tail(w, 1, r) - s / (1.0 - s);
    case Family::psi3:
        return 0.5 * pr.p * weights::weight_at(w, 0, r) - weights::weighted_tail(w, 1, r);
    case Family::psi4:
        return 0.5 * pr.p * weights::weight_at(w, 0, r) - weights::weighted_tail(w, 1, r) -
               derivative_envelope(s);
    case Family::psi5_t5:
        return contracted_modulus(pr.p, pr.m, r) - 2.0 * pr.lambda * r / (1.0 - r);
    case Family::psi5_t6:
        return psi_lacunary(pr.p, pr.m, pr.lambda, pr.q, pr.m, r);
    case Family::classical_alpha:
        return (1.0 - r) * (1.0 - s) - 2.0 * r * (1.0 + s);
    case Family::classical_beta:
        return 1.0 - 2.0 * r - s;
    case Family::classical_zeta:
        return 1.0 - 3.0 * r - s * (3.0 - 5.0 * r);
    case Family::classical_eta:
        return 1.0 - 2.0 * r - s * (2.0 - 3.0 * r);
    case Family::classical_c:
        // (1-r)^2 - 2 r (2-r), i.e. 1 = 2 sum (n+1) r^n cleared of denominators
        return 1.0 - 6.0 * r + 3.0 * r * r;
    case Family::classical_d: {
        const double lam = pr.lambda;
        const int n = pr.n_lacunary;
        return 1.0 - r - (2.0 * lam + 1.0) * ipow(r, n) - (2.0 * lam - 1.0) * ipow(r, n + 1);
    }
    }
    throw DomainError("psi_eval: unknown family");
}

RootCertificate solve_first_root(const std::function<double(double)>& psi, double scan_step)
{
    if (!(scan_step > 0.0)) {
        throw PreconditionError("solve_first_root: scan step must be positive");
    }
    const double at_zero = psi(0.0);
    if (!(at_zero > 0.0)) {
        throw NoRootError("radius function is not positive at r = 0");
    }
    double lo = 0.0;
    double psi_lo = at_zero;
    double hi = 0.0;
    double psi_hi = 0.0;
    bool found = false;
    for (std::size_t k = 1;; ++k) {
        const double r = std::min(static_cast<double>(k) * scan_step, kMaxRadius);
        const double v = psi(r);
        if (std::isnan(v)) {
            throw NoRootError("radius function is NaN at r = " + std::to_string(r));
        }
        if (v <= 0.0) {
            hi = r;
            psi_hi = v;
            found = true;
            break;
        }
        lo = r;
        psi_lo = v;
        if (r >= kMaxRadius) {
            break;
        }
    }
    if (!found) {
        throw NoRootError("no sign change of the radius function on [0, 1-1e-6]");
    }
    while (hi - lo > kBracketWidth) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double v = psi(mid);
        if (v > 0.0) {
            lo = mid;
            psi_lo = v;
        } else {
            hi = mid;
            psi_hi = v;
        }
    }
    return RootCertificate{0.5 * (lo + hi), lo, hi, psi_lo, psi_hi, scan_step};
}

RootCertificate solve_radius(const RadiusProblem& prob)
{
    validate(prob);
    return solve_first_root([&prob](double r) { return psi_eval(prob, r); });
}

double psi_lacunary(double p, int m, double lambda, int q, int offset, double r)
{
    return contracted_modulus(p, m, r) - 2.0 * lambda * ipow(r, q + offset) / (1.0 - ipow(r, q));
}

double zeta_sum_form(int m, double r)
{
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) {
        sum += ipow(r, k);
    }
    return 1.0 - 3.0 * ipow(r, m) - 2.0 * sum;
}

double eta_sum_form(int m, double r)
{
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) {
        sum += ipow(r, k);
    }
    return 1.0 - 2.0 * ipow(r, m) - sum;
}

double CrosscheckPair::difference() const
{
    return std::abs(classical - psi);
}

std::vector<CrosscheckPair> classical_crosscheck(int m, int p_case)
{
    if (m < 1) {
        throw DomainError("classical_crosscheck: m must be positive");
    }
    if (p_case != 1 && p_case != 2) {
        throw DomainError("classical_crosscheck: p_case must be 1 or 2");
    }
    const double p = static_cast<double>(p_case);
    auto radius = [](Family family, Params pr) {
        return solve_radius(RadiusProblem{family, pr, WeightSequence::power()}).radius;
    };
    Params base;
    base.m = m;
    base.p = p;
    const std::string tag = "(m=" + std::to_string(m) + ")";

    std::vector<CrosscheckPair> out;
    const Family a_family = p_case == 1 ? Family::classical_alpha : Family::classical_beta;
    const Family b_family = p_case == 1 ? Family::classical_zeta : Family::classical_eta;
    const double a_root = radius(a_family, base);
    const double b_root = radius(b_family, base);
    out.push_back({std::string(to_string(a_family)) + " vs psi1" + tag, a_root,
                   radius(Family::psi1, base)});
    out.push_back({std::string(to_string(b_family)) + " vs psi2" + tag, b_root,
                   radius(Family::psi2, base)});
    out.push_back({std::string(to_string(a_family)) + " vs psi5_t5(lambda=1)" + tag, a_root,
                   radius(Family::psi5_t5, base)});
    if (p_case == 1) {
        out.push_back({"classical_zeta vs sum form" + tag, b_root,
                       solve_first_root([m](double r) { return zeta_sum_form(m, r); }).radius});
        out.push_back({"classical_c vs psi3(p=1)", radius(Family::classical_c, base),
                       radius(Family::psi3, base)});
        Params lac = base;
        lac.lambda = 1.0;
        lac.n_lacunary = m;
        out.push_back(
            {"classical_d vs rational form(lambda=1,n=" + std::to_string(m) + ")",
             radius(Family::classical_d, lac),
             solve_first_root([m](double r) { return psi_lacunary(1.0, 1, 1.0, m, 0, r); })
                 .radius});
    } else {
        out.push_back({"classical_eta vs sum form" + tag, b_root,
                       solve_first_root([m](double r) { return eta_sum_form(m, r); }).radius});
    }
    return out;
}

}  // namespace bohr::radii
