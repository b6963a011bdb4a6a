#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bohr::series {

using Complex = std::complex<double>;

inline constexpr std::size_t kMinMoebiusOrder = 64;
inline constexpr std::size_t kMaxOrder = 200000;
inline constexpr std::size_t kBlaschkeOrder = 4096;
inline constexpr int kMaxBlaschkeDegree = 16;
inline constexpr double kBlaschkeZeroRadius = 0.9;

struct MoebiusPlus {
    double a;
};
struct MoebiusMinus {
    double a;
};
struct SchwarzMoebius {
    double a;
};
struct Monomial {
    int m;
};
struct Blaschke {
    std::vector<Complex> zeros;
    Complex rotation;
};
struct Custom {};

using FamilyTag = std::variant<MoebiusPlus, MoebiusMinus, SchwarzMoebius, Monomial, Blaschke, Custom>;

std::string describe(const FamilyTag& tag);

/// Truncated Taylor expansion a_0 + a_1 z + ... + a_T z^T of an analytic
/// self-map of the unit disk, together with a bound M such that |a_n| <= M
/// for every n > T.
///
/// Construction validates membership in the unit ball (|a_n| <= 1) and the
/// Schwarz-Pick coefficient bound |a_n| <= 1 - |a_0|^2 for n >= 1, both with
/// 1e-12 slack. Values are immutable.
class BoundedFunction {
public:
    static BoundedFunction from_coefficients(std::vector<Complex> coeffs, double tail_bound,
                                             FamilyTag tag = Custom{});

    std::span<const Complex> coeffs() const { return coeffs_; }
    const Complex& operator[](std::size_t n) const { return coeffs_[n]; }
    std::size_t order() const { return coeffs_.size() - 1; }
    double tail_bound() const { return tail_bound_; }
    const FamilyTag& family() const { return family_; }
    double abs_a0() const { return std::abs(coeffs_.front()); }

    double abs_coeff(std::size_t n) const { return std::abs(coeffs_[n]); }

private:
    BoundedFunction(std::vector<Complex> coeffs, double tail_bound, FamilyTag tag);

    std::vector<Complex> coeffs_;
    double tail_bound_;
    FamilyTag family_;
};

/// omega(z) = z^m, the extremal member of B_m.
class InnerMap {
public:
    explicit InnerMap(int m);
    int exponent() const { return m_; }
    Complex operator()(Complex z) const;

private:
    int m_;
};

/// Truncation order used for the Moebius families at parameter a.
std::size_t moebius_order(double a);

/// (z + a) / (1 + a z)
BoundedFunction moebius_plus(double a);
/// (a - z) / (1 - a z)
BoundedFunction moebius_minus(double a);
/// z (a - z) / (1 - a z)
BoundedFunction schwarz_moebius(double a);
/// z^m
BoundedFunction monomial(int m);

/// rotation * prod_k (z - zeros_k) / (1 - conj(zeros_k) z), truncated at `order`.
BoundedFunction blaschke_product(std::span<const Complex> zeros, Complex rotation,
                                 std::size_t order = kBlaschkeOrder);

/// Blaschke product with `degree` zeros drawn uniformly from |z| <= 0.9 and a
/// uniform rotation. Same seed, same function.
BoundedFunction random_blaschke(int degree, std::uint64_t seed);

/// z * f(z). Keeps membership in B and produces a Schwarz function.
BoundedFunction times_z(const BoundedFunction& f);

/// f(z^m).
BoundedFunction compose_inner(const BoundedFunction& f, InnerMap w);

/// Value of the truncated series at z. Requires |z| <= 1 - 1e-6.
///
/// Stored terms whose total contribution is certified below 1e-18 are
/// skipped, so the absolute error is at most eval_error_bound(f, |z|).
Complex eval(const BoundedFunction& f, Complex z);

/// f'(z) by termwise differentiation, same domain and skipping rule as eval.
Complex eval_derivative(const BoundedFunction& f, Complex z);

/// tail_bound * |z|^(T+1) / (1 - |z|) plus the skipped-term allowance.
double eval_error_bound(const BoundedFunction& f, double abs_z);

}  // namespace bohr::series
