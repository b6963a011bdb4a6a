#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bohr::weights {

inline constexpr std::size_t kMaxCoefficients = 4096;

/// Weight sequence phi_n(r) = c_n r^n with nonnegative c_n.
///
/// `power` is c_n = 1. `scaled_power` stores an explicit list c_0..c_{L-1}
/// (L <= 4096) and a declared geometric dominator c_n <= C rho^n which is
/// checked on construction and used for every index n >= L. The dominator is
/// what makes tails certifiable: all tails returned by this module are
/// overestimates, so radius functions that subtract them can only shrink.
class WeightSequence {
public:
    enum class Kind { power, scaled_power };

    static WeightSequence power();
    static WeightSequence scaled_power(std::vector<double> coeffs, double rho, double bound);

    /// {"kind":"power"} or {"kind":"scaled_power","coeffs":[...],"rho":..,"C":..}
    static WeightSequence from_json(std::string_view text);
    static WeightSequence load(const std::filesystem::path& path);

    Kind kind() const { return kind_; }
    std::span<const double> coefficients() const { return coeffs_; }
    double rho() const { return rho_; }
    double dominator_constant() const { return bound_; }

    /// c_n, including the dominator extension past the stored list.
    double coefficient(std::size_t n) const;

    std::string describe() const;
    std::string to_json() const;

private:
    WeightSequence(Kind kind, std::vector<double> coeffs, double rho, double bound);

    Kind kind_;
    std::vector<double> coeffs_;
    double rho_;
    double bound_;
};

double weight_at(const WeightSequence& w, std::size_t n, double r);

/// Phi_N(r) = sum_{n >= N} phi_n(r), never an underestimate.
double tail(const WeightSequence& w, std::size_t first, double r);

/// sum_{n >= N} (n+1) phi_n(r), never an underestimate.
double weighted_tail(const WeightSequence& w, std::size_t first, double r);

/// Geometric bound C x^N ((N+1) - N x) / (1-x)^2 with x = rho r. Dominates both
/// tail and weighted_tail from index N.
double dominating_weighted_tail(const WeightSequence& w, std::size_t first, double r);

/// A weight sequence frozen at one radius: phi_n, Phi_n and the (n+1)-weighted
/// tails tabulated up to a depth past which every remaining weighted tail is
/// below 1e-20 (or the depth cap is hit). Used to evaluate many functions at
/// the same r without recomputing tails.
class Profile {
public:
    static constexpr std::size_t kMaxDepth = std::size_t{1} << 20;

    Profile(const WeightSequence& w, double r);

    double radius() const { return r_; }
    std::size_t depth() const { return phi_.size() - 1; }

    double phi(std::size_t n) const;
    double tail(std::size_t n) const;
    double weighted_tail(std::size_t n) const;

private:
    WeightSequence w_;
    double r_;
    std::vector<double> phi_;
    std::vector<double> tail_;
    std::vector<double> wtail_;
};

}  // namespace bohr::weights
