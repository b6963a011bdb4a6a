#include "bohrkit/report.hpp"

#include <cmath>

namespace bohr::report {

namespace {

// JSON has no infinities; empty reductions serialize as null.
ordered_json number(double x)
{
    return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

}  // namespace

ordered_json problem_json(const radii::RadiusProblem& prob)
{
    const auto& pr = prob.params;
    return ordered_json{{"family", radii::to_string(prob.family)},
                        {"m", pr.m},
                        {"p", pr.p},
                        {"lambda", pr.lambda},
                        {"q", pr.q},
                        {"n", pr.n_lacunary},
                        {"weights", ordered_json::parse(prob.weights.to_json())}};
}

ordered_json certificate_json(const radii::RootCertificate& cert)
{
    return ordered_json{{"lo", cert.bracket_lo},
                        {"hi", cert.bracket_hi},
                        {"psi_lo", cert.psi_lo},
                        {"psi_hi", cert.psi_hi},
                        {"scan_step", cert.scan_step}};
}

ordered_json witness_json(const verify::Witness& w)
{
    return ordered_json{{"a", w.a}, {"r", w.r}, {"excess", w.excess}, {"k", w.step}};
}

ordered_json verification_json(const verify::VerificationReport& rep, bool timing)
{
    ordered_json out;
    out["problem"] = problem_json(rep.problem);
    out["radius"] = rep.certificate.radius;
    out["bracket"] = certificate_json(rep.certificate);
    out["mode"] = rep.mode == verify::Mode::envelope ? "envelope" : "pointwise";
    out["grid"] = ordered_json{{"a_points", rep.a_grid.size()},
                               {"r_points", rep.r_points},
                               {"r_max", rep.r_max},
                               {"functions", rep.function_count},
                               {"trials", rep.trials}};
    out["max_violation"] = number(rep.max_violation);
    out["worst_r"] = rep.worst_r;
    out["worst_function"] = rep.worst_function;
    out["max_chain_gap"] = number(rep.max_chain_gap);
    out["witness"] = rep.witness ? witness_json(*rep.witness) : ordered_json(nullptr);
    out["verified"] = rep.verified;
    out["elapsed"] = timing && rep.elapsed_seconds ? ordered_json(*rep.elapsed_seconds)
                                                    : ordered_json(nullptr);
    return out;
}

ordered_json coeff_lemma_json(const verify::CoeffLemmaReport& rep)
{
    return ordered_json{{"max_slack", number(rep.max_slack)},
                        {"worst_function", rep.worst_function},
                        {"worst_r", rep.worst_r},
                        {"evaluations", rep.evaluations},
                        {"passed", rep.passed}};
}

ordered_json lemma_d_json(const verify::LemmaDReport& rep)
{
    ordered_json out{{"instance", verify::to_string(rep.instance)},
                     {"m", rep.params.m},
                     {"p", rep.params.p},
                     {"lambda", rep.params.lambda},
                     {"q", rep.params.q},
                     {"radius", rep.radius},
                     {"r_points", rep.r_points},
                     {"a_points", rep.a_points},
                     {"max_d", number(rep.max_d)},
                     {"max_abs_d_at_one", rep.max_abs_d_at_one}};
    out["min_increment"] =
        rep.monotonicity_checked ? number(rep.min_increment) : ordered_json(nullptr);
    out["min_aux_slack"] = rep.aux_checked ? number(rep.min_aux_slack) : ordered_json(nullptr);
    out["passed"] = rep.passed;
    return out;
}

ordered_json schwarz_pick_json(const verify::SchwarzPickReport& rep)
{
    return ordered_json{{"max_slack", number(rep.max_slack)},
                        {"max_derivative_slack", number(rep.max_derivative_slack)},
                        {"moebius_max_gap", rep.moebius_max_gap},
                        {"strict_found", rep.strict_found},
                        {"degenerate_ok", rep.degenerate_ok},
                        {"pairs", rep.pairs},
                        {"passed", rep.passed}};
}

}  // namespace bohr::report
