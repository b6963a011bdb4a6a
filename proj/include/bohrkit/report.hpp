#pragma once

#include <json.hpp>

#include "bohrkit/radii.hpp"
#include "bohrkit/verify.hpp"

namespace bohr::report {

using nlohmann::ordered_json;

ordered_json problem_json(const radii::RadiusProblem& prob);
ordered_json certificate_json(const radii::RootCertificate& cert);
ordered_json witness_json(const verify::Witness& w);

/// problem, radius, bracket, grid sizes, max_violation, witness, verified,
/// elapsed. elapsed is null unless `timing` is set, so that reports of
/// identical runs are byte-identical.
ordered_json verification_json(const verify::VerificationReport& rep, bool timing);

ordered_json coeff_lemma_json(const verify::CoeffLemmaReport& rep);
ordered_json lemma_d_json(const verify::LemmaDReport& rep);
ordered_json schwarz_pick_json(const verify::SchwarzPickReport& rep);

}  // namespace bohr::report
