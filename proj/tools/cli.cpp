#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohrkit/errors.hpp"
#include "bohrkit/report.hpp"
#include "bohrkit/verify.hpp"

namespace bohr::cli {

namespace {

using nlohmann::ordered_json;
using radii::Family;
using radii::RadiusProblem;
using weights::WeightSequence;

enum class LogLevel { error, info, debug };

class Log {
public:
    explicit Log(std::ostream& err) : err_(err)
    {
        const char* env = std::getenv("BOHRKIT_LOG");
        const std::string v = env ? env : "";
        if (v == "info") {
            level_ = LogLevel::info;
        } else if (v == "debug") {
            level_ = LogLevel::debug;
        }
    }

    void error(const std::string& msg) { err_ << "error: " << msg << '\n'; }
    void info(const std::string& msg)
    {
        if (level_ != LogLevel::error) {
            err_ << "info: " << msg << '\n';
        }
    }
    void debug(const std::string& msg)
    {
        if (level_ == LogLevel::debug) {
            err_ << "debug: " << msg << '\n';
        }
    }

private:
    std::ostream& err_;
    LogLevel level_ = LogLevel::error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RawConfig {
    std::string family = "psi1";
    std::string m = "1";
    std::string p = "1";
    std::string lambda = "1";
    std::string q = "2";
    std::string n = "1";
    std::string weights = "power";
    std::string format;
    std::string output;
    std::uint64_t seed = 42;
    double delta = 0.02;
    std::size_t trials = 1000;
    std::size_t r_points = 256;
    std::size_t blaschke = 100;
    double margin = 0.0;
    std::optional<double> tolerance;
    bool timing = false;
};

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

int to_int(double x, const char* what)
{
    if (x != std::floor(x) || std::abs(x) > 1e6) {
        throw UsageError(std::string(what) + " must be an integer");
    }
    return static_cast<int>(x);
}

std::vector<Family> parse_families(const std::string& text)
{
    if (text == "all") {
        return {std::begin(radii::kAllFamilies), std::end(radii::kAllFamilies)};
    }
    std::vector<Family> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto f = radii::parse_family(item);
        if (!f) {
            throw UsageError("unknown family '" + item + "'");
        }
        out.push_back(*f);
    }
    if (out.empty()) {
        throw UsageError("no family given");
    }
    std::sort(out.begin(), out.end(),
              [](Family a, Family b) { return radii::to_string(a) < radii::to_string(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> axis(const std::string& text, const char* what)
{
    try {
        return parse_range(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

// Cartesian product of the axes, sorted by (family, m, p, lambda, q, n).
// psi5_t6 keeps only tuples with m < q. Parameters that fail validation are
// a usage error, not a row.
std::vector<RadiusProblem> expand(const RawConfig& cfg, const WeightSequence& w)
{
    const auto families = parse_families(cfg.family);
    const auto ms = axis(cfg.m, "--m");
    const auto ps = axis(cfg.p, "--p");
    const auto lambdas = axis(cfg.lambda, "--lambda");
    const auto qs = axis(cfg.q, "--q");
    const auto ns = axis(cfg.n, "--n");
    std::vector<RadiusProblem> out;
    for (Family f : families) {
        for (double m : ms) {
            for (double p : ps) {
                for (double lam : lambdas) {
                    for (double q : qs) {
                        for (double n : ns) {
                            RadiusProblem prob;
                            prob.family = f;
                            prob.params.m = to_int(m, "--m");
                            prob.params.p = p;
                            prob.params.lambda = lam;
                            prob.params.q = to_int(q, "--q");
                            prob.params.n_lacunary = to_int(n, "--n");
                            prob.weights = radii::uses_weights(f) ? w : WeightSequence::power();
                            if (f == Family::psi5_t6 && prob.params.m >= prob.params.q) {
                                continue;
                            }
                            try {
                                radii::validate(prob);
                            } catch (const DomainError& e) {
                                throw UsageError(e.what());
                            }
                            out.push_back(prob);
                        }
                    }
                }
            }
        }
    }
    if (out.empty()) {
        throw UsageError("the parameter ranges leave no admissible tuple");
    }
    return out;
}

std::string tuple_text(const RadiusProblem& prob)
{
    const auto& pr = prob.params;
    return std::string(radii::to_string(prob.family)) + " m=" + std::to_string(pr.m) +
           " p=" + fmt(pr.p) + " lambda=" + fmt(pr.lambda) + " q=" + std::to_string(pr.q) +
           " n=" + std::to_string(pr.n_lacunary);
}

std::string csv_key(const RadiusProblem& prob)
{
    const auto& pr = prob.params;
    return std::string(radii::to_string(prob.family)) + ',' + std::to_string(pr.m) + ',' +
           fmt(pr.p) + ',' + fmt(pr.lambda) + ',' + std::to_string(pr.q);
}

WeightSequence load_weights(const std::string& spec)
{
    if (spec == "power") {
        return WeightSequence::power();
    }
    try {
        return WeightSequence::load(spec);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--weights: ") + e.what());
    }
}

struct Result {
    int code = kOk;
    std::string body;
};

RadiusProblem single(const std::vector<RadiusProblem>& probs, const char* command)
{
    if (probs.size() != 1) {
        throw UsageError(std::string(command) + " takes a single parameter tuple");
    }
    return probs.front();
}

Result cmd_radius(const RawConfig& cfg, const WeightSequence& w)
{
    const RadiusProblem prob = single(expand(cfg, w), "radius");
    const auto cert = radii::solve_radius(prob);
    Result res;
    if (cfg.format == "json") {
        ordered_json doc = report::problem_json(prob);
        doc["radius"] = cert.radius;
        doc["bracket_lo"] = cert.bracket_lo;
        doc["bracket_hi"] = cert.bracket_hi;
        res.body = doc.dump(2) + '\n';
    } else {
        res.body = "family,m,p,lambda,q,radius,bracket_lo,bracket_hi\n" + csv_key(prob) + ',' +
                   fmt(cert.radius) + ',' + fmt(cert.bracket_lo) + ',' + fmt(cert.bracket_hi) +
                   '\n';
    }
    return res;
}

Result cmd_table(const RawConfig& cfg, const WeightSequence& w, Log& log)
{
    const auto probs = expand(cfg, w);
    struct Row {
        RadiusProblem prob;
        std::optional<radii::RootCertificate> cert;
        std::string status;
    };
    std::vector<Row> rows;
    std::size_t failures = 0;
    bool accuracy = false;
    for (const auto& prob : probs) {
        Row row{prob, std::nullopt, "ok"};
        try {
            row.cert = radii::solve_radius(prob);
        } catch (const NoRootError& e) {
            row.status = "no_root";
            log.info(tuple_text(prob) + ": " + e.what());
        } catch (const AccuracyError& e) {
            row.status = "accuracy_error";
            accuracy = true;
            log.info(tuple_text(prob) + ": " + e.what());
        }
        if (!row.cert) {
            ++failures;
        }
        rows.push_back(std::move(row));
    }
    Result res;
    if (cfg.format == "json") {
        ordered_json doc = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json item = report::problem_json(row.prob);
            item["radius"] = row.cert ? ordered_json(row.cert->radius) : ordered_json(nullptr);
            item["bracket_width"] = row.cert
                                        ? ordered_json(row.cert->bracket_hi - row.cert->bracket_lo)
                                        : ordered_json(nullptr);
            item["status"] = row.status;
            doc.push_back(std::move(item));
        }
        res.body = doc.dump(2) + '\n';
    } else {
        res.body = "family,m,p,lambda,q,radius,bracket_width,status\n";
        for (const auto& row : rows) {
            res.body += csv_key(row.prob) + ',';
            if (row.cert) {
                res.body += fmt(row.cert->radius) + ',' +
                            fmt(row.cert->bracket_hi - row.cert->bracket_lo);
            } else {
                res.body += ',';
            }
            res.body += ',' + row.status + '\n';
        }
    }
    if (failures == rows.size()) {
        res.code = accuracy ? kAccuracy : kNoRoot;
    }
    return res;
}

Result cmd_verify(const RawConfig& cfg, const WeightSequence& w, std::ostream& err, Log& log)
{
    const auto probs = expand(cfg, w);
    const double tol = cfg.tolerance.value_or(verify::kValidityTolerance);
    ordered_json reports = ordered_json::array();
    std::string csv = "family,m,p,lambda,q,radius,max_violation,verified\n";
    bool all = true;
    // The function set depends only on whether the family needs a_0 = 0.
    std::optional<std::vector<series::BoundedFunction>> sets[2];
    for (const auto& prob : probs) {
        log.debug("verifying " + tuple_text(prob));
        auto& set = sets[verify::requires_schwarz(prob.family) ? 1 : 0];
        if (!set) {
            set = verify::default_test_functions(prob, cfg.blaschke, cfg.seed);
        }
        auto rep = verify::verify_below_radius(prob, *set, cfg.r_points, cfg.margin);
        rep.verified = rep.max_violation <= tol;
        if (!rep.verified) {
            all = false;
            err << "violation: " << tuple_text(prob) << " r=" << fmt(rep.worst_r) << " "
                << rep.worst_function << " excess=" << fmt(rep.max_violation) << '\n';
        }
        reports.push_back(report::verification_json(rep, cfg.timing));
        csv += csv_key(prob) + ',' + fmt(rep.certificate.radius) + ',' + fmt(rep.max_violation) +
               ',' + (rep.verified ? "true" : "false") + '\n';
    }
    Result res;
    if (cfg.format == "csv") {
        res.body = csv;
    } else if (reports.size() == 1) {
        res.body = reports.front().dump(2) + '\n';
    } else {
        res.body = ordered_json{{"reports", reports}, {"passed", all}}.dump(2) + '\n';
    }
    res.code = all ? kOk : kVerificationFailure;
    return res;
}

Result cmd_sharpness(const RawConfig& cfg, const WeightSequence& w, std::ostream& err)
{
    const auto probs = expand(cfg, w);
    ordered_json items = ordered_json::array();
    bool all = true;
    for (const auto& prob : probs) {
        const auto cert = radii::solve_radius(prob);
        ordered_json item;
        item["problem"] = report::problem_json(prob);
        item["radius"] = cert.radius;
        item["bracket"] = report::certificate_json(cert);
        item["delta"] = cfg.delta;
        try {
            item["witness"] = report::witness_json(verify::sharpness_witness(prob, cfg.delta));
            item["status"] = "witness";
        } catch (const NotFalsifiableError& e) {
            item["witness"] = nullptr;
            item["status"] = "not_falsifiable";
            all = false;
            err << "not falsifiable: " << tuple_text(prob) << ": " << e.what() << '\n';
        } catch (const NoWitnessError& e) {
            item["witness"] = nullptr;
            item["status"] = "no_witness";
            all = false;
            err << "no witness: " << tuple_text(prob) << ": " << e.what() << '\n';
        }
        items.push_back(std::move(item));
    }
    Result res;
    res.body = (items.size() == 1 ? items.front() : ordered_json{{"results", items}, {"passed", all}})
                   .dump(2) +
               '\n';
    res.code = all ? kOk : kVerificationFailure;
    return res;
}

Result cmd_check_lemmas(const RawConfig& cfg, const WeightSequence& w, std::ostream& err)
{
    if (cfg.trials == 0) {
        throw UsageError("--trials must be positive");
    }
    // the D(a) check uses the first tuple of the ranges; m < q is required for the
    // lacunary instance.
    const auto probs = expand(cfg, w);
    verify::Params pr = probs.front().params;
    if (pr.q <= pr.m) {
        pr.q = pr.m + 1;
    }
    const std::size_t r_grid = std::max<std::size_t>(2, std::min<std::size_t>(cfg.r_points, 64));

    const auto coeff = verify::check_lemma_coeff(cfg.trials, cfg.seed, w);
    const auto pick = verify::check_schwarz_pick(cfg.trials, cfg.seed);
    ordered_json lemma_d = ordered_json::array();
    bool d_ok = true;
    for (auto inst : {verify::LemmaInstance::tail_sum, verify::LemmaInstance::lambda_geometric,
                      verify::LemmaInstance::lambda_lacunary}) {
        const auto rep = verify::check_lemma_D(inst, pr, r_grid, w);
        d_ok = d_ok && rep.passed;
        if (!rep.passed) {
            err << "D(a) check failed: " << verify::to_string(inst) << " m=" << pr.m
                << " p=" << fmt(pr.p) << '\n';
        }
        lemma_d.push_back(report::lemma_d_json(rep));
    }
    if (!coeff.passed) {
        err << "coefficient lemma failed: " << coeff.worst_function << " r=" << fmt(coeff.worst_r)
            << " slack=" << fmt(coeff.max_slack) << '\n';
    }
    if (!pick.passed) {
        err << "Schwarz-Pick check failed\n";
    }
    const bool passed = coeff.passed && pick.passed && d_ok;
    ordered_json doc{{"trials", cfg.trials},
                     {"seed", cfg.seed},
                     {"weights", ordered_json::parse(w.to_json())},
                     {"coefficient_lemma", report::coeff_lemma_json(coeff)},
                     {"schwarz_pick", report::schwarz_pick_json(pick)},
                     {"lemma_d", lemma_d},
                     {"passed", passed}};
    return Result{passed ? kOk : kVerificationFailure, doc.dump(2) + '\n'};
}

Result cmd_identity_check(const RawConfig& cfg, std::ostream& err)
{
    const double tol = cfg.tolerance.value_or(1e-10);
    bool passed = true;

    ordered_json pairs = ordered_json::array();
    for (int p_case : {1, 2}) {
        for (int m = 1; m <= 6; ++m) {
            for (const auto& pair : radii::classical_crosscheck(m, p_case)) {
                const bool ok = pair.difference() <= tol;
                if (!ok) {
                    passed = false;
                    err << "mismatch: " << pair.label << " " << fmt(pair.classical) << " vs "
                        << fmt(pair.psi) << '\n';
                }
                pairs.push_back(ordered_json{{"label", pair.label},
                                             {"classical", pair.classical},
                                             {"psi", pair.psi},
                                             {"difference", pair.difference()},
                                             {"ok", ok}});
            }
        }
    }

    // (1-a^2) r/(1-ar) + (1-a^2)^2 r^2 / ((1+a)(1-r)(1-ar)) = (1-a^2) r/(1-r)
    double identity_gap = 0.0;
    constexpr int grid = 50;
    for (int i = 0; i < grid; ++i) {
        const double a = static_cast<double>(i) / grid;
        for (int j = 0; j < grid; ++j) {
            const double r = 0.99 * static_cast<double>(j) / (grid - 1);
            const double b = (1.0 - a) * (1.0 + a);
            const double lhs =
                b * r / (1.0 - a * r) + b * b * r * r / ((1.0 + a) * (1.0 - r) * (1.0 - a * r));
            identity_gap = std::max(identity_gap, std::abs(lhs - b * r / (1.0 - r)));
        }
    }
    if (identity_gap > tol) {
        passed = false;
        err << "geometric identity gap " << fmt(identity_gap) << '\n';
    }

    // a_refinement under power weights against (1/(1+|a_0|) + r/(1-r)) ||f_0||_r^2
    double refinement_gap = 0.0;
    for (double a : verify::moebius_a_grid()) {
        for (const auto& f : {series::moebius_plus(a), series::moebius_minus(a)}) {
            for (int j = 0; j < grid; ++j) {
                const double r = 0.9 * static_cast<double>(j) / (grid - 1);
                const double lhs = functionals::a_refinement(f, WeightSequence::power(), r);
                const double rhs = (1.0 / (1.0 + f.abs_a0()) + r / (1.0 - r)) *
                                   functionals::norm_squared(f, r);
                refinement_gap = std::max(refinement_gap, std::abs(lhs - rhs));
            }
        }
    }
    if (refinement_gap > tol) {
        passed = false;
        err << "refinement closed form gap " << fmt(refinement_gap) << '\n';
    }

    ordered_json doc{{"tolerance", tol},
                     {"crosscheck", pairs},
                     {"geometric_identity_gap", identity_gap},
                     {"refinement_closed_form_gap", refinement_gap},
                     {"passed", passed}};
    return Result{passed ? kOk : kVerificationFailure, doc.dump(2) + '\n'};
}

void add_common(CLI::App* sub, RawConfig& cfg)
{
    sub->add_option("--family", cfg.family, "family name, comma list or 'all'");
    sub->add_option("--m", cfg.m, "order of the inner map (range)");
    sub->add_option("--p", cfg.p, "exponent in (0, 2] (range)");
    sub->add_option("--lambda", cfg.lambda, "lambda > 0 (range)");
    sub->add_option("--q", cfg.q, "lacunary period q >= 2 (range)");
    sub->add_option("--n", cfg.n, "lacunary period of the classical family (range)");
    sub->add_option("--weights", cfg.weights, "'power' or path to a scaled_power JSON file");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output, "output file (default standard output)");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tolerance", cfg.tolerance, "override the pass tolerance");
    sub->add_flag("--timing", cfg.timing, "record elapsed seconds in reports");
}

}  // namespace

std::vector<double> parse_range(const std::string& text)
{
    auto number = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + s + "'");
        }
        if (used != s.size() || !std::isfinite(v)) {
            throw std::invalid_argument("not a number: '" + s + "'");
        }
        return v;
    };
    std::vector<double> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const std::string lo_text = text.substr(0, dots);
        std::string hi_text = text.substr(dots + 2);
        double step = 1.0;
        if (const auto colon = hi_text.find(':'); colon != std::string::npos) {
            step = number(hi_text.substr(colon + 1));
            hi_text = hi_text.substr(0, colon);
        }
        const double lo = number(lo_text);
        const double hi = number(hi_text);
        if (!(step > 0.0)) {
            throw std::invalid_argument("step must be positive");
        }
        const double count = std::floor((hi - lo) / step + 1e-9);
        if (count > 1e6) {
            throw std::invalid_argument("range too long");
        }
        for (double k = 0; k <= count; ++k) {
            out.push_back(lo + k * step);
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            out.push_back(number(item));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Log log(err);
    CLI::App app{"Certified Bohr-type radii"};
    app.require_subcommand(1);
    RawConfig cfg;

    auto* radius = app.add_subcommand("radius", "minimal positive root of a radius function");
    auto* table = app.add_subcommand("table", "radii over a parameter sweep");
    auto* verify_cmd = app.add_subcommand("verify", "check the inequality below the radius");
    auto* sharp = app.add_subcommand("sharpness", "find a witness just above the radius");
    auto* lemmas = app.add_subcommand("check-lemmas", "coefficient, D(a) and Schwarz-Pick suites");
    auto* ident = app.add_subcommand("identity-check", "classical cross-checks and identities");
    for (auto* sub : {radius, table, verify_cmd, sharp, lemmas, ident}) {
        add_common(sub, cfg);
    }
    verify_cmd->add_option("--r-points", cfg.r_points, "radii sampled in [0, R - margin]");
    verify_cmd->add_option("--margin", cfg.margin, "distance kept from the radius");
    verify_cmd->add_option("--blaschke", cfg.blaschke, "number of random Blaschke products");
    sharp->add_option("--delta", cfg.delta, "search offset above the radius, in (0, 0.05]");
    lemmas->add_option("--trials", cfg.trials, "random functions per suite");
    lemmas->add_option("--r-points", cfg.r_points, "radii in the D(a) grid (at most 64 used)");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        log.error(e.what());
        return kUsage;
    }

    try {
        const WeightSequence w = load_weights(cfg.weights);
        log.debug("weights " + w.describe());
        Result res;
        if (*radius) {
            res = cmd_radius(cfg, w);
        } else if (*table) {
            res = cmd_table(cfg, w, log);
        } else if (*verify_cmd) {
            res = cmd_verify(cfg, w, err, log);
        } else if (*sharp) {
            res = cmd_sharpness(cfg, w, err);
        } else if (*lemmas) {
            res = cmd_check_lemmas(cfg, w, err);
        } else {
            res = cmd_identity_check(cfg, err);
        }
        if (cfg.output.empty()) {
            out << res.body;
        } else {
            std::ofstream file(cfg.output, std::ios::binary);
            if (!file) {
                throw UsageError("cannot write " + cfg.output);
            }
            file << res.body;
        }
        log.info("exit " + std::to_string(res.code));
        return res.code;
    } catch (const UsageError& e) {
        log.error(e.what());
        return kUsage;
    } catch (const DomainError& e) {
        log.error(e.what());
        return kUsage;
    } catch (const PreconditionError& e) {
        log.error(e.what());
        return kUsage;
    } catch (const NoRootError& e) {
        log.error(e.what());
        return kNoRoot;
    } catch (const AccuracyError& e) {
        log.error(e.what());
        return kAccuracy;
    } catch (const std::exception& e) {
        log.error(e.what());
        return kVerificationFailure;
    }
}

}  // namespace bohr::cli
