#include "fuzzsum/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "fuzzsum/report_io.hpp"
#include "fuzzsum/spec_parse.hpp"
#include "fuzzsum/tauberian.hpp"

namespace fuzzsum::cli {

namespace {

std::string theta_label(double theta) {
    std::ostringstream os;
    os << theta;
    return os.str();
}

struct ParsedRun {
    FuzzyFunctionSequence seq;
    BetaGammaScheme scheme;
    WeightSequence weights;
    XGridPolicy grid;
    std::vector<Mode> modes;
    bool tauberian = false;
    Index horizon = 0;
};

ParsedRun parse_config(const RunConfig& cfg, std::ostream& err) {
    if (cfg.family.empty()) {
        throw SpecError("no family given");
    }
    for (double theta : cfg.thetas) {
        if (!(theta > 0.0 && theta <= 1.0)) {
            throw SpecError("theta " + theta_label(theta) + " is outside (0, 1]");
        }
    }
    if (cfg.thetas.empty()) {
        throw SpecError("empty theta list");
    }
    if (!(cfg.eps > 0.0)) {
        throw SpecError("eps must be positive");
    }
    ParsedRun p{parse_family(cfg.family), parse_scheme(cfg.scheme), parse_weights(cfg.weights),
                parse_grid(cfg.grid), {}, false, 0};
    p.grid.validate(p.seq.domain());
    for (const auto& m : cfg.modes) {
        if (m == "tauberian") {
            p.tauberian = true;
        } else {
            const Mode mode = parse_mode(m);
            if (std::find(p.modes.begin(), p.modes.end(), mode) == p.modes.end()) {
                p.modes.push_back(mode);
            }
        }
    }
    if (p.modes.empty() && !p.tauberian) {
        throw SpecError("empty mode set");
    }
    if (!p.seq.has_limit()) {
        throw SpecError("family '" + cfg.family + "' has no limit to measure against");
    }
    const Index requested = cfg.horizon.value_or(default_horizon_for(cfg.family));
    if (requested < kMinHorizon) {
        throw SpecError("horizon " + std::to_string(requested) + " is below " +
                        std::to_string(kMinHorizon));
    }
    p.horizon = feasible_horizon(p.seq, p.scheme, requested);
    if (p.horizon != requested) {
        err << "warning: horizon " << requested << " clamped to " << p.horizon << " for scheme "
            << p.scheme.label() << "\n";
    }
    if (p.horizon == 0) {
        throw SpecError("scheme " + p.scheme.label() + " has no usable window");
    }
    return p;
}

std::vector<ConvergenceReport> classify_thetas(const ParsedRun& p, const std::vector<double>& thetas,
                                               double eps, const VerdictPolicy& policy) {
    std::vector<ConvergenceReport> reports;
    for (double theta : thetas) {
        ClassifyParams cp;
        cp.mode = ModeParams{theta, eps, p.scheme, p.weights};
        cp.grid = p.grid;
        cp.horizon = p.horizon;
        cp.modes = p.modes;
        cp.policy = policy;
        reports.push_back(classify(p.seq, p.seq.limit_fn(), cp));
    }
    return reports;
}

// ---------------------------------------------------------------------------
// Canned configurations

struct CannedCheck {
    std::string family;  ///< empty: the row's family
    Mode mode;
    double theta;
    Membership expected;
};

struct CannedRow {
    std::string example;
    std::vector<std::string> families;
    std::string scheme;
    std::string weights;
    double eps;
    Index horizon;
    std::vector<CannedCheck> checks;
};

std::vector<CannedRow> canned_rows() {
    constexpr Index p12 = Index{1} << 12;
    return {
        {"ex3.1", {"ex3.1:M=1"}, "classical", "const:1", 0.1, Index{1} << 20,
         {{"", Mode::abs, 0.75, Membership::member}, {"", Mode::abs, 0.25, Membership::non_member}}},
        {"ex3.2", {"ex3.2"}, "pow:2", "recip5", 0.1, p12,
         {{"", Mode::sp, 1.0, Membership::member}, {"", Mode::abs, 0.25, Membership::non_member}}},
        // Each weighted deviation tends to 0, so only a vanishing eps keeps every cube counted.
        {"ex3.3", {"ex3.3"}, "pow:2", "harmonicplus", 1e-12, Index{1} << 18,
         {{"", Mode::abs, 1.0, Membership::member}, {"", Mode::sp, 0.2, Membership::non_member}}},
        {"ex4.1", {"ex4.1"}, "classical", "const:1", 0.1, p12,
         {{"", Mode::ord, 1.0, Membership::member}, {"", Mode::abs, 1.0, Membership::non_member}}},
        {"remark3", {"remark3:n=4,M=1", "remark3:n=16,M=1", "remark3:n=64,M=1", "ex3.1:M=1"},
         "classical", "const:1", 0.1, Index{1} << 32,
         {{"remark3:n=4,M=1", Mode::abs, 0.25, Membership::member},
          {"remark3:n=16,M=1", Mode::abs, 0.25, Membership::member},
          {"remark3:n=64,M=1", Mode::abs, 0.25, Membership::member},
          {"ex3.1:M=1", Mode::abs, 0.25, Membership::non_member}}},
    };
}

Membership observe(const CannedRow& row, const CannedCheck& check, Index horizon) {
    const std::string family = check.family.empty() ? row.families.front() : check.family;
    RunConfig cfg;
    cfg.family = family;
    cfg.scheme = row.scheme;
    cfg.weights = row.weights;
    cfg.eps = row.eps;
    std::ostringstream sink;
    ParsedRun p = parse_config(cfg, sink);
    p.horizon = feasible_horizon(p.seq, p.scheme, horizon);
    p.modes = {check.mode};
    const auto reports = classify_thetas(p, {check.theta}, row.eps, cfg.policy);
    return reports.front().membership(check.mode);
}

bool opposite(Membership a, Membership b) {
    return (a == Membership::member && b == Membership::non_member) ||
           (a == Membership::non_member && b == Membership::member);
}

}  // namespace

std::string_view status_name(RowStatus s) {
    switch (s) {
        case RowStatus::agree:
            return "agree";
        case RowStatus::inconclusive:
            return "inconclusive";
        case RowStatus::contradicts:
            return "contradicts";
    }
    return "?";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ParsedRun p = parse_config(cfg, err);

    std::vector<ConvergenceReport> reports;
    if (!p.modes.empty()) {
        reports = classify_thetas(p, cfg.thetas, cfg.eps, cfg.policy);
    }
    std::optional<TauberianReport> tauberian;
    if (p.tauberian) {
        TauberianOptions options;
        options.policy = cfg.policy;
        tauberian = tauberian_experiment(p.seq, p.seq.limit_fn(), p.scheme, p.weights, p.grid,
                                         p.horizon, options);
    }

    const std::filesystem::path dir(cfg.out_dir);
    std::ostringstream csv;
    write_traces_csv(csv, reports);
    write_text_file(dir / cfg.csv_name, csv.str());
    write_text_file(dir / cfg.json_name, report_json(reports, tauberian ? &*tauberian : nullptr));

    out << "family " << p.seq.label() << ", scheme " << p.scheme.label() << ", weights "
        << p.weights.label() << ", horizon " << p.horizon << "\n";
    for (const auto& r : reports) {
        for (Mode m : p.modes) {
            out << "  " << std::left << std::setw(4) << mode_name(m) << " theta=" << std::setw(6)
                << theta_label(r.theta) << membership_name(r.membership(m)) << "\n";
        }
    }
    if (tauberian) {
        out << "  tauberian hypotheses " << (tauberian->hypotheses_hold() ? "hold" : "fail")
            << ", conclusion " << (tauberian->conclusion_holds ? "holds" : "fails")
            << ", identity residual " << tauberian->identity_max_residual << "\n";
    }
    out << "wrote " << (dir / cfg.csv_name).string() << " and " << (dir / cfg.json_name).string()
        << "\n";
    return kExitOk;
}

std::vector<std::string> reproducible_examples() {
    std::vector<std::string> ids;
    for (const auto& row : canned_rows()) {
        ids.push_back(row.example);
    }
    return ids;
}

std::vector<ReproduceRow> reproduce_rows(const ReproduceOptions& options) {
    auto rows = canned_rows();
    if (options.only) {
        const auto it = std::find_if(rows.begin(), rows.end(),
                                     [&](const CannedRow& r) { return r.example == *options.only; });
        if (it == rows.end()) {
            throw SpecError("unknown example '" + *options.only + "'");
        }
        rows = {*it};
    }
    if (options.horizon && *options.horizon < kMinHorizon) {
        throw SpecError("horizon " + std::to_string(*options.horizon) + " is below " +
                        std::to_string(kMinHorizon));
    }
    std::vector<ReproduceRow> out;
    for (const auto& row : rows) {
        ReproduceRow result;
        result.example = row.example;
        result.config = row.scheme + " " + row.weights + " eps=" + theta_label(row.eps);
        result.horizon = options.horizon.value_or(row.horizon);
        bool any_inconclusive = false;
        bool any_contradiction = false;
        for (const auto& check : row.checks) {
            ReproduceCheck c;
            const std::string family = check.family.empty() ? row.families.front() : check.family;
            c.label = family + " " + std::string(mode_name(check.mode)) +
                      " theta=" + theta_label(check.theta);
            c.expected = check.expected;
            c.observed = observe(row, check, result.horizon);
            any_inconclusive = any_inconclusive || c.observed == Membership::inconclusive;
            any_contradiction = any_contradiction || opposite(c.expected, c.observed);
            result.checks.push_back(std::move(c));
        }
        result.status = any_contradiction  ? RowStatus::contradicts
                        : any_inconclusive ? RowStatus::inconclusive
                                           : RowStatus::agree;
        out.push_back(std::move(result));
    }
    return out;
}

int reproduce_table(const ReproduceOptions& options, std::ostream& out, std::ostream& err) {
    const auto rows = reproduce_rows(options);
    std::size_t agree = 0;
    bool contradiction = false;
    out << std::left << std::setw(9) << "example" << std::setw(34) << "check" << std::setw(12)
        << "expected" << std::setw(14) << "observed" << "status\n";
    for (const auto& row : rows) {
        for (const auto& c : row.checks) {
            out << std::setw(9) << row.example << std::setw(34) << c.label << std::setw(12)
                << membership_name(c.expected) << std::setw(14) << membership_name(c.observed)
                << (opposite(c.expected, c.observed)        ? "contradicts"
                    : c.observed == Membership::inconclusive ? "inconclusive"
                                                             : "agree")
                << "\n";
        }
        if (row.status == RowStatus::agree) {
            ++agree;
        } else if (row.status == RowStatus::inconclusive) {
            err << "warning: " << row.example << " is inconclusive at horizon " << row.horizon
                << "\n";
        } else {
            contradiction = true;
            err << "error: " << row.example << " contradicts the expected verdicts\n";
        }
    }
    out << agree << "/" << rows.size() << " examples agree\n";
    return contradiction ? kExitContradiction : kExitOk;
}

}  // namespace fuzzsum::cli
