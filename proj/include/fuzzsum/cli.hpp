#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fuzzsum/summability.hpp"

namespace fuzzsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitContradiction = 4;

inline constexpr Index kMinHorizon = 64;

struct RunConfig {
    std::string family;
    std::string scheme = "classical";
    std::string weights = "const:1";
    std::vector<double> thetas{1.0};
    double eps = 0.1;
    std::optional<Index> horizon;  ///< family default when unset
    std::string grid = "1,2,5";
    std::vector<std::string> modes{"sp", "abs", "ord"};  ///< also accepts "tauberian"
    std::string out_dir = ".";
    std::string json_name = "report.json";
    std::string csv_name = "traces.csv";
    VerdictPolicy policy;
};

/// Classifies, runs the Tauberian experiment if asked, writes CSV and JSON,
/// and prints a membership summary. kExitOk whatever the verdicts.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct ReproduceOptions {
    std::optional<Index> horizon;  ///< overrides every canned horizon
    std::optional<std::string> only;
};

enum class RowStatus { agree, inconclusive, contradicts };

struct ReproduceCheck {
    std::string label;  ///< e.g. "abs theta=0.75"
    Membership expected = Membership::member;
    Membership observed = Membership::inconclusive;
};

struct ReproduceRow {
    std::string example;
    std::string config;
    Index horizon = 0;
    std::vector<ReproduceCheck> checks;
    RowStatus status = RowStatus::inconclusive;
};

/// Example ids accepted by `only`.
std::vector<std::string> reproducible_examples();

/// Runs the canned configurations. Throws std::invalid_argument for an unknown `only`.
std::vector<ReproduceRow> reproduce_rows(const ReproduceOptions& options);

/// Prints the expected-vs-observed table. kExitContradiction if any row
/// contradicts; inconclusive rows are warnings.
int reproduce_table(const ReproduceOptions& options, std::ostream& out, std::ostream& err);

std::string_view status_name(RowStatus s);

}  // namespace fuzzsum::cli
