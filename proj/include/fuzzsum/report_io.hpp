#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "fuzzsum/summability.hpp"
#include "fuzzsum/tauberian.hpp"

namespace fuzzsum {

/// A file could not be written. The message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violation pairs kept per witness in JSON output; the full count is always reported.
inline constexpr std::size_t kWitnessPreview = 10;

/// `x,mode,theta,n,value` rows for every cell of every report, sorted by (x, mode, n, theta).
void write_traces_csv(std::ostream& out, std::span<const ConvergenceReport> reports);

/**
 * JSON document with keys family, scheme, weights, theta (list), eps, grid,
 * horizon, policy, verdicts, traces and classes. A Tauberian report, when
 * given, is nested under "tauberian".
 */
std::string report_json(std::span<const ConvergenceReport> reports,
                        const TauberianReport* tauberian = nullptr);

/// {hypotheses: {slowly_decreasing, condition2, summable}, conclusion, identities}.
std::string tauberian_json(const TauberianReport& report);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace fuzzsum
