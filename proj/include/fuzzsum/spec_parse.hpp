#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzsum/fuzzy_sequences.hpp"
#include "fuzzsum/schemes.hpp"
#include "fuzzsum/summability.hpp"

namespace fuzzsum {

/// A spec string that failed to parse. The message names the offending token.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// `classical`, `pow:<p>`, `lambda:<n|sqrt|log2>`, `lacunary:pow<b>`, `file:<path>`.
BetaGammaScheme parse_scheme(std::string_view spec);

/// `const:<c>`, `recip5`, `harmonicplus`, `file:<path>`.
WeightSequence parse_weights(std::string_view spec);

/// `ex3.1[:M=<real>]`, `ex3.2`, `ex3.3`, `ex4.1`, `remark3:n=<int>[,M=<real>]`,
/// `recip`, `file:<path>`.
FuzzyFunctionSequence parse_family(std::string_view spec, Domain domain = {});

/// Horizon used when none is given: 2^20 for ex3.1, 2^12 otherwise.
Index default_horizon_for(std::string_view family_spec);

/// `a,b,count`.
XGridPolicy parse_grid(std::string_view spec);

/// Comma-separated reals.
std::vector<double> parse_real_list(std::string_view spec);

/// Comma-separated tokens, empty tokens dropped.
std::vector<std::string> split_list(std::string_view spec, char sep = ',');

}  // namespace fuzzsum
