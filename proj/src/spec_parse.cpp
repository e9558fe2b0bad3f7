#include "fuzzsum/spec_parse.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fuzzsum {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double to_real(std::string_view token, std::string_view context) {
    token = trim(token);
    double v = 0.0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw SpecError("bad number '" + std::string(token) + "' in " + std::string(context));
    }
    return v;
}

Index to_index(std::string_view token, std::string_view context) {
    token = trim(token);
    Index v = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (token.empty() || ec != std::errc{} || ptr != end) {
        throw SpecError("bad integer '" + std::string(token) + "' in " + std::string(context));
    }
    return v;
}

/// Numeric rows of a whitespace/comma separated table; '#' starts a comment.
std::vector<std::vector<std::string>> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open table file " + path);
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        for (char& c : line) {
            if (c == ',') c = ' ';
        }
        std::istringstream fields(line);
        std::vector<std::string> row;
        for (std::string f; fields >> f;) {
            row.push_back(f);
        }
        if (!row.empty()) {
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::vector<std::string> split_list(std::string_view spec, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto pos = spec.find(sep, start);
        const auto piece = trim(spec.substr(start, pos == std::string_view::npos ? spec.npos : pos - start));
        if (!piece.empty()) {
            out.emplace_back(piece);
        }
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view spec) {
    std::vector<double> out;
    for (const auto& token : split_list(spec)) {
        out.push_back(to_real(token, "list '" + std::string(spec) + "'"));
    }
    if (out.empty()) {
        throw SpecError("empty list '" + std::string(spec) + "'");
    }
    return out;
}

BetaGammaScheme parse_scheme(std::string_view spec) {
    spec = trim(spec);
    if (spec == "classical") {
        return schemes::classical();
    }
    if (starts_with(spec, "pow:")) {
        return schemes::power(to_real(spec.substr(4), "scheme spec"));
    }
    if (starts_with(spec, "lambda:")) {
        const auto id = spec.substr(7);
        if (id == "n") {
            return schemes::lambda_based([](Index n) { return n; }, "n");
        }
        if (id == "sqrt") {
            return schemes::lambda_based([](Index n) { return isqrt(n); }, "sqrt");
        }
        if (id == "log2") {
            return schemes::lambda_based(
                [](Index n) {
                    Index bits = 0;
                    while (n >>= 1) ++bits;
                    return bits + 1;
                },
                "log2");
        }
        throw SpecError("unknown lambda formula '" + std::string(id) + "' (expected n, sqrt or log2)");
    }
    if (starts_with(spec, "lacunary:")) {
        const auto id = spec.substr(9);
        if (!starts_with(id, "pow")) {
            throw SpecError("unknown lacunary sequence '" + std::string(id) + "' (expected pow<b>)");
        }
        const Index base = to_index(id.substr(3), "lacunary spec");
        if (base < 2) {
            throw SpecError("lacunary base must be >= 2 (got '" + std::string(id) + "')");
        }
        const auto max_r = static_cast<Index>(std::floor(62.0 / std::log2(static_cast<double>(base))));
        return schemes::lacunary(
            [base](Index r) -> Index {
                if (r == 0) return 0;
                Index v = 1;
                for (Index i = 0; i < r; ++i) v *= base;
                return v;
            },
            std::string(id), max_r);
    }
    if (starts_with(spec, "file:")) {
        const std::string path(spec.substr(5));
        std::vector<std::array<Index, 3>> rows;
        for (const auto& row : read_table(path)) {
            if (row.size() != 3) {
                throw SpecError("scheme file " + path + " needs rows 'n beta gamma'");
            }
            rows.push_back({to_index(row[0], path), to_index(row[1], path), to_index(row[2], path)});
        }
        return schemes::from_table(rows, "file:" + path);
    }
    throw SpecError("unrecognised scheme spec '" + std::string(spec) + "'");
}

WeightSequence parse_weights(std::string_view spec) {
    spec = trim(spec);
    if (starts_with(spec, "const:")) {
        return WeightSequence::constant(to_real(spec.substr(6), "weight spec"));
    }
    if (spec == "recip5") {
        return WeightSequence::constant(0.2).relabeled("recip5");
    }
    if (spec == "harmonicplus") {
        return WeightSequence::harmonic_plus();
    }
    if (starts_with(spec, "file:")) {
        const std::string path(spec.substr(5));
        std::vector<double> t;
        for (const auto& row : read_table(path)) {
            if (row.size() == 1) {
                t.push_back(to_real(row[0], path));
            } else if (row.size() == 2) {
                if (to_index(row[0], path) != t.size() + 1) {
                    throw SpecError("weight file " + path + " must list k = 1, 2, ... in order");
                }
                t.push_back(to_real(row[1], path));
            } else {
                throw SpecError("weight file " + path + " needs rows 't_k' or 'k t_k'");
            }
        }
        return WeightSequence::from_table(std::move(t), "file:" + path);
    }
    throw SpecError("unrecognised weight spec '" + std::string(spec) + "'");
}

FuzzyFunctionSequence parse_family(std::string_view spec, Domain domain) {
    spec = trim(spec);
    const auto colon = spec.find(':');
    const auto head = spec.substr(0, colon);
    const auto tail = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    if (head == "file") {
        const std::string path(tail);
        std::vector<std::array<double, 3>> rows;
        for (const auto& row : read_table(path)) {
            if (row.size() != 3) {
                throw SpecError("family file " + path + " needs rows 'k center spread'");
            }
            rows.push_back({to_real(row[0], path), to_real(row[1], path), to_real(row[2], path)});
        }
        return families::from_table(rows, "file:" + path, domain);
    }

    double bound = 1.0;
    Index cutoff = 0;
    for (const auto& kv : split_list(tail)) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            throw SpecError("family parameter '" + kv + "' is not key=value");
        }
        const auto key = trim(std::string_view(kv).substr(0, eq));
        const auto value = std::string_view(kv).substr(eq + 1);
        if (key == "M") {
            bound = to_real(value, "family spec");
        } else if (key == "n") {
            cutoff = to_index(value, "family spec");
        } else {
            throw SpecError("unknown family parameter '" + std::string(key) + "'");
        }
    }

    if (head == "ex3.1") return families::square_indicator(bound, domain);
    if (head == "ex3.2") return families::triangular_growing(domain);
    if (head == "ex3.3") return families::cube_triangular_decaying(domain);
    if (head == "ex4.1") return families::alternating_crisp(domain);
    if (head == "recip") return families::reciprocal_crisp(domain);
    if (head == "remark3") {
        if (cutoff == 0) {
            throw SpecError("remark3 needs n=<int> with n >= 1");
        }
        return families::remark3_double(cutoff, bound, domain);
    }
    throw SpecError("unrecognised family spec '" + std::string(spec) + "'");
}

Index default_horizon_for(std::string_view family_spec) {
    return starts_with(trim(family_spec), "ex3.1") ? Index{1} << 20 : Index{1} << 12;
}

XGridPolicy parse_grid(std::string_view spec) {
    const auto parts = split_list(spec);
    if (parts.size() != 3) {
        throw SpecError("grid spec '" + std::string(spec) + "' must be a,b,count");
    }
    const double a = to_real(parts[0], "grid spec");
    const double b = to_real(parts[1], "grid spec");
    const Index count = to_index(parts[2], "grid spec");
    if (count == 0 || a > b) {
        throw SpecError("grid spec '" + std::string(spec) + "' needs a <= b and count >= 1");
    }
    return XGridPolicy::uniform(a, b, count);
}

}  // namespace fuzzsum
