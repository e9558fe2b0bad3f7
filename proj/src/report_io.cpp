#include "fuzzsum/report_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <tuple>

#include "json.hpp"

namespace fuzzsum {

namespace {

using nlohmann::json;

struct CsvRow {
    double x;
    Mode mode;
    double theta;
    Index n;
    double value;
};

// Shortest round-trip formatting.
std::string fmt(double v) {
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) {
            break;
        }
    }
    return buf;
}

json policy_json(const VerdictPolicy& p) {
    return {{"tol", p.tol}, {"window", p.window}, {"divergence_factor", p.divergence_factor}};
}

json trace_json(std::span<const TracePoint> trace) {
    json n = json::array();
    json value = json::array();
    for (const auto& p : trace) {
        n.push_back(p.n);
        value.push_back(p.value);
    }
    return {{"n", std::move(n)}, {"value", std::move(value)}};
}

json verdict_json(const Verdict& v) {
    json j{{"kind", verdict_name(v.kind)}};
    if (v.kind == VerdictKind::converges) {
        j["limit"] = v.limit_estimate;
    }
    return j;
}

json fuzzy_json(const FuzzyNumber& f) {
    return {{"support", {f.support().lo, f.support().hi}}, {"core", {f.core().lo, f.core().hi}}};
}

json witness_json(const SlowDecreaseWitness& w) {
    json preview = json::array();
    for (std::size_t i = 0; i < std::min(w.violations.size(), kWitnessPreview); ++i) {
        preview.push_back({w.violations[i].first, w.violations[i].second});
    }
    return {{"eps", w.eps},
            {"lambda", w.lambda},
            {"n0", w.n0},
            {"horizon", w.horizon},
            {"violation_count", w.violations.size()},
            {"violations", std::move(preview)}};
}

json tauberian_doc(const TauberianReport& r) {
    json sd = json::array();
    for (const auto& o : r.slowly_decreasing) {
        sd.push_back({{"x", o.x},
                      {"eps", o.eps},
                      {"result", o.holds ? "pass" : "fail"},
                      {"witness", witness_json(o.witness)}});
    }
    json c2 = json::array();
    for (const auto& [lambda, est] : r.condition2) {
        c2.push_back({{"lambda", lambda}, {"estimate", est.estimate}, {"holds", est.holds}});
    }
    json summable = json::array();
    for (const auto& cell : r.summable.cells) {
        summable.push_back({{"x", cell.x},
                            {"verdict", verdict_json(cell.verdict)},
                            {"membership", membership_name(cell.membership)}});
    }
    json verdicts = json::array();
    json traces = json::array();
    for (const auto& cell : r.conclusion) {
        verdicts.push_back({{"x", cell.x},
                            {"verdict", verdict_json(cell.verdict)},
                            {"membership", membership_name(cell.membership)}});
        json t = trace_json(cell.trace);
        t["x"] = cell.x;
        traces.push_back(std::move(t));
    }
    json identities = json::array();
    for (const auto& id : r.identities) {
        identities.push_back({{"x", id.x},
                              {"lambda", id.lambda},
                              {"checked", id.checked},
                              {"skipped_degenerate", id.skipped_degenerate},
                              {"empty_dilated_window", id.empty_dilated_window},
                              {"max_residual", id.max_residual}});
    }
    return {
        {"family", r.family},
        {"scheme", r.scheme},
        {"weights", r.weights},
        {"horizon", r.horizon},
        {"hypotheses",
         {{"slowly_decreasing", {{"result", r.slowly_decreasing_holds ? "pass" : "fail"}, {"cells", sd}}},
          {"condition2", {{"result", r.condition2_holds ? "pass" : "fail"}, {"estimates", c2}}},
          {"summable",
           {{"membership", membership_name(r.summable_membership)}, {"cells", summable}}},
          {"all_hold", r.hypotheses_hold()}}},
        {"conclusion",
         {{"holds", r.conclusion_holds},
          {"sandwich_holds", r.sandwich_holds},
          {"verdicts", verdicts},
          {"traces", traces}}},
        {"identities", {{"max_residual", r.identity_max_residual}, {"checks", identities}}},
    };
}

}  // namespace

void write_traces_csv(std::ostream& out, std::span<const ConvergenceReport> reports) {
    std::vector<CsvRow> rows;
    for (const auto& r : reports) {
        for (const auto& cell : r.cells) {
            for (const auto& p : cell.trace) {
                rows.push_back({cell.x, cell.mode, cell.theta, p.n, p.value});
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return std::tie(a.x, a.mode, a.n, a.theta) < std::tie(b.x, b.mode, b.n, b.theta);
    });
    out << "x,mode,theta,n,value\n";
    for (const auto& row : rows) {
        out << fmt(row.x) << ',' << mode_name(row.mode) << ',' << fmt(row.theta) << ',' << row.n
            << ',' << fmt(row.value) << '\n';
    }
}

std::string report_json(std::span<const ConvergenceReport> reports,
                        const TauberianReport* tauberian) {
    json doc;
    json thetas = json::array();
    json verdicts = json::array();
    json traces = json::array();
    json classes = json::array();
    for (const auto& r : reports) {
        if (doc.empty()) {
            doc["family"] = r.family;
            doc["scheme"] = r.scheme;
            doc["weights"] = r.weights;
            doc["eps"] = r.eps;
            doc["grid"] = r.grid;
            doc["horizon"] = r.horizon;
            doc["policy"] = policy_json(r.policy);
        }
        thetas.push_back(r.theta);
        std::vector<Mode> seen;
        for (const auto& cell : r.cells) {
            json v{{"x", cell.x},
                   {"mode", mode_name(cell.mode)},
                   {"theta", cell.theta},
                   {"verdict", verdict_json(cell.verdict)},
                   {"membership", membership_name(cell.membership)}};
            if (cell.final_mean) {
                v["final_mean"] = fuzzy_json(*cell.final_mean);
            }
            verdicts.push_back(std::move(v));
            json t = trace_json(cell.trace);
            t["x"] = cell.x;
            t["mode"] = mode_name(cell.mode);
            t["theta"] = cell.theta;
            traces.push_back(std::move(t));
            if (std::find(seen.begin(), seen.end(), cell.mode) == seen.end()) {
                seen.push_back(cell.mode);
            }
        }
        for (Mode m : seen) {
            classes.push_back({{"mode", mode_name(m)},
                               {"theta", r.theta},
                               {"membership", membership_name(r.membership(m))}});
        }
    }
    doc["theta"] = std::move(thetas);
    doc["verdicts"] = std::move(verdicts);
    doc["traces"] = std::move(traces);
    doc["classes"] = std::move(classes);
    if (tauberian) {
        doc["tauberian"] = tauberian_doc(*tauberian);
        if (!doc.contains("family")) {
            doc["family"] = tauberian->family;
            doc["scheme"] = tauberian->scheme;
            doc["weights"] = tauberian->weights;
            doc["horizon"] = tauberian->horizon;
        }
    }
    return doc.dump(2) + "\n";
}

std::string tauberian_json(const TauberianReport& report) {
    return tauberian_doc(report).dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                          ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write to " + path.string() + " failed");
    }
}

}  // namespace fuzzsum
