#include "josc/io.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace josc {

void write_trace_csv(std::ostream& out, const SolutionTrace& trace) {
    if (!trace.has_values())
        throw std::invalid_argument("write_trace_csv: trace has no stored values");
    if (trace.Q.size() == 0)
        throw std::invalid_argument("write_trace_csv: trace has no Q series");
    out << "n,u_sign,u_log2mag,is_node,Q\n";
    for (Index n = trace.first(); n <= trace.last() - 1; ++n) {
        const ScaledReal& u = trace.at(n);
        const bool is_node =
            std::binary_search(trace.nodes.begin(), trace.nodes.end(), n);
        out << n << ',' << u.sign() << ',' << format_shortest(u.log2_magnitude()) << ','
            << (is_node ? 1 : 0) << ',' << format_shortest(trace.Q.at(n)) << '\n';
    }
}

void write_series_csv(std::ostream& out, const CriterionSeries& series) {
    out << "n,K\n";
    for (Index n = series.m; n <= series.M; ++n)
        out << n << ',' << format_shortest(series.at(n)) << '\n';
}

void write_profile_csv(std::ostream& out, const SpectralCount& profile) {
    out << "N,count\n";
    for (std::size_t i = 0; i < profile.sizes.size(); ++i)
        out << profile.sizes[i] << ',' << profile.counts[i] << '\n';
}

nlohmann::ordered_json classification_json(const Classification& c) {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(c.verdict);
    j["tail_inf"] = c.tail_inf;
    j["tail_sup"] = c.tail_sup;
    j["threshold"] = kOscillationThreshold;
    j["margin"] = c.margin;
    j["N"] = c.N;
    return j;
}

nlohmann::ordered_json profile_json(const SpectralCount& profile) {
    nlohmann::ordered_json j;
    j["lambda"] = profile.lambda;
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < profile.sizes.size(); ++i)
        rows.push_back({profile.sizes[i], profile.counts[i]});
    j["profile"] = std::move(rows);
    j["verdict_hint"] = profile.verdict_hint();
    return j;
}

nlohmann::ordered_json report_json(const BoundednessReport& r) {
    nlohmann::ordered_json j;
    j["quantity"] = r.quantity;
    j["range"] = {r.m, r.M};
    j["scaled_sup"] = r.scaled_sup;
    j["bound"] = r.bound_accepted;
    j["passed"] = r.passed;
    return j;
}

}  // namespace josc
