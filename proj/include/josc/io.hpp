#pragma once

#include "josc/asymptotics.hpp"
#include "josc/criterion.hpp"
#include "josc/recurrence.hpp"
#include "josc/spectral.hpp"

#include <json.hpp>

#include <ostream>

namespace josc {

/// CSV "n,u_sign,u_log2mag,is_node,Q", one row per n in [n0-1, N-1].
/// Requires a trace solved with kept values and accumulated Q; a vanished
/// solution prints "-inf" magnitude and "nan" Q from that point on.
void write_trace_csv(std::ostream& out, const SolutionTrace& trace);

/// CSV "n,K" over the series range.
void write_series_csv(std::ostream& out, const CriterionSeries& series);

/// CSV "N,count", one row per truncation size.
void write_profile_csv(std::ostream& out, const SpectralCount& profile);

nlohmann::ordered_json classification_json(const Classification& c);
nlohmann::ordered_json profile_json(const SpectralCount& profile);
nlohmann::ordered_json report_json(const BoundednessReport& r);

}  // namespace josc
