#pragma once

#include <json.hpp>

#include "kwise/classify.hpp"
#include "kwise/correlation.hpp"
#include "kwise/csp.hpp"
#include "kwise/games.hpp"
#include "kwise/patterns.hpp"

namespace kwise {

// ordered_json keeps insertion order, so identical runs serialize
// byte-identically.
using Json = nlohmann::ordered_json;

Json distribution_to_json(const JointDistribution& mu);
JointDistribution distribution_from_json(const Json& j);

Json table_to_json(const FunctionTable& f);
FunctionTable table_from_json(const Json& j);

Json witness_to_json(const EmbeddingWitness& w);
EmbeddingWitness witness_from_json(const Json& j);

Json report_to_json(const ConnectivityReport& rep);
Json norm_report_to_json(const NormReport& rep);
Json form_report_to_json(const FormReport& rep);
Json correlation_report_to_json(const CorrelationReport& rep);
Json gap_report_to_json(const GapReport& rep);
Json probe_report_to_json(const ProbeReport& rep);
Json trace_to_json(const MeshulamTrace& trace);

Json csp_to_json(const CspInstance& inst);
CspInstance csp_from_json(const Json& j);

Json game_to_json(const Game& g);
Game game_from_json(const Json& j);

// Point sets travel as {"radix":p,"n":n,"points":[...]} or with "hex":"..."
// carrying the membership bitmask, low point index = low bit.
Json point_set_to_json(const PointSet& s);
PointSet point_set_from_json(const Json& j);

}  // namespace kwise
