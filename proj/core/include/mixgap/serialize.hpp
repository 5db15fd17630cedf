#pragma once

#include <nlohmann/json.hpp>

#include "mixgap/chain.hpp"
#include "mixgap/confidence.hpp"
#include "mixgap/estimators.hpp"
#include "mixgap/spectral.hpp"
#include "mixgap/tallies.hpp"

namespace mixgap {

// Non-finite reals serialize as null.
nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const SkippedTallies& t);
nlohmann::json to_json(const EstimateReport& r);
nlohmann::json to_json(const ConfidenceReport& r);
nlohmann::json to_json(const LemmaLedger& l);
nlohmann::json to_json(const MixingSandwich& s);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Vector& v);

}  // namespace mixgap
