#pragma once

#include <iosfwd>

#include "json.hpp"

#include "cat0lab/audit.hpp"
#include "cat0lab/boundary.hpp"
#include "cat0lab/stats.hpp"
#include "cat0lab/walk.hpp"

namespace cat0lab::io {

using Json = nlohmann::ordered_json;

// Points: E2/H2 [x, y]; T4 "word"; H2xR {"base": [x, y], "height": h}.
Json to_json(const Point& p);
Point point_from_json(ModelSpace model, const Json& j);

// Boundary points: E2 angle; H2 number or "inf"; T4 {"word", "periodic"};
// H2xR {"xi": H2 boundary or null, "alpha"}.
Json to_json(const BoundaryPoint& xi);
BoundaryPoint boundary_from_json(ModelSpace model, const Json& j);

// Isometries: {"model", "payload"} with payload E2 {"angle","tx","ty"},
// H2 [[a,b],[c,d]], T4 "word", H2xR {"base": [[a,b],[c,d]], "shift"}.
Json to_json(const Isometry& g);
Json payload_json(const Isometry& g);
/// Accepts the full form or, when `model` is given, a bare payload.
Isometry isometry_from_json(const Json& j, std::optional<ModelSpace> model = std::nullopt);

Json to_json(const StepDistribution& spec);
StepDistribution distribution_from_json(const Json& j);

Json to_json(const AdmissibilityReport& r);
Json to_json(const RankOneAudit& a);
Json to_json(const DriftReport& r);
Json to_json(const HittingHistogram& h);
Json to_json(const ConvergenceProfile& p);
Json to_json(const DiracReport& r);
Json to_json(const GapSeries& g);
Json to_json(const PiConvergenceResult& r);
Json to_json(const TitsValue& t);

/// step, increment_index, position components, d(x, Z_k x); stored steps only.
void write_trace_csv(std::ostream& out, const WalkTrace& trace);

}  // namespace cat0lab::io
