#pragma once

#include <json.hpp>

#include "corrkit/dilation.hpp"
#include "corrkit/local.hpp"
#include "corrkit/npa.hpp"
#include "corrkit/norms.hpp"
#include "corrkit/quantum.hpp"
#include "corrkit/steering.hpp"

namespace corrkit {

using Json = nlohmann::json;

/// Complex entries serialize as [re, im]; matrices as row nested arrays.
Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const CorrelationTable& t);           // {"ka","ma","kb","mb","p":[a][b][x][y]}
CorrelationTable table_from_json(const Json& j);   // accepts symmetric {"k","m"} too

Json to_json(const BellFunctional& f);
BellFunctional bell_functional_from_json(const Json& j);  // {"chsh":true} preset supported

Json to_json(const Realization& r);
Realization realization_from_json(const Json& j);

Json to_json(const SteeringData& sd);
SteeringData steering_data_from_json(const Json& j);

Json to_json(const SteeringGame& g);
SteeringGame steering_game_from_json(const Json& j);

Json to_json(const ChoiMap& phi);
ChoiMap choi_from_json(const Json& j);

Json povm_to_json(const std::vector<ComplexMatrix>& povm);
std::vector<ComplexMatrix> povm_from_json(const Json& j);

Json to_json(const MomentSolution& sol, const MomentProblem& problem);
Json to_json(const NormEstimate& est);
Json to_json(const LocalMembershipResult& r);
Json to_json(const HardyResult& h);
Json to_json(const WCoarseTable& t);
WCoarseTable wcoarse_from_json(const Json& j);

}  // namespace corrkit
