#pragma once

#include <json.hpp>

#include "hodyn/pipeline.hpp"

namespace hodyn {

using Json = nlohmann::ordered_json;

Json to_json(const Expr& e);
Json to_json(const Rules& rules);
Json to_json(const ExprMatrix& m);
Json to_json(const std::vector<Expr>& v);

Json el_section(const LagrangianSpec& spec);
Json ostro_section(const LagrangianSpec& spec, const OstroResult& r);
/// Derived Schmidt data; golden displays marked "*_reference_display" that
/// disagree with the derived value are listed under "discrepancies".
Json schmidt_even_section(const EvenPipeline& p, const nlohmann::json& golden);
Json schmidt_odd_section(const OddPipeline& p);
Json chain_section(const OddPipeline& p);
Json map_section(const CanonicalMap& map, const BracketCertificate& cert);
/// Adds the transported Ostrogradsky Hamiltonian and its difference from H.
Json transport_section(const EvenPipeline& p);
Json numeric_section(const NumericRun& run, double dt, double T);
/// Failure record for a mathematical obstruction; carries the integrability
/// witness when one exists.
Json obstruction_section(const std::string& message, const std::optional<sym::Asymmetry>& witness);

}  // namespace hodyn
