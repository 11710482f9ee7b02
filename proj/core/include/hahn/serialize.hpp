#pragma once

#include <json.hpp>

#include "hahn/definability.hpp"
#include "hahn/tower.hpp"

namespace hahn {

using Json = nlohmann::json;

/// Canonical JSON forms: object keys sort alphabetically, group entries and
/// series terms are emitted as sorted arrays, rationals as lowest-term
/// strings. Identical values serialize to identical bytes.

Json to_json(const Rat& q);
Json to_json(const GroupElement& g);
Json to_json(const GroupRingElement& r);
Json to_json(const SeriesElement& s);
Json to_json(const LiftResult& r);
Json to_json(const LimitPointWitness& w);
Json to_json(const RegularityCounterexample& ce);
Json to_json(const AxiomReport& report);
Json to_json(const PrimeCertificate& c);
Json to_json(const EisensteinCertificate& c);
Json to_json(const ParameterCertificate& c);
Json to_json(const PhiCertificate& c);
Json to_json(const OmegaCertificate& c);
Json to_json(const OvReport& r);
Json to_json(const TowerElement& t);
Json to_json(const TowerValuation& v);
Json to_json(const RootLiftCertificate& c);
Json to_json(const NonHenselianCertificate& c);
Json to_json(const ValueGroupReport& r);

} // namespace hahn
