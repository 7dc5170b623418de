#pragma once

#include <nlohmann/json.hpp>

#include "padx/connection.hpp"
#include "padx/laurent.hpp"
#include "padx/type_classifier.hpp"
#include "padx/weyl.hpp"

namespace padx {

// JSON views of the reports. Integers and valuations are decimal strings
// so that exponents of any size survive the round trip; "+inf" and ">=B"
// mark infinite and bounded valuations.

using Json = nlohmann::ordered_json;

Json to_json(const ExtValuation& v);
Json to_json(const ClassifierOptions& box);
Json to_json(const ProductProfile& p);
Json to_json(const TypeVerdict& v);
Json to_json(const TypeEstimate& e);
Json to_json(const EquivalenceReport& e);
Json to_json(const IdentityCheck& c);
Json to_json(const DivergenceTable& t);
Json to_json(const LevelNorm& n);
Json to_json(const MembershipReport& m);
Json to_json(const DHatMembershipReport& m);
Json to_json(const BFunctionData& b);
Json to_json(const SufficientR& s);
Json to_json(const ThetaPreimage& t);
Json to_json(const ConstantReduction& c);
Json to_json(const WitnessReport& w);
Json to_json(const ProbeOptions& o);
Json to_json(const ProbeVerdict& p);

}  // namespace padx
