#pragma once

#include <json.hpp>

#include "wreathscope/confining.hpp"
#include "wreathscope/structures.hpp"

namespace wreathscope {

// Key order follows insertion so output is byte-stable and readable.
using Json = nlohmann::ordered_json;

Json poset_to_json(const Poset& poset);
Json plan_to_json(const WalkPlan& plan, const GroupDesc& g);
Json delta_to_json(const DeltaEstimate& est);
Json empirical_to_json(const EmpiricalReport& report);

Json qspec_to_json(const QSpec& q);
/// {kind, group, params}. Throws ParseError on malformed input.
QSpec qspec_from_json(const Json& j);

Json report_to_json(const ConfiningReport& report, const QSpec& q);
Json saturation_to_json(const SaturationState& state, const GroupDesc& g);
Json recovery_to_json(const RecoveryResult& result, const QSpec& q);
Json validation_to_json(const ValidationReport& report, const SubgroupDesc& h, const QSpec& q);

}  // namespace wreathscope
