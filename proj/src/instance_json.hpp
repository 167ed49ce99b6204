// JSON interchange for instances, mappings and alignment results.
#pragma once

#include <optional>
#include <string>

#include "model.hpp"

namespace palign {

std::string instance_to_json(const PlantedInstance& inst);
PlantedInstance instance_from_json(const std::string& text);

std::string mapping_to_json(const InjectiveMapping& pi);
InjectiveMapping mapping_from_json(const std::string& text);

std::string alignment_result_json(const InjectiveMapping& mapping, double score,
                                  std::optional<double> overlap, std::optional<int> distance);

}  // namespace palign
