#pragma once

#include <memory>
#include <string>

#include "gridee/model.hpp"

namespace gridee {

inline constexpr const char* kCheckpointVersion = "gridee-ckpt-1";

// JSON checkpoint: a "version" marker, the model config and schema needed to
// rebuild the network, and one {shape, data} entry per parameter keyed by the
// parameter name.
void save_checkpoint(const Model& model, const std::string& path);
std::unique_ptr<Model> load_checkpoint(const std::string& path);

}  // namespace gridee
