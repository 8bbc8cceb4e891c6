#pragma once

#include <string>

#include "json.hpp"
#include "robustkz/instance.hpp"

namespace robustkz {

// Instance file schema:
//   {
//     "metric": {"kind":"lq","q":2} | {"kind":"matrix","d":[[...],...]},
//     "points": [[...],...]               (lq: coordinate vectors)
//               | [0,1,...]               (matrix: universe indices),
//     "facilities": <same shapes> | "same_as_points",
//     "k": int, "z": int,
//     "groups": [ {"weights": {"<pointIndex>": weight, ...}}
//               | {"subset": [pointIndex, ...]}, ... ],
//     "pointWeights": [w_0, ..., w_{n-1}]  (optional; used by subset groups)
//   }
// Subset groups are converted on load to weight vectors that are zero off
// the subset. Unknown top-level keys are ignored.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j, bool trusted = false, const WarnFn& warn = {});

void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path, bool trusted = false, const WarnFn& warn = {});

// FNV-1a 64-bit hash of the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);
std::string fnv1a_hex(const std::string& bytes);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace robustkz
