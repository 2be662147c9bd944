#pragma once

#include <string>

#include <json.hpp>

#include "locale_lab/maps.hpp"
#include "locale_lab/sublocale.hpp"

namespace lolab {

// Lattice JSON:
//   {"name": str, "elements": [str...],
//    "order": {"mode": "covers"|"leq", "pairs": [[str,str]...]}}
// Export lists elements in a fixed linear extension and emits cover pairs.
Frame frame_from_json(const nlohmann::json& j);
nlohmann::json frame_to_json(const Frame& f);

// Topology JSON: {"points": [str...], "opens": [[str...]...]}.
FiniteSpace space_from_json(const nlohmann::json& j);

// Either schema, keyed on "points" vs "elements".
Frame frame_from_any_json(const nlohmann::json& j);

// Raw table form used inside witness files so corrupted tables survive the
// round trip exactly.
nlohmann::json frame_to_raw_json(const Frame& f);
Frame frame_from_raw_json(const nlohmann::json& j);

// Map JSON: {"source": <path or inline lattice>, "target": ...,
//            "assignments": {srcLabel: tgtLabel, ...}}.
// Frames are owned by the caller-provided holders. Relative side paths
// resolve against base_dir (usually the map file's directory).
LatticeMap map_from_json(const nlohmann::json& j, Frame& source_holder, Frame& target_holder,
                         const std::string& base_dir = "");
nlohmann::json map_to_json(const LatticeMap& f);  // frames inline

nlohmann::json sublocale_lattice_to_json(const SublocaleLattice& sl);
nlohmann::json classification_to_json(const MapClassification& c, const LatticeMap& f);
nlohmann::json jt_to_json(const JTReport& r, const LatticeMap& f);
nlohmann::json hierarchy_to_json(const HierarchyReport& r, const LatticeMap& f);
nlohmann::json open_closed_to_json(const OpenClosedReport& r, const LatticeMap& f);

nlohmann::json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace lolab
