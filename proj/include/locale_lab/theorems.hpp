#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "locale_lab/catalog.hpp"

namespace lolab {

struct VerificationReport {
  std::string theorem_id;
  bool pass = true;
  std::map<std::string, std::uint64_t> instances_checked;  // by map class
  std::optional<nlohmann::json> first_counterexample;      // standalone replayable
  double wall_seconds = 0.0;
  bool truncated = false;  // some pair hit the per-pair map cap
};

std::vector<std::string> theorem_ids();
bool theorem_known(const std::string& id);
std::string theorem_title(const std::string& id);

// Runs the theorem's quantified check over every catalog instance admitted by
// its preconditions, both directions of each iff. Deterministic: the reported
// counterexample is minimal in (source frame, target frame, map rank) order
// regardless of worker count. Throws UnknownTheorem.
VerificationReport verify_theorem(const std::string& theorem_id, const CatalogSpec& spec);

// Re-runs the check captured in a serialized counterexample; true when the
// failure reproduces.
bool replay_witness(const nlohmann::json& witness);

// ---- mutation sensitivity ----

struct MutationOutcome {
  std::string description;   // what was corrupted
  bool detected = false;     // some suite failed
  std::string failing_suite;
  nlohmann::json witness;    // replayable
};

// Applies one seeded single-entry corruption to the fixture frames/maps and
// runs the detection battery (table validation, Heyting scan, frozen fixture
// expectations).
MutationOutcome run_single_mutation(std::uint64_t seed);

}  // namespace lolab
