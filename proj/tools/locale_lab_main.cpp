#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "locale_lab/json_io.hpp"
#include "locale_lab/search.hpp"
#include "locale_lab/theorems.hpp"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

int cmd_validate(const std::string& path) {
  json j = lolab::load_json_file(path);
  try {
    lolab::Frame f = lolab::frame_from_any_json(j);
    std::printf("valid frame: %s (%d elements, bottom=%s, top=%s)\n",
                f.name.empty() ? path.c_str() : f.name.c_str(), f.size(),
                f.label(f.bottom()).c_str(), f.label(f.top()).c_str());
    return kExitPass;
  } catch (const lolab::FrameViolation& e) {
    std::printf("not a frame: %s\n", e.what());
    return kExitFail;
  }
}

int cmd_sublocales(const std::string& path, bool as_json, int cap) {
  json j = lolab::load_json_file(path);
  lolab::Frame f = lolab::frame_from_any_json(j);
  auto sl = lolab::enumerate_sublocales(f, cap);
  if (as_json) {
    std::cout << lolab::sublocale_lattice_to_json(sl).dump(2) << "\n";
  } else {
    std::printf("%d sublocales of %s\n", sl.size(),
                f.name.empty() ? path.c_str() : f.name.c_str());
    for (const auto& s : sl.all) std::printf("  %s\n", lolab::sublocale_literal(s).c_str());
  }
  return kExitPass;
}

int cmd_analyze_map(const std::string& path, const std::string& report, bool as_json) {
  json j = lolab::load_json_file(path);
  lolab::Frame src, tgt;
  std::string base = std::filesystem::path(path).parent_path().string();
  lolab::LatticeMap map = lolab::map_from_json(j, src, tgt, base);
  auto cls = lolab::classify_map(map);

  json out;
  out["classification"] = lolab::classification_to_json(cls, map);
  auto oc = lolab::open_closed_report(map);
  out["open_closed"] = lolab::open_closed_to_json(oc, map);
  if (report == "full" && cls.localic) {
    out["joyal_tierney"] = lolab::jt_to_json(lolab::joyal_tierney(map), map);
    auto subs = lolab::enumerate_sublocales(tgt);
    out["hierarchy"] = lolab::hierarchy_to_json(lolab::skeletal_hierarchy(map, subs), map);
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
    return kExitPass;
  }
  std::printf("map: %s -> %s\n", src.name.c_str(), tgt.name.c_str());
  auto flag = [](bool b) { return b ? "yes" : "no"; };
  std::printf("  monotone         %s\n", flag(cls.monotone));
  std::printf("  meet-preserving  %s\n", flag(cls.meet_preserving));
  std::printf("  L1               %s\n", flag(cls.l1));
  std::printf("  L2               %s\n", flag(cls.l2));
  std::printf("  localic          %s\n", flag(cls.localic));
  std::printf("  open             %s\n", flag(oc.is_open));
  std::printf("  closed           %s\n", flag(oc.is_closed));
  if (report == "full" && cls.localic) {
    std::printf("joyal-tierney: %s\n", out["joyal_tierney"]["agree"].get<bool>()
                                           ? "conditions (i)-(iv) agree"
                                           : "CONDITIONS DISAGREE");
    const auto& h = out["hierarchy"];
    std::printf("hierarchy: skeletal=%s nearly_open=%s hereditarily_skeletal=%s "
                "sub_open=%s open=%s\n",
                flag(h["skeletal"].get<bool>()), flag(h["nearly_open"].get<bool>()),
                flag(h["hereditarily_skeletal"].get<bool>()), flag(h["sub_open"].get<bool>()),
                flag(h["open"].get<bool>()));
  }
  return kExitPass;
}

int run_one_theorem(const std::string& id, const lolab::CatalogSpec& spec, bool as_json,
                    json& results) {
  auto report = lolab::verify_theorem(id, spec);
  json entry{{"theorem", report.theorem_id},
             {"verdict", report.pass ? "pass" : "fail"},
             {"instances_checked", report.instances_checked},
             {"wall_seconds", report.wall_seconds},
             {"truncated", report.truncated}};
  if (report.first_counterexample) entry["first_counterexample"] = *report.first_counterexample;
  results.push_back(entry);
  if (!as_json) {
    std::printf("%-18s %s  (%.2fs%s)\n", report.theorem_id.c_str(),
                report.pass ? "pass" : "FAIL", report.wall_seconds,
                report.truncated ? ", truncated by caps" : "");
    if (report.first_counterexample)
      std::printf("  counterexample: %s\n",
                  report.first_counterexample->at("detail").dump().c_str());
  }
  return report.pass ? kExitPass : kExitFail;
}

int cmd_verify(const std::string& theorem, const lolab::CatalogSpec& spec, bool as_json,
               const std::string& out_path) {
  std::vector<std::string> ids;
  if (theorem == "all") {
    ids = lolab::theorem_ids();
  } else if (theorem == "closed-6-x") {
    ids = {"closed-6-1", "closed-6-3", "closed-6-5", "closed-6-6"};
  } else {
    if (!lolab::theorem_known(theorem)) throw lolab::UnknownTheorem("unknown theorem: " + theorem);
    ids = {theorem};
  }
  json results = json::array();
  int rc = kExitPass;
  for (const auto& id : ids)
    if (run_one_theorem(id, spec, as_json, results) != kExitPass) rc = kExitFail;
  if (as_json) std::cout << results.dump(2) << "\n";
  if (!out_path.empty()) lolab::write_json_file(out_path, results);
  return rc;
}

int cmd_search(const std::string& predicate, const lolab::CatalogSpec& spec,
               const std::string& out_path) {
  auto result = lolab::search_counterexample(predicate, spec);
  if (result.found) {
    std::printf("witness: %s\n", result.summary.c_str());
    std::printf("flags: %s\n", result.witness->at("flags").dump().c_str());
    if (!out_path.empty()) {
      lolab::write_json_file(out_path, *result.witness);
      std::printf("witness written to %s\n", out_path.c_str());
    }
    return kExitFail;
  }
  std::printf("exhausted at spec bounds (max-ji=%d%s): %llu instances scanned, no witness\n",
              spec.max_join_irreducibles, result.truncated ? ", map caps hit" : "",
              static_cast<unsigned long long>(result.instances_scanned));
  return kExitPass;
}

int cmd_catalog(const lolab::CatalogSpec& spec, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto frames = lolab::catalog_frames(spec);
  for (const auto& f : frames) {
    std::string name = f.name;
    for (char& c : name)
      if (c == '(' || c == ')' || c == '.') c = '_';
    lolab::write_json_file((fs::path(out_dir) / (name + ".json")).string(),
                           lolab::frame_to_json(f));
  }
  std::printf("wrote %zu frames to %s\n", frames.size(), out_dir.c_str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locale-lab: finite frame/sublocale calculus and theorem verification"};
  app.require_subcommand(1);

  std::string path, report_kind = "full", theorem = "all", predicate, out_path;
  bool as_json = false;
  int cap = 20;
  lolab::CatalogSpec spec;

  auto* validate = app.add_subcommand("validate", "check a lattice or topology file");
  validate->add_option("file", path)->required();

  auto* subl = app.add_subcommand("sublocales", "enumerate the sublocale coframe");
  subl->add_option("file", path)->required();
  subl->add_flag("--json", as_json);
  subl->add_option("--cap", cap, "frame size cap for enumeration");

  auto* analyze = app.add_subcommand("analyze-map", "classify a map between frames");
  analyze->add_option("file", path)->required();
  analyze->add_option("--report", report_kind)->check(CLI::IsMember({"full", "flags"}));
  analyze->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify", "run theorem suites over the catalog");
  verify->add_option("--theorem", theorem, "theorem id, 'closed-6-x' or 'all'");
  verify->add_option("--max-ji", spec.max_join_irreducibles);
  verify->add_option("--max-maps", spec.max_maps_per_pair);
  verify->add_option("--jobs", spec.jobs);
  verify->add_flag("--json", as_json);
  verify->add_option("--out", out_path, "write the report JSON here");

  auto* search = app.add_subcommand("search", "search the catalog for a flag combination");
  search->add_option("--predicate", predicate)->required();
  search->add_option("--max-ji", spec.max_join_irreducibles);
  search->add_option("--max-maps", spec.max_maps_per_pair);
  search->add_option("--out", out_path, "write the witness JSON here");

  auto* catalog = app.add_subcommand("catalog", "write the frame catalog to a directory");
  catalog->add_option("--max-ji", spec.max_join_irreducibles);
  catalog->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path);
    if (subl->parsed()) return cmd_sublocales(path, as_json, cap);
    if (analyze->parsed()) return cmd_analyze_map(path, report_kind, as_json);
    if (verify->parsed()) return cmd_verify(theorem, spec, as_json, out_path);
    if (search->parsed()) return cmd_search(predicate, spec, out_path);
    if (catalog->parsed()) return cmd_catalog(spec, out_path);
  } catch (const lolab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
