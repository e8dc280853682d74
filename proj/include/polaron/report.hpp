#ifndef POLARON_REPORT_HPP
#define POLARON_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace polaron {

// Outcome of a single verification check.  Callers persist these; no file
// I/O happens inside the checks themselves.
struct CheckReport {
  std::string check;
  std::int64_t dim = 0;
  std::uint64_t seed = 0;
  bool passed = false;
  std::map<std::string, bool> verdicts;
  std::map<std::string, double> tolerances;
  nlohmann::json witnesses = nlohmann::json::array();
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const {
    return nlohmann::json{{"check", check},       {"dim", dim},
                          {"seed", seed},         {"passed", passed},
                          {"verdicts", verdicts}, {"tolerances", tolerances},
                          {"witnesses", witnesses}, {"details", details}};
  }

  void note_witness(nlohmann::json w) { witnesses.push_back(std::move(w)); }
};

}  // namespace polaron

#endif
