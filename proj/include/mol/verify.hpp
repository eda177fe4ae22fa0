#pragma once

#include <cstdint>
#include <string>

#include "mol/report.hpp"

namespace mol {

struct VerifyConfig {
  std::uint64_t seed = 20260823;
  std::string out_dir = "verify_out";
};

// Deterministic artifact writer used by the determinism criterion and the
// CLI; identical (dir, seed) inputs produce byte-identical files.
void write_verify_artifacts(const std::string& dir, std::uint64_t seed);

// Runs the ten acceptance suites; one check per criterion plus recorded
// constants. Writes report.json and CSV tables into config.out_dir.
VerificationReport run_acceptance(const VerifyConfig& config);

}  // namespace mol
