// Acceptance gate: runs every criterion suite and prints one pass/fail line
// per criterion. Exit status is nonzero when any criterion fails.

#include <cstdio>

#include "mol/verify.hpp"

int main() {
  mol::VerifyConfig config;
  config.out_dir = "acceptance_out";
  const mol::VerificationReport rep = mol::run_acceptance(config);
  for (const mol::CheckResult& c : rep.checks)
    std::printf("%-28s %s  value=%.6g  %s\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.value, c.note.c_str());
  return rep.all_pass() ? 0 : 1;
}
