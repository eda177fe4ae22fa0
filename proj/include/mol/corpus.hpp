#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mol/grid.hpp"

namespace mol {

struct TaggedFunction {
  GridFunction values;
  std::string tag;
};

struct CorpusSpec {
  // Known families: bumps, spikes, sawtooth, noise, atoms.
  std::vector<std::string> families{"bumps", "spikes", "sawtooth", "noise",
                                    "atoms"};
  int per_family = 4;
  int noise_cutoff = 12;  // highest retained frequency index
};

// Deterministic in (seed, spec, grid); elements are tagged family#index.
std::vector<TaggedFunction> generate_corpus(std::uint64_t seed,
                                            const CorpusSpec& spec,
                                            const Grid& grid);

}  // namespace mol
