#ifndef SRL_SYNTH_HPP
#define SRL_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "srl/corpus.hpp"

namespace srl {

// Deterministic synthetic corpus: random trees over the default tag set
// whose gold roles come from running the conversion rules, so they are a
// function of function tags, positions and head words alone. That makes the
// corpus fully learnable by the feature sets that carry those templates.
std::vector<GoldRecord> make_synthetic_corpus(int n_sentences,
                                              std::uint64_t seed);

}  // namespace srl

#endif  // SRL_SYNTH_HPP
