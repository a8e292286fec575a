#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "profdyn/core.hpp"
#include "profdyn/maps.hpp"

namespace profdyn {

/// Finite prefix of the symbol sequence x -> (pi_i(x), pi_i(Tx), pi_i(T^2 x), ...).
struct SymbolSequence {
  Level level = 0;
  std::vector<Element> symbols;
  std::string source;
  Point start;
};

SymbolSequence phi_sequence(const Dynamics& d, Point x, Level i, std::size_t length);

/// "step,symbol" header followed by one row per symbol.
std::string to_csv(const SymbolSequence& s);

struct DeterminismVerdict {
  bool deterministic = true;
  /// Level at which all points were enumerated.
  Level input_level = 0;
  std::optional<std::pair<Element, Element>> witness;
  std::vector<Element> first_sequence;
  std::vector<Element> second_sequence;
};

/// Whether the level-i symbol determines the whole length-L sequence. Families are
/// enumerated at the top level, precision maps at the least level the horizon needs.
DeterminismVerdict is_deterministic_factor(const Dynamics& d, Level i, std::size_t horizon);

using Word = std::vector<Element>;
using WordFrequencies = std::map<Word, Rational>;

/// Exact frequency of every length-w word of level-i symbols over all inputs at `input_level`.
/// Only words that occur are listed.
WordFrequencies cylinder_frequencies(const Dynamics& d, Level i, std::size_t word_length, Level input_level);

/// True when all p^w words of length w over n symbols occur with weight n^-w.
bool is_uniform_bernoulli(const WordFrequencies& freq, Element symbols, std::size_t word_length);

}  // namespace profdyn
