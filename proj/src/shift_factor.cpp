#include "profdyn/shift_factor.hpp"

#include <sstream>

namespace profdyn {

SymbolSequence phi_sequence(const Dynamics& d, Point x, Level i, std::size_t length) {
  SymbolSequence s;
  s.level = i;
  s.symbols = trajectory(d, x, i, length);
  s.source = std::visit([](const auto& m) { return m.name(); }, d);
  s.start = x;
  return s;
}

std::string to_csv(const SymbolSequence& s) {
  std::ostringstream out;
  out << "step,symbol\n";
  for (std::size_t k = 0; k < s.symbols.size(); ++k) out << k << ',' << s.symbols[k] << '\n';
  return out.str();
}

DeterminismVerdict is_deterministic_factor(const Dynamics& d, Level i, std::size_t horizon) {
  const auto& t = tower_of(d);
  DeterminismVerdict v;
  v.input_level = std::holds_alternative<CompatibleFamily>(d) ? t.depth() : trajectory_input_level(d, i, horizon);
  if (v.input_level > t.depth()) throw PrecisionExhausted(v.input_level, t.depth());

  // First point seen for each level-i symbol, with its sequence.
  std::map<Element, std::pair<Element, std::vector<Element>>> representative;
  for (Element x = 0; x < t.order(v.input_level); ++x) {
    auto seq = trajectory(d, Point{x, v.input_level}, i, horizon);
    const auto symbol = project(t, x, v.input_level, i);
    auto [it, inserted] = representative.try_emplace(symbol, x, seq);
    if (!inserted && it->second.second != seq) {
      v.deterministic = false;
      v.witness = std::pair{it->second.first, x};
      v.first_sequence = it->second.second;
      v.second_sequence = std::move(seq);
      return v;
    }
  }
  return v;
}

WordFrequencies cylinder_frequencies(const Dynamics& d, Level i, std::size_t word_length, Level input_level) {
  const auto& t = tower_of(d);
  const auto needed = trajectory_input_level(d, i, word_length);
  if (needed > t.depth()) throw PrecisionExhausted(needed, t.depth());
  if (input_level > t.depth()) throw PrecisionExhausted(input_level, t.depth());
  if (needed > input_level) throw PrecisionExhausted(needed, input_level);

  std::map<Word, Element> counts;
  const auto total = t.order(input_level);
  for (Element x = 0; x < total; ++x) ++counts[trajectory(d, Point{x, input_level}, i, word_length)];
  WordFrequencies freq;
  for (const auto& [word, c] : counts) freq.emplace(word, Rational(c, total));
  return freq;
}

bool is_uniform_bernoulli(const WordFrequencies& freq, Element symbols, std::size_t word_length) {
  Element words = 1;
  for (std::size_t k = 0; k < word_length; ++k) words *= symbols;
  if (static_cast<Element>(freq.size()) != words) return false;
  for (const auto& [word, weight] : freq)
    if (weight != Rational(1, words)) return false;
  return true;
}

}  // namespace profdyn
