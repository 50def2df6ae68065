#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cylalg/formula.hpp"

namespace cylalg {

struct CorpusEntry {
  std::string name;
  Formula formula;
  std::size_t line = 0;  // 1-based
};

/// One `name: formula` per line; blank lines and lines starting with # are
/// skipped. Every malformed line is collected; the ParseError message lists
/// them all and its position is the first offending line.
std::vector<CorpusEntry> parse_corpus(std::string_view text);
std::vector<CorpusEntry> read_corpus_file(const std::string& path);

}  // namespace cylalg
