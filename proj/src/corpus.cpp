#include "cylalg/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "cylalg/error.hpp"

namespace cylalg {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::set<std::string> seen;
  std::string errors;
  std::size_t first_bad = 0;
  const auto fail = [&](std::size_t line, const std::string& msg) {
    if (first_bad == 0) first_bad = line;
    errors += "\n  line " + std::to_string(line) + ": " + msg;
  };
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const auto s = trim(raw);
    if (s.empty() || s.front() == '#') continue;
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) {
      fail(line, "expected 'name: formula'");
      continue;
    }
    const std::string name(trim(s.substr(0, colon)));
    if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
      fail(line, "bad formula name '" + name + "'");
      continue;
    }
    if (!seen.insert(name).second) {
      fail(line, "duplicate name '" + name + "'");
      continue;
    }
    try {
      out.push_back({name, parse_formula(trim(s.substr(colon + 1))), line});
    } catch (const ParseError& e) {
      fail(line, e.what());
    }
  }
  if (first_bad != 0) throw ParseError("corpus errors:" + errors + "\nfirst error", first_bad);
  return out;
}

std::vector<CorpusEntry> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open corpus file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

}  // namespace cylalg
