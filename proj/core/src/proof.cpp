#include "epsilon/proof.hpp"

#include "epsilon/errors.hpp"
#include "epsilon/parser.hpp"
#include "epsilon/printer.hpp"

#include <charconv>

namespace epsilon {

namespace {

struct SourceLine {
  std::string_view text;
  std::size_t offset;
};

// Non-blank, non-comment lines with their offsets in the whole text.
std::vector<SourceLine> content_lines(std::string_view text) {
  std::vector<SourceLine> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') out.push_back({line, start});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::string_view strip(std::string_view s, std::size_t& shift) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    shift = s.size();
    return {};
  }
  std::size_t e = s.find_last_not_of(" \t\r");
  shift = b;
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(std::size_t offset, const std::string& msg) {
  throw ParseError(ParseError::Kind::syntax, offset, msg);
}

std::size_t parse_index(std::string_view s, std::size_t offset) {
  std::size_t shift = 0;
  std::string_view t = strip(s, shift);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) fail_at(offset + shift, "expected a line index");
  return value;
}

// Re-throws a parse error of an embedded fragment at its position in the file.
template <typename F>
auto parse_fragment(std::string_view text, std::size_t offset, F&& fn) {
  std::size_t shift = 0;
  std::string_view t = strip(text, shift);
  try {
    return fn(t);
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), offset + shift + e.position(), e.message());
  }
}

Justification parse_justification(std::string_view text, std::size_t offset, const Signature& sig) {
  std::size_t shift = 0;
  std::string_view t = strip(text, shift);
  offset += shift;
  std::size_t word_end = t.find_first_of(" \t");
  std::string_view word = t.substr(0, word_end);
  std::string_view rest = word_end == std::string_view::npos ? std::string_view{} : t.substr(word_end);
  std::size_t rest_offset = offset + word.size();

  if (word == "recursion" || word == "identity") {
    std::size_t s2 = 0;
    if (!strip(rest, s2).empty()) fail_at(rest_offset + s2, "unexpected text after justification");
    return word == "recursion" ? Justification::recursion() : Justification::identity();
  }
  if (word == "critical") {
    std::size_t semi = rest.find(';');
    if (semi == std::string_view::npos) fail_at(rest_offset, "critical needs '<t> ; <e>'");
    Term w = parse_fragment(rest.substr(0, semi), rest_offset, [&](std::string_view s) { return parse_term(s, sig); });
    Term e = parse_fragment(rest.substr(semi + 1), rest_offset + semi + 1, [&](std::string_view s) { return parse_term(s, sig); });
    return Justification::critical(std::move(w), std::move(e));
  }
  if (word == "axiom") return Justification::axiom_ref(parse_index(rest, rest_offset));
  if (word == "taut") {
    std::vector<std::size_t> premises;
    std::size_t s2 = 0;
    if (!strip(rest, s2).empty()) {
      std::size_t pos = 0;
      while (true) {
        std::size_t comma = rest.find(',', pos);
        std::string_view item = rest.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        premises.push_back(parse_index(item, rest_offset + pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    return Justification::taut(std::move(premises));
  }
  fail_at(offset, "unknown justification '" + std::string(word) + "'");
}

}  // namespace

bool operator==(const Justification& a, const Justification& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Justification::Kind::recursion:
    case Justification::Kind::identity:
      return true;
    case Justification::Kind::critical:
      return a.witness == b.witness && a.eps == b.eps;
    case Justification::Kind::axiom:
      return a.axiom == b.axiom;
    case Justification::Kind::taut:
      return a.premises == b.premises;
  }
  return false;
}

std::string print(const Justification& j) {
  switch (j.kind) {
    case Justification::Kind::recursion:
      return "recursion";
    case Justification::Kind::identity:
      return "identity";
    case Justification::Kind::critical:
      return "critical " + print(*j.witness) + " ; " + print(*j.eps);
    case Justification::Kind::axiom:
      return "axiom " + std::to_string(j.axiom);
    case Justification::Kind::taut: {
      std::string out = "taut";
      for (std::size_t i = 0; i < j.premises.size(); ++i) out += (i ? ", " : " ") + std::to_string(j.premises[i]);
      return out;
    }
  }
  return "?";
}

std::string print(const EpsProof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    out += std::to_string(i) + " | " + print(p.lines[i].formula) + " | " + print(p.lines[i].justification) + "\n";
  }
  return out;
}

EpsProof parse_proof(std::string_view text, const Signature& sig) {
  EpsProof proof;
  for (const auto& [line, offset] : content_lines(text)) {
    std::size_t bar1 = line.find('|');
    std::size_t bar2 = bar1 == std::string_view::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos) fail_at(offset, "expected '<index> | <formula> | <justification>'");
    std::size_t index = parse_index(line.substr(0, bar1), offset);
    if (index != proof.lines.size()) {
      fail_at(offset, "line index " + std::to_string(index) + " out of sequence, expected " + std::to_string(proof.lines.size()));
    }
    Formula f = parse_fragment(line.substr(bar1 + 1, bar2 - bar1 - 1), offset + bar1 + 1,
                               [&](std::string_view s) { return parse_formula(s, sig); });
    Justification j = parse_justification(line.substr(bar2 + 1), offset + bar2 + 1, sig);
    proof.lines.push_back({std::move(f), std::move(j)});
  }
  return proof;
}

std::vector<Formula> parse_formula_lines(std::string_view text, const Signature& sig) {
  std::vector<Formula> out;
  for (const auto& [line, offset] : content_lines(text)) {
    out.push_back(parse_fragment(line, offset, [&](std::string_view s) { return parse_formula(s, sig); }));
  }
  return out;
}

}  // namespace epsilon
